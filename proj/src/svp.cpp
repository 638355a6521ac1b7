#include "esqa/svp.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace esqa {

namespace {

void validate_gram(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() < 1)
    throw std::invalid_argument("Gram matrix must be square and non-empty");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("Gram matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("Gram matrix is not positive definite");
}

long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("count overflows");
  return out;
}

}  // namespace

GramMatrix gram(const LatticeBasis& basis) {
  const int dim = basis.dimension();
  if (dim < 1) throw std::invalid_argument("empty basis");
  const Eigen::Index ambient = basis.vectors.front().size();
  for (const auto& v : basis.vectors)
    if (v.size() != ambient)
      throw std::invalid_argument("basis vectors have mixed dimensions");

  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = basis.vectors[static_cast<std::size_t>(i)].dot(
          basis.vectors[static_cast<std::size_t>(j)]);

  double scale = 1.0;
  for (int i = 0; i < dim; ++i) scale *= g(i, i);
  if (!(g.determinant() > 1e-12 * scale))
    throw std::invalid_argument("degenerate basis");
  return {g};
}

std::pair<IsingModel, HammingEncoding> encode(const GramMatrix& g, int k) {
  validate_gram(g.g);
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int dim = g.dimension();
  const HammingEncoding enc{dim, k};
  if (enc.total_qubits() > kMaxQubitsPure)
    throw std::length_error("2kL exceeds the qubit cap");

  IsingModel model(enc.total_qubits());
  double offset = 0.0;
  const int block = enc.qubits_per_block();
  for (int j = 1; j <= dim; ++j) {
    const double gjj = g.g(j - 1, j - 1);
    for (int p = 1; p <= block; ++p)
      for (int q = p + 1; q <= block; ++q)
        model.set_coupling(enc.qubit_index(p, j), enc.qubit_index(q, j),
                           gjj / 2.0);
    offset += gjj * block / 4.0;
  }
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      const double gij = g.g(i - 1, j - 1);
      for (int p = 1; p <= block; ++p)
        for (int q = 1; q <= block; ++q)
          model.set_coupling(enc.qubit_index(p, i), enc.qubit_index(q, j),
                             gij / 2.0);
    }
  model.set_offset(offset);
  return {model, enc};
}

std::vector<int> decode(std::uint32_t basis_index, const HammingEncoding& enc) {
  const int n = enc.total_qubits();
  if (basis_index >= (1u << n))
    throw std::invalid_argument("basis index out of range for encoding");
  std::vector<int> c(static_cast<std::size_t>(enc.lattice_dim));
  for (int j = 1; j <= enc.lattice_dim; ++j) {
    int spin_sum = 0;
    for (int p = 1; p <= enc.qubits_per_block(); ++p)
      spin_sum += spin_at(basis_index, enc.qubit_index(p, j), n);
    c[static_cast<std::size_t>(j - 1)] = spin_sum / 2;
  }
  return c;
}

std::vector<int> decode(std::string_view bits, const HammingEncoding& enc) {
  if (static_cast<int>(bits.size()) != enc.total_qubits())
    throw std::invalid_argument("bitstring length mismatch");
  return decode(bitstring_to_index(bits), enc);
}

std::pair<std::vector<int>, double> brute_force_shortest(
    const LatticeBasis& basis, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const GramMatrix g = gram(basis);
  const int dim = g.dimension();
  long long box = 1;
  for (int j = 0; j < dim; ++j) box = checked_mul(box, 2LL * k + 1);
  if (box > 1000000) throw std::length_error("coefficient box too large");

  std::vector<int> c(static_cast<std::size_t>(dim), -k);
  std::vector<int> best;
  double best_norm2 = 0.0;
  Eigen::VectorXd cv(dim);
  for (long long step = 0; step < box; ++step) {
    bool zero = true;
    for (int j = 0; j < dim; ++j) {
      cv[j] = c[static_cast<std::size_t>(j)];
      if (c[static_cast<std::size_t>(j)] != 0) zero = false;
    }
    if (!zero) {
      const double norm2 = cv.dot(g.g * cv);
      // strict < keeps the first (lexicographically smallest) minimizer
      if (best.empty() || norm2 < best_norm2) {
        best = c;
        best_norm2 = norm2;
      }
    }
    // odometer in lexicographic order, last coordinate fastest
    for (int j = dim - 1; j >= 0; --j) {
      auto& cj = c[static_cast<std::size_t>(j)];
      if (cj < k) {
        ++cj;
        break;
      }
      cj = -k;
    }
  }
  return {best, best_norm2};
}

IsingModel resolving_fields(int n, int k, double h) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("require 1 <= k <= n");
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  IsingModel model(n);
  for (int l = 1; l <= n; ++l)
    model.set_field(l, std::ldexp(h, std::min(l, k) - 1));
  return model;
}

bool check_condition(const IsingModel& h_p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  return h_p.coupling_abs_sum() < h;
}

long long degeneracy_count(int k, int lattice_dim) {
  if (k < 1 || lattice_dim < 1)
    throw std::invalid_argument("k and L must be positive");
  long long binom = 1;
  for (int i = 1; i <= k; ++i)
    binom = checked_mul(binom, k + i) / i;  // binomial(2k, k)
  long long out = 1;
  for (int j = 0; j < lattice_dim; ++j) out = checked_mul(out, binom);
  return out;
}

SvpInstance svp_instance_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SvpInstance inst;
  inst.k = j.value("k", 1);
  if (j.contains("basis")) {
    LatticeBasis basis;
    for (const auto& row : j.at("basis")) {
      Eigen::VectorXd v(row.size());
      for (std::size_t i = 0; i < row.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = row.at(i).get<double>();
      basis.vectors.push_back(std::move(v));
    }
    inst.gram = gram(basis);
    inst.basis = std::move(basis);
  } else if (j.contains("gram")) {
    const auto& rows = j.at("gram");
    Eigen::MatrixXd g(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows.size(); ++c)
        g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            rows.at(r).at(c).get<double>();
    validate_gram(g);
    inst.gram = {g};
  } else {
    throw std::invalid_argument("SVP instance needs \"basis\" or \"gram\"");
  }
  return inst;
}

}  // namespace esqa
