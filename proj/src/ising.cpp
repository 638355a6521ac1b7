#include "esqa/ising.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace esqa {

namespace {

void check_qubit_count(int n, int cap) {
  if (n < 1) throw std::invalid_argument("n_qubits must be positive");
  if (n > cap)
    throw std::length_error("n_qubits exceeds the dense-matrix cap of " +
                            std::to_string(cap));
}

}  // namespace

std::string index_to_bitstring(std::uint32_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 1; q <= n_qubits; ++q) {
    if ((index >> (n_qubits - q)) & 1u) s[static_cast<std::size_t>(q - 1)] = '1';
  }
  return s;
}

std::uint32_t bitstring_to_index(std::string_view bits) {
  if (bits.empty() || bits.size() > 32)
    throw std::invalid_argument("bad bitstring length");
  std::uint32_t index = 0;
  for (char c : bits) {
    index <<= 1;
    if (c == '1' || c == 'd' || c == 'D')
      index |= 1u;
    else if (c != '0' && c != 'u' && c != 'U')
      throw std::invalid_argument("bad bitstring character");
  }
  return index;
}

IsingModel::IsingModel(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
}

void IsingModel::check_index(int j) const {
  if (j < 1 || j > n_qubits_)
    throw std::invalid_argument("qubit index out of range");
}

void IsingModel::set_coupling(int i, int j, double value) {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("no self-couplings");
  if (i > j) std::swap(i, j);
  if (value == 0.0)
    couplings_.erase({i, j});
  else
    couplings_[{i, j}] = value;
}

void IsingModel::set_field(int j, double value) {
  check_index(j);
  if (value == 0.0)
    fields_.erase(j);
  else
    fields_[j] = value;
}

double IsingModel::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = couplings_.find({i, j});
  return it == couplings_.end() ? 0.0 : it->second;
}

double IsingModel::field(int j) const {
  auto it = fields_.find(j);
  return it == fields_.end() ? 0.0 : it->second;
}

double IsingModel::coupling_abs_sum() const {
  double sum = 0.0;
  for (const auto& [key, value] : couplings_) sum += std::abs(value);
  return sum;
}

std::string IsingModel::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_qubits_;
  j["couplings"] = nlohmann::json::array();
  for (const auto& [key, value] : couplings_)
    j["couplings"].push_back({key.first, key.second, value});
  j["fields"] = nlohmann::json::array();
  for (const auto& [q, value] : fields_) j["fields"].push_back({q, value});
  j["offset"] = offset_;
  return j.dump(2);
}

IsingModel IsingModel::from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  IsingModel m(j.at("n_qubits").get<int>());
  if (j.contains("couplings"))
    for (const auto& entry : j.at("couplings"))
      m.set_coupling(entry.at(0).get<int>(), entry.at(1).get<int>(),
                     entry.at(2).get<double>());
  if (j.contains("fields"))
    for (const auto& entry : j.at("fields"))
      m.set_field(entry.at(0).get<int>(), entry.at(1).get<double>());
  m.set_offset(j.value("offset", 0.0));
  return m;
}

QuantumState QuantumState::pure(int n_qubits, ComplexVector psi) {
  check_qubit_count(n_qubits, kMaxQubitsPure);
  if (psi.size() != (Eigen::Index{1} << n_qubits))
    throw std::invalid_argument("state vector length mismatch");
  QuantumState s;
  s.kind_ = Kind::pure;
  s.n_qubits_ = n_qubits;
  s.psi_ = std::move(psi);
  return s;
}

QuantumState QuantumState::mixed(int n_qubits, ComplexMatrix rho) {
  check_qubit_count(n_qubits, kMaxQubitsMixed);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("density matrix size mismatch");
  QuantumState s;
  s.kind_ = Kind::mixed;
  s.n_qubits_ = n_qubits;
  s.rho_ = std::move(rho);
  return s;
}

QuantumState QuantumState::basis_state(int n_qubits, std::uint32_t index) {
  check_qubit_count(n_qubits, kMaxQubitsPure);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (index >= static_cast<std::uint32_t>(dim))
    throw std::invalid_argument("basis index out of range");
  ComplexVector psi = ComplexVector::Zero(dim);
  psi[index] = 1.0;
  return pure(n_qubits, std::move(psi));
}

void QuantumState::validate() const {
  if (kind_ == Kind::pure) {
    if (std::abs(psi_.squaredNorm() - 1.0) > 1e-10)
      throw std::invalid_argument("pure state is not normalized");
  } else {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-10 ||
        std::abs(rho_.trace().imag()) > 1e-10)
      throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_,
                                                    Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DenseOperator build_driver(const DriverSpec& spec) {
  check_qubit_count(spec.n_qubits, kMaxQubitsPure);
  if (spec.gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  const Eigen::Index dim = Eigen::Index{1} << spec.n_qubits;
  DenseOperator op{spec.n_qubits, ComplexMatrix::Zero(dim, dim)};
  for (int q = 1; q <= spec.n_qubits; ++q) {
    const std::uint32_t mask = 1u << (spec.n_qubits - q);
    for (Eigen::Index b = 0; b < dim; ++b)
      op.mat(b ^ mask, b) -= spec.gamma;
  }
  return op;
}

RealVector diagonal_energies(const IsingModel& model) {
  const int n = model.n_qubits();
  check_qubit_count(n, kMaxQubitsPure);
  const Eigen::Index dim = Eigen::Index{1} << n;
  RealVector e = RealVector::Constant(dim, model.offset());
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto idx = static_cast<std::uint32_t>(b);
    double v = 0.0;
    for (const auto& [key, value] : model.couplings())
      v += value * spin_at(idx, key.first, n) * spin_at(idx, key.second, n);
    for (const auto& [q, value] : model.fields())
      v += value * spin_at(idx, q, n);
    e[b] += v;
  }
  return e;
}

DenseOperator assemble(double a, double b, double g,
                       const DenseOperator& driver, const IsingModel& h_l,
                       const IsingModel& h_p) {
  if (driver.n_qubits != h_l.n_qubits() || driver.n_qubits != h_p.n_qubits())
    throw std::invalid_argument("operand qubit counts differ");
  DenseOperator op{driver.n_qubits, a * driver.mat};
  const RealVector diag =
      b * (g * diagonal_energies(h_l) + diagonal_energies(h_p));
  op.mat.diagonal() += diag.cast<Complex>();
  return op;
}

RealVector population_vector(const QuantumState& state) {
  if (state.kind() == QuantumState::Kind::pure)
    return state.psi().cwiseAbs2();
  return state.rho().diagonal().real();
}

std::map<std::string, double> populations(const QuantumState& state) {
  const RealVector p = population_vector(state);
  std::map<std::string, double> out;
  for (Eigen::Index b = 0; b < p.size(); ++b)
    out[index_to_bitstring(static_cast<std::uint32_t>(b),
                           state.n_qubits())] = p[b];
  return out;
}

std::map<std::string, long long> sample_counts(
    const std::map<std::string, double>& pops, long long shots,
    std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<std::pair<std::string, double>> items(pops.begin(), pops.end());
  std::vector<double> cdf(items.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    acc += std::max(0.0, items[i].second);
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("probabilities sum to zero");

  std::map<std::string, long long> counts;
  for (const auto& [name, p] : items) counts[name] = 0;
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < shots; ++s) {
    // 53-bit uniform in [0, 1); avoids std::uniform_real_distribution,
    // whose output is implementation-defined.
    const double u = std::ldexp(static_cast<double>(rng() >> 11), -53) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t pick =
        std::min(items.size() - 1,
                 static_cast<std::size_t>(it - cdf.begin()));
    ++counts[items[pick].first];
  }
  return counts;
}

}  // namespace esqa
