#include "esqa/dicke.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace esqa {

namespace {

long long binomial(int n, int r) {
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

int hamming_ups(std::uint32_t index, int n) {
  // up spins are 0 bits
  return n - std::popcount(index & ((1u << n) - 1u));
}

// Full-space vector for tensor_j |W_{r_j}> under the block-major layout.
ComplexVector dicke_product_vector(const std::vector<int>& rs,
                                   const HammingEncoding& enc) {
  const int n = enc.total_qubits();
  const int block = enc.qubits_per_block();
  const Eigen::Index dim = Eigen::Index{1} << n;
  double norm2 = 1.0;
  for (const int r : rs) norm2 *= static_cast<double>(binomial(block, r));
  const double amp = 1.0 / std::sqrt(norm2);

  ComplexVector v = ComplexVector::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    bool match = true;
    for (int j = 1; j <= enc.lattice_dim && match; ++j) {
      int ups = 0;
      for (int p = 1; p <= block; ++p)
        if (spin_at(static_cast<std::uint32_t>(b), enc.qubit_index(p, j), n) >
            0)
          ++ups;
      match = ups == rs[static_cast<std::size_t>(j - 1)];
    }
    if (match) v[b] = amp;
  }
  return v;
}

// Permutation matrix swapping qubits q and q+1 (1-based, adjacent).
void check_block_symmetry(const DenseOperator& h, const HammingEncoding& enc) {
  const int n = enc.total_qubits();
  const Eigen::Index dim = h.dim();
  const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
  for (int j = 1; j <= enc.lattice_dim; ++j) {
    for (int p = 1; p + 1 <= enc.qubits_per_block(); ++p) {
      const int qa = enc.qubit_index(p, j);
      const std::uint32_t ma = 1u << (n - qa);
      const std::uint32_t mb = 1u << (n - qa - 1);
      std::vector<Eigen::Index> perm(static_cast<std::size_t>(dim));
      for (Eigen::Index b = 0; b < dim; ++b) {
        const auto idx = static_cast<std::uint32_t>(b);
        const bool ba = idx & ma, bb = idx & mb;
        std::uint32_t swapped = idx;
        if (ba != bb) swapped ^= ma | mb;
        perm[static_cast<std::size_t>(b)] = swapped;
      }
      double worst = 0.0;
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
          const Complex diff =
              h.mat(perm[static_cast<std::size_t>(r)],
                    perm[static_cast<std::size_t>(c)]) -
              h.mat(r, c);
          worst = std::max(worst, std::abs(diff));
        }
      if (worst > 1e-9 * scale)
        throw std::invalid_argument(
            "operator is not block-permutation symmetric");
    }
  }
}

}  // namespace

QuantumState build_dicke(int n, int r) {
  if (n < 1 || n > kMaxQubitsPure)
    throw std::invalid_argument("n out of range");
  if (r < 0 || r > n) throw std::invalid_argument("r out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, r)));
  ComplexVector psi = ComplexVector::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    if (hamming_ups(static_cast<std::uint32_t>(b), n) == r) psi[b] = amp;
  return QuantumState::pure(n, std::move(psi));
}

QuantumState build_mixture(int n) {
  if (n < 1 || n > kMaxQubitsMixed)
    throw std::invalid_argument("n out of range for a density matrix");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  const std::uint32_t all_down = (1u << n) - 1u;
  for (int q = 1; q <= n; ++q) {
    const std::uint32_t flipped = all_down ^ (1u << (n - q));
    rho(flipped, flipped) += 1.0 / n;
  }
  return QuantumState::mixed(n, std::move(rho));
}

double overlap(const QuantumState& dicke, const QuantumState& rho) {
  if (dicke.kind() != QuantumState::Kind::pure ||
      rho.kind() != QuantumState::Kind::mixed)
    throw std::invalid_argument("overlap expects (pure, mixed)");
  if (dicke.n_qubits() != rho.n_qubits())
    throw std::invalid_argument("dimension mismatch");
  const Complex v = dicke.psi().adjoint() * (rho.rho() * dicke.psi());
  return v.real();
}

DenseOperator symmetric_restriction(const DenseOperator& h,
                                    const HammingEncoding& enc) {
  if (h.dim() != (Eigen::Index{1} << enc.total_qubits()))
    throw std::invalid_argument("operator/encoding dimension mismatch");
  check_block_symmetry(h, enc);

  const int per = enc.qubits_per_block() + 1;  // r_j in 0..2k
  Eigen::Index sub_dim = 1;
  for (int j = 0; j < enc.lattice_dim; ++j) sub_dim *= per;

  std::vector<ComplexVector> basis;
  basis.reserve(static_cast<std::size_t>(sub_dim));
  std::vector<int> rs(static_cast<std::size_t>(enc.lattice_dim), 0);
  for (Eigen::Index i = 0; i < sub_dim; ++i) {
    basis.push_back(dicke_product_vector(rs, enc));
    for (int j = enc.lattice_dim - 1; j >= 0; --j) {
      auto& rj = rs[static_cast<std::size_t>(j)];
      if (rj + 1 < per) {
        ++rj;
        break;
      }
      rj = 0;
    }
  }

  DenseOperator out{enc.total_qubits(), ComplexMatrix(sub_dim, sub_dim)};
  for (Eigen::Index c = 0; c < sub_dim; ++c) {
    const ComplexVector hc = h.mat * basis[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < sub_dim; ++r)
      out.mat(r, c) = basis[static_cast<std::size_t>(r)].dot(hc);
  }
  return out;
}

double dicke_success_probability(const LatticeBasis& basis, int k,
                                 const ScheduleParams& schedule,
                                 const PropagationConfig& cfg) {
  const GramMatrix g = gram(basis);
  auto [h_p, enc] = encode(g, k);
  const int n = enc.total_qubits();
  if (n > kMaxQubitsPure) throw std::length_error("instance too large");
  const IsingModel h_l = resolving_fields(n, 1, 1.0);  // uniform field
  const DriverSpec driver{n, 1.0};

  const auto [c_best, norm2] = brute_force_shortest(basis, k);
  std::vector<std::uint32_t> targets;
  const Eigen::Index dim = Eigen::Index{1} << n;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const std::vector<int> c = decode(static_cast<std::uint32_t>(b), enc);
    bool plus = true, minus = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != c_best[j]) plus = false;
      if (c[j] != -c_best[j]) minus = false;
    }
    if (plus || minus) targets.push_back(static_cast<std::uint32_t>(b));
  }

  // closed-system evolution of the separable mixture: average the pure
  // trajectories of its single-flip components
  const std::uint32_t all_down = (1u << n) - 1u;
  double success = 0.0;
  for (int q = 1; q <= n; ++q) {
    const std::uint32_t flipped = all_down ^ (1u << (n - q));
    const TrajectoryResult r =
        evolve_closed(QuantumState::basis_state(n, flipped), schedule, h_l,
                      h_p, driver, cfg);
    const RealVector pops = population_vector(r.final_state);
    for (const std::uint32_t t : targets) success += pops[t] / n;
  }
  return success;
}

}  // namespace esqa
