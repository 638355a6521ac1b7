#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "esqa/ising.hpp"

namespace esqa {

struct LatticeBasis {
  // L vectors of a common ambient dimension; must be linearly independent.
  std::vector<Eigen::VectorXd> vectors;

  int dimension() const { return static_cast<int>(vectors.size()); }
};

struct GramMatrix {
  Eigen::MatrixXd g;  // symmetric positive definite, G_ij = b_i . b_j

  int dimension() const { return static_cast<int>(g.rows()); }
};

// Block-major qubit layout: vector j occupies qubits
// (j-1)*2k + 1 .. j*2k.  Coefficient of vector j is half the total spin
// of its block, so each c_j runs over -k..k.
struct HammingEncoding {
  int lattice_dim = 0;  // L
  int k = 0;            // coefficient bound, |c_j| <= k

  int qubits_per_block() const { return 2 * k; }
  int total_qubits() const { return 2 * k * lattice_dim; }
  int qubit_index(int p, int j) const { return (j - 1) * 2 * k + p; }
};

GramMatrix gram(const LatticeBasis& basis);

// Expands sum_{i,j} G_ij Q^(i) Q^(j) with Q^(j) = sum_p sz_{p,j} / 2 into
// couplings plus a tracked constant offset, so that the diagonal energy of
// every basis state equals the squared lattice-vector norm it decodes to.
std::pair<IsingModel, HammingEncoding> encode(const GramMatrix& g, int k);

std::vector<int> decode(std::uint32_t basis_index, const HammingEncoding& enc);
std::vector<int> decode(std::string_view bits, const HammingEncoding& enc);

// Exhaustive minimization of c^T G c over nonzero c in [-k, k]^L.
// Ties resolve to the lexicographically smallest minimizer.
std::pair<std::vector<int>, double> brute_force_shortest(
    const LatticeBasis& basis, int k);

// Degeneracy-resolving longitudinal field: h_l = 2^{l-1} h for l <= k and
// 2^{k-1} h beyond.
IsingModel resolving_fields(int n, int k, double h);

// True iff sum over couplings of |J_ij| < h.
bool check_condition(const IsingModel& h_p, double h);

// binomial(2k, k)^L, overflow guarded.
long long degeneracy_count(int k, int lattice_dim);

// SVP instance file: {"basis": [[...], ...], "k": int} or
// {"gram": [[...], ...], "k": int}.
struct SvpInstance {
  std::optional<LatticeBasis> basis;
  GramMatrix gram;
  int k = 1;
};

SvpInstance svp_instance_from_json(std::string_view text);

}  // namespace esqa
