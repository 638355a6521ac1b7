#pragma once

#include "esqa/dynamics.hpp"
#include "esqa/ising.hpp"
#include "esqa/svp.hpp"

namespace esqa {

// Normalized Dicke state: equal-amplitude superposition of all weight-r
// basis states (r = number of up spins).
QuantumState build_dicke(int n, int r);

// Uniform mixture of the n single-flip states (one up spin, rest down).
// Note: the overlap of this mixture with the normalized W_1 Dicke state is
// 1/n, not the 1/r value sometimes quoted for this construction; that
// figure is inconsistent with normalized Dicke states.
QuantumState build_mixture(int n);

// <W_r| rho |W_r>.
double overlap(const QuantumState& dicke, const QuantumState& rho);

// Matrix of h in the Dicke product basis {tensor_j |W_{r_j}>}, dimension
// (2k+1)^L, ordered with r_1 slowest (lexicographic in (r_1,..,r_L)).
// Requires h to commute with all within-block qubit permutations.
DenseOperator symmetric_restriction(const DenseOperator& h,
                                    const HammingEncoding& enc);

// Runs the closed-system excited-state search from the separable
// single-flip mixture over the full 2kL-qubit space, with a uniform
// resolving field as H_L, and returns the final population on the basis
// states that decode to the brute-force shortest vector (either sign).
double dicke_success_probability(const LatticeBasis& basis, int k,
                                 const ScheduleParams& schedule,
                                 const PropagationConfig& cfg);

}  // namespace esqa
