#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "esqa/ising.hpp"
#include "esqa/schedule.hpp"

namespace esqa {

enum class EvolutionMode { closed, open };
enum class RelaxationScaling { none, proportional_to_a };

struct PropagationConfig {
  double dt = 0.01;  // maximum integrator step, protocol-time units
  EvolutionMode mode = EvolutionMode::closed;
  double relaxation_rate = 0.0;  // kappa, 1/time
  double dephasing_rate = 0.0;   // gamma_phi, 1/time
  RelaxationScaling relaxation_scaling = RelaxationScaling::proportional_to_a;
  int max_samples = 2001;  // trajectory sampling density, not solver accuracy
};

struct TrajectoryResult {
  std::vector<double> sample_times;        // strictly increasing
  std::vector<RealVector> population_series;  // one entry per sample time
  QuantumState final_state;
};

// Integrates i dpsi/dk = H(k) psi over [0, t1+t2+t3] by exact
// exponentiation of the piecewise-constant midpoint Hamiltonian.
TrajectoryResult evolve_closed(const QuantumState& initial,
                               const ScheduleParams& params,
                               const IsingModel& h_l, const IsingModel& h_p,
                               const DriverSpec& driver,
                               const PropagationConfig& cfg);

// Lindblad evolution with lowering operators between instantaneous
// eigenlevels (equal branching into degenerate lower eigenspaces) at rate
// kappa * scale(k), plus eigenbasis dephasing at gamma_phi.  With
// proportional_to_a scaling, scale(k) = A(k)/(1-h_d) and vanishes
// identically when h_d = 1.
TrajectoryResult evolve_open(const QuantumState& initial,
                             const ScheduleParams& params,
                             const IsingModel& h_l, const IsingModel& h_p,
                             const DriverSpec& driver,
                             const PropagationConfig& cfg);

// Forward conventional QA, H(t) = (1-t/T) H_D + (t/T) C_s H_P, closed
// system.
TrajectoryResult evolve_conventional(const QuantumState& initial,
                                     const ConventionalParams& params,
                                     const IsingModel& h_p,
                                     const DriverSpec& driver,
                                     const PropagationConfig& cfg);

// Sum of final populations over the target basis states.
double success_probability(const TrajectoryResult& result,
                           const std::set<std::uint32_t>& targets);

}  // namespace esqa
