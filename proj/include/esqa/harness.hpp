#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "esqa/dynamics.hpp"
#include "esqa/ising.hpp"
#include "esqa/schedule.hpp"
#include "esqa/spectrum.hpp"

namespace esqa {

inline constexpr const char* kVersion = "0.1.0";

struct SweepAxis {
  std::string name;            // e.g. "h_d", "t2", "c_l", "kappa", "gamma_phi"
  std::vector<double> values;  // non-empty, monotone
};

struct SweepSpec {
  SweepAxis axis1;
  SweepAxis axis2;
};

struct ExperimentConfig {
  std::string preset;  // "two_qubit", "svp_paper", or empty for inline
  IsingModel h_l;
  IsingModel h_p;
  DriverSpec driver;
  std::uint32_t initial_state = 0;
  std::set<std::uint32_t> targets;
  ScheduleParams schedule;
  PropagationConfig propagation;
  long long shots = 100000;
  std::uint64_t seed = 1;
  std::optional<SweepSpec> sweep;
};

ExperimentConfig preset_config(const std::string& name);
ExperimentConfig config_from_json(std::string_view text);
std::string config_to_json(const ExperimentConfig& cfg);

// FNV-1a over the canonical JSON form.
std::string config_hash(const ExperimentConfig& cfg);

struct RunReport {
  std::map<std::string, double> exact_populations;
  std::map<std::string, long long> counts;
  double success_exact = 0.0;
  double success_sampled = 0.0;
  // 0-indexed level of the initial state in the k = 0 Hamiltonian.
  int initial_level_index = 0;
  TrajectoryResult trajectory;
};

RunReport run(const ExperimentConfig& cfg);

struct SweepCell {
  double v1 = 0.0;
  double v2 = 0.0;
  double success = 0.0;             // from sampled counts
  double success_exact = 0.0;
  std::vector<double> populations;  // exact, indexed by basis state
};

struct SweepResult {
  std::string axis1_name;
  std::string axis2_name;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<SweepCell> cells;  // axis1-major ordering
  int n_qubits = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string version;
};

// Per-cell seeds are seed ^ cell_index, so a sweep is reproducible and
// cells are independent of evaluation order.
SweepResult sweep(const ExperimentConfig& cfg);

// Forward conventional QA from the ground state of H_D over a T x C_s
// grid, measuring the same targets.
SweepResult compare_conventional(const ExperimentConfig& cfg,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& cs_grid);

double best_success(const SweepResult& r);

// CSV emission: 12 significant digits, LF line endings, byte-deterministic.
std::string format_number(double v);
void emit_run_csv(const RunReport& report, std::ostream& out);
void emit_sweep_csv(const SweepResult& result, std::ostream& out);
void emit_trajectory_csv(const TrajectoryResult& result, int n_qubits,
                         std::ostream& out);
void emit_diagram_csv(const EnergyDiagram& diagram, std::ostream& out);

void emit_diagram_svg(const EnergyDiagram& diagram, std::ostream& out);
void emit_trajectory_svg(const TrajectoryResult& result, int n_qubits,
                         std::ostream& out);
void emit_sweep_svg(const SweepResult& result, std::ostream& out);

}  // namespace esqa
