#include "esqa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "esqa/svp.hpp"

namespace esqa {

namespace {

using nlohmann::json;

EvolutionMode mode_from_string(const std::string& s) {
  if (s == "closed") return EvolutionMode::closed;
  if (s == "open") return EvolutionMode::open;
  throw std::invalid_argument("unknown mode: " + s);
}

RelaxationScaling scaling_from_string(const std::string& s) {
  if (s == "none") return RelaxationScaling::none;
  if (s == "proportional_to_A" || s == "proportional_to_a")
    return RelaxationScaling::proportional_to_a;
  throw std::invalid_argument("unknown relaxation_scaling: " + s);
}

json ising_to_json_obj(const IsingModel& m) {
  return json::parse(m.to_json());
}

json config_to_json_obj(const ExperimentConfig& cfg) {
  json j;
  j["instance"] = cfg.preset.empty()
                      ? json{{"h_l", ising_to_json_obj(cfg.h_l)},
                             {"h_p", ising_to_json_obj(cfg.h_p)},
                             {"initial",
                              index_to_bitstring(cfg.initial_state,
                                                 cfg.h_p.n_qubits())}}
                      : json(cfg.preset);
  j["gamma"] = cfg.driver.gamma;
  j["schedule"] = {{"t1", cfg.schedule.t1}, {"t2", cfg.schedule.t2},
                   {"t3", cfg.schedule.t3}, {"h_d", cfg.schedule.h_d},
                   {"c_l", cfg.schedule.c_l}};
  j["propagation"] = {
      {"dt", cfg.propagation.dt},
      {"mode",
       cfg.propagation.mode == EvolutionMode::closed ? "closed" : "open"},
      {"relaxation_rate", cfg.propagation.relaxation_rate},
      {"dephasing_rate", cfg.propagation.dephasing_rate},
      {"relaxation_scaling",
       cfg.propagation.relaxation_scaling == RelaxationScaling::none
           ? "none"
           : "proportional_to_A"}};
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  json targets = json::array();
  for (const std::uint32_t t : cfg.targets)
    targets.push_back(index_to_bitstring(t, cfg.h_p.n_qubits()));
  j["targets"] = targets;
  if (cfg.sweep) {
    j["sweep"] = {
        {"axis1",
         {{"name", cfg.sweep->axis1.name}, {"values", cfg.sweep->axis1.values}}},
        {"axis2",
         {{"name", cfg.sweep->axis2.name}, {"values", cfg.sweep->axis2.values}}}};
  }
  return j;
}

void apply_axis_value(ExperimentConfig& cfg, const std::string& name,
                      double value) {
  if (name == "h_d")
    cfg.schedule.h_d = value;
  else if (name == "t1")
    cfg.schedule.t1 = value;
  else if (name == "t2")
    cfg.schedule.t2 = value;
  else if (name == "t3")
    cfg.schedule.t3 = value;
  else if (name == "c_l")
    cfg.schedule.c_l = value;
  else if (name == "kappa" || name == "relaxation_rate")
    cfg.propagation.relaxation_rate = value;
  else if (name == "gamma_phi" || name == "dephasing_rate")
    cfg.propagation.dephasing_rate = value;
  else if (name == "dt")
    cfg.propagation.dt = value;
  else
    throw std::invalid_argument("unknown sweep axis: " + name);
}

}  // namespace

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.preset = name;
  if (name == "two_qubit") {
    cfg.h_l = IsingModel(2);
    cfg.h_l.set_field(1, 2.0);
    cfg.h_l.set_field(2, -1.0);
    cfg.h_p = IsingModel(2);
    cfg.h_p.set_coupling(1, 2, -1.0);  // -J sz1 sz2, J = 1
    cfg.driver = {2, 1.0};
    cfg.initial_state = bitstring_to_index("00");   // up-up
    cfg.targets = {bitstring_to_index("01"), bitstring_to_index("10")};
    cfg.schedule = {2.0, 20.0, 2.0, 0.7, 4.0};
    cfg.propagation.dt = 0.005;
    cfg.propagation.mode = EvolutionMode::open;
    cfg.propagation.relaxation_rate = 0.05;
    cfg.propagation.relaxation_scaling = RelaxationScaling::proportional_to_a;
  } else if (name == "svp_paper") {
    // 2D lattice, |b1| = 1.0, |b2| = 1.3, angle pi/10, Hamming k = 1
    LatticeBasis basis;
    basis.vectors.push_back(Eigen::Vector2d(1.0, 0.0));
    basis.vectors.push_back(Eigen::Vector2d(1.3 * std::cos(M_PI / 10.0),
                                            1.3 * std::sin(M_PI / 10.0)));
    auto [h_p, enc] = encode(gram(basis), 1);
    cfg.h_p = h_p;
    cfg.h_l = IsingModel(4);
    cfg.h_l.set_field(1, 2.0);   // h_j / 2 with h = (4, 4, 1, 2)
    cfg.h_l.set_field(2, 2.0);
    cfg.h_l.set_field(3, 0.5);
    cfg.h_l.set_field(4, 1.0);
    cfg.driver = {4, 1.0};
    cfg.initial_state = bitstring_to_index("1011");  // down-up-down-down
    cfg.targets = {bitstring_to_index("0011"), bitstring_to_index("1100")};
    cfg.schedule = {2.0, 20.0, 2.0, 0.6, 4.0};
    cfg.propagation.dt = 0.002;
    cfg.propagation.mode = EvolutionMode::open;
    cfg.propagation.relaxation_rate = 0.05;
    cfg.propagation.relaxation_scaling = RelaxationScaling::proportional_to_a;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

ExperimentConfig config_from_json(std::string_view text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;
  const json& inst = j.at("instance");
  if (inst.is_string()) {
    cfg = preset_config(inst.get<std::string>());
  } else if (inst.contains("svp_file")) {
    throw std::invalid_argument(
        "svp_file references must be resolved by the caller");
  } else {
    cfg.h_l = IsingModel::from_json(inst.at("h_l").dump());
    cfg.h_p = IsingModel::from_json(inst.at("h_p").dump());
    cfg.driver = {cfg.h_p.n_qubits(), 1.0};
    cfg.initial_state =
        bitstring_to_index(inst.at("initial").get<std::string>());
  }
  if (j.contains("gamma")) cfg.driver.gamma = j.at("gamma").get<double>();
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    cfg.schedule.t1 = s.value("t1", cfg.schedule.t1);
    cfg.schedule.t2 = s.value("t2", cfg.schedule.t2);
    cfg.schedule.t3 = s.value("t3", cfg.schedule.t3);
    cfg.schedule.h_d = s.value("h_d", cfg.schedule.h_d);
    cfg.schedule.c_l = s.value("c_l", cfg.schedule.c_l);
  }
  if (j.contains("propagation")) {
    const json& p = j.at("propagation");
    cfg.propagation.dt = p.value("dt", cfg.propagation.dt);
    if (p.contains("mode"))
      cfg.propagation.mode = mode_from_string(p.at("mode").get<std::string>());
    cfg.propagation.relaxation_rate =
        p.value("relaxation_rate", cfg.propagation.relaxation_rate);
    cfg.propagation.dephasing_rate =
        p.value("dephasing_rate", cfg.propagation.dephasing_rate);
    if (p.contains("relaxation_scaling"))
      cfg.propagation.relaxation_scaling =
          scaling_from_string(p.at("relaxation_scaling").get<std::string>());
  }
  cfg.shots = j.value("shots", cfg.shots);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("targets")) {
    cfg.targets.clear();
    for (const auto& t : j.at("targets"))
      cfg.targets.insert(bitstring_to_index(t.get<std::string>()));
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    SweepSpec spec;
    spec.axis1.name = s.at("axis1").at("name").get<std::string>();
    spec.axis1.values =
        s.at("axis1").at("values").get<std::vector<double>>();
    spec.axis2.name = s.at("axis2").at("name").get<std::string>();
    spec.axis2.values =
        s.at("axis2").at("values").get<std::vector<double>>();
    if (spec.axis1.values.empty() || spec.axis2.values.empty())
      throw std::invalid_argument("sweep axes must be non-empty");
    cfg.sweep = std::move(spec);
  }
  if (cfg.targets.empty())
    throw std::invalid_argument("targets must be non-empty");
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_to_json_obj(cfg).dump(2);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = config_to_json_obj(cfg).dump();
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

RunReport run(const ExperimentConfig& cfg) {
  if (cfg.targets.empty())
    throw std::invalid_argument("targets must be non-empty");
  const QuantumState initial =
      QuantumState::basis_state(cfg.h_p.n_qubits(), cfg.initial_state);

  RunReport report;
  if (cfg.propagation.mode == EvolutionMode::closed)
    report.trajectory = evolve_closed(initial, cfg.schedule, cfg.h_l, cfg.h_p,
                                      cfg.driver, cfg.propagation);
  else
    report.trajectory = evolve_open(initial, cfg.schedule, cfg.h_l, cfg.h_p,
                                    cfg.driver, cfg.propagation);

  // final trajectory sample: exactly preserved for frozen (diagonal) runs
  const RealVector final_pops = report.trajectory.population_series.back();
  for (Eigen::Index b = 0; b < final_pops.size(); ++b)
    report.exact_populations[index_to_bitstring(static_cast<std::uint32_t>(b),
                                                cfg.h_p.n_qubits())] =
        final_pops[b];
  report.counts = sample_counts(report.exact_populations, cfg.shots, cfg.seed);
  report.success_exact = success_probability(report.trajectory, cfg.targets);
  long long hit = 0;
  for (const std::uint32_t t : cfg.targets)
    hit += report.counts.at(index_to_bitstring(t, cfg.h_p.n_qubits()));
  report.success_sampled =
      static_cast<double>(hit) / static_cast<double>(cfg.shots);

  // level of the initial state in H(0) = B(0)(C_L H_L + H_P), diagonal
  const ScheduleWeights w0 = weights_at(0.0, cfg.schedule);
  const RealVector e0 = w0.b * (w0.g * diagonal_energies(cfg.h_l) +
                                diagonal_energies(cfg.h_p));
  const double own = e0[cfg.initial_state];
  const double tol = 1e-9 * std::max(1.0, e0.cwiseAbs().maxCoeff());
  int below = 0;
  for (Eigen::Index b = 0; b < e0.size(); ++b)
    if (e0[b] < own - tol) ++below;
  report.initial_level_index = below;
  return report;
}

SweepResult sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw std::invalid_argument("config has no sweep block");
  const SweepSpec& spec = *cfg.sweep;
  const std::size_t cells = spec.axis1.values.size() * spec.axis2.values.size();
  if (cells > 10000) throw std::length_error("sweep exceeds 10^4 cells");

  SweepResult result;
  result.axis1_name = spec.axis1.name;
  result.axis2_name = spec.axis2.name;
  result.axis1 = spec.axis1.values;
  result.axis2 = spec.axis2.values;
  result.n_qubits = cfg.h_p.n_qubits();
  result.seed = cfg.seed;
  result.config_hash = config_hash(cfg);
  result.version = kVersion;

  std::size_t cell_index = 0;
  for (const double v1 : spec.axis1.values) {
    for (const double v2 : spec.axis2.values) {
      ExperimentConfig local = cfg;
      local.sweep.reset();
      apply_axis_value(local, spec.axis1.name, v1);
      apply_axis_value(local, spec.axis2.name, v2);
      local.seed = cfg.seed ^ static_cast<std::uint64_t>(cell_index);
      local.propagation.max_samples = 2;  // endpoints only
      const RunReport r = run(local);
      SweepCell cell;
      cell.v1 = v1;
      cell.v2 = v2;
      cell.success = r.success_sampled;
      cell.success_exact = r.success_exact;
      const RealVector pops = population_vector(r.trajectory.final_state);
      cell.populations.assign(pops.data(), pops.data() + pops.size());
      result.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return result;
}

SweepResult compare_conventional(const ExperimentConfig& cfg,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& cs_grid) {
  if (t_grid.empty() || cs_grid.empty())
    throw std::invalid_argument("empty conventional grid");
  if (t_grid.size() * cs_grid.size() > 10000)
    throw std::length_error("grid exceeds 10^4 cells");
  const int n = cfg.h_p.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;

  // ground state of H_D: uniform superposition
  ComplexVector plus =
      ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const QuantumState initial = QuantumState::pure(n, std::move(plus));

  SweepResult result;
  result.axis1_name = "T";
  result.axis2_name = "c_s";
  result.axis1 = t_grid;
  result.axis2 = cs_grid;
  result.n_qubits = n;
  result.seed = cfg.seed;
  result.config_hash = config_hash(cfg);
  result.version = kVersion;

  std::size_t cell_index = 0;
  for (const double t : t_grid) {
    for (const double cs : cs_grid) {
      PropagationConfig prop = cfg.propagation;
      prop.mode = EvolutionMode::closed;
      prop.max_samples = 2;
      const TrajectoryResult traj = evolve_conventional(
          initial, ConventionalParams{t, cs}, cfg.h_p, cfg.driver, prop);
      SweepCell cell;
      cell.v1 = t;
      cell.v2 = cs;
      cell.success_exact = success_probability(traj, cfg.targets);
      const auto pops_map = populations(traj.final_state);
      const auto counts = sample_counts(
          pops_map, cfg.shots, cfg.seed ^ static_cast<std::uint64_t>(cell_index));
      long long hit = 0;
      for (const std::uint32_t tgt : cfg.targets)
        hit += counts.at(index_to_bitstring(tgt, n));
      cell.success = static_cast<double>(hit) / static_cast<double>(cfg.shots);
      const RealVector pops = population_vector(traj.final_state);
      cell.populations.assign(pops.data(), pops.data() + pops.size());
      result.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return result;
}

double best_success(const SweepResult& r) {
  double best = 0.0;
  for (const SweepCell& c : r.cells) best = std::max(best, c.success);
  return best;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_run_csv(const RunReport& report, std::ostream& out) {
  out << "bitstring,probability,count\n";
  for (const auto& [bits, p] : report.exact_populations)
    out << bits << ',' << format_number(p) << ',' << report.counts.at(bits)
        << '\n';
}

void emit_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << result.axis1_name << ',' << result.axis2_name
      << ",success_probability";
  const Eigen::Index dim = Eigen::Index{1} << result.n_qubits;
  for (Eigen::Index b = 0; b < dim; ++b)
    out << ",p_"
        << index_to_bitstring(static_cast<std::uint32_t>(b), result.n_qubits);
  out << '\n';
  for (const SweepCell& c : result.cells) {
    out << format_number(c.v1) << ',' << format_number(c.v2) << ','
        << format_number(c.success);
    for (const double p : c.populations) out << ',' << format_number(p);
    out << '\n';
  }
}

void emit_trajectory_csv(const TrajectoryResult& result, int n_qubits,
                         std::ostream& out) {
  out << 'k';
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  for (Eigen::Index b = 0; b < dim; ++b)
    out << ",p_" << index_to_bitstring(static_cast<std::uint32_t>(b), n_qubits);
  out << '\n';
  for (std::size_t i = 0; i < result.sample_times.size(); ++i) {
    out << format_number(result.sample_times[i]);
    const RealVector& pops = result.population_series[i];
    for (Eigen::Index b = 0; b < pops.size(); ++b)
      out << ',' << format_number(pops[b]);
    out << '\n';
  }
}

void emit_diagram_csv(const EnergyDiagram& diagram, std::ostream& out) {
  out << "grid";
  for (Eigen::Index c = 0; c < diagram.levels.cols(); ++c)
    out << ",level_" << c;
  out << '\n';
  for (Eigen::Index i = 0; i < diagram.grid.size(); ++i) {
    out << format_number(diagram.grid[i]);
    for (Eigen::Index c = 0; c < diagram.levels.cols(); ++c)
      out << ',' << format_number(diagram.levels(i, c));
    out << '\n';
  }
}

namespace {

constexpr int kSvgWidth = 720;
constexpr int kSvgHeight = 480;
constexpr int kSvgMargin = 48;

double map_x(double v, double lo, double hi) {
  return kSvgMargin + (v - lo) / (hi - lo) * (kSvgWidth - 2 * kSvgMargin);
}

double map_y(double v, double lo, double hi) {
  return kSvgHeight - kSvgMargin -
         (v - lo) / (hi - lo) * (kSvgHeight - 2 * kSvgMargin);
}

const char* line_color(Eigen::Index i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors[i % 8];
}

void svg_header(std::ostream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth
      << "\" height=\"" << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth
      << ' ' << kSvgHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_polylines(const RealVector& xs, const RealMatrix& ys,
                   std::ostream& out) {
  const double xlo = xs.minCoeff(), xhi = xs.maxCoeff();
  double ylo = ys.minCoeff(), yhi = ys.maxCoeff();
  if (yhi <= ylo) yhi = ylo + 1.0;
  for (Eigen::Index c = 0; c < ys.cols(); ++c) {
    out << "<polyline fill=\"none\" stroke=\"" << line_color(c)
        << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < xs.size(); ++i)
      out << format_number(map_x(xs[i], xlo, xhi)) << ','
          << format_number(map_y(ys(i, c), ylo, yhi)) << ' ';
    out << "\"/>\n";
  }
  out << "<rect x=\"" << kSvgMargin << "\" y=\"" << kSvgMargin << "\" width=\""
      << kSvgWidth - 2 * kSvgMargin << "\" height=\""
      << kSvgHeight - 2 * kSvgMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

void emit_diagram_svg(const EnergyDiagram& diagram, std::ostream& out) {
  svg_header(out);
  svg_polylines(diagram.grid,
                diagram.curves ? *diagram.curves : diagram.levels, out);
  out << "</svg>\n";
}

void emit_trajectory_svg(const TrajectoryResult& result, int n_qubits,
                         std::ostream& out) {
  const auto points = static_cast<Eigen::Index>(result.sample_times.size());
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  RealVector xs(points);
  RealMatrix ys(points, dim);
  for (Eigen::Index i = 0; i < points; ++i) {
    xs[i] = result.sample_times[static_cast<std::size_t>(i)];
    ys.row(i) =
        result.population_series[static_cast<std::size_t>(i)].transpose();
  }
  svg_header(out);
  svg_polylines(xs, ys, out);
  out << "</svg>\n";
}

void emit_sweep_svg(const SweepResult& result, std::ostream& out) {
  const std::size_t n1 = result.axis1.size(), n2 = result.axis2.size();
  svg_header(out);
  const double cw = (kSvgWidth - 2.0 * kSvgMargin) / static_cast<double>(n1);
  const double ch = (kSvgHeight - 2.0 * kSvgMargin) / static_cast<double>(n2);
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const double s = result.cells[i1 * n2 + i2].success;
      const int r = static_cast<int>(255 * (1.0 - s));
      const int g = static_cast<int>(255 * (1.0 - 0.6 * s));
      out << "<rect x=\"" << format_number(kSvgMargin + cw * i1) << "\" y=\""
          << format_number(kSvgHeight - kSvgMargin - ch * (i2 + 1))
          << "\" width=\"" << format_number(cw) << "\" height=\""
          << format_number(ch) << "\" fill=\"rgb(" << r << ',' << g
          << ",255)\"/>\n";
    }
  out << "<rect x=\"" << kSvgMargin << "\" y=\"" << kSvgMargin << "\" width=\""
      << kSvgWidth - 2 * kSvgMargin << "\" height=\""
      << kSvgHeight - 2 * kSvgMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n</svg>\n";
}

}  // namespace esqa
