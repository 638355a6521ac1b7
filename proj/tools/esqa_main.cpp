// Command-line experiment runner for the excited-state-search annealing
// simulator.  See README.md for usage examples.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esqa/dicke.hpp"
#include "esqa/harness.hpp"
#include "esqa/spectrum.hpp"
#include "esqa/svp.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::string format = "csv";
  long long shots = -1;
  long long seed = -1;
  double h_d = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_instance = true) {
  if (with_instance) {
    cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
    cmd->add_option("--preset", opts.preset,
                    "preset instance: two_qubit | svp_paper");
  }
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--format", opts.format, "csv | svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  cmd->add_option("--shots", opts.shots, "shot count override");
  cmd->add_option("--seed", opts.seed, "RNG seed override");
  cmd->add_option("--h-d", opts.h_d, "h_d override");
}

esqa::ExperimentConfig load_config(const CommonOpts& opts) {
  esqa::ExperimentConfig cfg;
  if (!opts.config_path.empty())
    cfg = esqa::config_from_json(read_file(opts.config_path));
  else if (!opts.preset.empty())
    cfg = esqa::preset_config(opts.preset);
  else
    throw CLI::ValidationError("need --config or --preset");
  if (opts.shots >= 1) cfg.shots = opts.shots;
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.h_d >= 0.0) cfg.schedule.h_d = opts.h_d;
  return cfg;
}

template <typename Emit>
std::string to_string_via(const Emit& emit) {
  std::ostringstream ss;
  emit(ss);
  return ss.str();
}

int cmd_run(const CommonOpts& opts) {
  const esqa::ExperimentConfig cfg = load_config(opts);
  const esqa::RunReport report = esqa::run(cfg);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "run.csv", to_string_via([&](std::ostream& s) {
               esqa::emit_run_csv(report, s);
             }));
  write_file(out / ("trajectory." + opts.format),
             to_string_via([&](std::ostream& s) {
               if (opts.format == "svg")
                 esqa::emit_trajectory_svg(report.trajectory,
                                           cfg.h_p.n_qubits(), s);
               else
                 esqa::emit_trajectory_csv(report.trajectory,
                                           cfg.h_p.n_qubits(), s);
             }));
  std::cout << "initial state      : "
            << esqa::index_to_bitstring(cfg.initial_state, cfg.h_p.n_qubits())
            << " (level " << report.initial_level_index
            << " of the k=0 Hamiltonian)\n"
            << "success (exact)    : "
            << esqa::format_number(report.success_exact) << '\n'
            << "success (sampled)  : "
            << esqa::format_number(report.success_sampled) << " at "
            << cfg.shots << " shots\n"
            << "outputs written to : " << out.string() << '\n';
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& axis1,
              const std::string& axis2) {
  esqa::ExperimentConfig cfg = load_config(opts);
  if (!cfg.sweep) {
    if (axis1.empty() || axis2.empty())
      throw CLI::ValidationError(
          "config has no sweep block; pass --axis1/--axis2 name=v1,v2,...");
    esqa::SweepSpec spec;
    for (auto [text, axis] :
         {std::pair{axis1, &spec.axis1}, std::pair{axis2, &spec.axis2}}) {
      const auto eq = text.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("axis format is name=v1,v2,...");
      axis->name = text.substr(0, eq);
      std::stringstream ss(text.substr(eq + 1));
      std::string item;
      while (std::getline(ss, item, ',')) axis->values.push_back(std::stod(item));
    }
    cfg.sweep = spec;
  }
  const esqa::SweepResult result = esqa::sweep(cfg);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "sweep.csv", to_string_via([&](std::ostream& s) {
               esqa::emit_sweep_csv(result, s);
             }));
  if (opts.format == "svg")
    write_file(out / "sweep.svg", to_string_via([&](std::ostream& s) {
                 esqa::emit_sweep_svg(result, s);
               }));
  std::cout << "cells              : " << result.cells.size() << '\n'
            << "best success       : "
            << esqa::format_number(esqa::best_success(result)) << '\n'
            << "config hash        : " << result.config_hash << '\n'
            << "outputs written to : " << out.string() << '\n';
  return 0;
}

int cmd_spectrum(const CommonOpts& opts, int grid_points) {
  const esqa::ExperimentConfig cfg = load_config(opts);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  const esqa::EnergyDiagram vs_g =
      esqa::diagram_vs_g(cfg.h_l, cfg.h_p,
                         esqa::linspace(0.0, cfg.schedule.c_l, grid_points),
                         /*track=*/true);
  const esqa::EnergyDiagram along = esqa::diagram_along_schedule(
      cfg.schedule, cfg.h_l, cfg.h_p, cfg.driver,
      esqa::linspace(0.0, cfg.schedule.total(), grid_points), /*track=*/true);

  for (auto [name, diagram] :
       {std::pair{"diagram_g", &vs_g}, std::pair{"diagram_schedule", &along}}) {
    write_file(out / (std::string(name) + "." + opts.format),
               to_string_via([&](std::ostream& s) {
                 if (opts.format == "svg")
                   esqa::emit_diagram_svg(*diagram, s);
                 else
                   esqa::emit_diagram_csv(*diagram, s);
               }));
  }
  const esqa::CrossingReport report = esqa::find_crossings(vs_g, 1e-9);
  for (const esqa::Crossing& c : report.crossings)
    std::cout << (c.kind == esqa::CrossingKind::exact_crossing ? "crossing"
                                                               : "avoided ")
              << "  levels (" << c.lower_level << ',' << c.lower_level + 1
              << ")  g = " << esqa::format_number(c.location)
              << "  gap = " << esqa::format_number(c.gap) << '\n';
  std::cout << "outputs written to : " << out.string() << '\n';
  return 0;
}

int cmd_svp(const std::string& input, const std::string& decode_bits,
            const CommonOpts& opts) {
  const esqa::SvpInstance inst = esqa::svp_instance_from_json(read_file(input));
  auto [model, enc] = esqa::encode(inst.gram, inst.k);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "ising.json", model.to_json() + "\n");

  if (!decode_bits.empty()) {
    const std::vector<int> c = esqa::decode(decode_bits, enc);
    std::cout << "decode(" << decode_bits << ") = (";
    for (std::size_t j = 0; j < c.size(); ++j)
      std::cout << (j ? ", " : "") << c[j];
    std::cout << ")\n";
  }
  if (inst.basis) {
    const auto [c, norm2] = esqa::brute_force_shortest(*inst.basis, inst.k);
    std::cout << "shortest vector    : c = (";
    for (std::size_t j = 0; j < c.size(); ++j)
      std::cout << (j ? ", " : "") << c[j];
    std::cout << "), |v|^2 = " << esqa::format_number(norm2) << '\n';
  }
  std::cout << "ground degeneracy  : "
            << esqa::degeneracy_count(inst.k, inst.gram.dimension()) << '\n'
            << "encoded model      : " << (out / "ising.json").string() << '\n';
  return 0;
}

int cmd_dicke(int n, int r, const std::string& svp_path) {
  const esqa::QuantumState rho = esqa::build_mixture(n);
  for (int rr = 0; rr <= n; ++rr)
    std::cout << "<W_" << rr << "|rho|W_" << rr
              << "> = " << esqa::format_number(
                     esqa::overlap(esqa::build_dicke(n, rr), rho))
              << (rr == 1 ? "   (single-flip mixture: 1/n)" : "") << '\n';
  (void)r;
  if (!svp_path.empty()) {
    const esqa::SvpInstance inst =
        esqa::svp_instance_from_json(read_file(svp_path));
    auto [model, enc] = esqa::encode(inst.gram, inst.k);
    esqa::DenseOperator full{model.n_qubits(),
                             esqa::ComplexMatrix::Zero(0, 0)};
    const esqa::RealVector e = esqa::diagonal_energies(model);
    full.mat = esqa::ComplexMatrix::Zero(e.size(), e.size());
    full.mat.diagonal() = e.cast<esqa::Complex>();
    const esqa::DenseOperator restricted =
        esqa::symmetric_restriction(full, enc);
    std::cout << "symmetric-subspace diagonal:";
    for (Eigen::Index i = 0; i < restricted.dim(); ++i)
      std::cout << ' '
                << esqa::format_number(restricted.mat(i, i).real());
    std::cout << '\n';
  }
  return 0;
}

int cmd_compare(const CommonOpts& opts, const std::string& t_values,
                const std::string& cs_values) {
  const esqa::ExperimentConfig cfg = load_config(opts);
  auto parse_list = [](const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return values;
  };
  const esqa::SweepResult result =
      esqa::compare_conventional(cfg, parse_list(t_values),
                                 parse_list(cs_values));
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "conventional.csv", to_string_via([&](std::ostream& s) {
               esqa::emit_sweep_csv(result, s);
             }));
  std::cout << "best success       : "
            << esqa::format_number(esqa::best_success(result)) << '\n'
            << "outputs written to : " << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"excited-state-search annealing simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, spectrum_opts, compare_opts, svp_opts;
  std::string axis1, axis2, svp_input, decode_bits, t_values, cs_values,
      dicke_svp;
  int grid_points = 401, dicke_n = 2, dicke_r = 1;

  CLI::App* c_run = app.add_subcommand("run", "single protocol run");
  add_common(c_run, run_opts);

  CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(c_sweep, sweep_opts);
  c_sweep->add_option("--axis1", axis1, "e.g. h_d=0,0.1,...");
  c_sweep->add_option("--axis2", axis2, "e.g. t2=5,10,20");

  CLI::App* c_spec = app.add_subcommand("spectrum", "energy diagrams");
  add_common(c_spec, spectrum_opts);
  c_spec->add_option("--grid", grid_points, "grid points (default 401)");

  CLI::App* c_svp = app.add_subcommand("svp", "encode/decode/oracle");
  c_svp->add_option("--input", svp_input, "SVP instance JSON")->required();
  c_svp->add_option("--decode", decode_bits, "bitstring to decode");
  add_common(c_svp, svp_opts, /*with_instance=*/false);

  CLI::App* c_cmp =
      app.add_subcommand("compare-conventional", "forward-QA baseline");
  add_common(c_cmp, compare_opts);
  c_cmp->add_option("--t-values", t_values, "annealing times")
      ->default_val("0.5,1,2,5,10");
  c_cmp->add_option("--cs-values", cs_values, "C_s values")
      ->default_val("0.5,1,2,4,8");

  CLI::App* c_dicke = app.add_subcommand("dicke", "Dicke-state checks");
  c_dicke->add_option("--n", dicke_n, "qubit count")->default_val(2);
  c_dicke->add_option("--r", dicke_r, "excitation number")->default_val(1);
  c_dicke->add_option("--svp", dicke_svp, "SVP instance for the restriction");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return cmd_run(run_opts);
    if (c_sweep->parsed()) return cmd_sweep(sweep_opts, axis1, axis2);
    if (c_spec->parsed()) return cmd_spectrum(spectrum_opts, grid_points);
    if (c_svp->parsed()) return cmd_svp(svp_input, decode_bits, svp_opts);
    if (c_cmp->parsed()) return cmd_compare(compare_opts, t_values, cs_values);
    if (c_dicke->parsed()) return cmd_dicke(dicke_n, dicke_r, dicke_svp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
