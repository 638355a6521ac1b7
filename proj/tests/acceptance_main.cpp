// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "esqa/dicke.hpp"
#include "esqa/dynamics.hpp"
#include "esqa/harness.hpp"
#include "esqa/ising.hpp"
#include "esqa/schedule.hpp"
#include "esqa/spectrum.hpp"
#include "esqa/svp.hpp"

using namespace esqa;

namespace {

int failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d  %-28s %s\n", ok ? "PASS" : "FAIL", number,
              title, detail.c_str());
  if (!ok) ++failures;
}

LatticeBasis skewed_basis() {
  LatticeBasis b;
  b.vectors.push_back(Eigen::Vector2d(1.0, 0.0));
  b.vectors.push_back(Eigen::Vector2d(1.3 * std::cos(M_PI / 10.0),
                                      1.3 * std::sin(M_PI / 10.0)));
  return b;
}

std::string num(double v) { return format_number(v); }

// ---- criterion 1: schedule exactness ------------------------------------

void criterion_1() {
  const ScheduleParams p{2.0, 20.0, 2.0, 0.7, 4.0};
  bool ok = true;
  const ScheduleWeights w0 = weights_at(0.0, p);
  ok &= w0.a == 0.0 && w0.b == 1.0 && w0.g == p.c_l;
  const ScheduleWeights w1 = weights_at(p.t1, p);
  ok &= std::abs(w1.a - 0.3) < 1e-15 && w1.g == p.c_l;
  const ScheduleWeights w2 = weights_at(p.t1 + p.t2, p);
  ok &= std::abs(w2.a - 0.3) < 1e-15 && w2.g == 0.0;
  const ScheduleWeights w3 = weights_at(p.total(), p);
  ok &= w3.a == 0.0 && w3.b == 1.0 && w3.g == 0.0;

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, p.total());
  for (int i = 0; i < 10000; ++i) {
    const ScheduleWeights w = weights_at(u(rng), p);
    if (w.b != 1.0 - w.a) {
      ok = false;
      break;
    }
  }
  report(1, "schedule exactness", ok, "endpoints exact, b = 1 - a exact");
}

// ---- criterion 2: two-qubit spectrum ------------------------------------

void criterion_2() {
  IsingModel h_l(2), h_p(2);
  h_l.set_field(1, 2.0);
  h_l.set_field(2, -1.0);
  h_p.set_coupling(1, 2, -1.0);
  const RealVector grid = linspace(0.0, 4.0, 401);
  const EnergyDiagram d = diagram_vs_g(h_l, h_p, grid);

  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double g = grid(i);
    std::array<double, 4> lines{g - 1.0, 3.0 * g + 1.0, -3.0 * g + 1.0,
                                -g - 1.0};
    std::sort(lines.begin(), lines.end());
    for (int l = 0; l < 4; ++l)
      worst = std::max(worst, std::abs(d.levels(i, l) - lines[l]));
  }

  double location = 1e300;
  const CrossingReport crossings = find_crossings(d, 1e-9);
  for (const Crossing& c : crossings.crossings)
    if (c.kind == CrossingKind::exact_crossing &&
        std::abs(c.location - 0.5) < std::abs(location - 0.5))
      location = c.location;

  const bool ok = worst < 1e-10 && std::abs(location - 0.5) < 1e-6;
  report(2, "two-qubit spectrum", ok,
         "max line error " + num(worst) + ", crossing at " + num(location));
}

// ---- criterion 3: freezing regime ---------------------------------------

void criterion_3() {
  bool ok = true;
  for (const char* name : {"two_qubit", "svp_paper"}) {
    ExperimentConfig cfg = preset_config(name);
    cfg.schedule.h_d = 1.0;
    const RunReport r = run(cfg);
    const std::string init =
        index_to_bitstring(cfg.initial_state, cfg.h_p.n_qubits());
    for (const auto& [bits, p] : r.exact_populations)
      ok &= p == (bits == init ? 1.0 : 0.0);  // bit-exact freezing
  }
  report(3, "freezing regime", ok, "h_d = 1 populations exactly preserved");
}

// ---- criterion 4: adiabatic success -------------------------------------

double g_adiabatic_success = 0.0;

void criterion_4() {
  ExperimentConfig cfg = preset_config("two_qubit");
  cfg.propagation.mode = EvolutionMode::closed;
  cfg.schedule.t2 = 200.0;
  const RunReport coarse = run(cfg);
  cfg.propagation.dt /= 2.0;
  const RunReport fine = run(cfg);

  double drift = 0.0;
  for (const auto& [bits, p] : coarse.exact_populations)
    drift = std::max(drift, std::abs(p - fine.exact_populations.at(bits)));

  g_adiabatic_success = coarse.success_exact;
  const bool ok = coarse.success_exact >= 0.9 && drift < 1e-4;
  report(4, "adiabatic success", ok,
         "success " + num(coarse.success_exact) + ", dt/2 drift " + num(drift));
}

// ---- criterion 5: relaxation regime -------------------------------------

void criterion_5() {
  ExperimentConfig cfg = preset_config("two_qubit");
  cfg.propagation.relaxation_rate = 5.0;
  const RunReport r = run(cfg);
  const double ground =
      r.exact_populations.at("00") + r.exact_populations.at("11");
  report(5, "relaxation regime", ground >= 0.95,
         "ground-pair weight " + num(ground) + " at kappa = 5");
}

// ---- criterion 6: interior optimum --------------------------------------

void criterion_6() {
  ExperimentConfig cfg = preset_config("two_qubit");
  SweepSpec spec;
  for (int i = 0; i <= 10; ++i) spec.axis1.values.push_back(i / 10.0);
  spec.axis1.name = "h_d";
  spec.axis2 = {"t2", {cfg.schedule.t2}};
  cfg.sweep = spec;
  const SweepResult s = sweep(cfg);

  std::size_t best = 0;
  for (std::size_t i = 1; i < s.cells.size(); ++i)
    if (s.cells[i].success_exact > s.cells[best].success_exact) best = i;
  const double lo = s.cells.front().success_exact;
  const double hi = s.cells.back().success_exact;
  const double peak = s.cells[best].success_exact;
  const bool interior = best > 0 && best + 1 < s.cells.size();
  const bool ok = interior && peak > lo && peak > hi;
  report(6, "interior optimum", ok,
         "peak " + num(peak) + " at h_d = " + num(s.cells[best].v1) +
             " vs endpoints " + num(lo) + " / " + num(hi));
}

// ---- criterion 7: SVP oracle equivalence --------------------------------

void criterion_7() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);

  const auto check_instance = [&](const LatticeBasis& basis) {
    const GramMatrix g = gram(basis);
    const auto [model, enc] = encode(g, 1);
    const RealVector e = diagonal_energies(model);
    const auto [c_best, norm2] = brute_force_shortest(basis, 1);
    double best = 1e300;
    for (std::uint32_t b = 0; b < 16; ++b) {
      const std::vector<int> c = decode(b, enc);
      if (c[0] != 0 || c[1] != 0) best = std::min(best, e(b));
    }
    return std::abs(best - norm2) < 1e-9;
  };

  for (int trial = 0; trial < 50 && ok; ++trial) {
    LatticeBasis b;
    do {
      b.vectors.clear();
      b.vectors.push_back(Eigen::Vector2d(u(rng), u(rng)));
      b.vectors.push_back(Eigen::Vector2d(u(rng), u(rng)));
    } while (std::abs(b.vectors[0].x() * b.vectors[1].y() -
                      b.vectors[0].y() * b.vectors[1].x()) < 0.1);
    ok &= check_instance(b);
  }

  const LatticeBasis skewed = skewed_basis();
  ok &= check_instance(skewed);
  const auto [c_best, norm2] = brute_force_shortest(skewed, 1);
  const double expected = 1.0 + 1.69 - 2.0 * 1.3 * std::cos(M_PI / 10.0);
  ok &= std::abs(norm2 - expected) < 1e-12;
  ok &= c_best == std::vector<int>{-1, 1};
  // every minimizing nonzero basis state decodes to +-(1, -1)
  const auto [model, enc] = encode(gram(skewed), 1);
  const RealVector e = diagonal_energies(model);
  for (std::uint32_t b = 0; b < 16; ++b) {
    const std::vector<int> c = decode(b, enc);
    if ((c[0] != 0 || c[1] != 0) && std::abs(e(b) - expected) < 1e-9)
      ok &= (c == std::vector<int>{1, -1} || c == std::vector<int>{-1, 1});
  }
  report(7, "SVP oracle equivalence", ok,
         "min nonzero norm^2 " + num(norm2) + " over 51 instances");
}

// ---- criterion 8: degeneracy structure ----------------------------------

void criterion_8() {
  const auto [model, enc] = encode(gram(skewed_basis()), 1);
  const RealVector e = diagonal_energies(model);
  const double e_min = e.minCoeff();
  int count = 0;
  bool zeros = true;
  for (std::uint32_t b = 0; b < 16; ++b)
    if (e(b) < e_min + 1e-9) {
      ++count;
      zeros &= decode(b, enc) == std::vector<int>{0, 0};
    }
  const bool ok = count == degeneracy_count(1, 2) && count == 4 && zeros;
  report(8, "degeneracy structure", ok,
         std::to_string(count) + " ground states, all decoding to (0, 0)");
}

// ---- criterion 9: field-ordering condition ------------------------------

// Sorted order of the 2^k lowest levels of h_l + h_p matches the order the
// control field alone assigns to those basis states.
bool ordering_preserved(const IsingModel& h_l, const IsingModel& h_p, int k) {
  const RealVector e_l = diagonal_energies(h_l);
  RealVector e_total = e_l + diagonal_energies(h_p);
  std::vector<int> order(static_cast<std::size_t>(e_total.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return e_total[a] < e_total[b]; });
  const int levels = 1 << k;
  std::vector<int> lowest(order.begin(), order.begin() + levels);
  std::vector<int> by_field = lowest;
  std::sort(by_field.begin(), by_field.end(),
            [&](int a, int b) { return e_l[a] < e_l[b]; });
  return lowest == by_field;
}

void criterion_9() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int n = 2 + trial % 2;  // n = k keeps the field spectrum simple
    const int k = n;
    const double h = 1.0;
    const IsingModel h_l = resolving_fields(n, k, h);
    IsingModel h_p(n);
    // scale random couplings until sum |J| < h holds strictly
    std::vector<double> raw;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) raw.push_back(u(rng));
    double total = 0.0;
    for (const double v : raw) total += std::abs(v);
    const double scale = 0.9 * h / std::max(total, 1e-9);
    std::size_t idx = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) h_p.set_coupling(i, j, raw[idx++] * scale);
    if (!check_condition(h_p, h)) {
      ok = false;
      break;
    }
    ok &= ordering_preserved(h_l, h_p, k);
  }

  // constructed violator: J strong enough to reshuffle the lowest levels
  const IsingModel h_l = resolving_fields(2, 2, 1.0);
  IsingModel strong(2);
  strong.set_coupling(1, 2, -5.0);
  const bool violated =
      !check_condition(strong, 1.0) && !ordering_preserved(h_l, strong, 2);
  report(9, "field-ordering condition", ok && violated,
         "100 conforming instances hold, strong-coupling instance breaks");
}

// ---- criterion 10: Dicke checks -----------------------------------------

void criterion_10() {
  bool ok = true;
  for (const int n : {2, 4, 6})
    ok &= std::abs(overlap(build_dicke(n, 1), build_mixture(n)) - 1.0 / n) <
          1e-10;

  const GramMatrix g = gram(skewed_basis());
  const auto [model, enc] = encode(g, 1);
  DenseOperator full{4, ComplexMatrix::Zero(16, 16)};
  full.mat.diagonal() = diagonal_energies(model).cast<Complex>();
  const DenseOperator sub = symmetric_restriction(full, enc);
  ComplexMatrix off = sub.mat;
  off.diagonal().setZero();
  ok &= off.cwiseAbs().maxCoeff() < 1e-12;
  RealVector diag = sub.mat.diagonal().real();
  std::sort(diag.data(), diag.data() + diag.size());
  const double expected = 1.0 + 1.69 - 2.0 * 1.3 * std::cos(M_PI / 10.0);
  ok &= std::abs(diag(1) - expected) < 1e-9;

  report(10, "Dicke checks", ok,
         "overlap(W_1, rho) = 1/n; restriction diagonal, first excited " +
             num(diag(1)) +
             " (note: the quoted 1/r overlap formula is inconsistent with "
             "normalized Dicke states and is not asserted)");
}

// ---- criterion 11: conventional baseline --------------------------------

void criterion_11() {
  ExperimentConfig cfg = preset_config("two_qubit");
  cfg.propagation.dt = 0.005;
  cfg.shots = 1000;
  const SweepResult s = compare_conventional(cfg, {0.5, 1.0, 2.0, 5.0, 10.0},
                                             {0.5, 1.0, 2.0, 4.0, 8.0});
  double best = 0.0;
  for (const SweepCell& c : s.cells) best = std::max(best, c.success_exact);
  const bool ok = best < g_adiabatic_success;
  report(11, "conventional baseline", ok,
         "grid max " + num(best) + " < tuned success " +
             num(g_adiabatic_success));
}

// ---- criterion 12: determinism ------------------------------------------

void criterion_12() {
  ExperimentConfig cfg = preset_config("two_qubit");
  cfg.propagation.mode = EvolutionMode::closed;
  cfg.shots = 1000;

  std::ostringstream run_a, run_b;
  emit_run_csv(run(cfg), run_a);
  emit_run_csv(run(cfg), run_b);

  SweepSpec spec;
  spec.axis1 = {"h_d", {0.5, 0.7, 0.9}};
  spec.axis2 = {"t2", {10.0, 20.0}};
  cfg.sweep = spec;
  std::ostringstream sweep_a, sweep_b;
  emit_sweep_csv(sweep(cfg), sweep_a);
  emit_sweep_csv(sweep(cfg), sweep_b);

  const bool ok = run_a.str() == run_b.str() && sweep_a.str() == sweep_b.str();
  report(12, "determinism", ok, "repeated runs emit byte-identical CSV");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
