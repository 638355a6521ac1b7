#include "esqa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace esqa {

namespace {

void check_monotone(const RealVector& grid) {
  if (grid.size() < 1) throw std::invalid_argument("empty grid");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("grid must be strictly increasing");
}

RealVector sorted(RealVector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Greedy maximum-overlap assignment of current eigenvectors to the
// previous point's curves.
std::vector<int> match_by_overlap(const ComplexMatrix& prev,
                                  const ComplexMatrix& cur) {
  const Eigen::Index dim = prev.cols();
  const RealMatrix overlap = (prev.adjoint() * cur).cwiseAbs();
  std::vector<std::pair<double, std::pair<int, int>>> entries;
  entries.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index p = 0; p < dim; ++p)
      entries.push_back({overlap(p, c), {static_cast<int>(p),
                                         static_cast<int>(c)}});
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;  // deterministic at exact ties
  });
  std::vector<int> curve_of(static_cast<std::size_t>(dim), -1);
  std::vector<bool> curve_used(static_cast<std::size_t>(dim), false);
  Eigen::Index assigned = 0;
  for (const auto& [w, pc] : entries) {
    if (assigned == dim) break;
    const auto [p, c] = pc;
    if (curve_used[static_cast<std::size_t>(p)] ||
        curve_of[static_cast<std::size_t>(c)] >= 0)
      continue;
    curve_of[static_cast<std::size_t>(c)] = p;
    curve_used[static_cast<std::size_t>(p)] = true;
    ++assigned;
  }
  return curve_of;
}

}  // namespace

RealVector linspace(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw std::invalid_argument("bad linspace");
  RealVector v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
  v[count - 1] = hi;
  return v;
}

std::pair<RealVector, ComplexMatrix> spectrum_at(const DenseOperator& h) {
  const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
  if ((h.mat - h.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  ComplexMatrix vecs = es.eigenvectors();
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index imax = 0;
    vecs.col(c).cwiseAbs().maxCoeff(&imax);
    const Complex z = vecs(imax, c);
    if (std::abs(z) > 0.0) vecs.col(c) *= std::conj(z) / std::abs(z);
  }
  return {es.eigenvalues(), std::move(vecs)};
}

EnergyDiagram diagram_vs_g(const IsingModel& h_l, const IsingModel& h_p,
                           const RealVector& g_grid, bool track) {
  check_monotone(g_grid);
  if (h_l.n_qubits() != h_p.n_qubits())
    throw std::invalid_argument("H_L and H_P qubit counts differ");
  const RealVector e_l = diagonal_energies(h_l);
  const RealVector e_p = diagonal_energies(h_p);
  const Eigen::Index dim = e_l.size();

  EnergyDiagram d;
  d.grid = g_grid;
  d.levels.resize(g_grid.size(), dim);
  if (track) d.curves = RealMatrix(g_grid.size(), dim);

  // curve identity for a diagonal pencil is the basis state itself;
  // order curves by their energy at the first grid point
  std::vector<int> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  const RealVector first = g_grid[0] * e_l + e_p;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return first[x] < first[y]; });

  for (Eigen::Index i = 0; i < g_grid.size(); ++i) {
    const RealVector e = g_grid[i] * e_l + e_p;
    d.levels.row(i) = sorted(e).transpose();
    if (track)
      for (Eigen::Index c = 0; c < dim; ++c)
        (*d.curves)(i, c) = e[order[static_cast<std::size_t>(c)]];
  }
  return d;
}

EnergyDiagram diagram_along_schedule(const ScheduleParams& params,
                                     const IsingModel& h_l,
                                     const IsingModel& h_p,
                                     const DriverSpec& driver,
                                     const RealVector& k_grid, bool track) {
  check_monotone(k_grid);
  if (k_grid[0] < 0.0 || k_grid[k_grid.size() - 1] > params.total())
    throw std::invalid_argument("grid outside the schedule duration");
  const DenseOperator drv = build_driver(driver);
  const Eigen::Index dim = drv.dim();

  EnergyDiagram d;
  d.grid = k_grid;
  d.levels.resize(k_grid.size(), dim);
  if (track) d.curves = RealMatrix(k_grid.size(), dim);

  ComplexMatrix prev_vecs;
  std::vector<int> curve_of;  // column -> curve label
  for (Eigen::Index i = 0; i < k_grid.size(); ++i) {
    const ScheduleWeights w = weights_at(k_grid[i], params);
    RealVector evals;
    ComplexMatrix evecs;
    if (w.a == 0.0) {
      // diagonal point: the spectrum is the sorted diagonal, exactly
      const RealVector e =
          w.b * (w.g * diagonal_energies(h_l) + diagonal_energies(h_p));
      std::vector<int> order(static_cast<std::size_t>(dim));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return e[x] < e[y]; });
      evals.resize(dim);
      evecs = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        evals[c] = e[order[static_cast<std::size_t>(c)]];
        evecs(order[static_cast<std::size_t>(c)], c) = 1.0;
      }
    } else {
      std::tie(evals, evecs) = spectrum_at(assemble(w.a, w.b, w.g, drv, h_l, h_p));
    }
    d.levels.row(i) = evals.transpose();
    if (track) {
      if (i == 0) {
        curve_of.resize(static_cast<std::size_t>(dim));
        std::iota(curve_of.begin(), curve_of.end(), 0);
      } else {
        const std::vector<int> prev_of = match_by_overlap(prev_vecs, evecs);
        std::vector<int> next(static_cast<std::size_t>(dim));
        for (Eigen::Index c = 0; c < dim; ++c)
          next[static_cast<std::size_t>(c)] =
              curve_of[static_cast<std::size_t>(
                  prev_of[static_cast<std::size_t>(c)])];
        curve_of = std::move(next);
      }
      for (Eigen::Index c = 0; c < dim; ++c)
        (*d.curves)(i, curve_of[static_cast<std::size_t>(c)]) = evals[c];
      prev_vecs = evecs;
    }
  }
  return d;
}

CrossingReport find_crossings(const EnergyDiagram& d, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  CrossingReport report;
  const Eigen::Index points = d.grid.size();
  const Eigen::Index dim = d.levels.cols();
  if (points < 3) return report;

  for (Eigen::Index level = 0; level + 1 < dim; ++level) {
    const RealVector gap = d.levels.col(level + 1) - d.levels.col(level);
    for (Eigen::Index j = 1; j + 1 < points; ++j) {
      if (!(gap[j] < gap[j - 1] && gap[j] <= gap[j + 1])) continue;

      // quadratic fit through the bracketing triple
      const double x0 = d.grid[j - 1], x1 = d.grid[j], x2 = d.grid[j + 1];
      const double y0 = gap[j - 1], y1 = gap[j], y2 = gap[j + 1];
      const double d01 = (y1 - y0) / (x1 - x0);
      const double d12 = (y2 - y1) / (x2 - x1);
      const double curv = (d12 - d01) / (x2 - x0);
      double loc = x1;
      double min_gap = y1;
      if (curv > 0.0) {
        const double vertex = 0.5 * (x0 + x1 - d01 / curv);
        if (vertex >= x0 && vertex <= x2) {
          loc = vertex;
          const double fitted =
              y0 + d01 * (vertex - x0) + curv * (vertex - x0) * (vertex - x1);
          min_gap = std::min(y1, std::max(0.0, fitted));
        }
      }
      Crossing c;
      c.location = loc;
      c.lower_level = static_cast<int>(level);
      c.gap = min_gap;
      c.kind = min_gap < tol ? CrossingKind::exact_crossing
                             : CrossingKind::avoided_crossing_minimum;
      report.crossings.push_back(c);
    }
  }
  return report;
}

}  // namespace esqa
