#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "esqa/ising.hpp"
#include "esqa/schedule.hpp"

namespace esqa {

struct EnergyDiagram {
  RealVector grid;    // strictly monotone parameter values (g or k)
  RealMatrix levels;  // grid x dim, each row sorted ascending
  // Optional overlap-tracked curves: column c follows one adiabatically
  // connected level, labeled by its position in the first row.
  std::optional<RealMatrix> curves;
};

enum class CrossingKind { exact_crossing, avoided_crossing_minimum };

struct Crossing {
  double location = 0.0;   // refined grid coordinate
  int lower_level = 0;     // gap between levels (lower_level, lower_level+1)
  double gap = 0.0;
  CrossingKind kind = CrossingKind::exact_crossing;
};

struct CrossingReport {
  std::vector<Crossing> crossings;
};

// Full dense Hermitian eigendecomposition, eigenvalues ascending.
// Eigenvector phases are fixed so the largest-magnitude component is real
// and positive.  Throws on non-Hermitian input.
std::pair<RealVector, ComplexMatrix> spectrum_at(const DenseOperator& h);

// Eigenvalues of g*H_L + H_P per grid point (diagonal, so exact).
EnergyDiagram diagram_vs_g(const IsingModel& h_l, const IsingModel& h_p,
                           const RealVector& g_grid, bool track = false);

// Eigenvalues of the fully assembled H(k) per grid point.
EnergyDiagram diagram_along_schedule(const ScheduleParams& params,
                                     const IsingModel& h_l,
                                     const IsingModel& h_p,
                                     const DriverSpec& driver,
                                     const RealVector& k_grid,
                                     bool track = false);

// Scans each adjacent-level gap for interior local minima, refines the
// location by a local quadratic fit, and classifies the feature as an
// exact crossing when the refined gap falls below tol.
CrossingReport find_crossings(const EnergyDiagram& d, double tol);

RealVector linspace(double lo, double hi, int count);

}  // namespace esqa
