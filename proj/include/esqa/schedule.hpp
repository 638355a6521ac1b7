#pragma once

#include <string>
#include <utility>
#include <vector>

namespace esqa {

// Piecewise-linear reverse-annealing schedule:
//   A ramps 0 -> 1-h_d on [0, t1], holds, ramps back to 0 on the last leg;
//   B = 1 - A;
//   g holds C_L on [0, t1], ramps to 0 on [t1, t1+t2], stays 0 afterward.
struct ScheduleParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double h_d = 0.0;  // in [0, 1]; 1-h_d is the transverse-field cap
  double c_l = 0.0;  // initial longitudinal amplitude, > 0

  double total() const { return t1 + t2 + t3; }
};

struct ConventionalParams {
  double annealing_time = 0.0;  // T > 0
  double c_s = 0.0;             // problem-Hamiltonian amplitude, > 0
};

struct ScheduleWeights {
  double a = 0.0;
  double b = 0.0;  // always exactly 1 - a
  double g = 0.0;
};

// Valid for 0 <= k <= t1+t2+t3; throws std::domain_error outside.
ScheduleWeights weights_at(double k, const ScheduleParams& p);

// (1 - t/T, (t/T)*C_s) for 0 <= t <= T.
std::pair<double, double> conventional_weights_at(double t,
                                                  const ConventionalParams& p);

// Empty for valid params; otherwise named violations.
std::vector<std::string> validate(const ScheduleParams& p);

}  // namespace esqa
