#include "esqa/schedule.hpp"

#include <stdexcept>

namespace esqa {

ScheduleWeights weights_at(double k, const ScheduleParams& p) {
  if (!validate(p).empty())
    throw std::invalid_argument("invalid schedule parameters");
  const double total = p.total();
  if (k < 0.0 || k > total)
    throw std::domain_error("k outside [0, t1+t2+t3]");

  double a;
  if (k <= p.t1)
    a = (1.0 - p.h_d) * (k / p.t1);
  else if (k <= p.t1 + p.t2)
    a = 1.0 - p.h_d;
  else
    // normalized form of the final ramp, conditioned against cancellation
    a = (1.0 - p.h_d) * ((total - k) / p.t3);

  double g;
  if (k <= p.t1)
    g = p.c_l;
  else if (k < p.t1 + p.t2)
    g = p.c_l * ((p.t1 + p.t2 - k) / p.t2);
  else
    g = 0.0;

  return {a, 1.0 - a, g};
}

std::pair<double, double> conventional_weights_at(double t,
                                                  const ConventionalParams& p) {
  if (p.annealing_time <= 0.0 || p.c_s <= 0.0)
    throw std::invalid_argument("invalid conventional parameters");
  if (t < 0.0 || t > p.annealing_time)
    throw std::domain_error("t outside [0, T]");
  const double s = t / p.annealing_time;
  return {1.0 - s, s * p.c_s};
}

std::vector<std::string> validate(const ScheduleParams& p) {
  std::vector<std::string> problems;
  if (!(p.t1 > 0.0)) problems.push_back("non-positive duration t1");
  if (!(p.t2 > 0.0)) problems.push_back("non-positive duration t2");
  if (!(p.t3 > 0.0)) problems.push_back("non-positive duration t3");
  if (!(p.h_d >= 0.0 && p.h_d <= 1.0)) problems.push_back("h_d out of range");
  if (!(p.c_l > 0.0)) problems.push_back("non-positive c_l");
  return problems;
}

}  // namespace esqa
