#include "esqa/dynamics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace esqa {

namespace {

struct StepWeights {
  double a = 0.0;
  double b = 0.0;
  double g = 0.0;
  double relax_scale = 0.0;  // multiplies the relaxation rate
};

using WeightFn = std::function<StepWeights(double)>;

struct Parts {
  DenseOperator driver;
  RealVector e_l;
  RealVector e_p;
};

// Bound on ||H(k)||_inf over the protocol, used for the dt check.
double norm_bound(const Parts& parts, double a_max, double g_max) {
  double diag_max = 0.0;
  for (const double g : {0.0, g_max}) {
    const RealVector e = g * parts.e_l + parts.e_p;
    diag_max = std::max(diag_max, e.cwiseAbs().maxCoeff());
  }
  const double driver_norm =
      parts.driver.mat.cwiseAbs().rowwise().sum().maxCoeff();
  return a_max * driver_norm + diag_max;
}

void check_step_size(double dt, const Parts& parts, double a_max,
                     double g_max) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double bound = norm_bound(parts, a_max, g_max);
  if (dt * bound > 0.1)
    throw std::invalid_argument(
        "step-size violation: dt * ||H||_max exceeds 0.1 (need dt <= " +
        std::to_string(0.1 / std::max(bound, 1e-300)) + ")");
}

int sample_stride(long long steps, int max_samples) {
  if (max_samples < 2) max_samples = 2;
  return static_cast<int>(
      std::max<long long>(1, (steps + max_samples - 2) / (max_samples - 1)));
}

TrajectoryResult propagate_closed(ComplexVector psi, int n_qubits,
                                  const WeightFn& weights, double duration,
                                  const Parts& parts,
                                  const PropagationConfig& cfg) {
  const long long steps =
      std::max<long long>(1, static_cast<long long>(std::ceil(duration / cfg.dt)));
  const double h = duration / static_cast<double>(steps);
  const int stride = sample_stride(steps, cfg.max_samples);

  TrajectoryResult result;
  // Populations are carried alongside the amplitudes: a diagonal step is a
  // pure phase and provably leaves them unchanged, so they are only
  // recomputed after mixing steps.
  RealVector pops = psi.cwiseAbs2();
  result.sample_times.push_back(0.0);
  result.population_series.push_back(pops);

  const Eigen::Index dim = psi.size();
  for (long long step = 0; step < steps; ++step) {
    const double k_mid = (static_cast<double>(step) + 0.5) * h;
    const StepWeights w = weights(k_mid);
    const RealVector diag = w.b * (w.g * parts.e_l + parts.e_p);
    if (w.a == 0.0) {
      for (Eigen::Index i = 0; i < dim; ++i)
        psi[i] *= std::polar(1.0, -diag[i] * h);
    } else {
      ComplexMatrix ham = w.a * parts.driver.mat;
      ham.diagonal() += diag.cast<Complex>();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ham);
      ComplexVector phases(dim);
      for (Eigen::Index i = 0; i < dim; ++i)
        phases[i] = std::polar(1.0, -es.eigenvalues()[i] * h);
      psi = es.eigenvectors() *
            phases.cwiseProduct(es.eigenvectors().adjoint() * psi);
      pops = psi.cwiseAbs2();
    }
    if ((step + 1) % stride == 0 || step + 1 == steps) {
      result.sample_times.push_back(static_cast<double>(step + 1) * h);
      result.population_series.push_back(pops);
    }
  }

  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::runtime_error("closed evolution lost normalization");
  result.final_state = QuantumState::pure(n_qubits, std::move(psi));
  return result;
}

TrajectoryResult propagate_open(ComplexMatrix rho, int n_qubits,
                                const WeightFn& weights, double duration,
                                const Parts& parts,
                                const PropagationConfig& cfg) {
  const long long steps =
      std::max<long long>(1, static_cast<long long>(std::ceil(duration / cfg.dt)));
  const double h = duration / static_cast<double>(steps);
  const int stride = sample_stride(steps, cfg.max_samples);
  const Eigen::Index dim = rho.rows();
  const double kappa = cfg.relaxation_rate;
  const double gamma_phi = cfg.dephasing_rate;

  TrajectoryResult result;
  result.sample_times.push_back(0.0);
  result.population_series.push_back(rho.diagonal().real());

  for (long long step = 0; step < steps; ++step) {
    const double k_mid = (static_cast<double>(step) + 0.5) * h;
    const StepWeights w = weights(k_mid);
    const RealVector diag = w.b * (w.g * parts.e_l + parts.e_p);
    const double rate = kappa * w.relax_scale;

    if (w.a == 0.0 && rate == 0.0) {
      // diagonal Hamiltonian, eigenbasis = computational basis:
      // coherences rotate and dephase, populations are untouched
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
          if (r == c) continue;
          rho(r, c) *= std::polar(std::exp(-gamma_phi * h),
                                  -(diag[r] - diag[c]) * h);
        }
    } else {
      ComplexMatrix ham = w.a * parts.driver.mat;
      ham.diagonal() += diag.cast<Complex>();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ham);
      const RealVector& evals = es.eigenvalues();
      const ComplexMatrix& vecs = es.eigenvectors();
      ComplexMatrix r_eig = vecs.adjoint() * rho * vecs;

      // group degenerate levels (energy-resolved jumps)
      const double level_tol =
          1e-9 * std::max(1.0, evals.cwiseAbs().maxCoeff());
      std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;  // [lo, hi)
      for (Eigen::Index lo = 0; lo < dim;) {
        Eigen::Index hi = lo + 1;
        while (hi < dim && evals[hi] - evals[lo] <= level_tol) ++hi;
        groups.push_back({lo, hi});
        lo = hi;
      }

      RealVector out_rate = RealVector::Zero(dim);
      if (rate > 0.0) {
        RealMatrix r_mat = RealMatrix::Zero(dim, dim);
        for (std::size_t gu = 0; gu < groups.size(); ++gu) {
          // total rate into each strictly lower level group, split
          // equally over its orthonormal basis
          double total_out = 0.0;
          for (std::size_t gl = 0; gl < gu; ++gl) {
            const double mult =
                static_cast<double>(groups[gl].second - groups[gl].first);
            for (Eigen::Index u = groups[gu].first; u < groups[gu].second; ++u)
              for (Eigen::Index l = groups[gl].first; l < groups[gl].second;
                   ++l)
                r_mat(l, u) += rate / mult;
            total_out += rate;
          }
          for (Eigen::Index u = groups[gu].first; u < groups[gu].second; ++u) {
            r_mat(u, u) -= total_out;
            out_rate[u] = total_out;
          }
        }
        const RealVector p_new =
            (r_mat * h).exp() * r_eig.diagonal().real();
        for (Eigen::Index i = 0; i < dim; ++i) r_eig(i, i) = p_new[i];
      }

      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
          if (r == c) continue;
          const double decay =
              0.5 * (out_rate[r] + out_rate[c]) + gamma_phi;
          r_eig(r, c) *= std::polar(std::exp(-decay * h),
                                    -(evals[r] - evals[c]) * h);
        }
      rho = vecs * r_eig * vecs.adjoint();
    }

    if ((step + 1) % stride == 0 || step + 1 == steps) {
      result.sample_times.push_back(static_cast<double>(step + 1) * h);
      result.population_series.push_back(rho.diagonal().real());
    }
  }

  if (std::abs(rho.trace().real() - 1.0) > 1e-6 ||
      std::abs(rho.trace().imag()) > 1e-6)
    throw std::runtime_error("open evolution lost trace normalization");
  {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho,
                                                    Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw std::runtime_error("open evolution lost positivity");
  }
  result.final_state = QuantumState::mixed(n_qubits, std::move(rho));
  return result;
}

Parts make_parts(const IsingModel& h_l, const IsingModel& h_p,
                 const DriverSpec& driver) {
  if (driver.n_qubits != h_l.n_qubits() || driver.n_qubits != h_p.n_qubits())
    throw std::invalid_argument("qubit counts differ");
  return {build_driver(driver), diagonal_energies(h_l),
          diagonal_energies(h_p)};
}

WeightFn schedule_weights(const ScheduleParams& params,
                          const PropagationConfig& cfg) {
  const double cap = 1.0 - params.h_d;
  const bool scaled =
      cfg.relaxation_scaling == RelaxationScaling::proportional_to_a;
  return [params, cap, scaled](double k) {
    const ScheduleWeights w = weights_at(k, params);
    StepWeights sw{w.a, w.b, w.g, 1.0};
    if (scaled) sw.relax_scale = cap > 0.0 ? w.a / cap : 0.0;
    return sw;
  };
}

}  // namespace

TrajectoryResult evolve_closed(const QuantumState& initial,
                               const ScheduleParams& params,
                               const IsingModel& h_l, const IsingModel& h_p,
                               const DriverSpec& driver,
                               const PropagationConfig& cfg) {
  if (initial.kind() != QuantumState::Kind::pure)
    throw std::invalid_argument("evolve_closed needs a pure state");
  initial.validate();
  const Parts parts = make_parts(h_l, h_p, driver);
  check_step_size(cfg.dt, parts, 1.0 - params.h_d, params.c_l);
  return propagate_closed(initial.psi(), initial.n_qubits(),
                          schedule_weights(params, cfg), params.total(), parts,
                          cfg);
}

TrajectoryResult evolve_open(const QuantumState& initial,
                             const ScheduleParams& params,
                             const IsingModel& h_l, const IsingModel& h_p,
                             const DriverSpec& driver,
                             const PropagationConfig& cfg) {
  if (initial.n_qubits() > kMaxQubitsMixed)
    throw std::length_error("open-system evolution capped at 8 qubits");
  initial.validate();
  ComplexMatrix rho;
  if (initial.kind() == QuantumState::Kind::pure)
    rho = initial.psi() * initial.psi().adjoint();
  else
    rho = initial.rho();
  const Parts parts = make_parts(h_l, h_p, driver);
  check_step_size(cfg.dt, parts, 1.0 - params.h_d, params.c_l);
  return propagate_open(std::move(rho), initial.n_qubits(),
                        schedule_weights(params, cfg), params.total(), parts,
                        cfg);
}

TrajectoryResult evolve_conventional(const QuantumState& initial,
                                     const ConventionalParams& params,
                                     const IsingModel& h_p,
                                     const DriverSpec& driver,
                                     const PropagationConfig& cfg) {
  if (initial.kind() != QuantumState::Kind::pure)
    throw std::invalid_argument("conventional evolution needs a pure state");
  initial.validate();
  IsingModel empty(h_p.n_qubits());
  const Parts parts = make_parts(empty, h_p, driver);
  const double bound =
      parts.driver.mat.cwiseAbs().rowwise().sum().maxCoeff() +
      params.c_s * parts.e_p.cwiseAbs().maxCoeff();
  if (cfg.dt * bound > 0.1)
    throw std::invalid_argument("step-size violation for conventional QA");
  const ConventionalParams p = params;
  const WeightFn weights = [p](double t) {
    const auto [a, b] = conventional_weights_at(t, p);
    return StepWeights{a, b, 0.0, 1.0};
  };
  return propagate_closed(initial.psi(), initial.n_qubits(), weights,
                          params.annealing_time, parts, cfg);
}

double success_probability(const TrajectoryResult& result,
                           const std::set<std::uint32_t>& targets) {
  if (targets.empty()) throw std::invalid_argument("empty target set");
  // the last trajectory sample carries exactly-preserved populations for
  // diagonal (frozen) evolutions, unlike |psi|^2 of the final amplitudes
  const RealVector pops = result.population_series.empty()
                              ? population_vector(result.final_state)
                              : result.population_series.back();
  double sum = 0.0;
  for (const std::uint32_t t : targets) {
    if (t >= static_cast<std::uint32_t>(pops.size()))
      throw std::invalid_argument("unknown basis state in targets");
    sum += pops[t];
  }
  return sum;
}

}  // namespace esqa
