#include "catsim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"

namespace catsim {

namespace {

double* raw(FockDensityMatrix& m) { return reinterpret_cast<double*>(m.data().data()); }
const double* raw(const FockDensityMatrix& m) { return reinterpret_cast<const double*>(m.data().data()); }

// The bath is piecewise constant in time: constant, or switched once at
// tau_on. Inside one segment it can be resolved once, except for the
// rotating schedule, which follows the state of each stage.
class StageEvaluator {
 public:
  StageEvaluator(const Liouvillian& L, std::size_t& evaluations) : L_(L), evaluations_(evaluations) {}

  void begin_segment(double lo, double hi, const FockDensityMatrix& rho) {
    fixed_ = L_.bath_at(0.5 * (lo + hi), rho);
  }

  void operator()(double tau, const FockDensityMatrix& y, FockDensityMatrix& out) {
    const BathCoefficients bath = L_.schedule().state_dependent() ? L_.bath_at(tau, y) : fixed_;
    L_.apply_with(bath, y, out, true);
    ++evaluations_;
  }

 private:
  const Liouvillian& L_;
  std::size_t& evaluations_;
  BathCoefficients fixed_{};
};

std::vector<double> segment_boundaries(const Liouvillian& L, const IntegrationPlan& plan) {
  std::vector<double> b;
  for (double t : plan.checkpoints) {
    if (t > 0.0 && t < plan.tau_end) b.push_back(t);
  }
  if (L.schedule().mode() == ScheduleMode::step_on) {
    const double on = L.schedule().tau_on();
    if (on > 0.0 && on < plan.tau_end) b.push_back(on);
  }
  b.push_back(plan.tau_end);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

bool is_checkpoint(const IntegrationPlan& plan, double t) {
  if (t == plan.tau_end) return true;
  return std::find(plan.checkpoints.begin(), plan.checkpoints.end(), t) != plan.checkpoints.end();
}

bool all_finite(const FockDensityMatrix& rho) {
  const double* p = raw(rho);
  const std::size_t count = 2 * rho.data().size();
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(p[i])) return false;
  }
  return true;
}

double correct(FockDensityMatrix& rho, double tau, const IntegrationPlan& plan, IntegrationStats& stats) {
  if (!all_finite(rho)) {
    std::ostringstream msg;
    msg << "non-finite density matrix at tau = " << tau;
    throw NumericalFailure(msg.str());
  }
  rho.hermitize();
  const double drift = rho.trace().real() - 1.0;
  if (std::abs(drift) > plan.trace_abort) {
    std::ostringstream msg;
    msg << "trace drift " << drift << " at tau = " << tau << " exceeds " << plan.trace_abort;
    throw NumericalFailure(msg.str());
  }
  if (std::abs(drift) > plan.renorm_threshold) {
    rho.scale(1.0 / (1.0 + drift));
    stats.renorms.push_back({tau, drift});
  }
  return drift;
}

void validate_plan(const IntegrationPlan& plan) {
  if (!(plan.tau_end > 0.0) || !std::isfinite(plan.tau_end)) throw std::invalid_argument("tau_end must be positive");
  for (double t : plan.checkpoints) {
    if (!(t >= 0.0 && t <= plan.tau_end)) throw std::invalid_argument("checkpoint outside [0, tau_end]");
  }
  if (!std::is_sorted(plan.checkpoints.begin(), plan.checkpoints.end())) {
    throw std::invalid_argument("checkpoints must be sorted");
  }
  if (plan.dtau < 0.0) throw std::invalid_argument("dtau must be positive");
  if (plan.method == StepMethod::dopri5 && !(plan.rtol > 0.0 && plan.atol > 0.0)) {
    throw std::invalid_argument("dopri5 needs rtol > 0 and atol > 0");
  }
}

class Rk4 {
 public:
  Rk4(std::size_t cutoff, const kernels::KernelSet& ks)
      : k1_(cutoff), k2_(cutoff), k3_(cutoff), k4_(cutoff), tmp_(cutoff), ks_(ks), count_(2 * (cutoff + 1) * (cutoff + 1)) {}

  void step(StageEvaluator& f, double t, double h, FockDensityMatrix& y) {
    double* yv = raw(y);
    double* tv = raw(tmp_);
    f(t, y, k1_);
    ks_.axpy(tv, yv, 0.5 * h, raw(k1_), count_);
    f(t + 0.5 * h, tmp_, k2_);
    ks_.axpy(tv, yv, 0.5 * h, raw(k2_), count_);
    f(t + 0.5 * h, tmp_, k3_);
    ks_.axpy(tv, yv, h, raw(k3_), count_);
    f(t + h, tmp_, k4_);
    ks_.axpy(yv, yv, h / 6.0, raw(k1_), count_);
    ks_.axpy(yv, yv, h / 3.0, raw(k2_), count_);
    ks_.axpy(yv, yv, h / 3.0, raw(k3_), count_);
    ks_.axpy(yv, yv, h / 6.0, raw(k4_), count_);
  }

 private:
  FockDensityMatrix k1_, k2_, k3_, k4_, tmp_;
  const kernels::KernelSet& ks_;
  std::size_t count_;
};

// Dormand-Prince 5(4) with first-same-as-last.
class Dopri5 {
 public:
  Dopri5(std::size_t cutoff, const kernels::KernelSet& ks) : ks_(ks), count_(2 * (cutoff + 1) * (cutoff + 1)) {
    for (auto& k : k_) k = FockDensityMatrix(cutoff);
    tmp_ = FockDensityMatrix(cutoff);
    err_ = FockDensityMatrix(cutoff);
  }

  void reset() { have_first_ = false; }

  // Attempts one step; on success y holds the new state. Returns the scaled
  // error norm (accepted when <= 1).
  double attempt(StageEvaluator& f, double t, double h, FockDensityMatrix& y, double rtol, double atol) {
    static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double e[7] = {71.0 / 57600,    0.0,        -71.0 / 16695, 71.0 / 1920,
                                    -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

    double* yv = raw(y);
    double* tv = raw(tmp_);
    if (!have_first_) f(t, y, k_[0]);
    for (int s = 1; s < 7; ++s) {
      ks_.axpy(tv, yv, h * a[s][0], raw(k_[0]), count_);
      for (int j = 1; j < s; ++j) {
        if (a[s][j] != 0.0) ks_.axpy(tv, tv, h * a[s][j], raw(k_[j]), count_);
      }
      f(t + c[s] * h, tmp_, k_[s]);
    }
    // tmp_ now holds the fifth-order solution (row 6 of the tableau).
    double* ev = raw(err_);
    std::fill(ev, ev + count_, 0.0);
    for (int j = 0; j < 7; ++j) {
      if (e[j] != 0.0) ks_.axpy(ev, ev, h * e[j], raw(k_[j]), count_);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < count_; ++i) {
      const double scale = atol + rtol * std::max(std::abs(yv[i]), std::abs(tv[i]));
      const double r = ev[i] / scale;
      sum += r * r;
    }
    const double norm = std::sqrt(sum / static_cast<double>(count_));
    if (norm <= 1.0 && std::isfinite(norm)) {
      std::copy(tv, tv + count_, yv);
      std::swap(k_[0], k_[6]);
      have_first_ = true;
    } else {
      have_first_ = true;  // k_[0] still belongs to (t, y)
    }
    return std::isfinite(norm) ? norm : INFINITY;
  }

 private:
  FockDensityMatrix k_[7];
  FockDensityMatrix tmp_, err_;
  const kernels::KernelSet& ks_;
  std::size_t count_;
  bool have_first_ = false;
};

}  // namespace

std::string_view to_string(StepMethod method) { return method == StepMethod::rk4 ? "rk4" : "dopri5"; }

StepMethod parse_step_method(std::string_view name) {
  if (name == "rk4") return StepMethod::rk4;
  if (name == "dopri5") return StepMethod::dopri5;
  throw std::invalid_argument("unknown integration method '" + std::string(name) + "'");
}

double default_step(const Liouvillian& L) {
  const double norm = L.norm_estimate();
  return norm > 0.0 ? std::min(1e-4, 0.1 / norm) : 1e-4;
}

IntegrationStats evolve(const Liouvillian& L, FockDensityMatrix& rho, const IntegrationPlan& plan,
                        const CheckpointObserver& observer) {
  validate_plan(plan);
  if (rho.cutoff() != L.cutoff()) throw std::invalid_argument("evolve: state and generator cutoffs differ");

  IntegrationStats stats;
  stats.dtau = plan.dtau > 0.0 ? plan.dtau : default_step(L);
  const double norm = L.norm_estimate();
  if (plan.method == StepMethod::rk4 && stats.dtau * norm >= 0.5) {
    std::ostringstream msg;
    msg << "stability guard: dtau * ||L|| = " << stats.dtau * norm << " >= 0.5 (dtau = " << stats.dtau
        << ", ||L|| = " << norm << "); use dtau <= " << 0.1 / norm;
    throw NumericalFailure(msg.str());
  }

  if (rho.hermiticity_error() > 1e-10) throw std::invalid_argument("evolve: initial state is not Hermitian");
  const double initial_drift = correct(rho, 0.0, plan, stats);
  if (observer && !plan.checkpoints.empty() && plan.checkpoints.front() == 0.0) {
    if (!observer(0.0, rho, initial_drift)) return stats;
  }

  StageEvaluator f(L, stats.evaluations);
  const kernels::KernelSet& ks = L.kernel_set();
  Rk4 rk4(L.cutoff(), ks);
  Dopri5 dopri(L.cutoff(), ks);
  double h_adaptive = stats.dtau;

  double t = 0.0;
  for (double boundary : segment_boundaries(L, plan)) {
    f.begin_segment(t, boundary, rho);
    if (plan.method == StepMethod::rk4) {
      const double span = boundary - t;
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / stats.dtau * (1.0 - 1e-12))));
      const double h = span / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        rk4.step(f, t + static_cast<double>(i) * h, h, rho);
      }
      stats.steps += n;
    } else {
      dopri.reset();
      while (t < boundary) {
        const double remaining = boundary - t;
        const bool last = h_adaptive >= remaining * (1.0 - 1e-12);
        const double h = last ? remaining : h_adaptive;
        const double err = dopri.attempt(f, t, h, rho, plan.rtol, plan.atol);
        double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
          t = last ? boundary : t + h;
          ++stats.steps;
          if (!last || factor < 1.0) h_adaptive = h * factor;
        } else {
          ++stats.rejected;
          h_adaptive = h * std::min(factor, 1.0);
          if (h_adaptive < 1e-14 * std::max(1.0, boundary)) {
            throw NumericalFailure("adaptive step size underflow");
          }
        }
      }
      stats.dtau = h_adaptive;
    }
    t = boundary;

    if (is_checkpoint(plan, boundary)) {
      const double drift = correct(rho, boundary, plan, stats);
      if (observer && !observer(boundary, rho, drift)) break;
    }
  }
  return stats;
}

std::vector<TimedState> evolve_collect(const Liouvillian& L, const FockDensityMatrix& rho0, const IntegrationPlan& plan) {
  std::vector<TimedState> out;
  FockDensityMatrix rho = rho0;
  evolve(L, rho, plan, [&](double tau, const FockDensityMatrix& r, double) {
    out.push_back({tau, r});
    return true;
  });
  return out;
}

ConvergenceReport convergence_check(const FockDensityMatrix& coarse, const FockDensityMatrix& fine, double tolerance) {
  if (coarse.cutoff() != fine.cutoff()) throw std::invalid_argument("convergence_check: cutoffs differ");
  ConvergenceReport r;
  for (std::size_t i = 0; i < coarse.data().size(); ++i) {
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(coarse.data()[i] - fine.data()[i]));
  }
  r.extrapolated_error = r.max_abs_diff / 15.0;
  r.passed = r.extrapolated_error <= tolerance;
  return r;
}

}  // namespace catsim
