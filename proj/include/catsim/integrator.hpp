#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "catsim/fock_states.hpp"
#include "catsim/liouvillian.hpp"

namespace catsim {

enum class StepMethod { rk4, dopri5 };

std::string_view to_string(StepMethod method);
StepMethod parse_step_method(std::string_view name);

struct IntegrationPlan {
  double tau_end = 0.0;
  /// Times at which the observer sees the state; tau_end is always added.
  std::vector<double> checkpoints;
  StepMethod method = StepMethod::rk4;
  /// Fixed step for rk4, initial step for dopri5. 0 picks default_step().
  double dtau = 0.0;
  double rtol = 1e-8;
  double atol = 1e-10;
  double renorm_threshold = 1e-10;
  double trace_abort = 1e-6;
};

/// min(1e-4, 0.1 / ||L||_est)
double default_step(const Liouvillian& L);

/// Trace correction applied at a checkpoint; drift is Tr(rho) - 1 before scaling.
struct RenormEvent {
  double tau;
  double drift;
};

struct IntegrationStats {
  double dtau = 0.0;  // fixed step, or the last accepted adaptive step
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  std::vector<RenormEvent> renorms;
};

/// Called at every checkpoint with the corrected state and the trace drift
/// Tr(rho) - 1 seen before correction. Returning false stops the integration.
using CheckpointObserver = std::function<bool(double tau, const FockDensityMatrix& rho, double trace_drift)>;

/// Evolves rho0 from tau = 0 to plan.tau_end. rho0 must be Hermitian with
/// unit trace. Steps never straddle a checkpoint or the switch time of a
/// step_on schedule. Throws NumericalFailure when the stability guard
/// dtau * ||L||_est < 0.5 is violated (rk4), the trace drifts beyond
/// plan.trace_abort, or the state becomes non-finite.
IntegrationStats evolve(const Liouvillian& L, FockDensityMatrix& rho, const IntegrationPlan& plan,
                        const CheckpointObserver& observer = {});

/// Convenience form returning the state at every checkpoint.
struct TimedState {
  double tau;
  FockDensityMatrix rho;
};
std::vector<TimedState> evolve_collect(const Liouvillian& L, const FockDensityMatrix& rho0, const IntegrationPlan& plan);

/// Step-halving comparison of two runs of the same scenario. For a
/// fourth-order method the error of the finer run is about diff / 15.
struct ConvergenceReport {
  double max_abs_diff = 0.0;
  double extrapolated_error = 0.0;
  bool passed = false;
};

ConvergenceReport convergence_check(const FockDensityMatrix& coarse, const FockDensityMatrix& fine, double tolerance);

}  // namespace catsim
