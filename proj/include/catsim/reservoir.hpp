#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace catsim {

enum class ReservoirModel { vacuum_squeezed, squeezed_thermal, thermalized_squeezed };

std::string_view to_string(ReservoirModel model);
ReservoirModel parse_reservoir_model(std::string_view name);

/// Bath characterization entering the master equation.
///
/// The generator only ever sees the total occupancy N = n_th + n_s and the
/// anomalous moment m. For the squeezed-thermal model, n_s holds the
/// bookkeeping remainder N_total - n_th = (2 n_th + 1) sinh^2 r, so that
/// total_occupancy() is N_th cosh 2r + sinh^2 r.
struct ReservoirState {
  double n_th = 0.0;
  double n_s = 0.0;
  std::complex<double> m{};
  ReservoirModel model = ReservoirModel::vacuum_squeezed;

  double total_occupancy() const { return n_th + n_s; }
  /// |M| <= sqrt(N (N+1)), with a relative slack of 1e-12 for rounding.
  bool is_physical() const;
};

/// Zero-temperature squeezed vacuum, |M| = sqrt(N_s(N_s+1)), phase 2 theta.
/// theta is the quadrature angle whose P_theta is squeezed.
ReservoirState vacuum_squeezed(double n_s, double theta);

/// Squeezing operator acting on a thermal state:
///   N = N_th cosh 2r + sinh^2 r,  M = (N_th + 1/2) sinh 2r e^{i(phi - pi)}.
ReservoirState squeezed_thermal(double r, double n_th, double phi);

/// Squeezed vacuum subsequently exposed to thermal noise:
///   N = N_th + sinh^2 r,  M = (1/2) sinh 2r e^{i(phi - pi)}.
ReservoirState thermalized_squeezed(double r, double n_th, double phi);

/// Thermalized squeezed bath parameterized by the squeeze photon number
/// N_s = sinh^2 r and the squeezed quadrature angle theta (phi = pi + 2 theta).
ReservoirState thermalized_squeezed_ns(double n_s, double n_th, double theta);

/// Variances of the bath quadratures X_theta, P_theta in units where the
/// vacuum variance is 1:
///   var_x = 2N + 1 + 2|M| cos(Phi - 2 theta),  var_p = 2N + 1 - 2|M| cos(Phi - 2 theta).
/// Note the appendix closed forms for the squeezed thermal state,
/// (N_th + 1/2) e^{-+2r}, are quoted in units where the vacuum variance is 1/2.
struct QuadratureVariances {
  double var_x;
  double var_p;
};

QuadratureVariances quadrature_variances(const ReservoirState& bath, double theta);

/// Bose-Einstein occupancy 1/(exp(h f / k T) - 1) for ordinary frequency f in Hz.
double thermal_occupancy(double freq_hz, double temp_k);

/// Inverse of thermal_occupancy in the temperature argument.
double occupancy_temperature(double freq_hz, double occupancy);

enum class ScheduleMode { constant, step_on, rotating };

std::string_view to_string(ScheduleMode mode);
ScheduleMode parse_schedule_mode(std::string_view name);

/// Time dependence of the bath seen by the cavity.
///
///  constant  - the base state at all times.
///  step_on   - before tau_on only the thermal part (n_s = 0, M = 0) acts;
///              from tau_on the full base state.
///  rotating  - |M| from the base state, phase Phi(tau) = 2 theta(tau) with
///              theta = arg(<a^2>)/2 tracking the cat axis; falls back to
///              `fallback_theta` while |<a^2>| < 1e-6.
class SqueezeSchedule {
 public:
  static SqueezeSchedule constant(const ReservoirState& base);
  static SqueezeSchedule step_on(const ReservoirState& base, double tau_on);
  static SqueezeSchedule rotating(const ReservoirState& base, double fallback_theta);

  ScheduleMode mode() const { return mode_; }
  const ReservoirState& base() const { return base_; }
  double tau_on() const { return tau_on_; }
  double fallback_theta() const { return fallback_theta_; }

  /// True when at() depends on the state through <a^2>.
  bool state_dependent() const { return mode_ == ScheduleMode::rotating; }

  ReservoirState at(double tau, std::complex<double> two_photon_moment = {}) const;

 private:
  SqueezeSchedule(ScheduleMode mode, const ReservoirState& base, double tau_on, double fallback_theta);

  ScheduleMode mode_ = ScheduleMode::constant;
  ReservoirState base_{};
  double tau_on_ = 0.0;
  double fallback_theta_ = 0.0;
};

}  // namespace catsim
