#include "catsim/reservoir.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"

namespace catsim {

namespace {

// CODATA exact SI values
constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite and non-negative");
  }
}

ReservoirState checked(ReservoirState s) {
  if (!s.is_physical()) {
    std::ostringstream msg;
    msg << "unphysical reservoir: |M| = " << std::abs(s.m) << " exceeds sqrt(N(N+1)) for N = " << s.total_occupancy();
    throw UnphysicalReservoir(msg.str());
  }
  return s;
}

}  // namespace

std::string_view to_string(ReservoirModel model) {
  switch (model) {
    case ReservoirModel::vacuum_squeezed: return "vacuum_squeezed";
    case ReservoirModel::squeezed_thermal: return "squeezed_thermal";
    case ReservoirModel::thermalized_squeezed: return "thermalized_squeezed";
  }
  return "unknown";
}

ReservoirModel parse_reservoir_model(std::string_view name) {
  if (name == "vacuum_squeezed") return ReservoirModel::vacuum_squeezed;
  if (name == "squeezed_thermal") return ReservoirModel::squeezed_thermal;
  if (name == "thermalized_squeezed") return ReservoirModel::thermalized_squeezed;
  throw std::invalid_argument("unknown reservoir model '" + std::string(name) + "'");
}

bool ReservoirState::is_physical() const {
  const double n = total_occupancy();
  if (!(n_th >= 0.0) || !(n_s >= 0.0) || !std::isfinite(n)) return false;
  const double bound = std::sqrt(n * (n + 1.0));
  return std::abs(m) <= bound * (1.0 + 1e-12) + 1e-300;
}

ReservoirState vacuum_squeezed(double n_s, double theta) {
  require_nonnegative(n_s, "vacuum_squeezed: N_s");
  ReservoirState s;
  s.model = ReservoirModel::vacuum_squeezed;
  s.n_s = n_s;
  s.m = n_s == 0.0 ? std::complex<double>{} : std::polar(std::sqrt(n_s * (n_s + 1.0)), 2.0 * theta);
  return checked(s);
}

ReservoirState squeezed_thermal(double r, double n_th, double phi) {
  require_nonnegative(r, "squeezed_thermal: r");
  require_nonnegative(n_th, "squeezed_thermal: N_th");
  const double sh = std::sinh(r);
  ReservoirState s;
  s.model = ReservoirModel::squeezed_thermal;
  s.n_th = n_th;
  s.n_s = (2.0 * n_th + 1.0) * sh * sh;
  s.m = r == 0.0 ? std::complex<double>{} : std::polar((n_th + 0.5) * std::sinh(2.0 * r), phi - std::numbers::pi);
  return checked(s);
}

ReservoirState thermalized_squeezed(double r, double n_th, double phi) {
  require_nonnegative(r, "thermalized_squeezed: r");
  require_nonnegative(n_th, "thermalized_squeezed: N_th");
  const double sh = std::sinh(r);
  ReservoirState s;
  s.model = ReservoirModel::thermalized_squeezed;
  s.n_th = n_th;
  s.n_s = sh * sh;
  s.m = r == 0.0 ? std::complex<double>{} : std::polar(0.5 * std::sinh(2.0 * r), phi - std::numbers::pi);
  return checked(s);
}

ReservoirState thermalized_squeezed_ns(double n_s, double n_th, double theta) {
  require_nonnegative(n_s, "thermalized_squeezed: N_s");
  require_nonnegative(n_th, "thermalized_squeezed: N_th");
  ReservoirState s;
  s.model = ReservoirModel::thermalized_squeezed;
  s.n_th = n_th;
  s.n_s = n_s;
  // (1/2) sinh 2r = sinh r cosh r = sqrt(N_s (N_s + 1)); phase phi - pi = 2 theta
  s.m = n_s == 0.0 ? std::complex<double>{} : std::polar(std::sqrt(n_s * (n_s + 1.0)), 2.0 * theta);
  return checked(s);
}

QuadratureVariances quadrature_variances(const ReservoirState& bath, double theta) {
  const double n = bath.total_occupancy();
  const double cross = std::abs(bath.m) == 0.0 ? 0.0 : 2.0 * std::abs(bath.m) * std::cos(std::arg(bath.m) - 2.0 * theta);
  QuadratureVariances v{2.0 * n + 1.0 + cross, 2.0 * n + 1.0 - cross};
  // allow rounding at the pure-state boundary
  const double tol = 1e-12 * (2.0 * n + 1.0);
  if (v.var_x < -tol || v.var_p < -tol) throw UnphysicalReservoir("quadrature_variances: negative variance");
  return v;
}

double thermal_occupancy(double freq_hz, double temp_k) {
  if (!(freq_hz > 0.0) || !(temp_k > 0.0)) throw std::invalid_argument("thermal_occupancy: inputs must be positive");
  return 1.0 / std::expm1(kPlanck * freq_hz / (kBoltzmann * temp_k));
}

double occupancy_temperature(double freq_hz, double occupancy) {
  if (!(freq_hz > 0.0) || !(occupancy > 0.0)) throw std::invalid_argument("occupancy_temperature: inputs must be positive");
  return kPlanck * freq_hz / (kBoltzmann * std::log1p(1.0 / occupancy));
}

std::string_view to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::constant: return "constant";
    case ScheduleMode::step_on: return "step_on";
    case ScheduleMode::rotating: return "rotating";
  }
  return "unknown";
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  if (name == "constant") return ScheduleMode::constant;
  if (name == "step_on") return ScheduleMode::step_on;
  if (name == "rotating") return ScheduleMode::rotating;
  throw std::invalid_argument("unknown schedule '" + std::string(name) + "'");
}

SqueezeSchedule::SqueezeSchedule(ScheduleMode mode, const ReservoirState& base, double tau_on, double fallback_theta)
    : mode_(mode), base_(checked(base)), tau_on_(tau_on), fallback_theta_(fallback_theta) {}

SqueezeSchedule SqueezeSchedule::constant(const ReservoirState& base) {
  return SqueezeSchedule(ScheduleMode::constant, base, 0.0, 0.0);
}

SqueezeSchedule SqueezeSchedule::step_on(const ReservoirState& base, double tau_on) {
  if (!(tau_on >= 0.0)) throw std::invalid_argument("step_on: tau_on must be non-negative");
  return SqueezeSchedule(ScheduleMode::step_on, base, tau_on, 0.0);
}

SqueezeSchedule SqueezeSchedule::rotating(const ReservoirState& base, double fallback_theta) {
  return SqueezeSchedule(ScheduleMode::rotating, base, 0.0, fallback_theta);
}

ReservoirState SqueezeSchedule::at(double tau, std::complex<double> two_photon_moment) const {
  switch (mode_) {
    case ScheduleMode::constant:
      return base_;
    case ScheduleMode::step_on: {
      if (tau >= tau_on_) return base_;
      ReservoirState off = base_;
      off.n_s = 0.0;
      off.m = {};
      return off;
    }
    case ScheduleMode::rotating: {
      const double theta = std::abs(two_photon_moment) < 1e-6 ? fallback_theta_ : 0.5 * std::arg(two_photon_moment);
      ReservoirState s = base_;
      s.m = std::polar(std::abs(base_.m), 2.0 * theta);
      return s;
    }
  }
  return base_;
}

}  // namespace catsim
