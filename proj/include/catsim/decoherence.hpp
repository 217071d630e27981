#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catsim/reservoir.hpp"

/// Closed-form decay of the interference term of a two-component cat under
/// a squeezed, possibly thermal, bath. The fringe term scales as
/// |<alpha|-alpha>|^eta = exp(-2 |alpha|^2 eta) with
///   eta = 1 - E / (1 + 2 K (1 - E)),  E = exp(-2 gamma t),
///   K = N + |M| cos(2 theta + Phi),   Phi = arg M.
namespace catsim {

struct EtaScenario {
  ReservoirState bath;
  /// Fringe quadrature angle. Unset means the optimal orientation,
  /// cos(2 theta + Phi) = -1.
  std::optional<double> theta;

  double effective_noise() const;  // K
};

/// Throws UnphysicalReservoir if K < -1/2 or gamma_t < 0.
double eta(const EtaScenario& s, double gamma_t);

struct EtaPoint {
  double gamma_t;
  double eta;
};

std::vector<EtaPoint> eta_curve(const EtaScenario& s, const std::vector<double>& gamma_t);

/// n + 1 evenly spaced values on [0, gamma_t_max].
std::vector<double> gamma_t_grid(double gamma_t_max, std::size_t n);

/// exp(-2 |alpha|^2 eta)
double fringe_attenuation(double alpha_abs, double eta);

struct EtaRow {
  std::string model;
  double r;
  double n_th;
  double gamma_t;
  double eta;
};

/// Header "model,r,n_th,gamma_t,eta", values with 17 significant digits.
void write_eta_csv(std::ostream& os, const std::vector<EtaRow>& rows);

}  // namespace catsim
