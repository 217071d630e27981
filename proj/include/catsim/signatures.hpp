#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "catsim/fock_states.hpp"

/// Phase-space and coherence signatures of a number-basis density matrix.
///
/// Signal quadratures follow x_theta = (a e^{-i theta} + a^dag e^{i theta}) / sqrt(2),
/// so the vacuum variance is 1/2 and a coherent state |alpha> (alpha real)
/// is centred at x = sqrt(2) alpha. Wigner functions are normalized against
/// d^2 alpha = d(Re alpha) d(Im alpha).
namespace catsim {

/// Symmetric uniform grid x_i = (i - K) h, i = 0 .. 2K.
struct UniformGrid {
  double half_width = 0.0;
  double step = 0.0;

  std::size_t half_points() const;  // K = round(half_width / step)
  std::size_t size() const { return 2 * half_points() + 1; }
  double at(std::size_t i) const;
  /// Trapezoid weight (without the factor h).
  double weight(std::size_t i) const { return (i == 0 || i + 1 == size()) ? 0.5 : 1.0; }
};

/// [-L, L] with L = sqrt(2)|alpha0| + 5, h = 0.02.
UniformGrid default_position_grid(cplx alpha0);

struct QuadratureGrid {
  double theta = 0.0;
  UniformGrid grid;
  std::vector<double> x;
  std::vector<double> density;

  /// h * sum(trapezoid) of the density.
  double integral() const;
};

/// P(x_theta) = sum_nm rho_nm e^{-i theta (n - m)} psi_n(x) psi_m(x).
QuadratureGrid quadrature_distribution(const FockDensityMatrix& rho, double theta, const UniformGrid& grid);

/// Square grid over Re alpha, Im alpha in [-R, R].
struct WignerGrid {
  UniformGrid axis;
  /// values[i * n + j] = W(Re alpha = axis.at(i), Im alpha = axis.at(j)), n = axis.size()
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * axis.size() + j]; }
  /// Largest |W| on the outer edge; should be negligible.
  double boundary_max() const;
};

/// R = |alpha0| + 4, h = min(0.05, 0.5 / |alpha0|).
UniformGrid default_wigner_axis(cplx alpha0);

/// W(alpha) = sum_n rho_nn X_n(alpha) + 2 Re sum_{l>=1} (2 alpha)^l e^{-2|alpha|^2} c_l(|alpha|)
/// evaluated through normalized Laguerre functions. Radial sums are shared
/// between the eight points related by the square grid's symmetry.
WignerGrid wigner(const FockDensityMatrix& rho, const UniformGrid& axis);

double wigner_point(const FockDensityMatrix& rho, cplx alpha);

/// Closed form for the even (odd) cat N^2 (|alpha0> +- |-alpha0>):
///   W = N^2 (2/pi) [e^{-2|a - a0|^2} + e^{-2|a + a0|^2} +- 2 e^{-2|a|^2} cos(4 Im(a^* a0))],
///   N^2 = 1 / (2 (1 +- e^{-2|a0|^2})).
WignerGrid analytic_cat_wigner(cplx alpha0, Parity parity, const UniformGrid& axis);
double analytic_cat_wigner_point(cplx alpha0, Parity parity, cplx alpha);

/// delta = (1/2) integral (|W| - W) d^2 alpha, 2D trapezoid.
double negativity(const WignerGrid& w);

/// integral W d^2 alpha, 2D trapezoid.
double wigner_integral(const WignerGrid& w);

/// Continuous-variable l1 coherence in the x_theta representation,
///   C = iint |<x|rho|x'>| dx dx' - int <x|rho|x> dx,
/// with 2D trapezoid quadrature on `grid`.
double coherence_l1_continuous(const FockDensityMatrix& rho, double theta, const UniformGrid& grid);

struct CoherenceEstimate {
  double value;
  double refined;        // same quantity at half the spacing
  double relative_shift;
};

/// Evaluates at h and h/2. Throws GridError when the two differ by more
/// than `max_relative_shift`.
CoherenceEstimate coherence_l1_continuous_checked(const FockDensityMatrix& rho, double theta, const UniformGrid& grid,
                                                  double max_relative_shift = 0.005);

/// sum_{n != m} |rho_nm|
double coherence_l1_number_basis(const FockDensityMatrix& rho);

/// (P_max - P_min) / (P_max + P_min) over |x| <= 3 pi / (sqrt(2) |alpha0|).
/// P_max is the largest local maximum in the window, P_min the smaller of the
/// two local minima next to it. Returns 0 when no maximum with a
/// neighbouring minimum exists (no fringes).
double fringe_visibility(const QuadratureGrid& q, double alpha0_abs);

}  // namespace catsim
