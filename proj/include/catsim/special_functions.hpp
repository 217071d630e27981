#pragma once

#include <span>

/// Orthogonal polynomials and factorial helpers used by the phase-space
/// signatures. Everything here is a pure function of its arguments.
namespace catsim::special {

/// ln(n!). Exact integer accumulation up to n = 20, lgamma beyond.
double log_factorial(int n);

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
/// Throws std::overflow_error once the unnormalized value leaves double
/// range; use the oscillator wavefunctions below in that regime.
double hermite(int n, double x);

/// Generalized Laguerre polynomial L_n^l(x), x >= 0.
double assoc_laguerre(int n, int l, double x);

struct SignedLog {
  double log_abs;  // -inf for an exact zero
  int sign;        // -1, 0, +1

  double value() const;
};

/// Harmonic-oscillator eigenfunction
///   psi_n(x) = exp(-x^2/2) H_n(x) / sqrt(2^n n! sqrt(pi))
/// as log-magnitude and sign. Stable for large n and |x|.
SignedLog oscillator_wavefunction_log(int n, double x);

double oscillator_wavefunction(int n, double x);

/// Fills out[k] = psi_k(x) for k = 0 .. out.size()-1 in one recurrence pass.
/// Values below double range flush to zero.
void oscillator_wavefunctions(double x, std::span<double> out);

/// Normalized Laguerre functions
///   f_n^l(x) = sqrt(n!/(n+l)!) x^(l/2) exp(-x/2) L_n^l(x)
/// for n = 0 .. out.size()-1 at fixed l. These are O(1) where the raw
/// polynomial and the exponential prefactor would each overflow.
void laguerre_functions(int l, double x, std::span<double> out);

}  // namespace catsim::special
