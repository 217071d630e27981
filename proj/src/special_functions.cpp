#include "catsim/special_functions.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace catsim::special {

namespace {

// Mantissa/exponent pair: value = mantissa * 2^exponent. The recurrences
// below keep the mantissa in a moderate range and carry the scale as an
// integer so that ldexp can recombine without intermediate underflow.
constexpr int kRescaleBits = 500;
const double kRescaleLimit = std::ldexp(1.0, kRescaleBits);

struct Scaled {
  double mantissa;
  int exponent;
};

Scaled from_log(double natural_log) {
  const double l2 = natural_log / std::numbers::ln2;
  const double e = std::floor(l2);
  return {std::exp2(l2 - e), static_cast<int>(e)};
}

}  // namespace

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (n <= 20) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return std::log(static_cast<double>(f));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: negative order");
  double h_prev = 1.0;
  if (n == 0) return h_prev;
  double h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
  }
  if (!std::isfinite(h)) {
    throw std::overflow_error("hermite: H_n(x) overflows double; use oscillator_wavefunction_log");
  }
  return h;
}

double assoc_laguerre(int n, int l, double x) {
  if (n < 0 || l < 0) throw std::invalid_argument("assoc_laguerre: negative order");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + l - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + l + 1.0 - x) * cur - (k + l) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

SignedLog oscillator_wavefunction_log(int n, double x) {
  if (n < 0) throw std::invalid_argument("oscillator_wavefunction_log: negative order");
  const Scaled start = from_log(-0.5 * x * x - 0.25 * std::log(std::numbers::pi));
  double prev = 0.0;
  double cur = start.mantissa;
  int exponent = start.exponent;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleLimit) {
      cur = std::ldexp(cur, -kRescaleBits);
      prev = std::ldexp(prev, -kRescaleBits);
      exponent += kRescaleBits;
    }
  }
  if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(cur)) + exponent * std::numbers::ln2, cur > 0 ? 1 : -1};
}

double oscillator_wavefunction(int n, double x) { return oscillator_wavefunction_log(n, x).value(); }

void oscillator_wavefunctions(double x, std::span<double> out) {
  if (out.empty()) return;
  const Scaled start = from_log(-0.5 * x * x - 0.25 * std::log(std::numbers::pi));
  double prev = 0.0;
  double cur = start.mantissa;
  int exponent = start.exponent;
  out[0] = std::ldexp(cur, exponent);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kd + 1.0)) * x * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleLimit) {
      cur = std::ldexp(cur, -kRescaleBits);
      prev = std::ldexp(prev, -kRescaleBits);
      exponent += kRescaleBits;
    }
    out[k + 1] = std::ldexp(cur, exponent);
  }
}

void laguerre_functions(int l, double x, std::span<double> out) {
  if (l < 0) throw std::invalid_argument("laguerre_functions: negative order");
  if (x < 0.0) throw std::invalid_argument("laguerre_functions: negative argument");
  if (out.empty()) return;
  if (x == 0.0) {
    // f_n^l(0) = delta_{l0} L_n(0) = delta_{l0}
    for (double& v : out) v = (l == 0) ? 1.0 : 0.0;
    return;
  }
  const Scaled start = from_log(0.5 * (l * std::log(x) - x - std::lgamma(l + 1.0)));
  double prev = 0.0;
  double cur = start.mantissa;
  int exponent = start.exponent;
  out[0] = std::ldexp(cur, exponent);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double n = static_cast<double>(k);
    const double next =
        ((2.0 * n + l + 1.0 - x) * cur - std::sqrt(n * (n + l)) * prev) / std::sqrt((n + 1.0) * (n + l + 1.0));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleLimit) {
      cur = std::ldexp(cur, -kRescaleBits);
      prev = std::ldexp(prev, -kRescaleBits);
      exponent += kRescaleBits;
    }
    out[k + 1] = std::ldexp(cur, exponent);
  }
}

}  // namespace catsim::special
