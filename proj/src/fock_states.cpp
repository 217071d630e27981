#include "catsim/fock_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"
#include "catsim/special_functions.hpp"

namespace catsim {

namespace {

constexpr double kTailTolerance = 1e-10;

double log_poisson(double mean, std::size_t n) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  const double nd = static_cast<double>(n);
  return -mean + nd * std::log(mean) - special::log_factorial(static_cast<int>(n));
}

void require_tail(cplx alpha, std::size_t cutoff, const char* what) {
  const double tail = poisson_tail(std::norm(alpha), cutoff);
  if (tail >= kTailTolerance) {
    std::ostringstream msg;
    msg << what << ": cutoff " << cutoff << " leaves Poisson tail " << tail << " for |alpha|^2 = "
        << std::norm(alpha) << " (need < " << kTailTolerance << ", try N_c >= " << default_cutoff(alpha) << ")";
    throw CutoffTooSmall(msg.str());
  }
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(std::size_t cutoff) : cutoff_(cutoff), data_((cutoff + 1) * (cutoff + 1)) {}

cplx FockDensityMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t n = 0; n < dim(); ++n) t += (*this)(n, n);
  return t;
}

double FockDensityMatrix::tail_mass() const {
  double tail = 0.0;
  const double threshold = 0.9 * static_cast<double>(cutoff_);
  for (std::size_t n = 0; n < dim(); ++n) {
    if (static_cast<double>(n) > threshold) tail += (*this)(n, n).real();
  }
  return tail;
}

double FockDensityMatrix::hermiticity_error() const {
  double err = 0.0;
  for (std::size_t n = 0; n < dim(); ++n) {
    for (std::size_t m = n; m < dim(); ++m) {
      err = std::max(err, std::abs((*this)(n, m) - std::conj((*this)(m, n))));
    }
  }
  return err;
}

void FockDensityMatrix::hermitize() {
  for (std::size_t n = 0; n < dim(); ++n) {
    (*this)(n, n) = {(*this)(n, n).real(), 0.0};
    for (std::size_t m = n + 1; m < dim(); ++m) {
      const cplx avg = 0.5 * ((*this)(n, m) + std::conj((*this)(m, n)));
      (*this)(n, m) = avg;
      (*this)(m, n) = std::conj(avg);
    }
  }
}

void FockDensityMatrix::scale(double factor) {
  for (cplx& v : data_) v *= factor;
}

void FockDensityMatrix::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

std::size_t default_cutoff(cplx alpha0) {
  const double a = std::abs(alpha0);
  return static_cast<std::size_t>(std::ceil(a * a + 6.0 * a + 10.0));
}

double poisson_tail(double mean, std::size_t cutoff) {
  if (mean < 0.0) throw std::invalid_argument("poisson_tail: negative mean");
  if (mean == 0.0) return 0.0;
  if (static_cast<double>(cutoff) + 1.0 <= mean) {
    double head = 0.0;
    for (std::size_t n = 0; n <= cutoff; ++n) head += std::exp(log_poisson(mean, n));
    return std::max(0.0, 1.0 - head);
  }
  double tail = 0.0;
  for (std::size_t n = cutoff + 1;; ++n) {
    const double term = std::exp(log_poisson(mean, n));
    tail += term;
    if (term <= 1e-18 * tail || term == 0.0) break;
  }
  return tail;
}

std::vector<cplx> coherent_amplitudes(cplx alpha, std::size_t cutoff) {
  std::vector<cplx> c(cutoff + 1);
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  c[0] = std::exp(-0.5 * r * r);
  if (r == 0.0) return c;
  const double log_r = std::log(r);
  for (std::size_t n = 1; n <= cutoff; ++n) {
    const double nd = static_cast<double>(n);
    const double log_mag = -0.5 * r * r + nd * log_r - 0.5 * special::log_factorial(static_cast<int>(n));
    c[n] = std::polar(std::exp(log_mag), nd * phase);
  }
  return c;
}

FockDensityMatrix pure_state(std::span<const cplx> amplitudes) {
  if (amplitudes.empty()) throw std::invalid_argument("pure_state: empty amplitude vector");
  FockDensityMatrix rho(amplitudes.size() - 1);
  for (std::size_t n = 0; n < amplitudes.size(); ++n) {
    for (std::size_t m = 0; m < amplitudes.size(); ++m) rho(n, m) = amplitudes[n] * std::conj(amplitudes[m]);
  }
  return rho;
}

FockDensityMatrix vacuum(std::size_t cutoff) { return fock_state(0, cutoff); }

FockDensityMatrix fock_state(std::size_t n, std::size_t cutoff) {
  if (n > cutoff) throw CutoffTooSmall("fock_state: n exceeds cutoff");
  FockDensityMatrix rho(cutoff);
  rho(n, n) = 1.0;
  return rho;
}

FockDensityMatrix thermal_state(double n_th, std::size_t cutoff) {
  if (n_th < 0.0) throw std::invalid_argument("thermal_state: negative occupancy");
  FockDensityMatrix rho(cutoff);
  const double ratio = n_th / (n_th + 1.0);
  double p = 1.0;
  double total = 0.0;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    rho(n, n) = p;
    total += p;
    p *= ratio;
  }
  rho.scale(1.0 / total);
  return rho;
}

FockDensityMatrix coherent(cplx alpha, std::size_t cutoff) {
  require_tail(alpha, cutoff, "coherent");
  return pure_state(coherent_amplitudes(alpha, cutoff));
}

FockDensityMatrix cat(cplx alpha0, Parity parity, std::size_t cutoff) {
  require_tail(alpha0, cutoff, "cat");
  const double overlap = std::exp(-2.0 * std::norm(alpha0));
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double denom = 2.0 * (1.0 + sign * overlap);
  if (denom <= 0.0) throw std::invalid_argument("cat: odd cat with alpha0 = 0 does not exist");
  const double norm = 1.0 / std::sqrt(denom);
  auto c = coherent_amplitudes(alpha0, cutoff);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    // |alpha0> + s|-alpha0> has amplitudes c_n (1 + s(-1)^n)
    const bool keep = (n % 2 == 0) == (parity == Parity::even);
    c[n] = keep ? 2.0 * norm * c[n] : cplx{};
  }
  return pure_state(c);
}

FockDensityMatrix coherent_mixture(cplx alpha0, std::size_t cutoff) {
  require_tail(alpha0, cutoff, "coherent_mixture");
  const auto plus = coherent_amplitudes(alpha0, cutoff);
  FockDensityMatrix rho(cutoff);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (std::size_t m = 0; m <= cutoff; ++m) {
      // |-alpha> has amplitudes (-1)^n c_n, so the two terms agree when n+m is even
      if ((n + m) % 2 == 0) rho(n, m) = plus[n] * std::conj(plus[m]);
    }
  }
  return rho;
}

double purity(const FockDensityMatrix& rho) {
  double p = 0.0;
  for (const cplx& v : rho.data()) p += std::norm(v);
  return p;
}

double NumberDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
  return m;
}

NumberDistribution number_distribution(const FockDensityMatrix& rho) {
  NumberDistribution d;
  d.p.resize(rho.dim());
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    d.p[n] = rho(n, n).real();
    if (n % 2 == 1) d.odd_weight += d.p[n];
  }
  return d;
}

double mean_photon_number(const FockDensityMatrix& rho) {
  double m = 0.0;
  for (std::size_t n = 0; n < rho.dim(); ++n) m += static_cast<double>(n) * rho(n, n).real();
  return m;
}

cplx two_photon_moment(const FockDensityMatrix& rho) {
  cplx s = 0.0;
  for (std::size_t n = 2; n < rho.dim(); ++n) {
    const double nd = static_cast<double>(n);
    s += std::sqrt(nd * (nd - 1.0)) * rho(n, n - 2);
  }
  return s;
}

cplx overlap(const FockDensityMatrix& rho, const FockDensityMatrix& sigma) {
  if (rho.cutoff() != sigma.cutoff()) throw std::invalid_argument("overlap: cutoff mismatch");
  cplx s = 0.0;
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    for (std::size_t m = 0; m < rho.dim(); ++m) s += rho(n, m) * sigma(m, n);
  }
  return s;
}

FockDensityMatrix rotate(const FockDensityMatrix& rho, double phi) {
  FockDensityMatrix out(rho.cutoff());
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    for (std::size_t m = 0; m < rho.dim(); ++m) {
      const double dn = static_cast<double>(n) - static_cast<double>(m);
      out(n, m) = rho(n, m) * std::polar(1.0, phi * dn);
    }
  }
  return out;
}

}  // namespace catsim
