#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace catsim {

using cplx = std::complex<double>;

/// Density matrix on the truncated number basis |0>, ..., |N_c>.
/// Dense row-major storage; entry (n, m) is <n|rho|m>.
class FockDensityMatrix {
 public:
  FockDensityMatrix() = default;
  explicit FockDensityMatrix(std::size_t cutoff);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t dim() const { return cutoff_ + 1; }

  cplx& operator()(std::size_t n, std::size_t m) { return data_[n * dim() + m]; }
  const cplx& operator()(std::size_t n, std::size_t m) const { return data_[n * dim() + m]; }

  std::span<cplx> row(std::size_t n) { return {data_.data() + n * dim(), dim()}; }
  std::span<const cplx> row(std::size_t n) const { return {data_.data() + n * dim(), dim()}; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx trace() const;
  /// Population above 0.9 N_c; a large value means the cutoff is too tight.
  double tail_mass() const;
  /// max |rho_nm - conj(rho_mn)|
  double hermiticity_error() const;

  /// rho <- (rho + rho^dagger) / 2
  void hermitize();
  void scale(double factor);
  void set_zero();

  bool operator==(const FockDensityMatrix&) const = default;

 private:
  std::size_t cutoff_ = 0;
  std::vector<cplx> data_;
};

enum class Parity { even, odd };

/// N_c = ceil(|alpha0|^2 + 6|alpha0| + 10)
std::size_t default_cutoff(cplx alpha0);

/// Poisson(mean) probability mass above `cutoff`.
double poisson_tail(double mean, std::size_t cutoff);

/// Number-basis amplitudes of |alpha>, evaluated in log space.
std::vector<cplx> coherent_amplitudes(cplx alpha, std::size_t cutoff);

FockDensityMatrix pure_state(std::span<const cplx> amplitudes);
FockDensityMatrix vacuum(std::size_t cutoff);
FockDensityMatrix fock_state(std::size_t n, std::size_t cutoff);
FockDensityMatrix thermal_state(double n_th, std::size_t cutoff);

// The following require the Poisson(|alpha|^2) tail above the cutoff to be
// below 1e-10 and throw CutoffTooSmall otherwise.
FockDensityMatrix coherent(cplx alpha, std::size_t cutoff);
FockDensityMatrix cat(cplx alpha0, Parity parity, std::size_t cutoff);
FockDensityMatrix coherent_mixture(cplx alpha0, std::size_t cutoff);

/// Tr(rho^2) = sum |rho_nm|^2 (for Hermitian rho).
double purity(const FockDensityMatrix& rho);

struct NumberDistribution {
  std::vector<double> p;
  double odd_weight = 0.0;

  double mean() const;
};

NumberDistribution number_distribution(const FockDensityMatrix& rho);

double mean_photon_number(const FockDensityMatrix& rho);

/// <a^2> = Tr(rho a^2)
cplx two_photon_moment(const FockDensityMatrix& rho);

/// Tr(rho sigma) for two density matrices of equal cutoff.
cplx overlap(const FockDensityMatrix& rho, const FockDensityMatrix& sigma);

/// exp(i phi a^dagger a) rho exp(-i phi a^dagger a)
FockDensityMatrix rotate(const FockDensityMatrix& rho, double phi);

}  // namespace catsim
