#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "catsim/fock_states.hpp"
#include "catsim/kernels.hpp"
#include "catsim/reservoir.hpp"

namespace catsim {

/// Dimensionless parameters of the adiabatically eliminated oscillator.
/// Rates are in units of the signal single-photon decay rate.
struct ModelParams {
  double lambda = 0.0;     // pump strength
  double g2 = 0.0;         // two-photon coupling g^2
  double chi_prime = 0.0;  // Kerr strength

  double chi() const { return chi_prime / g2; }
  /// alpha0 = sqrt(lambda / (g^2 + i chi')), principal branch.
  cplx alpha0() const;
  /// Throws std::invalid_argument on non-finite values or lambda > 0 with g2 <= 0.
  void validate() const;

  /// lambda = |alpha0|^2 g^2 sqrt(1 + chi^2)
  static ModelParams from_amplitude(double alpha0_abs, double g2, double chi_prime);
};

/// Bath coefficients resolved at one instant.
struct BathCoefficients {
  double n_total = 0.0;
  cplx m{};
};

/// Generator of the number-basis master equation,
///   d rho / d tau = (lambda/2)[a^2dag - a^2, rho]
///                 + (g^2/2)(2 a^2 rho a^2dag - a^2dag a^2 rho - rho a^2dag a^2)
///                 - i (chi'/2)[a^2dag a^2, rho]
///                 + (N+1)(2 a rho a^dag - a^dag a rho - rho a^dag a)
///                 + N (2 a^dag rho a - a a^dag rho - rho a a^dag)
///                 - M (2 a rho a - a a rho - rho a a)
///                 - M* (2 a^dag rho a^dag - a^dag a^dag rho - rho a^dag a^dag),
/// applied as a banded stencil over nine neighbour offsets plus the diagonal.
///
/// Operators are the exact truncations of a, a^dag to |0>..|N_c>, so a a^dag
/// has a zero in its last diagonal entry. With that convention every bracket
/// has the form 2 A rho B - B A rho - rho B A and the truncated generator
/// conserves the trace exactly.
class Liouvillian {
 public:
  Liouvillian(const ModelParams& params, const SqueezeSchedule& schedule, std::size_t cutoff);

  const ModelParams& params() const { return params_; }
  const SqueezeSchedule& schedule() const { return schedule_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t dim() const { return cutoff_ + 1; }

  /// Bath at tau; the rotating schedule reads <a^2> from rho.
  BathCoefficients bath_at(double tau, const FockDensityMatrix& rho) const;

  /// out = L(tau) rho for arbitrary (not necessarily Hermitian) rho.
  void apply(const FockDensityMatrix& rho, double tau, FockDensityMatrix& out) const;
  FockDensityMatrix apply(const FockDensityMatrix& rho, double tau) const;

  /// Same result for Hermitian rho, computing only the upper triangle and
  /// mirroring it. About half the work of apply().
  void apply_hermitian(const FockDensityMatrix& rho, double tau, FockDensityMatrix& out) const;

  /// Explicit coefficients, for callers that manage the bath themselves.
  void apply_with(const BathCoefficients& bath, const FockDensityMatrix& rho, FockDensityMatrix& out,
                  bool upper_only = false) const;

  /// lambda N_c + g^2 N_c^2 + |chi'| N_c^2 + 2(N+1) N_c + 4|M| N_c, maximized
  /// over the schedule. Scale of the largest generator eigenvalues.
  double norm_estimate() const;

  /// Route the stencil through a specific kernel set (tests compare variants).
  void use_kernels(const kernels::KernelSet& set) { kernels_ = &set; }
  const kernels::KernelSet& kernel_set() const { return *kernels_; }

 private:
  struct Offset {
    int dn;
    int dm;
  };
  static constexpr std::array<Offset, 9> kOffsets{{
      {-2, 0}, {+2, 0}, {0, +2}, {0, -2}, {+2, +2}, {+1, +1}, {-1, -1}, {+1, -1}, {-1, +1},
  }};

  std::array<cplx, 9> term_scalars(const BathCoefficients& bath) const;

  ModelParams params_;
  SqueezeSchedule schedule_;
  std::size_t cutoff_;
  const kernels::KernelSet* kernels_;

  // Row factors u_k(n) and column weights v_k(m) per offset.
  std::array<std::vector<double>, 9> row_factor_;
  std::array<std::vector<double>, 9> col_weight_;
  // Diagonal pieces: n(n-1), n, and the truncated (a a^dag)_nn.
  std::vector<double> pair_count_;
  std::vector<double> number_;
  std::vector<double> anti_number_;
};

}  // namespace catsim
