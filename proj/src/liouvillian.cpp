#include "catsim/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"

namespace catsim {

cplx ModelParams::alpha0() const {
  if (lambda == 0.0) return {};
  return std::sqrt(cplx(lambda, 0.0) / cplx(g2, chi_prime));
}

void ModelParams::validate() const {
  if (!std::isfinite(lambda) || !std::isfinite(g2) || !std::isfinite(chi_prime)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  if (g2 < 0.0) throw std::invalid_argument("g^2 must be non-negative");
  if (lambda > 0.0 && g2 == 0.0 && chi_prime == 0.0) {
    throw std::invalid_argument("pumped oscillator needs g^2 > 0 or chi' != 0 to saturate");
  }
}

ModelParams ModelParams::from_amplitude(double alpha0_abs, double g2, double chi_prime) {
  ModelParams p;
  p.g2 = g2;
  p.chi_prime = chi_prime;
  p.lambda = alpha0_abs * alpha0_abs * std::hypot(g2, chi_prime);
  p.validate();
  return p;
}

Liouvillian::Liouvillian(const ModelParams& params, const SqueezeSchedule& schedule, std::size_t cutoff)
    : params_(params), schedule_(schedule), cutoff_(cutoff), kernels_(&kernels::active_kernels()) {
  params_.validate();
  const double a = std::abs(params_.alpha0());
  const double minimum = a * a + 3.0 * a;
  if (cutoff_ < 2 || static_cast<double>(cutoff_) < minimum) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff_ << " is below |alpha0|^2 + 3|alpha0| = " << minimum << " (|alpha0| = " << a
        << "); suggested N_c = " << default_cutoff(params_.alpha0());
    throw CutoffTooSmall(msg.str());
  }

  const std::size_t d = dim();
  auto sq = [](double v) { return std::sqrt(v); };
  for (std::size_t k = 0; k < kOffsets.size(); ++k) {
    row_factor_[k].assign(d, 0.0);
    col_weight_[k].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double x = static_cast<double>(i);
    const double down2 = sq(x * (x - 1.0));        // sqrt(i(i-1))
    const double up2 = sq((x + 1.0) * (x + 2.0));  // sqrt((i+1)(i+2))
    const double down1 = sq(x);
    const double up1 = sq(x + 1.0);
    // row factors
    row_factor_[0][i] = down2;
    row_factor_[1][i] = up2;
    row_factor_[2][i] = 1.0;
    row_factor_[3][i] = 1.0;
    row_factor_[4][i] = up2;
    row_factor_[5][i] = up1;
    row_factor_[6][i] = down1;
    row_factor_[7][i] = up1;
    row_factor_[8][i] = down1;
    // column weights
    col_weight_[0][i] = 1.0;
    col_weight_[1][i] = 1.0;
    col_weight_[2][i] = up2;
    col_weight_[3][i] = down2;
    col_weight_[4][i] = up2;
    col_weight_[5][i] = up1;
    col_weight_[6][i] = down1;
    col_weight_[7][i] = down1;
    col_weight_[8][i] = up1;
  }

  pair_count_.resize(d);
  number_.resize(d);
  anti_number_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double x = static_cast<double>(i);
    pair_count_[i] = x * (x - 1.0);
    number_[i] = x;
    anti_number_[i] = i < cutoff_ ? x + 1.0 : 0.0;
  }
}

BathCoefficients Liouvillian::bath_at(double tau, const FockDensityMatrix& rho) const {
  const ReservoirState s = schedule_.state_dependent() ? schedule_.at(tau, two_photon_moment(rho)) : schedule_.at(tau);
  return {s.total_occupancy(), s.m};
}

std::array<cplx, 9> Liouvillian::term_scalars(const BathCoefficients& bath) const {
  const double half_lambda = 0.5 * params_.lambda;
  const cplx m = bath.m;
  const cplx mc = std::conj(m);
  const double n = bath.n_total;
  return {
      half_lambda + mc,   // a^2dag rho
      -half_lambda + m,   // a^2 rho
      -half_lambda + mc,  // rho a^2dag
      half_lambda + m,    // rho a^2
      cplx(params_.g2),   // a^2 rho a^2dag
      cplx(2.0 * (n + 1.0)),
      cplx(2.0 * n),
      -2.0 * m,   // a rho a
      -2.0 * mc,  // a^dag rho a^dag
  };
}

void Liouvillian::apply_with(const BathCoefficients& bath, const FockDensityMatrix& rho, FockDensityMatrix& out,
                             bool upper_only) const {
  if (rho.cutoff() != cutoff_) throw std::invalid_argument("Liouvillian::apply: cutoff mismatch");
  if (out.cutoff() != cutoff_) out = FockDensityMatrix(cutoff_);

  const std::size_t d = dim();
  const auto scalars = term_scalars(bath);
  const double half_g2 = 0.5 * params_.g2;
  const double half_chi = 0.5 * params_.chi_prime;
  const double n_bath = bath.n_total;

  // D(n, m) = A(n) + B(m)
  std::vector<cplx> col_diag(d);
  for (std::size_t m = 0; m < d; ++m) {
    col_diag[m] = {-half_g2 * pair_count_[m] - (n_bath + 1.0) * number_[m] - n_bath * anti_number_[m],
                   half_chi * pair_count_[m]};
  }

  const kernels::KernelSet& ks = *kernels_;
  const long last = static_cast<long>(cutoff_);
  for (std::size_t n = 0; n < d; ++n) {
    const std::size_t m_begin = upper_only ? n : 0;
    const std::size_t count = d - m_begin;
    cplx* orow = out.row(n).data();
    const cplx* rrow = rho.row(n).data();
    const cplx row_diag{-half_g2 * pair_count_[n] - (n_bath + 1.0) * number_[n] - n_bath * anti_number_[n],
                        -half_chi * pair_count_[n]};
    ks.diagonal(orow + m_begin, row_diag, col_diag.data() + m_begin, rrow + m_begin, count);

    for (std::size_t k = 0; k < kOffsets.size(); ++k) {
      const long src = static_cast<long>(n) + kOffsets[k].dn;
      if (src < 0 || src > last) continue;
      const double u = row_factor_[k][n];
      if (u == 0.0 || scalars[k] == cplx{}) continue;
      const int dm = kOffsets[k].dm;
      // columns m with 0 <= m + dm <= N_c, intersected with [m_begin, N_c]
      const long lo = std::max<long>(static_cast<long>(m_begin), -dm);
      const long hi = std::min<long>(last, last - dm);
      if (lo > hi) continue;
      const cplx* src_row = rho.row(static_cast<std::size_t>(src)).data();
      ks.weighted_accumulate(orow + lo, scalars[k] * u, col_weight_[k].data() + lo, src_row + lo + dm,
                             static_cast<std::size_t>(hi - lo + 1));
    }
  }

  if (upper_only) {
    for (std::size_t n = 0; n < d; ++n) {
      out(n, n) = {out(n, n).real(), 0.0};
      for (std::size_t m = n + 1; m < d; ++m) out(m, n) = std::conj(out(n, m));
    }
  }
}

void Liouvillian::apply(const FockDensityMatrix& rho, double tau, FockDensityMatrix& out) const {
  apply_with(bath_at(tau, rho), rho, out, false);
}

FockDensityMatrix Liouvillian::apply(const FockDensityMatrix& rho, double tau) const {
  FockDensityMatrix out(cutoff_);
  apply(rho, tau, out);
  return out;
}

void Liouvillian::apply_hermitian(const FockDensityMatrix& rho, double tau, FockDensityMatrix& out) const {
  apply_with(bath_at(tau, rho), rho, out, true);
}

double Liouvillian::norm_estimate() const {
  const ReservoirState& base = schedule_.base();
  const double nc = static_cast<double>(cutoff_);
  return params_.lambda * nc + params_.g2 * nc * nc + std::abs(params_.chi_prime) * nc * nc +
         2.0 * (base.total_occupancy() + 1.0) * nc + 4.0 * std::abs(base.m) * nc;
}

}  // namespace catsim
