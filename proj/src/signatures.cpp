#include "catsim/signatures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"
#include "catsim/special_functions.hpp"

namespace catsim {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kRescaleLimit = 0x1p500;
constexpr int kRescaleBits = 500;

void require_grid(const UniformGrid& g, const char* what) {
  if (!(g.step > 0.0) || !(g.half_width > 0.0) || !std::isfinite(g.half_width)) {
    throw GridError(std::string(what) + ": grid needs positive extent and spacing");
  }
}

// Psi(i, n) = psi_n(x_i)
RowMatrix wavefunction_matrix(const UniformGrid& grid, std::size_t dim) {
  RowMatrix psi(grid.size(), dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    special::oscillator_wavefunctions(grid.at(i), {psi.row(i).data(), dim});
  }
  return psi;
}

// Re and Im of rho'_nm = rho_nm e^{-i theta (n - m)}
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> rotated_parts(const FockDensityMatrix& rho, double theta) {
  const std::size_t d = rho.dim();
  Eigen::MatrixXd re(d, d), im(d, d);
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) {
      const double phase = -theta * (static_cast<double>(n) - static_cast<double>(m));
      const cplx v = theta == 0.0 ? rho(n, m) : rho(n, m) * std::polar(1.0, phase);
      re(n, m) = v.real();
      im(n, m) = v.imag();
    }
  }
  return {re, im};
}

// 1/sqrt((n+1)(n+l+1)) and sqrt(n(n+l)) for the Laguerre-function recurrence.
struct LaguerreTables {
  std::vector<std::vector<double>> inv_next;
  std::vector<std::vector<double>> prev_coef;

  explicit LaguerreTables(std::size_t cutoff) : inv_next(cutoff + 1), prev_coef(cutoff + 1) {
    for (std::size_t l = 0; l <= cutoff; ++l) {
      const std::size_t len = cutoff - l + 1;
      inv_next[l].resize(len);
      prev_coef[l].resize(len);
      const double ld = static_cast<double>(l);
      for (std::size_t k = 0; k < len; ++k) {
        const double n = static_cast<double>(k);
        inv_next[l][k] = 1.0 / std::sqrt((n + 1.0) * (n + ld + 1.0));
        prev_coef[l][k] = std::sqrt(n * (n + ld));
      }
    }
  }
};

// sum_n (-1)^n rho_{n,n+l} f_n^l(x), recurrence run in scaled arithmetic.
cplx laguerre_row_sum(const FockDensityMatrix& rho, std::size_t l, double x, const LaguerreTables& t) {
  const std::size_t len = rho.dim() - l;
  if (x == 0.0) {
    // f_n^l(0) = delta_{l0}
    cplx s{};
    if (l == 0) {
      for (std::size_t n = 0; n < len; ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * rho(n, n);
    }
    return s;
  }
  const double ld = static_cast<double>(l);
  const double log_start = 0.5 * (ld * std::log(x) - x - std::lgamma(ld + 1.0));
  int exponent = static_cast<int>(std::floor(log_start / std::numbers::ln2));
  double cur = std::exp(log_start - exponent * std::numbers::ln2);
  double prev = 0.0;
  double sr = 0.0, si = 0.0;
  const double* inv_next = t.inv_next[l].data();
  const double* prev_coef = t.prev_coef[l].data();
  for (std::size_t n = 0;; ++n) {
    const cplx r = rho(n, n + l);
    const double signed_cur = (n % 2 == 0) ? cur : -cur;
    sr += r.real() * signed_cur;
    si += r.imag() * signed_cur;
    if (n + 1 == len) break;
    const double nd = static_cast<double>(n);
    const double next = ((2.0 * nd + ld + 1.0 - x) * cur - prev_coef[n] * prev) * inv_next[n];
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleLimit) {
      cur = std::ldexp(cur, -kRescaleBits);
      prev = std::ldexp(prev, -kRescaleBits);
      sr = std::ldexp(sr, -kRescaleBits);
      si = std::ldexp(si, -kRescaleBits);
      exponent += kRescaleBits;
    }
  }
  return {std::ldexp(sr, exponent), std::ldexp(si, exponent)};
}

// Orders l with any nonzero rho_{n,n+l}.
std::vector<std::size_t> active_orders(const FockDensityMatrix& rho) {
  std::vector<std::size_t> orders;
  for (std::size_t l = 0; l < rho.dim(); ++l) {
    for (std::size_t n = 0; n + l < rho.dim(); ++n) {
      if (rho(n, n + l) != cplx{}) {
        orders.push_back(l);
        break;
      }
    }
  }
  return orders;
}

// Radial coefficients R_l(|alpha|) such that W = sum_l Re(R_l e^{i l phi}).
void radial_coefficients(const FockDensityMatrix& rho, double abs_alpha, const std::vector<std::size_t>& orders,
                         const LaguerreTables& t, std::vector<cplx>& out) {
  const double x = 4.0 * abs_alpha * abs_alpha;
  out.assign(orders.size(), {});
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const std::size_t l = orders[k];
    const double weight = (l == 0 ? 1.0 : 2.0) * 2.0 / std::numbers::pi;
    out[k] = weight * laguerre_row_sum(rho, l, x, t);
  }
}

double angular_sum(const std::vector<cplx>& radial, const std::vector<std::size_t>& orders, double phi) {
  const cplx z = std::polar(1.0, phi);
  cplx power{1.0, 0.0};  // z^l
  std::size_t l = 0;
  double w = 0.0;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    for (; l < orders[k]; ++l) power *= z;
    w += radial[k].real() * power.real() - radial[k].imag() * power.imag();
  }
  return w;
}

double trapezoid_2d(const WignerGrid& w, double (*f)(double)) {
  const std::size_t n = w.axis.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += w.axis.weight(j) * f(w.at(i, j));
    s += w.axis.weight(i) * row;
  }
  return s * w.axis.step * w.axis.step;
}

}  // namespace

std::size_t UniformGrid::half_points() const {
  return static_cast<std::size_t>(std::llround(half_width / step));
}

double UniformGrid::at(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(half_points())) * step;
}

UniformGrid default_position_grid(cplx alpha0) { return {std::sqrt(2.0) * std::abs(alpha0) + 7.0, 0.02}; }

UniformGrid default_wigner_axis(cplx alpha0) {
  const double a = std::abs(alpha0);
  return {a + 4.0, a > 0.0 ? std::min(0.05, 0.5 / a) : 0.05};
}

double QuadratureGrid::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) s += grid.weight(i) * density[i];
  return s * grid.step;
}

QuadratureGrid quadrature_distribution(const FockDensityMatrix& rho, double theta, const UniformGrid& grid) {
  require_grid(grid, "quadrature_distribution");
  const RowMatrix psi = wavefunction_matrix(grid, rho.dim());
  const auto [re, im] = rotated_parts(rho, theta);
  const Eigen::MatrixXd t = psi * re;
  QuadratureGrid q{theta, grid, {}, {}};
  q.x.resize(grid.size());
  q.density.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    q.x[i] = grid.at(i);
    q.density[i] = psi.row(i).dot(t.row(i));
  }
  return q;
}

double WignerGrid::boundary_max() const {
  const std::size_t n = axis.size();
  double b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    b = std::max({b, std::abs(at(0, k)), std::abs(at(n - 1, k)), std::abs(at(k, 0)), std::abs(at(k, n - 1))});
  }
  return b;
}

WignerGrid wigner(const FockDensityMatrix& rho, const UniformGrid& axis) {
  require_grid(axis, "wigner");
  const LaguerreTables tables(rho.cutoff());
  const std::vector<std::size_t> orders = active_orders(rho);
  const std::size_t n = axis.size();
  const long k_half = static_cast<long>(axis.half_points());
  WignerGrid w{axis, std::vector<double>(n * n)};
  std::vector<cplx> radial;

  for (long i = 0; i <= k_half; ++i) {
    for (long j = 0; j <= i; ++j) {
      const double a = static_cast<double>(i) * axis.step;
      const double b = static_cast<double>(j) * axis.step;
      radial_coefficients(rho, std::hypot(a, b), orders, tables, radial);
      // the eight grid points sharing this radius
      std::array<std::pair<long, long>, 8> pts{{{i, j}, {-i, j}, {i, -j}, {-i, -j}, {j, i}, {-j, i}, {j, -i}, {-j, -i}}};
      std::sort(pts.begin(), pts.end());
      const auto end = std::unique(pts.begin(), pts.end());
      for (auto it = pts.begin(); it != end; ++it) {
        const double re = static_cast<double>(it->first) * axis.step;
        const double im = static_cast<double>(it->second) * axis.step;
        const double phi = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
        const auto row = static_cast<std::size_t>(it->first + k_half);
        const auto col = static_cast<std::size_t>(it->second + k_half);
        w.values[row * n + col] = angular_sum(radial, orders, phi);
      }
    }
  }
  return w;
}

double wigner_point(const FockDensityMatrix& rho, cplx alpha) {
  const LaguerreTables tables(rho.cutoff());
  const std::vector<std::size_t> orders = active_orders(rho);
  std::vector<cplx> radial;
  radial_coefficients(rho, std::abs(alpha), orders, tables, radial);
  return angular_sum(radial, orders, alpha == cplx{} ? 0.0 : std::arg(alpha));
}

double analytic_cat_wigner_point(cplx alpha0, Parity parity, cplx alpha) {
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double overlap = std::exp(-2.0 * std::norm(alpha0));
  const double denom = 2.0 * (1.0 + sign * overlap);
  if (denom <= 0.0) throw std::invalid_argument("analytic_cat_wigner: odd cat at alpha0 = 0 does not exist");
  const double lobes = std::exp(-2.0 * std::norm(alpha - alpha0)) + std::exp(-2.0 * std::norm(alpha + alpha0));
  const double fringe = 2.0 * std::exp(-2.0 * std::norm(alpha)) * std::cos(4.0 * (std::conj(alpha) * alpha0).imag());
  return (2.0 / std::numbers::pi) * (lobes + sign * fringe) / denom;
}

WignerGrid analytic_cat_wigner(cplx alpha0, Parity parity, const UniformGrid& axis) {
  require_grid(axis, "analytic_cat_wigner");
  const std::size_t n = axis.size();
  WignerGrid w{axis, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w.values[i * n + j] = analytic_cat_wigner_point(alpha0, parity, {axis.at(i), axis.at(j)});
    }
  }
  return w;
}

double negativity(const WignerGrid& w) {
  return 0.5 * trapezoid_2d(w, [](double v) { return std::abs(v) - v; });
}

double wigner_integral(const WignerGrid& w) {
  return trapezoid_2d(w, [](double v) { return v; });
}

double coherence_l1_continuous(const FockDensityMatrix& rho, double theta, const UniformGrid& grid) {
  require_grid(grid, "coherence_l1_continuous");
  const RowMatrix psi = wavefunction_matrix(grid, rho.dim());
  const auto [re, im] = rotated_parts(rho, theta);
  const Eigen::MatrixXd a = psi * re;
  const Eigen::MatrixXd b = psi * im;
  const Eigen::MatrixXd psi_t = psi.transpose();
  const auto npts = static_cast<Eigen::Index>(grid.size());
  constexpr Eigen::Index kBlock = 256;

  double total = 0.0;
  double diagonal = 0.0;
  Eigen::MatrixXd kre, kim;
  for (Eigen::Index r0 = 0; r0 < npts; r0 += kBlock) {
    const Eigen::Index nb = std::min(kBlock, npts - r0);
    kre.noalias() = a.middleRows(r0, nb) * psi_t;
    kim.noalias() = b.middleRows(r0, nb) * psi_t;
    for (Eigen::Index c = 0; c < npts; ++c) {
      const double wc = grid.weight(static_cast<std::size_t>(c));
      for (Eigen::Index r = 0; r < nb; ++r) {
        const double wr = grid.weight(static_cast<std::size_t>(r0 + r));
        total += wr * wc * std::hypot(kre(r, c), kim(r, c));
      }
    }
    for (Eigen::Index r = 0; r < nb; ++r) {
      const Eigen::Index i = r0 + r;
      diagonal += grid.weight(static_cast<std::size_t>(i)) * std::abs(kre(r, i));
    }
  }
  return total * grid.step * grid.step - diagonal * grid.step;
}

CoherenceEstimate coherence_l1_continuous_checked(const FockDensityMatrix& rho, double theta, const UniformGrid& grid,
                                                  double max_relative_shift) {
  CoherenceEstimate e{};
  e.value = coherence_l1_continuous(rho, theta, grid);
  e.refined = coherence_l1_continuous(rho, theta, {grid.half_width, 0.5 * grid.step});
  e.relative_shift = std::abs(e.refined - e.value) / std::max(std::abs(e.refined), 1e-300);
  if (e.relative_shift > max_relative_shift) {
    std::ostringstream msg;
    msg << "coherence_l1_continuous: halving the spacing shifts the result by " << 100.0 * e.relative_shift
        << "% (limit " << 100.0 * max_relative_shift << "%); refine the position grid";
    throw GridError(msg.str());
  }
  return e;
}

double coherence_l1_number_basis(const FockDensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    for (std::size_t m = 0; m < rho.dim(); ++m) {
      if (n != m) s += std::abs(rho(n, m));
    }
  }
  return s;
}

double fringe_visibility(const QuadratureGrid& q, double alpha0_abs) {
  const double window = alpha0_abs > 0.0 ? 3.0 * std::numbers::pi / (std::sqrt(2.0) * alpha0_abs) : INFINITY;
  const std::vector<double>& p = q.density;
  std::vector<std::size_t> maxima, minima;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (std::abs(q.x[i]) > window) continue;
    if (p[i] > p[i - 1] && p[i] >= p[i + 1]) maxima.push_back(i);
    if (p[i] < p[i - 1] && p[i] <= p[i + 1]) minima.push_back(i);
  }
  if (maxima.empty() || minima.empty()) return 0.0;

  const std::size_t top = *std::max_element(maxima.begin(), maxima.end(),
                                            [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  double p_min = INFINITY;
  // nearest minimum on each side
  const auto right = std::upper_bound(minima.begin(), minima.end(), top);
  if (right != minima.end()) p_min = std::min(p_min, p[*right]);
  if (right != minima.begin()) p_min = std::min(p_min, p[*std::prev(right)]);
  const double p_max = p[top];
  p_min = std::max(p_min, 0.0);
  if (p_max + p_min <= 0.0) return 0.0;
  return (p_max - p_min) / (p_max + p_min);
}

}  // namespace catsim
