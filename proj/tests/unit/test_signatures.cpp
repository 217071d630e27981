#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "catsim/error.hpp"
#include "catsim/signatures.hpp"
#include "support/dense_oracle.hpp"

using namespace catsim;
using std::numbers::pi;

namespace {

// Even cat with its inter-component coherence scaled by c, built from
// explicit amplitudes.
FockDensityMatrix partially_decohered_cat(double alpha, double c, std::size_t nc) {
  const auto plus = coherent_amplitudes({alpha, 0.0}, nc);
  const auto minus = coherent_amplitudes({-alpha, 0.0}, nc);
  FockDensityMatrix rho(nc);
  for (std::size_t n = 0; n <= nc; ++n)
    for (std::size_t m = 0; m <= nc; ++m)
      rho(n, m) = plus[n] * std::conj(plus[m]) + minus[n] * std::conj(minus[m]) +
                  c * (plus[n] * std::conj(minus[m]) + minus[n] * std::conj(plus[m]));
  rho.scale(1.0 / rho.trace().real());
  return rho;
}

// Marginal of W over Im alpha along the line Re alpha = x / sqrt(2).
double wigner_marginal(const FockDensityMatrix& rho, double x, double half_width) {
  const double h = 0.01;
  const auto k = static_cast<int>(std::round(half_width / h));
  double s = 0.0;
  for (int j = -k; j <= k; ++j) s += wigner_point(rho, {x / std::sqrt(2.0), j * h}) * (std::abs(j) == k ? 0.5 : 1.0);
  return s * h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("grids") {
  const UniformGrid g{1.0, 0.25};
  CHECK(g.half_points() == 4);
  CHECK(g.size() == 9);
  CHECK(g.at(0) == -1.0);
  CHECK(g.at(4) == 0.0);
  CHECK(g.weight(0) == 0.5);
  CHECK(g.weight(3) == 1.0);
  const auto pos = default_position_grid({10.0, 0.0});
  CHECK(pos.half_width == doctest::Approx(std::sqrt(2.0) * 10 + 7));
  CHECK(pos.step == 0.02);
  CHECK(default_wigner_axis({10.0, 0.0}).step == doctest::Approx(0.05));
  CHECK(default_wigner_axis({20.0, 0.0}).step == doctest::Approx(0.025));
}

TEST_CASE("vacuum and coherent quadratures") {
  const UniformGrid grid{8.0, 0.05};
  const auto q = quadrature_distribution(vacuum(10), 0.0, grid);
  for (std::size_t i = 0; i < q.x.size(); ++i)
    CHECK(q.density[i] == doctest::Approx(std::exp(-q.x[i] * q.x[i]) / std::sqrt(pi)).epsilon(1e-12).scale(1e-20));
  CHECK(q.integral() == doctest::Approx(1.0).epsilon(1e-10));

  const auto c = coherent({1.5, 0.0}, 40);
  const auto qc = quadrature_distribution(c, 0.0, grid);
  for (std::size_t i = 0; i < qc.x.size(); ++i) {
    const double s = qc.x[i] - std::sqrt(2.0) * 1.5;
    CHECK(std::abs(qc.density[i] - std::exp(-s * s) / std::sqrt(pi)) < 1e-11);
  }
  // the orthogonal quadrature of a real amplitude is centred
  const auto qp = quadrature_distribution(c, pi / 2, grid);
  for (std::size_t i = 0; i < qp.x.size(); ++i)
    CHECK(std::abs(qp.density[i] - std::exp(-qp.x[i] * qp.x[i]) / std::sqrt(pi)) < 1e-11);
}

TEST_CASE("even cat momentum fringes") {
  const double a = 2.0;
  const auto rho = cat({a, 0.0}, Parity::even, 40);
  const UniformGrid grid{6.0, 0.01};
  const auto q = quadrature_distribution(rho, pi / 2, grid);
  const double n2 = 1.0 / (2.0 * (1.0 + std::exp(-2 * a * a)));
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double p = q.x[i];
    const double c = std::cos(std::sqrt(2.0) * a * p);
    CHECK(std::abs(q.density[i] - 4.0 * n2 / std::sqrt(pi) * std::exp(-p * p) * c * c) < 1e-11);
  }
  const auto qx = quadrature_distribution(rho, 0.0, grid);
  for (std::size_t i = 0; i < qx.x.size(); ++i) {
    const double psi = oracle::even_cat_wavefunction(a, qx.x[i]);
    CHECK(std::abs(qx.density[i] - psi * psi) < 1e-11);
  }
}

TEST_CASE("quadratures rotate with the state") {
  const auto rho = cat({1.3, 0.7}, Parity::odd, 40);
  const UniformGrid grid{7.0, 0.05};
  const double phi = 0.9, theta = 0.4;
  const auto a = quadrature_distribution(rho, theta, grid);
  const auto b = quadrature_distribution(rotate(rho, phi), theta + phi, grid);
  for (std::size_t i = 0; i < a.x.size(); ++i) CHECK(std::abs(a.density[i] - b.density[i]) < 1e-12);
}

TEST_CASE("wigner function of simple states") {
  CHECK(wigner_point(vacuum(8), {0.0, 0.0}) == doctest::Approx(2.0 / pi));
  const cplx alpha(1.2, -0.8);
  const auto c = coherent(alpha, 40);
  CHECK(wigner_point(c, alpha) == doctest::Approx(2.0 / pi).epsilon(1e-10));
  const cplx off(0.3, 0.5);
  CHECK(wigner_point(c, alpha + off) == doctest::Approx(2.0 / pi * std::exp(-2.0 * std::norm(off))).epsilon(1e-10));

  const auto w = wigner(c, {6.0, 0.1});
  double lowest = 0.0;
  for (double v : w.values) lowest = std::min(lowest, v);
  CHECK(lowest > -1e-12);
  CHECK(wigner_integral(w) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.boundary_max() < 1e-10);
  CHECK(negativity(w) < 1e-9);

  FockDensityMatrix one = fock_state(1, 5);
  CHECK(wigner_point(one, {0.0, 0.0}) == doctest::Approx(-2.0 / pi));
}

TEST_CASE("grid wigner agrees with pointwise evaluation and the closed form") {
  const cplx a0(1.6, 0.9);
  const auto rho = cat(a0, Parity::even, 40);
  const UniformGrid axis{4.0, 0.1};
  const auto grid = wigner(rho, axis);
  const auto exact = analytic_cat_wigner(a0, Parity::even, axis);
  double diff = 0.0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) diff = std::max(diff, std::abs(grid.values[i] - exact.values[i]));
  CHECK(diff < 1e-10);
  CHECK(grid.at(7, 52) == doctest::Approx(wigner_point(rho, {axis.at(7), axis.at(52)})).epsilon(1e-12));

  const auto odd = cat(a0, Parity::odd, 40);
  CHECK(wigner_point(odd, {0.3, -0.2}) == doctest::Approx(analytic_cat_wigner_point(a0, Parity::odd, {0.3, -0.2})).epsilon(1e-10));
}

TEST_CASE("closed-form cat wigner") {
  CHECK(analytic_cat_wigner_point({0.0, 0.0}, Parity::even, {0.0, 0.0}) == doctest::Approx(2.0 / pi));
  const cplx a0(10.0, 0.0);
  CHECK(analytic_cat_wigner_point(a0, Parity::even, a0) == doctest::Approx(1.0 / pi));
  CHECK(analytic_cat_wigner_point(a0, Parity::even, -a0) == doctest::Approx(1.0 / pi));
  CHECK(analytic_cat_wigner_point(a0, Parity::even, {0.0, 0.0}) == doctest::Approx(2.0 / pi));
  // first ridge minimum at 4 Im(alpha) a0 = pi
  CHECK(analytic_cat_wigner_point(a0, Parity::even, {0.0, pi / 40.0}) == doctest::Approx(-2.0 / pi * std::exp(-2.0 * std::pow(pi / 40, 2))));
  CHECK(analytic_cat_wigner_point(a0, Parity::odd, {0.0, 0.0}) == doctest::Approx(-2.0 / pi));
}

TEST_CASE("negativity") {
  const cplx a0(10.0, 0.0);
  const double big = negativity(analytic_cat_wigner(a0, Parity::even, default_wigner_axis(a0)));
  CHECK(big == doctest::Approx(0.318).epsilon(0.005 / 0.318));
  CHECK(std::abs(big - 1.0 / pi) < 0.005);

  const auto mix = coherent_mixture({2.0, 0.0}, 40);
  CHECK(negativity(wigner(mix, {7.0, 0.05})) < 1e-9);

  const auto w = wigner(cat({2.0, 0.0}, Parity::even, 40), default_wigner_axis({2.0, 0.0}));
  CHECK(negativity(w) > 0.1);
  CHECK(wigner_integral(w) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("wigner marginal equals the quadrature distribution") {
  for (const auto& rho : {vacuum(30), coherent({2.0, 0.0}, 40), cat({2.0, 0.0}, Parity::even, 40)}) {
    const UniformGrid grid{5.0, 0.25};
    const auto q = quadrature_distribution(rho, 0.0, grid);
    for (std::size_t i = 0; i < q.x.size(); ++i) CHECK(std::abs(wigner_marginal(rho, q.x[i], 7.0) - q.density[i]) < 1e-4);
  }
}

TEST_CASE("continuous l1 coherence baselines") {
  const double floor = 2.0 * std::sqrt(pi) - 1.0;
  const auto vac = coherence_l1_continuous(vacuum(10), 0.0, default_position_grid({0.0, 0.0}));
  CHECK(vac == doctest::Approx(floor).epsilon(1e-6));

  const cplx a0(2.0, 0.0);
  const auto mix = coherence_l1_continuous(coherent_mixture(a0, 40), 0.0, default_position_grid(a0));
  CHECK(mix == doctest::Approx(floor).epsilon(0.005));

  // position-space oracle: (integral |psi|)^2 - 1 from the closed-form wavefunction
  for (double a : {2.0, 4.0}) {
    double s = 0.0;
    for (double x = -20.0; x <= 20.0; x += 0.001) s += std::abs(oracle::even_cat_wavefunction(a, x)) * 0.001;
    const double want = s * s - 1.0;
    const auto rho = cat({a, 0.0}, Parity::even, default_cutoff({a, 0.0}));
    CHECK(coherence_l1_continuous(rho, 0.0, default_position_grid({a, 0.0})) == doctest::Approx(want).epsilon(0.005));
  }
  const double big = coherence_l1_continuous(cat({4.0, 0.0}, Parity::even, 60), 0.0, default_position_grid({4.0, 0.0}));
  CHECK(big == doctest::Approx(4.0 * std::sqrt(pi) - 1.0).epsilon(0.005));
}

TEST_CASE("checked continuous l1 coherence") {
  const cplx a0(2.0, 0.0);
  const auto rho = cat(a0, Parity::even, 40);
  const auto est = coherence_l1_continuous_checked(rho, 0.0, default_position_grid(a0));
  CHECK(est.relative_shift < 0.005);
  CHECK(est.value == doctest::Approx(est.refined).epsilon(0.005));
  CHECK_THROWS_AS(coherence_l1_continuous_checked(rho, 0.0, {1.0, 0.5}), GridError);
}

TEST_CASE("number-basis l1 coherence") {
  CHECK(coherence_l1_number_basis(thermal_state(1.0, 30)) == 0.0);
  CHECK(coherence_l1_number_basis(vacuum(5)) == 0.0);
  FockDensityMatrix plus(1);
  for (std::size_t n = 0; n < 2; ++n)
    for (std::size_t m = 0; m < 2; ++m) plus(n, m) = 0.5;
  CHECK(coherence_l1_number_basis(plus) == doctest::Approx(1.0));

  // direct expansion: only even n, m survive with amplitude 2 N e^{-|a|^2/2} a^n / sqrt(n!)
  const double a = 2.0;
  const double nrm = std::sqrt(1.0 / (2.0 * (1.0 + std::exp(-2 * a * a))));
  std::vector<double> amp(41, 0.0);
  for (int n = 0; n <= 40; n += 2) amp[n] = 2.0 * nrm * std::exp(-a * a / 2 + n * std::log(a) - 0.5 * std::lgamma(n + 1.0));
  double want = 0.0;
  for (int n = 0; n <= 40; ++n)
    for (int m = 0; m <= 40; ++m)
      if (n != m) want += amp[n] * amp[m];
  CHECK(coherence_l1_number_basis(cat({a, 0.0}, Parity::even, 40)) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("fringe visibility") {
  const double a = 6.0;
  const UniformGrid grid{4.0, 0.005};
  const auto pure = quadrature_distribution(cat({a, 0.0}, Parity::even, 90), pi / 2, grid);
  CHECK(fringe_visibility(pure, a) == doctest::Approx(1.0).epsilon(0.02));

  const auto mix = quadrature_distribution(coherent_mixture({a, 0.0}, 90), pi / 2, grid);
  CHECK(fringe_visibility(mix, a) < 0.01);

  const auto half = quadrature_distribution(partially_decohered_cat(a, 0.5, 90), pi / 2, grid);
  CHECK(fringe_visibility(half, a) == doctest::Approx(0.5).epsilon(0.05 / 0.5));
}
