#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "catsim/special_functions.hpp"

using namespace catsim::special;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

double hermite_series(int n, double x) {
  double s = 0.0;
  for (int k = 0; 2 * k <= n; ++k)
    s += factorial(n) * std::pow(-1.0, k) * std::pow(2 * x, n - 2 * k) / (factorial(k) * factorial(n - 2 * k));
  return s;
}

double laguerre_series(int n, int l, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += std::pow(-1.0, k) * binomial(n + l, n - k) * std::pow(x, k) / factorial(k);
  return s;
}

}  // namespace

TEST_CASE("hermite low orders") {
  CHECK(hermite(0, 1.3) == doctest::Approx(1.0));
  CHECK(hermite(2, 1.0) == doctest::Approx(2.0));
  CHECK(hermite(1, -0.4) == doctest::Approx(-0.8));
}

TEST_CASE("hermite matches explicit series") {
  CHECK(hermite(5, 0.7) == doctest::Approx(hermite_series(5, 0.7)).epsilon(1e-13));
  for (int n = 0; n <= 12; ++n)
    for (double x : {-2.1, -0.3, 0.0, 0.9, 3.3})
      CHECK(hermite(n, x) == doctest::Approx(hermite_series(n, x)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("hermite overflow is reported") { CHECK_THROWS_AS(hermite(400, 30.0), std::overflow_error); }

TEST_CASE("assoc_laguerre") {
  CHECK(assoc_laguerre(0, 7, 3.2) == doctest::Approx(1.0));
  CHECK(assoc_laguerre(1, 2, 0.5) == doctest::Approx(2.5));
  CHECK(assoc_laguerre(4, 3, 2.0) == doctest::Approx(laguerre_series(4, 3, 2.0)).epsilon(1e-13));
  for (int n = 0; n <= 10; ++n)
    for (int l = 0; l <= 6; ++l)
      CHECK(assoc_laguerre(n, l, 1.7) == doctest::Approx(laguerre_series(n, l, 1.7)).epsilon(1e-11).scale(1.0));
}

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)));
  double cumulative = 0.0;
  for (int k = 2; k <= 170; ++k) cumulative += std::log(static_cast<double>(k));
  CHECK(std::isfinite(log_factorial(170)));
  CHECK(log_factorial(170) == doctest::Approx(cumulative).epsilon(1e-13));
  double c400 = cumulative;
  for (int k = 171; k <= 400; ++k) c400 += std::log(static_cast<double>(k));
  CHECK(log_factorial(400) == doctest::Approx(c400).epsilon(1e-12));
}

TEST_CASE("oscillator wavefunctions") {
  SUBCASE("ground state") {
    for (double x : {-1.5, 0.0, 0.4}) CHECK(oscillator_wavefunction(0, x) == doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-x * x / 2)));
  }
  SUBCASE("matches hermite form at small n") {
    for (int n = 0; n <= 15; ++n) {
      const double x = 1.1;
      const double ref = std::exp(-x * x / 2) * hermite_series(n, x) / std::sqrt(std::pow(2.0, n) * factorial(n) * std::sqrt(M_PI));
      CHECK(oscillator_wavefunction(n, x) == doctest::Approx(ref).epsilon(1e-11).scale(1e-3));
    }
  }
  SUBCASE("vector form agrees with pointwise form") {
    std::vector<double> out(300);
    for (double x : {-12.0, -0.7, 0.0, 3.2, 25.0}) {
      oscillator_wavefunctions(x, out);
      for (int n : {0, 1, 7, 60, 150, 299})
        CHECK(out[n] == doctest::Approx(oscillator_wavefunction(n, x)).epsilon(1e-10).scale(1e-300));
    }
  }
  SUBCASE("normalized on a fine grid") {
    for (int n : {0, 3, 40, 200}) {
      double s = 0.0;
      const double h = 0.01;
      for (double x = -30; x <= 30; x += h) s += std::pow(oscillator_wavefunction(n, x), 2) * h;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("signed log form") {
    const auto v = oscillator_wavefunction_log(3, 0.0);
    CHECK(v.sign == 0);
    const auto w = oscillator_wavefunction_log(500, 40.0);
    CHECK(std::isfinite(w.log_abs));
    CHECK(w.value() == doctest::Approx(oscillator_wavefunction(500, 40.0)).epsilon(1e-10).scale(1e-300));
  }
}

TEST_CASE("laguerre functions") {
  std::vector<double> out(12);
  for (int l : {0, 1, 4}) {
    for (double x : {0.0, 0.3, 2.5, 9.0}) {
      laguerre_functions(l, x, out);
      for (int n = 0; n < 12; ++n) {
        const double ref = std::sqrt(factorial(n) / factorial(n + l)) * std::pow(x, 0.5 * l) * std::exp(-x / 2) *
                           laguerre_series(n, l, x);
        CHECK(out[n] == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
      }
    }
  }
  SUBCASE("large orders stay finite") {
    std::vector<double> big(600);
    laguerre_functions(300, 800.0, big);
    for (double v : big) CHECK(std::isfinite(v));
  }
}
