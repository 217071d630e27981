#include <doctest.h>

#include <cmath>
#include <sstream>

#include "catsim/error.hpp"
#include "catsim/fock_io.hpp"
#include "catsim/fock_states.hpp"

using namespace catsim;

TEST_CASE("default cutoff and tail") {
  CHECK(default_cutoff({10.0, 0.0}) == 170);
  CHECK(default_cutoff({0.0, 2.0}) == 26);
  CHECK(default_cutoff({20.0, 0.0}) == 530);
  CHECK(poisson_tail(4.0, 40) < 1e-15);
  CHECK(poisson_tail(4.0, 0) == doctest::Approx(1.0 - std::exp(-4.0)));
}

TEST_CASE("coherent states") {
  const auto vac = coherent({0.0, 0.0}, 10);
  CHECK(vac(0, 0) == cplx(1.0, 0.0));
  CHECK(purity(vac) == doctest::Approx(1.0));

  const auto c = coherent({2.0, 0.0}, 40);
  const auto dist = number_distribution(c);
  double fact = 1.0;
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) fact *= n;
    CHECK(dist.p[n] == doctest::Approx(std::exp(-4.0) * std::pow(4.0, n) / fact).epsilon(1e-12));
  }
  CHECK(dist.p[0] == doctest::Approx(std::exp(-4.0)));
  CHECK(std::abs(purity(c) - 1.0) < 1e-10);
  CHECK(mean_photon_number(c) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(two_photon_moment(c) - cplx(4.0, 0.0)) < 1e-10);

  const cplx alpha(1.0, -1.5);
  const auto amps = coherent_amplitudes(alpha, 30);
  CHECK(std::abs(amps[1] / amps[0] - alpha) < 1e-12);
  CHECK(std::abs(two_photon_moment(coherent(alpha, 40)) - alpha * alpha) < 1e-10);

  CHECK_THROWS_AS(coherent({10.0, 0.0}, 40), CutoffTooSmall);
}

TEST_CASE("cat states") {
  const auto even = cat({2.0, 0.0}, Parity::even, 40);
  const auto dist = number_distribution(even);
  for (std::size_t n = 1; n < dist.p.size(); n += 2) CHECK(dist.p[n] == 0.0);
  CHECK(dist.odd_weight == 0.0);
  CHECK(std::abs(even.trace() - 1.0) < 1e-12);

  // Normalization from the raw superposition.
  const auto plus = coherent_amplitudes({2.0, 0.0}, 40);
  const auto minus = coherent_amplitudes({-2.0, 0.0}, 40);
  const double n2 = 1.0 / (2.0 * (1.0 + std::exp(-8.0)));
  for (std::size_t n = 0; n <= 40; ++n) {
    const cplx amp = std::sqrt(n2) * (plus[n] + minus[n]);
    CHECK(std::abs(even(n, n) - std::norm(amp)) < 1e-13);
  }

  const auto odd = cat({2.0, 0.0}, Parity::odd, 40);
  CHECK(number_distribution(odd).odd_weight == doctest::Approx(1.0));

  const auto zero = cat({0.0, 0.0}, Parity::even, 10);
  CHECK(zero == vacuum(10));
  CHECK_THROWS_AS(cat({0.0, 0.0}, Parity::odd, 10), std::invalid_argument);
}

TEST_CASE("mixtures and purity") {
  const auto mix0 = coherent_mixture({0.0, 0.0}, 10);
  CHECK(purity(mix0) == doctest::Approx(1.0));
  const auto mix = coherent_mixture({3.0, 0.0}, 60);
  CHECK(purity(mix) == doctest::Approx(0.5).epsilon(1e-6));

  FockDensityMatrix half(3);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  CHECK(purity(half) == doctest::Approx(0.5));
  CHECK(purity(vacuum(5)) == 1.0);
}

TEST_CASE("thermal state") {
  const auto th = thermal_state(1.0, 60);
  const auto dist = number_distribution(th);
  for (int n = 0; n < 20; ++n) CHECK(dist.p[n] == doctest::Approx(0.5 * std::pow(0.5, n)).epsilon(1e-12));
  CHECK(dist.mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(th.trace() - 1.0) < 1e-14);
}

TEST_CASE("fock state, tail mass and hermiticity") {
  CHECK(fock_state(10, 10).tail_mass() == 1.0);
  CHECK(fock_state(9, 10).tail_mass() == 0.0);
  CHECK(fock_state(2, 10).tail_mass() == 0.0);
  FockDensityMatrix r(2);
  r(0, 1) = {1.0, 2.0};
  CHECK(r.hermiticity_error() == doctest::Approx(std::sqrt(5.0)));
  r.hermitize();
  CHECK(r.hermiticity_error() == 0.0);
  CHECK(r(1, 0) == cplx(0.5, -1.0));
}

TEST_CASE("rotation and overlap") {
  const auto c = coherent({1.5, 0.0}, 30);
  const auto rot = rotate(c, 0.7);
  const auto ref = coherent(std::polar(1.5, 0.7), 30);
  for (std::size_t n = 0; n <= 30; ++n)
    for (std::size_t m = 0; m <= 30; ++m) CHECK(std::abs(rot(n, m) - ref(n, m)) < 1e-12);
  CHECK(std::abs(overlap(c, c) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(c, coherent({-1.5, 0.0}, 30)) - std::exp(-9.0)) < 1e-12);
}

TEST_CASE("binary checkpoint round trip") {
  const auto c = cat({1.2, 0.4}, Parity::even, 20);
  std::stringstream ss;
  io::write_checkpoint(ss, c, 0.0125);
  const auto back = io::read_checkpoint(ss);
  CHECK(back.tau == 0.0125);
  CHECK(back.rho == c);

  std::stringstream bad("NOTMAGIC........");
  CHECK_THROWS(io::read_checkpoint(bad));
}

TEST_CASE("csv round trip") {
  const auto c = coherent({0.8, -0.3}, 15);
  std::stringstream ss;
  io::write_csv(ss, c);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "n,m,re,im");
  ss.seekg(0);
  const auto back = io::read_csv(ss, 15);
  for (std::size_t n = 0; n <= 15; ++n)
    for (std::size_t m = 0; m <= 15; ++m) CHECK(std::abs(back(n, m) - c(n, m)) <= 1e-14);
}

TEST_CASE("double formatting") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
}
