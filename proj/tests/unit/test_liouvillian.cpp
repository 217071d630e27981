#include <doctest.h>

#include <cmath>
#include <random>

#include "catsim/error.hpp"
#include "catsim/liouvillian.hpp"
#include "support/dense_oracle.hpp"

using namespace catsim;

namespace {

ReservoirState bath(double n_th, double n_s, cplx m) {
  ReservoirState s;
  s.n_th = n_th;
  s.n_s = n_s;
  s.m = m;
  return s;
}

Liouvillian make(const ModelParams& p, const ReservoirState& b, std::size_t nc) {
  return Liouvillian(p, SqueezeSchedule::constant(b), nc);
}

double rel_error(const FockDensityMatrix& got, const oracle::Mat& want) {
  return oracle::max_abs(oracle::to_dense(got) - want) / std::max(oracle::max_abs(want), 1e-300);
}

}  // namespace

TEST_CASE("model parameters") {
  ModelParams p{625.0, 6.25, 0.0};
  CHECK(std::abs(p.alpha0() - cplx(10.0, 0.0)) < 1e-12);
  const auto leg = ModelParams::from_amplitude(2.0, 1.41 * 1.41, 1.01);
  CHECK(std::abs(leg.alpha0()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(leg.lambda == doctest::Approx(8.92).epsilon(2e-3));
  ModelParams kerr{10.0, 2.0, 10.0};
  CHECK(kerr.chi() == 5.0);
  CHECK(std::abs(kerr.alpha0() - std::sqrt(cplx(10.0) / cplx(2.0, 10.0))) < 1e-14);
  CHECK_THROWS_AS((ModelParams{1.0, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{-1.0, 1.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("cutoff below the amplitude is rejected") {
  const ModelParams p{625.0, 6.25, 0.0};
  CHECK_THROWS_AS(make(p, {}, 100), CutoffTooSmall);
  CHECK_NOTHROW(make(p, {}, 160));
  CHECK_THROWS_AS(make({}, {}, 1), CutoffTooSmall);
}

TEST_CASE("single entries") {
  SUBCASE("pump from vacuum") {
    const auto L = make({1.0, 0.0, 1.0}, {}, 6);
    const auto d = L.apply(vacuum(6), 0.0);
    CHECK(std::abs(d(2, 0) - std::sqrt(2.0) / 2.0) < 1e-15);
    CHECK(std::abs(d(0, 2) - std::sqrt(2.0) / 2.0) < 1e-15);
  }
  SUBCASE("vacuum is the zero-temperature fixed point") {
    const auto L = make({}, {}, 8);
    const auto d = L.apply(vacuum(8), 0.0);
    for (auto v : d.data()) CHECK(v == 0.0);
  }
}

TEST_CASE("documented parameter set matches the dense oracle") {
  const ModelParams p{2.0, 0.5, 1.0};
  const auto b = bath(0.3, 1.0, std::sqrt(2.0));
  const auto L = make(p, b, 8);
  std::mt19937_64 rng(2024);
  const auto rho = oracle::random_density(8, rng);
  const auto want = oracle::generator(p, 1.3, std::sqrt(2.0), rho);
  CHECK(rel_error(L.apply(oracle::from_dense(rho), 0.0), want) < 1e-12);
}

TEST_CASE("random draws match the dense oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 60; ++draw) {
    CAPTURE(draw);
    const std::size_t nc = 2 + static_cast<std::size_t>(u(rng) * 9.0);
    ModelParams p;
    p.g2 = 0.2 + 2.0 * u(rng);
    p.chi_prime = -1.5 + 3.0 * u(rng);
    const double amax = 0.5 * (-3.0 + std::sqrt(9.0 + 4.0 * nc));
    const double a = amax * u(rng);
    p.lambda = a * a * std::hypot(p.g2, p.chi_prime);
    const double n_th = 2.0 * u(rng), n_s = 2.0 * u(rng);
    const double n = n_th + n_s;
    const cplx m = std::polar(std::sqrt(n * (n + 1)) * u(rng), 2.0 * M_PI * u(rng));
    const auto L = make(p, bath(n_th, n_s, m), nc);

    const auto rho = oracle::random_density(nc, rng);
    const auto want = oracle::generator(p, n, m, rho);
    CHECK(rel_error(L.apply(oracle::from_dense(rho), 0.0), want) < 1e-12);

    FockDensityMatrix half(nc);
    L.apply_hermitian(oracle::from_dense(rho), 0.0, half);
    CHECK(rel_error(half, want) < 1e-12);

    // non-Hermitian input, full path only
    const auto x = oracle::random_matrix(nc, rng);
    CHECK(rel_error(L.apply(oracle::from_dense(x), 0.0), oracle::generator(p, n, m, x)) < 1e-12);
  }
}

TEST_CASE("trace and hermiticity are preserved") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ModelParams p{20.0, 1.0, 0.7};
  for (int draw = 0; draw < 100; ++draw) {
    const double n = 3.0 * u(rng);
    const cplx m = std::polar(std::sqrt(n * (n + 1)) * u(rng), 6.0 * u(rng));
    const auto L = make(p, bath(n, 0.0, m), 30);
    const auto rho = oracle::from_dense(oracle::random_density(30, rng));
    const auto d = L.apply(rho, 0.0);
    double scale = 0.0;
    for (auto v : d.data()) scale = std::max(scale, std::abs(v));
    CHECK(std::abs(d.trace()) < 1e-11 * std::max(1.0, scale));
    CHECK(d.hermiticity_error() < 1e-12 * scale);
  }
}

TEST_CASE("literal printed stencil is not trace preserving") {
  std::mt19937_64 rng(31);
  const ModelParams p{3.0, 1.0, 0.5};
  const double n = 0.4;
  const cplx m = std::polar(0.6, 0.3);
  const std::size_t nc = 10;
  const auto L = make(p, bath(n, 0.0, m), nc);
  for (int draw = 0; draw < 10; ++draw) {
    auto rho = oracle::random_density(nc, rng);
    const auto a = oracle::annihilation(nc);
    const cplx a2 = (a * a * rho).trace();

    const cplx corrected = L.apply(oracle::from_dense(rho), 0.0).trace();
    CHECK(std::abs(corrected) < 1e-11);

    const cplx literal = oracle::literal_generator(p, n, m, rho).trace();
    // -M(a^2 rho + rho a^2) enters twice as often as it should, in both
    // brackets, and (a a^dag)_{N_c N_c} = N_c + 1 leaks at the edge.
    const double predicted = -8.0 * std::real(m * a2) - 2.0 * n * (nc + 1) * rho(nc, nc).real();
    CHECK(std::abs(literal.real() - predicted) < 1e-11);
    CHECK(std::abs(literal.imag()) < 1e-11);
    CHECK(std::abs(predicted) > 1e-3);
  }
}

TEST_CASE("photon-number parity structure") {
  const auto L = make({4.0, 1.3, 0.4}, bath(0.2, 0.5, cplx(0.3, -0.5)), 20);
  const auto even = cat({1.5, 0.5}, Parity::even, 20);
  const auto d = L.apply(even, 0.0);
  // every term moves n and m together modulo 2
  for (std::size_t r = 0; r <= 20; ++r)
    for (std::size_t c = 0; c <= 20; ++c)
      if ((r + c) % 2 == 1) CHECK(d(r, c) == 0.0);

  // at zero temperature only single-photon loss feeds odd numbers: dP_odd/dtau = 2<n>
  const auto L0 = make({4.0, 1.3, 0.4}, {}, 20);
  const auto d0 = L0.apply(even, 0.0);
  double odd_rate = 0.0;
  for (std::size_t n = 1; n <= 20; n += 2) odd_rate += d0(n, n).real();
  CHECK(odd_rate == doctest::Approx(2.0 * mean_photon_number(even)).epsilon(1e-12));
}

TEST_CASE("step_on switches the squeezed bath at tau_on") {
  const ModelParams p{2.0, 1.0, 1.0};
  const auto base = thermalized_squeezed_ns(1.0, 0.2, 0.0);
  const Liouvillian L(p, SqueezeSchedule::step_on(base, 0.002), 12);
  std::mt19937_64 rng(5);
  const auto rho = oracle::random_density(12, rng);
  const auto early = L.apply(oracle::from_dense(rho), 0.001);
  CHECK(rel_error(early, oracle::generator(p, 0.2, 0.0, rho)) < 1e-12);
  const auto late = L.apply(oracle::from_dense(rho), 0.003);
  CHECK(rel_error(late, oracle::generator(p, 1.2, base.m, rho)) < 1e-12);
  const auto b = L.bath_at(0.001, oracle::from_dense(rho));
  CHECK(b.m == 0.0);
  CHECK(b.n_total == doctest::Approx(0.2));
}

TEST_CASE("rotating schedule follows the two-photon phase") {
  const ModelParams p{2.0, 1.0, 1.0};
  const auto base = thermalized_squeezed_ns(1.0, 0.0, 0.0);
  const Liouvillian L(p, SqueezeSchedule::rotating(base, 0.1), 20);
  const auto coh = coherent(std::polar(1.2, 0.35), 20);
  CHECK(std::arg(L.bath_at(0.0, coh).m) == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(std::arg(L.bath_at(0.0, vacuum(20)).m) == doctest::Approx(0.2));
}

TEST_CASE("norm estimate") {
  const ModelParams p{2.0, 0.5, -1.0};
  const auto b = bath(0.3, 1.0, std::sqrt(2.0));
  const auto L = make(p, b, 10);
  const double want = 2.0 * 10 + 0.5 * 100 + 1.0 * 100 + 2.0 * 2.3 * 10 + 4.0 * std::sqrt(2.0) * 10;
  CHECK(L.norm_estimate() == doctest::Approx(want));
}

TEST_CASE("kernel variants give the same action") {
  const kernels::KernelSet* simd = kernels::avx2_kernels();
  if (simd == nullptr) {
    MESSAGE("AVX2/FMA not available; skipping");
    return;
  }
  const ModelParams p{10.0, 1.0, 0.3};
  auto L = make(p, bath(0.5, 1.0, cplx(0.8, 0.9)), 40);
  std::mt19937_64 rng(12);
  const auto rho = oracle::from_dense(oracle::random_density(40, rng));
  L.use_kernels(kernels::scalar_kernels());
  const auto ref = L.apply(rho, 0.0);
  FockDensityMatrix ref_half(40);
  L.apply_hermitian(rho, 0.0, ref_half);
  L.use_kernels(*simd);
  const auto got = L.apply(rho, 0.0);
  FockDensityMatrix got_half(40);
  L.apply_hermitian(rho, 0.0, got_half);
  double scale = 0.0, diff = 0.0, diff_half = 0.0;
  for (std::size_t i = 0; i < ref.data().size(); ++i) {
    scale = std::max(scale, std::abs(ref.data()[i]));
    diff = std::max(diff, std::abs(ref.data()[i] - got.data()[i]));
    diff_half = std::max(diff_half, std::abs(ref_half.data()[i] - got_half.data()[i]));
  }
  CHECK(diff <= 1e-13 * scale);
  CHECK(diff_half <= 1e-13 * scale);
}
