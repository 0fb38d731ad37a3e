#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wavelab/core_types.hpp"

using namespace wavelab;
using std::numbers::pi;

TEST_CASE("PExponent conjugates") {
  CHECK(PExponent(2.0).q() == doctest::Approx(2.0));
  CHECK(PExponent(1.5).q() == doctest::Approx(3.0));
  CHECK(std::isinf(PExponent(1.0).q()));
  CHECK(PExponent(3.0).conjugate().p() == doctest::Approx(1.5));
  CHECK_THROWS_AS(PExponent(0.5), Error);
  CHECK_THROWS_AS(PExponent(1.0).conjugate(), Error);
}

TEST_CASE("grid nodes and steps") {
  const Grid g(4);
  const std::vector<double> expected{0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(g.nodes() == expected);
  CHECK(g.dt() == 0.25);
  CHECK(make_grid(512).dx() == 1.0 / 512);
  CHECK_THROWS_AS(Grid(1), Error);
  CHECK_THROWS_AS(Grid(0), Error);
}

TEST_CASE("constant damping samples") {
  const auto prof = sample_damping(damping::Constant{1.0}, Grid(16));
  for (double a : prof.samples) CHECK(a == 2.0);
  CHECK(prof.a0 == 2.0);
  CHECK(prof.omega.lo == 0.0);
  CHECK(prof.omega.hi == 1.0);
  CHECK(prof.is_constant());
  CHECK_THROWS_AS(sample_damping(damping::Constant{0.0}, Grid(4)), Error);
}

TEST_CASE("smooth bump damping") {
  const Grid g(10);
  const auto prof = sample_damping(damping::SmoothBump{1.0, {0.6, 1.0}, 0.1}, g);
  CHECK(prof.samples[8] >= 1.0);
  CHECK(prof.samples[2] >= 0.0);
  CHECK(prof.samples[2] == 0.0);
  CHECK(prof.sup_bound == 1.0);
  for (double a : prof.samples) CHECK((a >= 0.0 && a <= 1.0));

  try {
    sample_damping(damping::SmoothBump{-1.0, {0.6, 1.0}, 0.1}, g);
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolation);
  }
  CHECK_THROWS_AS(sample_damping(damping::SmoothBump{1.0, {0.7, 0.7}, 0.1}, g), Error);
  CHECK_THROWS_AS(sample_damping(damping::IndicatorSmoothed{1.0, {0.8, 0.6}}, g), Error);
}

TEST_CASE("bump ramp is monotone and continuous") {
  const damping::SmoothBump spec{2.0, {0.6, 1.0}, 0.1};
  double prev = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double x = i / 1000.0;
    const double a = damping::evaluate(spec, x);
    CHECK(a >= prev - 1e-15);
    CHECK(a - prev <= 2.0 * 0.03);
    prev = a;
  }
  CHECK(damping::evaluate(spec, 0.5) == 0.0);
  CHECK(damping::evaluate(spec, 0.6) == 2.0);
}

TEST_CASE("indicator damping is steep but nonnegative") {
  const auto prof = sample_damping(damping::IndicatorSmoothed{3.0, {0.5, 1.0}}, Grid(100));
  CHECK(prof.samples[50] == 3.0);
  CHECK(prof.samples[48] == 0.0);
  CHECK(prof.samples[100] == 3.0);
}

TEST_CASE("zero damping profile") {
  const auto prof = sample_damping(damping::None{}, Grid(8));
  for (double a : prof.samples) CHECK(a == 0.0);
  CHECK_FALSE(prof.is_constant());
}

TEST_CASE("cutoff triple values") {
  const auto c = build_cutoffs(0.1, 0.2, 0.3, {0.6, 1.0});
  CHECK(c.psi(1.0) == 0.0);
  CHECK(c.psi(0.5) == 1.0);
  CHECK(c.phi(0.9) == 1.0);
  CHECK(c.beta(0.5) == 0.0);
  CHECK(c.beta(0.95) == 1.0);
  CHECK(c.in_Q(0, 0.95));
  CHECK_FALSE(c.in_Q(0, 0.85));
  CHECK(c.in_Q(2, 0.75));
}

TEST_CASE("cutoff nesting holds on a fine sample") {
  const auto c = build_cutoffs(0.1, 0.2, 0.3, {0.6, 1.0});
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    for (double v : {c.psi(x), c.phi(x), c.beta(x)}) CHECK((v >= 0.0 && v <= 1.0));
    // phi = 1 wherever psi is not 1, beta = 1 wherever phi is positive
    if (c.psi(x) < 1.0) CHECK(c.phi(x) == 1.0);
    if (c.phi(x) > 0.0) CHECK(c.beta(x) == 1.0);
    if (x < 0.6) CHECK(c.beta(x) == 0.0);
  }
}

TEST_CASE("cutoff derivatives match finite differences") {
  const auto c = build_cutoffs(0.1, 0.2, 0.3, {0.6, 1.0});
  const double h = 1e-6;
  for (int i = 1; i < 200; ++i) {
    const double x = i / 200.0;
    CHECK(c.psi_prime(x) == doctest::Approx((c.psi(x + h) - c.psi(x - h)) / (2 * h)).epsilon(1e-3).scale(1.0));
    CHECK(c.phi_prime(x) == doctest::Approx((c.phi(x + h) - c.phi(x - h)) / (2 * h)).epsilon(1e-3).scale(1.0));
    CHECK(c.beta_prime(x) == doctest::Approx((c.beta(x + h) - c.beta(x - h)) / (2 * h)).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("cutoff geometry errors") {
  const auto kind_of = [](double e0, double e1, double e2) {
    try {
      build_cutoffs(e0, e1, e2, {0.6, 1.0});
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Validation;
  };
  CHECK(kind_of(0.2, 0.1, 0.3) == ErrorKind::InvalidGeometry);
  CHECK(kind_of(0.05, 0.1, 0.5) == ErrorKind::InvalidGeometry);
  CHECK(kind_of(0.0, 0.1, 0.2) == ErrorKind::InvalidGeometry);
  CHECK_THROWS_AS(build_cutoffs(0.1, 0.2, 0.3, {0.5, 0.9}), Error);
}

TEST_CASE("initial state from closed-form data") {
  const Grid g(8);
  const auto s = init_state(initial_data_from_tag("sine"), g);
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    CHECK(s.rho[j] == doctest::Approx(pi * std::cos(pi * g.node(j))));
    CHECK(s.xi[j] == s.rho[j]);
  }

  const InitialData unit{[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 1.0; }, "unit"};
  const auto u = init_state(unit, g);
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    CHECK(u.rho[j] == 1.0);
    CHECK(u.xi[j] == -1.0);
  }

  const auto par = init_state(initial_data_from_tag("parabola"), g);
  CHECK(par.rho[4] == 0.0);

  const InitialData bad{[](double) { return 0.0; }, [](double x) { return 1.0 / (x - 0.5); },
                        [](double) { return 0.0; }, "bad"};
  CHECK_THROWS_AS(init_state(bad, g), Error);
  CHECK_THROWS_AS(initial_data_from_tag("nope"), Error);
}

TEST_CASE("tagged data have consistent derivatives and vanish at the walls") {
  for (const char* tag : {"sine", "sine-velocity", "parabola", "bump", "mixed"}) {
    const auto d = initial_data_from_tag(tag, 1.7);
    CHECK(std::abs(d.z0(0.0)) < 1e-14);
    CHECK(std::abs(d.z0(1.0)) < 1e-14);
    CHECK(std::abs(d.z1(1.0)) < 1e-14);
    for (double x : {0.13, 0.5, 0.77}) {
      const double h = 1e-6;
      CHECK(d.z0_prime(x) == doctest::Approx((d.z0(x + h) - d.z0(x - h)) / (2 * h)).epsilon(1e-7));
    }
  }
}

TEST_CASE("invariants round trip through derivatives") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  RiemannState s;
  for (int j = 0; j < 33; ++j) {
    s.rho.push_back(n01(rng));
    s.xi.push_back(n01(rng));
  }
  const auto d = to_derivatives(s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    CHECK(d.z_x[j] + d.z_t[j] == doctest::Approx(s.rho[j]));
    CHECK(d.z_x[j] - d.z_t[j] == doctest::Approx(s.xi[j]));
  }
  CHECK_NOTHROW(validate_state(s, Grid(32)));
  CHECK_THROWS_AS(validate_state(s, Grid(16)), Error);
  s.rho[3] = NAN;
  CHECK_THROWS_AS(validate_state(s, Grid(32)), Error);
}
