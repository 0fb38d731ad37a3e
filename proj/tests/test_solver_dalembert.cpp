#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wavelab/solver_dalembert.hpp"
#include "wavelab/solver_riemann.hpp"

using namespace wavelab;
using std::numbers::pi;

namespace {

// z = sin(pi x) T(t) solves z_tt + 2 alpha z_t = z_xx with T(0) = 1, T'(0) = 0.
double damped_mode_velocity(double alpha, double t) {
  const double w = std::sqrt(pi * pi - alpha * alpha);
  return -std::exp(-alpha * t) * (pi * pi / w) * std::sin(w * t);
}

double damped_mode_position(double alpha, double t) {
  const double w = std::sqrt(pi * pi - alpha * alpha);
  return std::exp(-alpha * t) * (std::cos(w * t) + alpha / w * std::sin(w * t));
}

}  // namespace

TEST_CASE("odd periodic extension") {
  const auto e = extend_odd_periodic([](double x) { return x * (1.0 - x); });
  CHECK(e(-0.5) == doctest::Approx(-0.25));
  CHECK(e(1.5) == doctest::Approx(-0.25));
  CHECK(e(2.25) == doctest::Approx(e(0.25)));
  CHECK(e.parity() == Parity::Odd);

  const ExtendedFunction lin([](double x) { return x; }, Parity::Odd);
  CHECK(lin(-0.5) == doctest::Approx(-0.5));
  CHECK(lin(1.5) == doctest::Approx(-0.5));

  const auto s = extend_odd_periodic([](double x) { return std::sin(pi * x); });
  for (double x = -3.0; x <= 3.0; x += 0.137) CHECK(s(x) == doctest::Approx(std::sin(pi * x)).scale(1.0));

  const auto z = extend_odd_periodic([](double) { return 0.0; });
  CHECK(z(0.3) == 0.0);
  CHECK(z(-7.1) == 0.0);
}

TEST_CASE("even periodic extension") {
  const auto e = extend_even_periodic([](double x) { return x; });
  CHECK(e(-0.5) == doctest::Approx(0.5));
  const auto c = extend_even_periodic([](double) { return 3.0; });
  CHECK(c(-4.2) == 3.0);
  CHECK(c(9.9) == 3.0);
  const auto r = extend_even_periodic([](double x) { return 1.0 - x; });
  CHECK(r(1.5) == doctest::Approx(0.5));
  CHECK(r(-0.5) == doctest::Approx(0.5));
}

TEST_CASE("simpson integrates cubics exactly") {
  CHECK(simpson([](double x) { return x * x * x - 2 * x; }, -1.0, 2.0, 2) ==
        doctest::Approx(15.0 / 4.0 - 3.0));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, pi, 64) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("d'Alembert formula on standing waves") {
  const auto z0e = extend_odd_periodic([](double x) { return std::sin(pi * x); });
  const auto zero = extend_odd_periodic([](double) { return 0.0; });
  CHECK(std::abs(dalembert_apply(z0e, zero, {}, 0.5, 0.5, 64)) < 1e-15);
  CHECK(dalembert_apply(z0e, zero, {}, 0.3, 0.2, 64) ==
        doctest::Approx(std::sin(pi * 0.2) * std::cos(pi * 0.3)));
  CHECK(dalembert_apply(z0e, zero, {}, 0.0, 0.37, 64) == std::sin(pi * 0.37));

  const auto z1e = extend_odd_periodic([](double x) { return std::sin(pi * x); });
  CHECK(dalembert_apply(zero, z1e, {}, 0.5, 0.5, 64) == doctest::Approx(1.0 / pi).epsilon(1e-8));
}

TEST_CASE("d'Alembert formula with a source") {
  // z = t^2/2 sin(pi x) has z_tt - z_xx = sin(pi x) (1 + pi^2 t^2 / 2) and zero data.
  const auto zero = extend_odd_periodic([](double) { return 0.0; });
  const SpaceTimeFn g = [](double s, double x) { return std::sin(pi * x) * (1.0 + pi * pi * s * s / 2.0); };
  const double t = 0.4, x = 0.3;
  CHECK(dalembert_apply(zero, zero, g, t, x, 64) == doctest::Approx(t * t / 2.0 * std::sin(pi * x)).epsilon(1e-8));
}

TEST_CASE("d'Alembert argument checks") {
  const auto zero = extend_odd_periodic([](double) { return 0.0; });
  CHECK_THROWS_AS(dalembert_apply(zero, zero, {}, -0.1, 0.5, 64), Error);
  CHECK_THROWS_AS(dalembert_apply(zero, zero, {}, 0.1, 0.5, 2), Error);
}

TEST_CASE("undamped Picard converges in one iteration") {
  const Grid g(32);
  const auto none = sample_damping(damping::None{}, g);
  const auto sol = picard_solve(initial_data_from_tag("sine"), none, g, 1.0, {});
  CHECK(sol.iterations_used == 1);
  for (std::size_t m = 0; m < sol.y.size(); ++m) {
    const double t = m * g.dt();
    for (std::size_t j = 0; j < g.n_nodes(); ++j) {
      CHECK(std::abs(sol.y[m][j] + pi * std::sin(pi * g.node(j)) * std::sin(pi * t)) < 1e-12);
    }
  }
}

TEST_CASE("Picard matches the damped standing mode with second order") {
  const double alpha = 0.8;
  double err_prev = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g(n);
    const auto prof = sample_damping(damping::Constant{alpha}, g);
    const auto sol = picard_solve(initial_data_from_tag("sine"), prof, g, 1.0, {});
    double err = 0.0;
    for (std::size_t m = 0; m < sol.y.size(); ++m) {
      const double t = m * g.dt();
      for (std::size_t j = 0; j < g.n_nodes(); ++j) {
        err = std::max(err, std::abs(sol.y[m][j] - std::sin(pi * g.node(j)) * damped_mode_velocity(alpha, t)));
      }
    }
    CHECK(err < 20.0 / (n * n));
    if (err_prev > 0.0) CHECK(std::log2(err_prev / err) > 1.8);
    err_prev = err;
  }
}

TEST_CASE("Picard iteration count follows the contraction bound") {
  const Grid g(64);
  const auto prof = sample_damping(damping::Constant{1.0}, g);
  PicardOptions opt;
  opt.tol = 1e-10;
  const auto sol = picard_solve(initial_data_from_tag("mixed"), prof, g, 2.0, opt);
  CHECK(sol.contraction_bound <= 0.5);
  CHECK(sol.contraction_bound > 0.0);
  CHECK(sol.n_windows >= 8);
  const int bound = static_cast<int>(std::ceil(std::log(opt.tol) / std::log(sol.contraction_bound)));
  CHECK(sol.iterations_used <= bound);
  CHECK(sol.residual < opt.tol);
}

TEST_CASE("Picard fixed point satisfies the full map") {
  const Grid g(32);
  const auto prof = sample_damping(damping::SmoothBump{3.0, {0.5, 1.0}, 0.2}, g);
  const auto data = initial_data_from_tag("bump");
  const auto sol = picard_solve(data, prof, g, 1.5, {});
  const auto image = picard_map(data, prof, g, sol.y);
  double gap = 0.0;
  for (std::size_t m = 0; m < image.size(); ++m) {
    for (std::size_t j = 0; j < g.n_nodes(); ++j) gap = std::max(gap, std::abs(image[m][j] - sol.y[m][j]));
  }
  CHECK(gap < 1e-10);
}

TEST_CASE("Picard failure modes") {
  const Grid g(32);
  const auto prof = sample_damping(damping::Constant{25.0}, g);
  PicardOptions opt;
  opt.tol = 1e-12;
  opt.max_iter = 2;
  try {
    picard_solve(initial_data_from_tag("sine"), prof, g, 1.0, opt);
    FAIL("expected no-convergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
  opt.tol = 0.0;
  CHECK_THROWS_AS(picard_solve(initial_data_from_tag("sine"), prof, g, 1.0, opt), Error);
}

TEST_CASE("oracle reproduces initial data and the undamped period") {
  const Grid g(64);
  const auto none = sample_damping(damping::None{}, g);
  const auto data = initial_data_from_tag("mixed");
  const auto out = oracle_solution(data, none, g, {0.0, 2.0});
  REQUIRE(out.size() == 2);
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    const double x = g.node(j);
    CHECK(out[0].z[j] == data.z0(x));
    CHECK(out[0].z_t[j] == data.z1(x));
    CHECK(std::abs(out[1].z[j] - data.z0(x)) < 1e-9);
    CHECK(std::abs(out[1].z_t[j] - data.z1(x)) < 1e-9);
  }
  CHECK_THROWS_AS(oracle_solution(data, none, g, {0.01}), Error);
}

TEST_CASE("oracle displacement matches the damped standing mode") {
  const double alpha = 0.5;
  const Grid g(128);
  const auto prof = sample_damping(damping::Constant{alpha}, g);
  const auto out = oracle_solution(initial_data_from_tag("sine"), prof, g, {0.5, 1.0});
  for (const auto& s : out) {
    for (std::size_t j = 0; j < g.n_nodes(); j += 8) {
      CHECK(s.z[j] == doctest::Approx(std::sin(pi * g.node(j)) * damped_mode_position(alpha, s.t)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("oracle and characteristic scheme agree on a bump damping") {
  const Grid g(128);
  const auto prof = sample_damping(damping::SmoothBump{2.0, {0.6, 1.0}, 0.1}, g);
  const auto data = initial_data_from_tag("bump");
  const auto traj = evolve(data, prof, g, 1.0, 1);
  const auto sol = picard_solve(data, prof, g, 1.0, {});
  double gap = 0.0;
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    const auto& s = traj.states[m];
    for (std::size_t j = 0; j < g.n_nodes(); ++j) {
      gap = std::max(gap, std::abs(0.5 * (s.rho[j] - s.xi[j]) - sol.y[m][j]));
    }
  }
  CHECK(gap < 100.0 / (128.0 * 128.0));
}
