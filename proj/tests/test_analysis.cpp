#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wavelab/analysis.hpp"

using namespace wavelab;

namespace {

EnergyTrace synthetic(double (*E)(double), int n, double dt) {
  EnergyTrace tr;
  for (int k = 0; k < n; ++k) {
    tr.times.push_back(k * dt);
    tr.E_p.push_back(E(k * dt));
  }
  tr.calE_p = tr.dissipation = tr.overbar = std::vector<double>(n, 0.0);
  return tr;
}

}  // namespace

TEST_CASE("decay fit on exact exponential data") {
  const auto tr = synthetic([](double t) { return 3.0 * std::exp(-0.5 * t); }, 20, 0.5);
  const auto fit = fit_decay_rate(tr, {0.0, 10.0});
  CHECK(std::abs(fit.gamma_hat - 0.5) < 1e-12);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.samples == 20);
}

TEST_CASE("decay fit edge cases") {
  const auto flat = synthetic([](double) { return 1.0; }, 20, 0.5);
  CHECK(fit_decay_rate(flat, {0.0, 10.0}).gamma_hat == 0.0);

  auto zero = synthetic([](double t) { return std::exp(-t); }, 20, 0.5);
  zero.E_p[10] = 0.0;
  try {
    fit_decay_rate(zero, {0.0, 10.0});
    FAIL("expected degenerate-fit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFit);
  }
  try {
    fit_decay_rate(flat, {0.0, 1.0});
    FAIL("expected insufficient-data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("default window is the last three quarters") {
  const auto tr = synthetic([](double t) { return std::exp(-t); }, 41, 1.0);
  const auto w = default_decay_window(tr);
  CHECK(w.lo == 10.0);
  CHECK(w.hi == 40.0);
}

TEST_CASE("fitted rate does not depend on the data amplitude") {
  const Grid g(128);
  const auto prof = sample_damping(damping::SmoothBump{2.0, {0.6, 1.0}, 0.1}, g);
  const auto t1 = energy_trace(evolve(initial_data_from_tag("mixed", 1.0), prof, g, 20.0, 8), PExponent(2.0));
  const auto t2 = energy_trace(evolve(initial_data_from_tag("mixed", 7.5), prof, g, 20.0, 8), PExponent(2.0));
  const auto f1 = fit_decay_rate(t1, default_decay_window(t1));
  const auto f2 = fit_decay_rate(t2, default_decay_window(t2));
  CHECK(f1.gamma_hat == doctest::Approx(f2.gamma_hat).epsilon(1e-9));
  CHECK(f1.gamma_hat > 0.01);
}

TEST_CASE("K_p and M_alpha") {
  const PExponent p(2.0);
  CHECK(K_p(p) == 0.125);
  CHECK(std::abs(M_alpha(p, 1.0) - (-1.0 + std::sqrt(0.125))) < 1e-15);
  CHECK(M_alpha(p, 1.0) == doctest::Approx(-0.646447).epsilon(1e-6));
  for (double pv : {1.1, 2.0, 10.0}) {
    for (double a : {0.5, 1.0, 1.5}) {
      const double expected = -a + a * a * std::pow(pv * std::pow(2.0, pv), -1.0 / pv);
      CHECK(std::abs(M_alpha(PExponent(pv), a) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("global bound at t = 0 and out of regime") {
  for (double a : {0.1, 1.0, 1.9}) {
    CHECK(global_damping_bound(PExponent(3.0), a, 0.0, 0.7) ==
          doctest::Approx(std::pow(std::pow(2.0 + a, 2.0), 3.0) * 0.7));
    CHECK(global_damping_bound(PExponent(3.0), a, 0.0, 0.7) >= 0.7);
  }
  try {
    global_damping_bound(PExponent(2.0), 2.5, 1.0, 1.0);
    FAIL("expected out-of-regime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRegime);
  }
  CHECK_THROWS_AS(global_damping_bound(PExponent(2.0), 0.0, 1.0, 1.0), Error);
}

TEST_CASE("global bound holds along constant-damping trajectories") {
  const Grid g(512);
  for (auto [alpha, pv] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.1}}) {
    const auto prof = sample_damping(damping::Constant{alpha}, g);
    const auto traj = evolve(initial_data_from_tag("sine"), prof, g, 20.0, 16);
    const auto report = check_global_decay(traj, PExponent(pv), alpha);
    CHECK(report.bound_satisfied);
    CHECK(report.worst_margin <= 1.0 + 1e-6);
    CHECK(report.M_alpha == M_alpha(PExponent(pv), alpha));
  }
}

TEST_CASE("global bound refuses nonconstant damping") {
  const Grid g(32);
  const auto bump = sample_damping(damping::SmoothBump{1.0, {0.6, 1.0}, 0.1}, g);
  const auto traj = evolve(initial_data_from_tag("sine"), bump, g, 1.0, 1);
  try {
    check_global_decay(traj, PExponent(2.0), 1.0);
    FAIL("expected invalid-use");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidUse);
  }
  const auto c = sample_damping(damping::Constant{1.0}, g);
  const auto traj_c = evolve(initial_data_from_tag("sine"), c, g, 1.0, 1);
  CHECK_THROWS_AS(check_global_decay(traj_c, PExponent(2.0), 0.5), Error);
}

TEST_CASE("smallness thresholds") {
  const auto s = smallness_thresholds(PExponent(2.0), 1.0);
  CHECK(s.lambda_p == doctest::Approx(0.5));
  CHECK(s.c_p == doctest::Approx(0.5));
  CHECK(s.t_p == doctest::Approx(1.0 + std::log(16.0)));
  CHECK(s.t_p == doctest::Approx(3.772589).epsilon(1e-6));

  double prev_c = 1.0, prev_t = 0.0;
  for (double pv : {1.5, 1.1, 1.01, 1.001}) {
    const auto th = smallness_thresholds(PExponent(pv), 1.0);
    CHECK(th.c_p < prev_c);
    CHECK(th.t_p > prev_t);
    prev_c = th.c_p;
    prev_t = th.t_p;
  }
  CHECK(prev_t > 10.0);
  CHECK_THROWS_AS(smallness_thresholds(PExponent(2.0), 0.0), Error);
}

TEST_CASE("strong stability check") {
  const Grid g(128);
  const auto bump = sample_damping(damping::SmoothBump{2.0, {0.6, 1.0}, 0.1}, g);
  const auto traj = evolve(initial_data_from_tag("sine"), bump, g, 40.0, 16);
  CHECK(strong_stability_check(traj, PExponent(2.0), 0.01));
  CHECK(strong_stability_check(traj, PExponent(2.0), 2.0));

  const auto none = sample_damping(damping::None{}, g);
  const auto free = evolve(initial_data_from_tag("sine"), none, g, 12.0, 16);
  CHECK_FALSE(strong_stability_check(free, PExponent(2.0), 0.5));
  CHECK(strong_stability_check(free, PExponent(2.0), 2.0));

  const auto short_traj = evolve(initial_data_from_tag("sine"), bump, g, 2.0, 16);
  CHECK_THROWS_AS(strong_stability_check(short_traj, PExponent(2.0), 0.5), Error);
}

TEST_CASE("convergence study") {
  ConvergenceProblem undamped{initial_data_from_tag("sine"), damping::None{}, 1.0, 1e-12};
  for (const auto& row : convergence_study(undamped, {64, 128, 256})) CHECK(row.sup_error <= 1e-10);

  ConvergenceProblem bump{initial_data_from_tag("bump"), damping::SmoothBump{2.0, {0.6, 1.0}, 0.1}, 1.0, 1e-12};
  const auto rows = convergence_study(bump, {64, 128, 256});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].observed_order == 0.0);
  CHECK(rows[1].observed_order >= 1.8);
  CHECK(rows[2].observed_order >= 1.8);

  try {
    convergence_study(bump, {64});
    FAIL("expected insufficient-data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  CHECK_THROWS_AS(convergence_study(bump, {128, 64, 256}), Error);
}

TEST_CASE("observed orders") {
  const auto o = observed_orders({10, 20, 40}, {1.0, 0.25, 0.0625});
  REQUIRE(o.size() == 2);
  CHECK(o[0] == doctest::Approx(2.0));
  CHECK(o[1] == doctest::Approx(2.0));
}
