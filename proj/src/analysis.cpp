#include "wavelab/analysis.hpp"

#include <cmath>

#include "wavelab/solver_dalembert.hpp"

namespace wavelab {

DecayFit fit_decay_rate(const EnergyTrace& trace, Interval window) {
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < window.lo || t > window.hi) continue;
    if (!(trace.E_p[i] > 0.0)) {
      throw Error(ErrorKind::DegenerateFit, "nonpositive energy at t = " + std::to_string(t));
    }
    ts.push_back(t);
    ys.push_back(std::log(trace.E_p[i]));
  }
  if (ts.size() < 5) {
    throw Error(ErrorKind::InsufficientData, "need at least 5 samples in the fit window");
  }

  const double n = static_cast<double>(ts.size());
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += ys[i];
  }
  t_mean /= n;
  y_mean /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - t_mean, dy = ys[i] - y_mean;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  DecayFit fit;
  fit.gamma_hat = -slope;
  fit.intercept = y_mean - slope * t_mean;
  // A flat series is fit perfectly by a flat line.
  fit.r_squared = syy <= 1e-300 ? 1.0 : std::min(1.0, sty * sty / (stt * syy));
  fit.window = window;
  fit.samples = ts.size();
  return fit;
}

Interval default_decay_window(const EnergyTrace& trace) {
  const double t_end = trace.times.empty() ? 0.0 : trace.times.back();
  return {0.25 * t_end, t_end};
}

double K_p(const PExponent& p) { return 1.0 / (p.p() * std::pow(2.0, p.p())); }

double M_alpha(const PExponent& p, double alpha) {
  return -alpha + alpha * alpha * std::pow(K_p(p), 1.0 / p.p());
}

double global_damping_bound(const PExponent& p, double alpha, double t, double Ep0) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw Error(ErrorKind::OutOfRegime, "alpha must lie in (0, 2)");
  }
  if (!(Ep0 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "E_p(0) must be >= 0");
  const double root_bound = (2.0 + alpha) * (2.0 + alpha) * std::exp(M_alpha(p, alpha) * t) *
                            std::pow(Ep0, 1.0 / p.p());
  return std::pow(root_bound, p.p());
}

GlobalDampingReport check_global_decay(const Trajectory& trajectory, const PExponent& p,
                                       double alpha, double tolerance) {
  const auto* constant = std::get_if<damping::Constant>(&trajectory.damping.spec);
  if (constant == nullptr) {
    throw Error(ErrorKind::InvalidUse, "global bound needs a constant damping profile");
  }
  if (std::abs(2.0 * constant->alpha - 2.0 * alpha) > 1e-12) {
    throw Error(ErrorKind::InvalidUse, "trajectory damping does not match a = 2 alpha");
  }

  GlobalDampingReport report;
  report.alpha = alpha;
  report.p = p.p();
  report.K_p = K_p(p);
  report.M_alpha = M_alpha(p, alpha);

  const auto& states = trajectory.states;
  const double E0 = energy_Ep(states.front(), trajectory.grid, p);
  double worst = 0.0;
  for (const auto& state : states) {
    const double E = energy_Ep(state, trajectory.grid, p);
    const double bound = global_damping_bound(p, alpha, state.t - states.front().t, E0);
    if (bound > 0.0) worst = std::max(worst, E / bound);
    else if (E > 0.0) worst = std::numeric_limits<double>::infinity();
  }
  report.worst_margin = worst;
  report.bound_satisfied = worst <= 1.0 + tolerance;
  return report;
}

SmallnessThresholds smallness_thresholds(const PExponent& p, double gamma_p) {
  if (!(gamma_p > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma_p must be > 0");
  if (!(p.p() > 1.0)) throw Error(ErrorKind::InvalidArgument, "thresholds need p > 1");
  SmallnessThresholds th;
  th.lambda_p = std::pow(p.p() / 8.0, 1.0 / p.p());
  th.c_p = 0.5 * (p.p() - 1.0);
  th.t_p = (1.0 + std::log(8.0 / th.c_p)) / gamma_p;
  return th;
}

bool strong_stability_check(const Trajectory& trajectory, const PExponent& p, double epsilon) {
  const auto& states = trajectory.states;
  if (states.empty() || states.back().t < 10.0) {
    throw Error(ErrorKind::InvalidArgument, "strong stability check needs t_end >= 10");
  }
  const double E0 = energy_Ep(states.front(), trajectory.grid, p);
  const double E1 = energy_Ep(states.back(), trajectory.grid, p);
  return E1 <= epsilon * E0;
}

std::vector<double> observed_orders(const std::vector<int>& n_list, const std::vector<double>& errors) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    orders.push_back(std::log(errors[i] / errors[i + 1]) /
                     std::log(static_cast<double>(n_list[i + 1]) / n_list[i]));
  }
  return orders;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                              const std::vector<int>& n_list) {
  if (n_list.size() < 3) {
    throw Error(ErrorKind::InsufficientData, "convergence study needs at least 3 resolutions");
  }
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (n_list[i + 1] <= n_list[i]) throw Error(ErrorKind::InvalidArgument, "N list must ascend");
  }

  std::vector<ConvergenceRow> rows;
  std::vector<double> errors;
  for (int n : n_list) {
    const Grid grid(n);
    const auto damping = sample_damping(problem.damping, grid);
    const auto traj = evolve(problem.data, damping, grid, problem.t_end, 1);
    const auto oracle =
        picard_solve(problem.data, damping, grid, problem.t_end, {problem.picard_tol, 500});

    double err = 0.0;
    for (std::size_t m = 0; m < traj.states.size() && m < oracle.y.size(); ++m) {
      const auto& s = traj.states[m];
      for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        err = std::max(err, std::abs(0.5 * (s.rho[j] - s.xi[j]) - oracle.y[m][j]));
      }
    }
    rows.push_back({n, err, 0.0});
    errors.push_back(err);
  }
  const auto orders = observed_orders(n_list, errors);
  for (std::size_t i = 0; i < orders.size(); ++i) rows[i + 1].observed_order = orders[i];
  return rows;
}

}  // namespace wavelab
