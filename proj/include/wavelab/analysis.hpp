#pragma once

// Decay-rate extraction, the explicit bound for global constant damping,
// smallness thresholds and refinement studies.

#include <vector>

#include "wavelab/core_types.hpp"
#include "wavelab/energy.hpp"
#include "wavelab/solver_riemann.hpp"

namespace wavelab {

struct DecayFit {
  double gamma_hat = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Interval window;
  std::size_t samples = 0;
};

/// Least squares of log E_p against t over the window; gamma_hat = -slope.
/// Throws DegenerateFit on a nonpositive energy in the window and
/// InsufficientData with fewer than 5 samples.
DecayFit fit_decay_rate(const EnergyTrace& trace, Interval window);

/// Window [t_end/4, t_end].
Interval default_decay_window(const EnergyTrace& trace);

/// K_p = 1 / (p 2^p).
double K_p(const PExponent& p);
/// M_alpha = -alpha + alpha^2 K_p^(1/p).
double M_alpha(const PExponent& p, double alpha);

/// E_p bound ((2+alpha)^2 e^{M_alpha t} Ep0^{1/p})^p for a = 2 alpha.
/// Throws OutOfRegime unless alpha is in (0, 2).
double global_damping_bound(const PExponent& p, double alpha, double t, double Ep0);

struct GlobalDampingReport {
  double alpha = 0.0;
  double p = 2.0;
  double K_p = 0.0;
  double M_alpha = 0.0;
  bool bound_satisfied = false;
  double worst_margin = 0.0;  // max_t E_p(t) / bound(t)
};

/// Evaluates the bound at every recorded state. Throws InvalidUse when the
/// trajectory's damping is not the constant profile a = 2 alpha.
GlobalDampingReport check_global_decay(const Trajectory& trajectory, const PExponent& p,
                                       double alpha, double tolerance = 1e-6);

struct SmallnessThresholds {
  double lambda_p = 0.0;
  double c_p = 0.0;
  double t_p = 0.0;
};

/// lambda_p = (p/8)^(1/p), c_p = (p-1)/2, t_p = (1 + ln(8/c_p)) / gamma_p.
SmallnessThresholds smallness_thresholds(const PExponent& p, double gamma_p);

/// E_p(t_end) <= epsilon * E_p(0). Requires the trajectory to reach t >= 10.
bool strong_stability_check(const Trajectory& trajectory, const PExponent& p, double epsilon);

struct ConvergenceProblem {
  InitialData data;
  damping::Spec damping;
  double t_end = 1.0;
  double picard_tol = 1e-12;
};

struct ConvergenceRow {
  int n_cells = 0;
  double sup_error = 0.0;
  double observed_order = 0.0;  // 0 for the first row
};

/// Sup-norm gap in z_t between the characteristic scheme and the Picard
/// oracle over all grid times up to t_end, for each N.
std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                              const std::vector<int>& n_list);

/// log(e_i / e_{i+1}) / log(N_{i+1} / N_i) for consecutive rows.
std::vector<double> observed_orders(const std::vector<int>& n_list, const std::vector<double>& errors);

}  // namespace wavelab
