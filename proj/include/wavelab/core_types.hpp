#pragma once

// Shared vocabulary: exponents, grids, damping profiles, Riemann states,
// cutoff functions and initial data for the damped string on (0,1).

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wavelab/error.hpp"

namespace wavelab {

/// Exponent p >= 1 and its conjugate q (q = +inf when p = 1).
class PExponent {
 public:
  explicit PExponent(double p);

  double p() const { return p_; }
  double q() const { return q_; }
  bool is_one() const { return p_ == 1.0; }

  /// Exponent whose conjugate is this one. Requires p > 1.
  PExponent conjugate() const;

 private:
  double p_;
  double q_;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double length() const { return hi - lo; }
};

/// Uniform mesh of (0,1) with dt = dx (CFL number one).
class Grid {
 public:
  explicit Grid(int n_cells);

  int n_cells() const { return n_cells_; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(n_cells_) + 1; }
  double dx() const { return dx_; }
  double dt() const { return dx_; }
  double node(std::size_t j) const { return static_cast<double>(j) / n_cells_; }
  std::vector<double> nodes() const;

 private:
  int n_cells_;
  double dx_;
};

Grid make_grid(int n_cells);

namespace damping {

/// a(x) = 2*alpha on all of [0,1].
struct Constant {
  double alpha = 1.0;
};

/// a = a0 on omega, smooth C^2 ramp of the given width down to 0 outside.
struct SmoothBump {
  double a0 = 1.0;
  Interval omega{0.6, 1.0};
  double ramp = 0.1;
};

/// Indicator of omega times a0 with a narrow (0.01) ramp.
struct IndicatorSmoothed {
  double a0 = 1.0;
  Interval omega{0.6, 1.0};
};

/// a = 0. Outside the standing hypothesis; used for conservation checks.
struct None {};

using Spec = std::variant<Constant, SmoothBump, IndicatorSmoothed, None>;

/// Closed-form a(x) for a spec; x outside [0,1] is not meaningful.
double evaluate(const Spec& spec, double x);

}  // namespace damping

struct DampingProfile {
  std::vector<double> samples;
  double a0 = 0.0;
  Interval omega;
  double sup_bound = 0.0;
  damping::Spec spec;

  bool is_constant() const { return std::holds_alternative<damping::Constant>(spec); }
};

DampingProfile sample_damping(const damping::Spec& spec, const Grid& grid);

struct RiemannState {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> xi;

  std::size_t size() const { return rho.size(); }
};

/// Throws InvalidArgument unless rho, xi match the grid and are finite.
void validate_state(const RiemannState& state, const Grid& grid);

/// C^1 cubic smoothstep: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t);
double smoothstep_derivative(double t);

/// The nested cutoffs psi, phi, beta localizing estimates near x = 1.
/// Q_i = (1 - eps_i, 1 + eps_i).
class CutoffTriple {
 public:
  CutoffTriple(double eps0, double eps1, double eps2, Interval omega);

  double eps0() const { return eps0_; }
  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }
  const Interval& omega() const { return omega_; }

  double psi(double x) const;
  double phi(double x) const;
  double beta(double x) const;
  double psi_prime(double x) const;
  double phi_prime(double x) const;
  double beta_prime(double x) const;

  bool in_Q(int i, double x) const;

 private:
  double eps0_, eps1_, eps2_;
  Interval omega_;
};

CutoffTriple build_cutoffs(double eps0, double eps1, double eps2, Interval omega);

using RealFn = std::function<double(double)>;

/// z(0,.) = z0 with closed-form derivative, z_t(0,.) = z1.
struct InitialData {
  RealFn z0;
  RealFn z0_prime;
  RealFn z1;
  std::string tag;
};

/// Named closed-form data sets: "sine", "sine-velocity", "parabola", "bump",
/// "mixed". Throws InvalidArgument for an unknown tag.
InitialData initial_data_from_tag(const std::string& tag, double amplitude = 1.0);

RiemannState init_state(const InitialData& data, const Grid& grid);

/// Inverse of the invariant map: z_x = (rho+xi)/2, z_t = (rho-xi)/2.
struct Derivatives {
  std::vector<double> z_x;
  std::vector<double> z_t;
};
Derivatives to_derivatives(const RiemannState& state);

}  // namespace wavelab
