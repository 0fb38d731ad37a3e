#pragma once

// Scalar profiles and energy functionals.
//
// Power profile:    f(s) = sgn(s)|s|^(p-1),            F(s) = |s|^p / p
// Modified profile: g(y) = sgn(y)((|y|+1)^(p-1) - 1),  G(y) = ((|y|+1)^p - 1)/p - |y|
//                   H = Legendre transform of G, H(g(x)) = x g(x) - G(x).

#include <functional>
#include <vector>

#include "wavelab/core_types.hpp"
#include "wavelab/solver_riemann.hpp"

namespace wavelab {

double f_pow(double s, const PExponent& p);
double F_pow(double s, const PExponent& p);

double g_mod(double y, const PExponent& p);
double g_mod_prime(double y, const PExponent& p);
double G_mod(double y, const PExponent& p);
/// Inverse of g on [0, inf): (s+1)^(1/(p-1)) - 1, applied to |s| with sign restored.
double g_mod_inverse(double s, const PExponent& p);
double H_conj(double s, const PExponent& p);

/// A convex profile with its derivative, as fed to the generic functional.
struct ConvexProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

enum class PairMode { Power, Modified };

/// f/F or g/G/H bundled for one exponent.
class ConvexPair {
 public:
  ConvexPair(PExponent p, PairMode mode);

  const PExponent& exponent() const { return p_; }
  PairMode mode() const { return mode_; }

  double derivative(double s) const;     // f or g
  double antiderivative(double s) const; // F or G
  /// Convex conjugate of the antiderivative: |s|^q/q (power) or H (modified).
  double conjugate(double s) const;
  ConvexProfile profile() const;

 private:
  PExponent p_;
  PairMode mode_;
};

/// Trapezoidal rule on the grid nodes.
double trapezoid(const std::vector<double>& values, double dx);

double energy_Ep(const RiemannState& state, const Grid& grid, const PExponent& p);
/// -1/2 int a (rho - xi)(f(rho) - f(xi)) dx
double energy_dissipation(const RiemannState& state, const DampingProfile& damping,
                          const Grid& grid, const PExponent& p);
double energy_calEp(const RiemannState& state, const Grid& grid, const PExponent& p);

enum class OverbarReading { SignSafe, Literal };
/// int a z_t g(z_t) dx (sign-safe) or int a g(z_t) dx (literal).
double energy_overbar(const RiemannState& state, const DampingProfile& damping, const Grid& grid,
                      const PExponent& p, OverbarReading reading = OverbarReading::SignSafe);

double convex_energy(const RiemannState& state, const Grid& grid, const ConvexProfile& profile);
double convex_dissipation(const RiemannState& state, const DampingProfile& damping,
                          const Grid& grid, const ConvexProfile& profile);

/// Solves v'' = h with v(0) = v(1) = 0 for nodal samples of h.
std::vector<double> solve_dirichlet_poisson(const std::vector<double>& h, const Grid& grid);

/// Solves v'' = beta * f(z) (or beta * g(z)) with v(0) = v(1) = 0 through the
/// Green's function, using trapezoid sums on the grid.
std::vector<double> solve_elliptic_multiplier(const std::vector<double>& z,
                                              const CutoffTriple& cutoffs, const Grid& grid,
                                              const PExponent& p, PairMode mode);

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> E_p;
  std::vector<double> calE_p;
  std::vector<double> dissipation;
  std::vector<double> overbar;
  double p = 2.0;
};

/// calE_p and overbar are only meaningful for p > 1; for p = 1 they are
/// reported as 0 and the dissipation uses f(0) = 0.
EnergyTrace energy_trace(const Trajectory& trajectory, const PExponent& p,
                         OverbarReading reading = OverbarReading::SignSafe);

}  // namespace wavelab
