#pragma once

// Reference solver built on the d'Alembert representation of the damped string.
// z_t is the fixed point y of
//
//   F(y)(t,x) = 1/2 [z0e'(x+t) - z0e'(x-t)] + 1/2 [z1e(x+t) + z1e(x-t)]
//             - 1/2 int_0^t [ae(x+t-s) y(s,x+t-s) + ae(x-t+s) y(s,x-t+s)] ds
//
// with z0, z1 and y odd/2-periodic and a even/2-periodic. The map is solved by
// Picard iteration on consecutive time windows short enough to contract.

#include <functional>
#include <vector>

#include "wavelab/core_types.hpp"

namespace wavelab {

enum class Parity { Odd, Even };

/// 2-periodic extension of the odd or even reflection of a function on [0,1].
class ExtendedFunction {
 public:
  ExtendedFunction(RealFn base, Parity parity);

  double operator()(double x) const;
  Parity parity() const { return parity_; }

 private:
  RealFn base_;
  Parity parity_;
};

/// Returns the odd extension; f(0) or f(1) nonzero only produces a warning
/// on the diagnostic stream (the extension is then discontinuous).
ExtendedFunction extend_odd_periodic(RealFn f);
ExtendedFunction extend_even_periodic(RealFn a);

/// Source term g(s, tau) on R_+ x R, already extended.
using SpaceTimeFn = std::function<double(double, double)>;

/// Composite Simpson with `panels` (rounded up to even) sub-intervals.
double simpson(const RealFn& f, double lo, double hi, int panels);

/// d'Alembert value of z at (t, x) for the whole-line problem
/// z_tt - z_xx = g. Both integrals use composite Simpson with quad_n panels
/// per unit length. Pass an empty `ge` for g = 0.
double dalembert_apply(const ExtendedFunction& z0e, const ExtendedFunction& z1e,
                       const SpaceTimeFn& ge, double t, double x, int quad_n);

struct PicardSolution {
  /// y[m][j] = z_t(m dt, x_j), m = 0..n_steps.
  std::vector<std::vector<double>> y;
  int iterations_used = 0;  // max over windows
  double residual = 0.0;    // max over windows of the last sup-norm update
  int window_steps = 0;
  int n_windows = 0;
  double contraction_bound = 0.0;  // A * T_win
};

struct PicardOptions {
  double tol = 1e-12;
  int max_iter = 200;
};

PicardSolution picard_solve(const InitialData& data, const DampingProfile& damping,
                            const Grid& grid, double t_end, const PicardOptions& options);

/// One application of F to a full y table (same shape as PicardSolution::y).
std::vector<std::vector<double>> picard_map(const InitialData& data, const DampingProfile& damping,
                                            const Grid& grid,
                                            const std::vector<std::vector<double>>& y);

struct OracleSample {
  double t = 0.0;
  std::vector<double> z;
  std::vector<double> z_t;
};

/// z and z_t at the requested (grid-aligned) times, reconstructed from the
/// Picard fixed point with source g = -ae * y.
std::vector<OracleSample> oracle_solution(const InitialData& data, const DampingProfile& damping,
                                          const Grid& grid, const std::vector<double>& times,
                                          const PicardOptions& options = {});

}  // namespace wavelab
