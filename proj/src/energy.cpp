#include "wavelab/energy.hpp"

#include <cmath>
#include <limits>

namespace wavelab {
namespace {

double sgn(double s) { return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0); }

// (1+y)^r - 1 for y >= 0 without cancellation near 0.
double pow1p_minus_one(double y, double r) { return std::expm1(r * std::log1p(y)); }

// Binomial tail sum_{k>=2} C(r,k) y^k, used for small y where
// (1+y)^r - 1 - r y cancels badly.
double binomial_tail(double y, double r) {
  double coeff = r;  // C(r,1)
  double power = y;
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    coeff *= (r - (k - 1)) / k;
    power *= y;
    const double term = coeff * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

constexpr double kSeriesCutoff = 0.05;

}  // namespace

double f_pow(double s, const PExponent& p) {
  if (s == 0.0) return 0.0;
  if (p.is_one()) return sgn(s);
  return sgn(s) * std::pow(std::abs(s), p.p() - 1.0);
}

double F_pow(double s, const PExponent& p) {
  if (p.is_one()) return std::abs(s);
  if (p.p() == 2.0) return 0.5 * s * s;
  return std::pow(std::abs(s), p.p()) / p.p();
}

double g_mod(double y, const PExponent& p) {
  return sgn(y) * pow1p_minus_one(std::abs(y), p.p() - 1.0);
}

double g_mod_prime(double y, const PExponent& p) {
  return (p.p() - 1.0) * std::pow(std::abs(y) + 1.0, p.p() - 2.0);
}

double G_mod(double y, const PExponent& p) {
  const double a = std::abs(y);
  if (a < kSeriesCutoff) return binomial_tail(a, p.p()) / p.p();
  return pow1p_minus_one(a, p.p()) / p.p() - a;
}

double g_mod_inverse(double s, const PExponent& p) {
  if (p.is_one()) throw Error(ErrorKind::InvalidArgument, "g is identically zero at p = 1");
  return sgn(s) * pow1p_minus_one(std::abs(s), 1.0 / (p.p() - 1.0));
}

double H_conj(double s, const PExponent& p) {
  if (s == 0.0) return 0.0;
  if (p.is_one()) return std::numeric_limits<double>::infinity();
  const double a = std::abs(s);
  const double x = g_mod_inverse(a, p);
  if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
  return a * x - G_mod(x, p);
}

ConvexPair::ConvexPair(PExponent p, PairMode mode) : p_(p), mode_(mode) {}

double ConvexPair::derivative(double s) const {
  return mode_ == PairMode::Power ? f_pow(s, p_) : g_mod(s, p_);
}

double ConvexPair::antiderivative(double s) const {
  return mode_ == PairMode::Power ? F_pow(s, p_) : G_mod(s, p_);
}

double ConvexPair::conjugate(double s) const {
  if (mode_ == PairMode::Modified) return H_conj(s, p_);
  if (p_.is_one()) return std::abs(s) <= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::pow(std::abs(s), p_.q()) / p_.q();
}

ConvexProfile ConvexPair::profile() const {
  return {[pair = *this](double s) { return pair.antiderivative(s); },
          [pair = *this](double s) { return pair.derivative(s); }};
}

double trapezoid(const std::vector<double>& values, double dx) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t j = 1; j + 1 < values.size(); ++j) sum += values[j];
  return sum * dx;
}

double convex_energy(const RiemannState& state, const Grid& grid, const ConvexProfile& profile) {
  std::vector<double> integrand(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    integrand[j] = profile.value(state.rho[j]) + profile.value(state.xi[j]);
  }
  return trapezoid(integrand, grid.dx());
}

double convex_dissipation(const RiemannState& state, const DampingProfile& damping,
                          const Grid& grid, const ConvexProfile& profile) {
  std::vector<double> integrand(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double r = state.rho[j];
    const double x = state.xi[j];
    integrand[j] = damping.samples[j] * (r - x) * (profile.derivative(r) - profile.derivative(x));
  }
  return -0.5 * trapezoid(integrand, grid.dx());
}

double energy_Ep(const RiemannState& state, const Grid& grid, const PExponent& p) {
  return convex_energy(state, grid, ConvexPair(p, PairMode::Power).profile());
}

double energy_dissipation(const RiemannState& state, const DampingProfile& damping,
                          const Grid& grid, const PExponent& p) {
  return convex_dissipation(state, damping, grid, ConvexPair(p, PairMode::Power).profile());
}

double energy_calEp(const RiemannState& state, const Grid& grid, const PExponent& p) {
  return convex_energy(state, grid, ConvexPair(p, PairMode::Modified).profile());
}

double energy_overbar(const RiemannState& state, const DampingProfile& damping, const Grid& grid,
                      const PExponent& p, OverbarReading reading) {
  std::vector<double> integrand(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double zt = 0.5 * (state.rho[j] - state.xi[j]);
    const double weight = reading == OverbarReading::SignSafe ? zt : 1.0;
    integrand[j] = damping.samples[j] * weight * g_mod(zt, p);
  }
  return trapezoid(integrand, grid.dx());
}

std::vector<double> solve_dirichlet_poisson(const std::vector<double>& h, const Grid& grid) {
  if (h.size() != grid.n_nodes()) throw Error(ErrorKind::InvalidArgument, "source length does not match grid");
  const std::size_t n = static_cast<std::size_t>(grid.n_cells());
  const double dx = grid.dx();

  // left[j] = int_0^{x_j} s h(s) ds, right[j] = int_{x_j}^1 (1-s) h(s) ds.
  std::vector<double> left(n + 1, 0.0), right(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) {
    const double xa = grid.node(j - 1), xb = grid.node(j);
    left[j] = left[j - 1] + 0.5 * dx * (xa * h[j - 1] + xb * h[j]);
  }
  for (std::size_t j = n; j-- > 0;) {
    const double xa = grid.node(j), xb = grid.node(j + 1);
    right[j] = right[j + 1] + 0.5 * dx * ((1.0 - xa) * h[j] + (1.0 - xb) * h[j + 1]);
  }

  std::vector<double> v(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double x = grid.node(j);
    v[j] = -x * right[j] - (1.0 - x) * left[j];
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return v;
}

std::vector<double> solve_elliptic_multiplier(const std::vector<double>& z,
                                              const CutoffTriple& cutoffs, const Grid& grid,
                                              const PExponent& p, PairMode mode) {
  if (z.size() != grid.n_nodes()) {
    throw Error(ErrorKind::InvalidArgument, "z length does not match grid");
  }
  const ConvexPair pair(p, mode);
  std::vector<double> h(grid.n_nodes());
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = cutoffs.beta(grid.node(j)) * pair.derivative(z[j]);
  return solve_dirichlet_poisson(h, grid);
}

EnergyTrace energy_trace(const Trajectory& trajectory, const PExponent& p, OverbarReading reading) {
  EnergyTrace trace;
  trace.p = p.p();
  const auto n = trajectory.states.size();
  trace.times.reserve(n);
  trace.E_p.reserve(n);
  trace.calE_p.reserve(n);
  trace.dissipation.reserve(n);
  trace.overbar.reserve(n);
  for (const auto& state : trajectory.states) {
    trace.times.push_back(state.t);
    trace.E_p.push_back(energy_Ep(state, trajectory.grid, p));
    trace.dissipation.push_back(energy_dissipation(state, trajectory.damping, trajectory.grid, p));
    if (p.is_one()) {
      trace.calE_p.push_back(0.0);
      trace.overbar.push_back(0.0);
    } else {
      trace.calE_p.push_back(energy_calEp(state, trajectory.grid, p));
      trace.overbar.push_back(energy_overbar(state, trajectory.damping, trajectory.grid, p, reading));
    }
  }
  return trace;
}

}  // namespace wavelab
