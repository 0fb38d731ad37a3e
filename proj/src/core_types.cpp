#include "wavelab/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavelab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::InvalidGeometry: return "invalid-geometry";
    case ErrorKind::InvalidData: return "invalid-data";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::DegenerateFit: return "degenerate-fit";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::OutOfRegime: return "out-of-regime";
    case ErrorKind::InvalidUse: return "invalid-use";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-error";
  }
  return "error";
}

PExponent::PExponent(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidArgument, "exponent p must be a finite real >= 1");
  }
  q_ = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
}

PExponent PExponent::conjugate() const {
  if (is_one()) throw Error(ErrorKind::InvalidArgument, "p = 1 has no finite conjugate");
  return PExponent(q_);
}

Grid::Grid(int n_cells) : n_cells_(n_cells), dx_(0.0) {
  if (n_cells < 2) throw Error(ErrorKind::InvalidArgument, "n_cells must be >= 2");
  dx_ = 1.0 / static_cast<double>(n_cells);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_nodes());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
  return x;
}

Grid make_grid(int n_cells) { return Grid(n_cells); }

namespace damping {
namespace {

// Quintic smootherstep, C^2.
double smootherstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double ramp_profile(double a0, Interval omega, double ramp, double x) {
  if (omega.contains(x)) return a0;
  if (x < omega.lo) return a0 * smootherstep((x - (omega.lo - ramp)) / ramp);
  return a0 * smootherstep(((omega.hi + ramp) - x) / ramp);
}

}  // namespace

double evaluate(const Spec& spec, double x) {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return 2.0 * s.alpha;
        } else if constexpr (std::is_same_v<T, SmoothBump>) {
          return ramp_profile(s.a0, s.omega, s.ramp, x);
        } else if constexpr (std::is_same_v<T, None>) {
          return 0.0;
        } else {
          return ramp_profile(s.a0, s.omega, 0.01, x);
        }
      },
      spec);
}

}  // namespace damping

DampingProfile sample_damping(const damping::Spec& spec, const Grid& grid) {
  DampingProfile profile;
  profile.spec = spec;
  std::visit(
      [&profile](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, damping::Constant>) {
          if (!(s.alpha > 0.0)) {
            throw Error(ErrorKind::HypothesisViolation, "constant damping needs alpha > 0");
          }
          profile.a0 = 2.0 * s.alpha;
          profile.omega = {0.0, 1.0};
        } else if constexpr (std::is_same_v<T, damping::None>) {
          profile.a0 = 0.0;
          profile.omega = {0.0, 0.0};
        } else {
          if (!(s.a0 > 0.0)) throw Error(ErrorKind::HypothesisViolation, "a0 must be > 0");
          if (!(s.omega.lo < s.omega.hi) || s.omega.lo < 0.0 || s.omega.hi > 1.0) {
            throw Error(ErrorKind::HypothesisViolation, "omega must be a non-empty sub-interval of [0,1]");
          }
          if constexpr (std::is_same_v<T, damping::SmoothBump>) {
            if (!(s.ramp > 0.0)) throw Error(ErrorKind::HypothesisViolation, "ramp width must be > 0");
          }
          profile.a0 = s.a0;
          profile.omega = s.omega;
        }
      },
      spec);

  profile.samples.resize(grid.n_nodes());
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    const double a = damping::evaluate(spec, grid.node(j));
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw Error(ErrorKind::HypothesisViolation, "damping must be finite and nonnegative");
    }
    if (profile.omega.contains(grid.node(j)) && a < profile.a0) {
      throw Error(ErrorKind::HypothesisViolation, "damping drops below a0 inside omega");
    }
    profile.samples[j] = a;
  }
  profile.sup_bound = *std::max_element(profile.samples.begin(), profile.samples.end());
  return profile;
}

void validate_state(const RiemannState& state, const Grid& grid) {
  if (state.rho.size() != grid.n_nodes() || state.xi.size() != grid.n_nodes()) {
    throw Error(ErrorKind::InvalidArgument, "state length does not match grid");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(state.rho.begin(), state.rho.end(), finite) ||
      !std::all_of(state.xi.begin(), state.xi.end(), finite)) {
    throw Error(ErrorKind::InvalidArgument, "state contains non-finite values");
  }
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

double smoothstep_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 6.0 * t * (1.0 - t);
}

CutoffTriple::CutoffTriple(double eps0, double eps1, double eps2, Interval omega)
    : eps0_(eps0), eps1_(eps1), eps2_(eps2), omega_(omega) {
  if (!(0.0 < eps0 && eps0 < eps1 && eps1 < eps2 && eps2 < 1.0)) {
    throw Error(ErrorKind::InvalidGeometry, "need 0 < eps0 < eps1 < eps2 < 1");
  }
  if (omega.hi != 1.0) {
    throw Error(ErrorKind::InvalidGeometry, "omega must touch x = 1");
  }
  if (!(1.0 - eps2 > omega.lo)) {
    throw Error(ErrorKind::InvalidGeometry, "Q_2 is not contained in the interior of omega");
  }
}

// psi: 1 left of 1-eps1, 0 right of 1-eps0.
double CutoffTriple::psi(double x) const {
  return 1.0 - smoothstep((x - (1.0 - eps1_)) / (eps1_ - eps0_));
}

double CutoffTriple::psi_prime(double x) const {
  return -smoothstep_derivative((x - (1.0 - eps1_)) / (eps1_ - eps0_)) / (eps1_ - eps0_);
}

// phi: 0 left of 1-eps2, 1 right of 1-eps1.
double CutoffTriple::phi(double x) const {
  return smoothstep((x - (1.0 - eps2_)) / (eps2_ - eps1_));
}

double CutoffTriple::phi_prime(double x) const {
  return smoothstep_derivative((x - (1.0 - eps2_)) / (eps2_ - eps1_)) / (eps2_ - eps1_);
}

// beta: 0 left of omega.lo, 1 right of 1-eps2.
double CutoffTriple::beta(double x) const {
  const double width = (1.0 - eps2_) - omega_.lo;
  return smoothstep((x - omega_.lo) / width);
}

double CutoffTriple::beta_prime(double x) const {
  const double width = (1.0 - eps2_) - omega_.lo;
  return smoothstep_derivative((x - omega_.lo) / width) / width;
}

bool CutoffTriple::in_Q(int i, double x) const {
  const double eps = i == 0 ? eps0_ : (i == 1 ? eps1_ : eps2_);
  return std::abs(x - 1.0) < eps;
}

CutoffTriple build_cutoffs(double eps0, double eps1, double eps2, Interval omega) {
  return CutoffTriple(eps0, eps1, eps2, omega);
}

InitialData initial_data_from_tag(const std::string& tag, double amplitude) {
  using std::numbers::pi;
  const double A = amplitude;
  const RealFn zero = [](double) { return 0.0; };
  if (tag == "sine") {
    return {[A](double x) { return A * std::sin(pi * x); },
            [A](double x) { return A * pi * std::cos(pi * x); }, zero, tag};
  }
  if (tag == "sine-velocity") {
    return {zero, zero, [A](double x) { return A * std::sin(pi * x); }, tag};
  }
  if (tag == "parabola") {
    return {[A](double x) { return A * x * (1.0 - x); },
            [A](double x) { return A * (1.0 - 2.0 * x); }, zero, tag};
  }
  if (tag == "bump") {
    // sin^4(pi x): smooth, localized toward the middle, z0'(0) = z0'(1) = 0.
    return {[A](double x) { return A * std::pow(std::sin(pi * x), 4); },
            [A](double x) {
              const double s = std::sin(pi * x);
              return A * 4.0 * pi * s * s * s * std::cos(pi * x);
            },
            zero, tag};
  }
  if (tag == "mixed") {
    return {[A](double x) { return A * (std::sin(pi * x) + 0.5 * std::sin(3.0 * pi * x)); },
            [A](double x) { return A * pi * (std::cos(pi * x) + 1.5 * std::cos(3.0 * pi * x)); },
            [A](double x) { return A * std::sin(2.0 * pi * x); }, tag};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown initial-data tag '" + tag + "'");
}

RiemannState init_state(const InitialData& data, const Grid& grid) {
  RiemannState state;
  state.t = 0.0;
  state.rho.resize(grid.n_nodes());
  state.xi.resize(grid.n_nodes());
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    const double x = grid.node(j);
    const double dz0 = data.z0_prime(x);
    const double z1 = data.z1(x);
    if (!std::isfinite(dz0) || !std::isfinite(z1)) {
      throw Error(ErrorKind::InvalidData, "initial data not finite at x = " + std::to_string(x));
    }
    state.rho[j] = dz0 + z1;
    state.xi[j] = dz0 - z1;
  }
  return state;
}

Derivatives to_derivatives(const RiemannState& state) {
  Derivatives d;
  d.z_x.resize(state.size());
  d.z_t.resize(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    d.z_x[j] = 0.5 * (state.rho[j] + state.xi[j]);
    d.z_t[j] = 0.5 * (state.rho[j] - state.xi[j]);
  }
  return d;
}

}  // namespace wavelab
