#include "wavelab/solver_dalembert.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace wavelab {

ExtendedFunction::ExtendedFunction(RealFn base, Parity parity)
    : base_(std::move(base)), parity_(parity) {}

double ExtendedFunction::operator()(double x) const {
  double r = x - 2.0 * std::floor(0.5 * x);  // r in [0, 2)
  if (r >= 2.0) r -= 2.0;
  if (r <= 1.0) return base_(r);
  const double mirrored = 2.0 - r;
  return parity_ == Parity::Odd ? -base_(mirrored) : base_(mirrored);
}

ExtendedFunction extend_odd_periodic(RealFn f) {
  const double f0 = f(0.0), f1 = f(1.0);
  if (std::abs(f0) > 1e-12 || std::abs(f1) > 1e-12) {
    std::cerr << "warning: odd extension of a function not vanishing at 0 and 1 is discontinuous\n";
  }
  return ExtendedFunction(std::move(f), Parity::Odd);
}

ExtendedFunction extend_even_periodic(RealFn a) { return ExtendedFunction(std::move(a), Parity::Even); }

double simpson(const RealFn& f, double lo, double hi, int panels) {
  if (hi == lo) return 0.0;
  panels = std::max(2, panels + (panels % 2));
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

namespace {

int panels_for(double length, int quad_n) {
  return std::max(2, static_cast<int>(std::ceil(length * quad_n)));
}

// Nodes of the extended lattice i*dx, i in Z, folded back onto 0..n.
struct Lattice {
  long n;

  std::pair<std::size_t, double> fold(long i) const {
    const long period = 2 * n;
    long r = i % period;
    if (r < 0) r += period;
    if (r <= n) return {static_cast<std::size_t>(r), 1.0};
    return {static_cast<std::size_t>(period - r), -1.0};
  }
};

using Table = std::vector<std::vector<double>>;

// Data part of F: 1/2 [z0e'(x+t) - z0e'(x-t)] + 1/2 [z1e(x+t) + z1e(x-t)].
Table data_terms(const InitialData& data, const Grid& grid, long n_steps) {
  const auto dz0 = extend_even_periodic(data.z0_prime);
  const ExtendedFunction z1(data.z1, Parity::Odd);
  Table d(static_cast<std::size_t>(n_steps) + 1, std::vector<double>(grid.n_nodes()));
  for (long m = 0; m <= n_steps; ++m) {
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
      // Integer arithmetic on the lattice keeps x +- t exactly on nodes.
      const double xp = static_cast<double>(static_cast<long>(j) + m) / grid.n_cells();
      const double xm = static_cast<double>(static_cast<long>(j) - m) / grid.n_cells();
      d[m][j] = 0.5 * (dz0(xp) - dz0(xm)) + 0.5 * (z1(xp) + z1(xm));
    }
  }
  return d;
}

// a_e(x_j + d) y(k, x_j + d) + a_e(x_j - d) y(k, x_j - d), d = lag nodes.
double characteristic_pair(const Lattice& lat, const std::vector<double>& a,
                           const std::vector<double>& y_row, long j, long lag) {
  const auto [jp, sp] = lat.fold(j + lag);
  const auto [jm, sm] = lat.fold(j - lag);
  return a[jp] * sp * y_row[jp] + a[jm] * sm * y_row[jm];
}

long steps_for(double t_end, const Grid& grid) {
  return static_cast<long>(std::llround(t_end / grid.dt()));
}

}  // namespace

double dalembert_apply(const ExtendedFunction& z0e, const ExtendedFunction& z1e,
                       const SpaceTimeFn& ge, double t, double x, int quad_n) {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  if (quad_n < 4) throw Error(ErrorKind::InvalidArgument, "quad_n must be >= 4");
  double value = 0.5 * (z0e(x + t) + z0e(x - t));
  if (t == 0.0) return value;
  value += 0.5 * simpson([&z1e](double s) { return z1e(s); }, x - t, x + t, panels_for(2.0 * t, quad_n));
  if (ge) {
    const RealFn inner = [&](double s) {
      const double half = t - s;
      if (half <= 0.0) return 0.0;
      return simpson([&](double tau) { return ge(s, tau); }, x - half, x + half,
                     panels_for(2.0 * half, quad_n));
    };
    value += 0.5 * simpson(inner, 0.0, t, panels_for(t, quad_n));
  }
  return value;
}

PicardSolution picard_solve(const InitialData& data, const DampingProfile& damping,
                            const Grid& grid, double t_end, const PicardOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be > 0");
  if (damping.samples.size() != grid.n_nodes()) {
    throw Error(ErrorKind::InvalidArgument, "damping does not match grid");
  }

  const long n_steps = steps_for(t_end, grid);
  const Lattice lat{grid.n_cells()};
  const auto& a = damping.samples;
  const double A = damping.sup_bound;
  const double dt = grid.dt();
  const long nn = static_cast<long>(grid.n_nodes());

  const double t_win = A > 0.0 ? std::min(1.0 / (2.0 * A), t_end) : t_end;
  const long W = std::max(1L, static_cast<long>(std::floor(t_win / dt + 1e-9)));

  const Table D = data_terms(data, grid, n_steps);
  PicardSolution sol;
  sol.window_steps = static_cast<int>(W);
  sol.contraction_bound = A * static_cast<double>(W) * dt;
  sol.y.assign(static_cast<std::size_t>(n_steps) + 1, std::vector<double>(grid.n_nodes(), 0.0));
  sol.y[0] = D[0];

  for (long lo = 0; lo < n_steps; lo += W) {
    const long hi = std::min(lo + W, n_steps);
    ++sol.n_windows;

    if (A == 0.0) {
      // F does not depend on y: one application is the fixed point.
      for (long m = lo + 1; m <= hi; ++m) sol.y[m] = D[m];
      sol.iterations_used = std::max(sol.iterations_used, 1);
      continue;
    }

    // Frozen history: sum over k = 0..lo with trapezoid weights (k = 0 halved).
    Table hist(static_cast<std::size_t>(hi - lo), std::vector<double>(grid.n_nodes(), 0.0));
    for (long m = lo + 1; m <= hi; ++m) {
      auto& row = hist[m - lo - 1];
      for (long k = 0; k <= lo; ++k) {
        const double w = k == 0 ? 0.5 : 1.0;
        for (long j = 0; j < nn; ++j) row[j] += w * characteristic_pair(lat, a, sol.y[k], j, m - k);
      }
    }

    for (long m = lo + 1; m <= hi; ++m) sol.y[m] = sol.y[lo];
    Table next(static_cast<std::size_t>(hi - lo), std::vector<double>(grid.n_nodes()));
    double residual = 0.0;
    int iter = 0;
    for (;;) {
      ++iter;
      residual = 0.0;
      for (long m = lo + 1; m <= hi; ++m) {
        auto& row = next[m - lo - 1];
        for (long j = 0; j < nn; ++j) {
          double sum = hist[m - lo - 1][j];
          for (long k = lo + 1; k <= m; ++k) {
            const double w = k == m ? 0.5 : 1.0;
            sum += w * characteristic_pair(lat, a, sol.y[k], j, m - k);
          }
          row[j] = D[m][j] - 0.5 * dt * sum;
        }
      }
      for (long m = lo + 1; m <= hi; ++m) {
        auto& y_row = sol.y[m];
        const auto& row = next[m - lo - 1];
        for (long j = 0; j < nn; ++j) residual = std::max(residual, std::abs(row[j] - y_row[j]));
        y_row = row;
      }
      if (residual < options.tol) break;
      if (iter >= options.max_iter) {
        throw Error(ErrorKind::NoConvergence,
                    "Picard window [" + std::to_string(lo * dt) + ", " + std::to_string(hi * dt) +
                        "] residual " + std::to_string(residual) + " after " +
                        std::to_string(iter) + " iterations");
      }
    }
    sol.iterations_used = std::max(sol.iterations_used, iter);
    sol.residual = std::max(sol.residual, residual);
  }
  return sol;
}

std::vector<std::vector<double>> picard_map(const InitialData& data, const DampingProfile& damping,
                                            const Grid& grid,
                                            const std::vector<std::vector<double>>& y) {
  if (y.empty()) return {};
  const long n_steps = static_cast<long>(y.size()) - 1;
  const Lattice lat{grid.n_cells()};
  const long nn = static_cast<long>(grid.n_nodes());
  Table out = data_terms(data, grid, n_steps);
  for (long m = 1; m <= n_steps; ++m) {
    for (long j = 0; j < nn; ++j) {
      double sum = 0.0;
      for (long k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 0.5 : 1.0;
        sum += w * characteristic_pair(lat, damping.samples, y[k], j, m - k);
      }
      out[m][j] -= 0.5 * grid.dt() * sum;
    }
  }
  return out;
}

std::vector<OracleSample> oracle_solution(const InitialData& data, const DampingProfile& damping,
                                          const Grid& grid, const std::vector<double>& times,
                                          const PicardOptions& options) {
  std::vector<long> steps;
  for (double t : times) {
    const long m = steps_for(t, grid);
    if (t < 0.0 || std::abs(static_cast<double>(m) * grid.dt() - t) > 1e-9) {
      throw Error(ErrorKind::InvalidArgument, "oracle times must be nonnegative grid times");
    }
    steps.push_back(m);
  }
  const long m_max = steps.empty() ? 0 : *std::max_element(steps.begin(), steps.end());

  Table y;
  if (m_max > 0) {
    y = picard_solve(data, damping, grid, static_cast<double>(m_max) * grid.dt(), options).y;
  } else {
    y.assign(1, std::vector<double>(grid.n_nodes()));
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) y[0][j] = data.z1(grid.node(j));
  }

  const long n = grid.n_cells();
  const Lattice lat{n};
  const double dx = grid.dx();
  // prefix[k][i + m_max] = int from x = -m_max dx to i dx of g(t_k, .) by trapezoid.
  Table prefix(static_cast<std::size_t>(m_max) + 1);
  for (long k = 0; k <= m_max; ++k) {
    auto& P = prefix[k];
    P.assign(static_cast<std::size_t>(n + 2 * m_max) + 1, 0.0);
    double prev = 0.0;
    for (long i = -m_max; i <= n + m_max; ++i) {
      const auto [jf, sign] = lat.fold(i);
      const double g = -damping.samples[jf] * sign * y[k][jf];
      if (i > -m_max) P[i + m_max] = P[i + m_max - 1] + 0.5 * dx * (prev + g);
      prev = g;
    }
  }

  const auto z0e = extend_odd_periodic(data.z0);
  const ExtendedFunction z1e(data.z1, Parity::Odd);
  constexpr int kQuad = 512;

  std::vector<OracleSample> out;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const long m = steps[s];
    OracleSample sample;
    sample.t = static_cast<double>(m) * grid.dt();
    sample.z_t = y[m];
    sample.z.resize(grid.n_nodes());
    for (long j = 0; j <= n; ++j) {
      const double x = grid.node(j);
      double source = 0.0;
      for (long k = 0; k < m; ++k) {
        const long lag = m - k;
        const double w = k == 0 ? 0.5 : 1.0;  // k = m contributes an empty interval
        source += w * (prefix[k][j + lag + m_max] - prefix[k][j - lag + m_max]);
      }
      sample.z[j] = dalembert_apply(z0e, z1e, {}, sample.t, x, kQuad) + 0.5 * grid.dt() * source;
    }
    if (m == 0) {
      for (long j = 0; j <= n; ++j) sample.z_t[j] = data.z1(grid.node(j));
    }
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace wavelab
