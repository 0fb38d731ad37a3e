#include "wavelab/solver_riemann.hpp"

#include <cmath>

namespace wavelab {

void relax(RiemannState& state, const DampingProfile& damping, double tau) {
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double s = state.rho[j] + state.xi[j];
    const double d = (state.rho[j] - state.xi[j]) * std::exp(-damping.samples[j] * tau);
    state.rho[j] = 0.5 * (s + d);
    state.xi[j] = 0.5 * (s - d);
  }
}

void transport(RiemannState& state) {
  if (state.size() < 3 || state.xi.size() != state.size()) {
    throw Error(ErrorKind::InvalidArgument, "transport needs at least 3 nodes");
  }
  const std::size_t n = state.size() - 1;
  // The value entering at each wall is the one reflected from the other family:
  // rho(1 + dt) = xi(1 - dt) and xi(-dt) = rho(dt) under the odd extension of z.
  const double rho_in = state.xi[n - 1];
  const double xi_in = state.rho[1];
  for (std::size_t j = 0; j < n; ++j) state.rho[j] = state.rho[j + 1];
  state.rho[n] = rho_in;
  for (std::size_t j = n; j > 0; --j) state.xi[j] = state.xi[j - 1];
  state.xi[0] = xi_in;
}

RiemannState step(const RiemannState& state, const DampingProfile& damping, const Grid& grid) {
  if (state.size() != grid.n_nodes() || state.xi.size() != grid.n_nodes() ||
      damping.samples.size() != grid.n_nodes()) {
    throw Error(ErrorKind::InvalidArgument, "grid, state and damping sizes differ");
  }
  RiemannState next = state;
  const double half = 0.5 * grid.dt();
  relax(next, damping, half);
  transport(next);
  relax(next, damping, half);
  next.t = state.t + grid.dt();
  return next;
}

Trajectory evolve_state(RiemannState initial, const DampingProfile& damping, const Grid& grid,
                        double t_end, int record_stride) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be > 0");
  if (record_stride < 1) throw Error(ErrorKind::InvalidArgument, "record_stride must be >= 1");
  validate_state(initial, grid);

  const auto n_steps = static_cast<long>(std::llround(t_end / grid.dt()));
  Trajectory traj{grid, {}, damping, record_stride};
  traj.states.reserve(static_cast<std::size_t>(n_steps / record_stride) + 2);

  const double t0 = initial.t;
  RiemannState current = std::move(initial);
  traj.states.push_back(current);
  for (long k = 1; k <= n_steps; ++k) {
    current = step(current, damping, grid);
    // Accumulated t drifts by roundoff; pin it to the step count.
    current.t = t0 + static_cast<double>(k) * grid.dt();
    if (k % record_stride == 0) traj.states.push_back(current);
  }
  return traj;
}

Trajectory evolve(const InitialData& data, const DampingProfile& damping, const Grid& grid,
                  double t_end, int record_stride) {
  return evolve_state(init_state(data, grid), damping, grid, t_end, record_stride);
}

Reconstruction reconstruct_z(const RiemannState& state, const Grid& grid) {
  const auto d = to_derivatives(state);
  Reconstruction r;
  r.z_t = d.z_t;
  r.z.assign(state.size(), 0.0);
  for (std::size_t j = 1; j < state.size(); ++j) {
    r.z[j] = r.z[j - 1] + 0.5 * grid.dx() * (d.z_x[j - 1] + d.z_x[j]);
  }
  return r;
}

}  // namespace wavelab
