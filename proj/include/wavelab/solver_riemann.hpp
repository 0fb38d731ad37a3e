#pragma once

// Characteristic solver for the invariant system
//   rho_t - rho_x = -a/2 (rho - xi),  xi_t + xi_x = a/2 (rho - xi),
//   rho - xi = 0 at x = 0 and x = 1.
// With dt = dx the transport part is an exact shift along the mesh, and the
// source is integrated exactly in a relaxation / transport / relaxation split.

#include <vector>

#include "wavelab/core_types.hpp"

namespace wavelab {

struct Trajectory {
  Grid grid;
  std::vector<RiemannState> states;
  DampingProfile damping;
  int record_stride = 1;
};

/// Exact solution of d' = -a d, s' = 0 over tau at every node, where
/// s = rho + xi and d = rho - xi.
void relax(RiemannState& state, const DampingProfile& damping, double tau);

/// Shift rho one node left and xi one node right with reflection at the walls.
void transport(RiemannState& state);

RiemannState step(const RiemannState& state, const DampingProfile& damping, const Grid& grid);

Trajectory evolve(const InitialData& data, const DampingProfile& damping, const Grid& grid,
                  double t_end, int record_stride);

/// Same as above, starting from an explicit state.
Trajectory evolve_state(RiemannState initial, const DampingProfile& damping, const Grid& grid,
                        double t_end, int record_stride);

/// z and z_t at the nodes; z is the cumulative trapezoid of z_x from z(0) = 0.
struct Reconstruction {
  std::vector<double> z;
  std::vector<double> z_t;
};
Reconstruction reconstruct_z(const RiemannState& state, const Grid& grid);

}  // namespace wavelab
