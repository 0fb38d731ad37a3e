#pragma once

// Line-oriented run configuration:
//
//   # comment
//   [grid]
//   n_cells = 256
//   [energy]
//   p = 1.5 2 4
//
// Unknown sections or keys are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/core_types.hpp"
#include "wavelab/energy.hpp"

namespace wavelab {

enum class Subcommand { Simulate, Decay, GlobalBound, OracleCompare, VerifyInequalities, Plot };

Subcommand parse_subcommand(const std::string& name);
std::string to_string(Subcommand cmd);

enum class DampingKind { Constant, Bump, Indicator, None };

struct RunConfig {
  Subcommand subcommand = Subcommand::Simulate;
  int n_cells = 256;
  double t_end = 20.0;
  int record_stride = 1;
  std::vector<double> p_list{2.0};

  DampingKind damping_kind = DampingKind::Bump;
  double a0 = 2.0;
  Interval omega{0.6, 1.0};
  double ramp = 0.1;
  std::vector<double> alpha_list{1.0};

  std::string initial_data = "sine";
  double amplitude = 1.0;
  OverbarReading overbar = OverbarReading::SignSafe;

  double eps0 = 0.1, eps1 = 0.2, eps2 = 0.3;

  std::uint64_t seed = 0;
  std::string output_dir = "out";

  double picard_tol = 1e-12;
  double bound_tol = 1e-6;
  double monotonicity_tol = 1e-10;

  std::vector<int> n_list{64, 128, 256};
  std::size_t audit_samples = 100000;
  std::string plot_input;
  std::string plot_output;

  /// Spec of the (first) damping profile.
  damping::Spec damping_spec(double alpha) const;
  damping::Spec damping_spec() const { return damping_spec(alpha_list.front()); }
};

/// Parses and validates. Throws Error(Parse) with a line number for syntax
/// problems and unknown keys, Error(Validation) naming the key otherwise.
/// A given `subcommand` replaces [run] command before validation.
RunConfig parse_config(const std::string& text, std::optional<Subcommand> subcommand = std::nullopt);

/// Checks every numeric field against the preconditions of the operation it
/// feeds. Throws Error(Validation) or Error(OutOfRegime).
void validate_config(const RunConfig& config);

}  // namespace wavelab
