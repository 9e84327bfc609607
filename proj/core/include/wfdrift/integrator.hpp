#pragma once

#include <optional>
#include <vector>

#include "wfdrift/diagnostics.hpp"
#include "wfdrift/grid.hpp"
#include "wfdrift/schemes.hpp"

namespace wfdrift {

struct RunConfig {
  SchemeKind scheme = SchemeKind::CentralWhole;
  int cells = 1000;
  double tau = 1e-3;
  double t_end = 1.0;
  /// Sorted times in [0, t_end]. When empty, {0, t_end} is used.
  std::vector<double> snapshot_times;
  /// Stop once max_i |f^{n+1} - f^n| / tau falls below this value.
  std::optional<double> steady_tol;
  InitialCondition ic;
  /// Record diagnostics every `diagnostics_stride` steps; the initial and
  /// final states are always recorded.
  int diagnostics_stride = 1;

  /// Throws InvalidArgument on any violated invariant.
  void validate() const;
};

struct Trajectory {
  std::vector<State> snapshots;
  DiagnosticsTrace diagnostics;
  State terminal;
  long steps_taken = 0;
};

/// One implicit Euler step; the state's time advances by op.tau().
/// Throws InvalidArgument if the state size does not match the operator.
State step(const State& state, const SchemeOperator& op);

/// Runs from the configured Gaussian initial data.
Trajectory run(const RunConfig& cfg);

/// Runs from an explicit initial state (cfg.ic and cfg.cells are ignored in
/// favour of `grid` and `initial`).
Trajectory run(const RunConfig& cfg, const Grid& grid, State initial);

}  // namespace wfdrift
