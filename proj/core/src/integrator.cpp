#include "wfdrift/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfdrift/error.hpp"

namespace wfdrift {

namespace {

// Slack when comparing accumulated step times against requested times.
constexpr double kTimeSlack = 1e-9;

std::vector<double> requested_snapshots(const RunConfig& cfg) {
  std::vector<double> times = cfg.snapshot_times;
  if (times.empty()) {
    times = {0.0, cfg.t_end};
  }
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace

void RunConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw InvalidArgument("t_end must be nonnegative");
  }
  if (cells < 3) throw InvalidArgument("cells must be at least 3");
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end())) {
    throw InvalidArgument("snapshot times must be sorted");
  }
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw InvalidArgument("snapshot time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
  if (steady_tol && !(*steady_tol > 0.0)) throw InvalidArgument("steady_tol must be positive");
  if (diagnostics_stride < 1) throw InvalidArgument("diagnostics stride must be >= 1");
  ic.validate();
}

State step(const State& state, const SchemeOperator& op) {
  State next;
  next.f = op.advance(state.f);
  next.t = state.t + op.tau();
  return next;
}

Trajectory run(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid(cfg.cells);
  return run(cfg, grid, gaussian_initial(grid, cfg.ic));
}

Trajectory run(const RunConfig& cfg, const Grid& grid, State initial) {
  if (!(cfg.tau > 0.0) || !(cfg.t_end >= 0.0) || cfg.diagnostics_stride < 1) {
    throw InvalidArgument("invalid run configuration");
  }
  if (initial.f.size() != grid.node_count()) {
    throw InvalidArgument("initial state does not match the grid");
  }
  const SchemeOperator op = assemble_operator(cfg.scheme, grid, cfg.tau);
  const std::vector<double> snapshot_times = requested_snapshots(cfg);

  // Number of steps so that n * tau >= t_end; t is recomputed as n * tau to
  // avoid drift from repeated addition.
  const double t0 = initial.t;
  const auto target_steps =
      static_cast<long>(std::ceil(cfg.t_end / cfg.tau - kTimeSlack));

  Trajectory traj;
  std::size_t next_snapshot = 0;
  auto serve_snapshots = [&](const State& s, long n) {
    const double elapsed = static_cast<double>(n) * cfg.tau;
    while (next_snapshot < snapshot_times.size() &&
           elapsed + kTimeSlack * cfg.tau >= snapshot_times[next_snapshot]) {
      traj.snapshots.push_back(s);
      ++next_snapshot;
    }
  };

  State current = std::move(initial);
  traj.diagnostics.append(measure(grid, current));
  serve_snapshots(current, 0);

  long n = 0;
  while (n < target_steps) {
    State next = step(current, op);
    ++n;
    next.t = t0 + static_cast<double>(n) * cfg.tau;

    bool steady = false;
    if (cfg.steady_tol) {
      double change = 0.0;
      for (std::size_t i = 0; i < next.f.size(); ++i) {
        change = std::max(change, std::abs(next.f[i] - current.f[i]));
      }
      steady = change / cfg.tau < *cfg.steady_tol;
    }
    current = std::move(next);
    const bool last = steady || n == target_steps;
    if (last || n % cfg.diagnostics_stride == 0) {
      traj.diagnostics.append(measure(grid, current));
    }
    serve_snapshots(current, n);
    if (steady) break;
  }

  // A steady stop serves any remaining snapshot times with the final state.
  while (next_snapshot < snapshot_times.size()) {
    traj.snapshots.push_back(current);
    ++next_snapshot;
  }
  traj.steps_taken = n;
  traj.terminal = std::move(current);
  return traj;
}

}  // namespace wfdrift
