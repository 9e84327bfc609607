#include "wfdrift/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wfdrift/error.hpp"

namespace wfdrift {

namespace {

void require_length(const Grid& grid, std::span<const double> f) {
  if (f.size() != grid.node_count()) {
    throw InvalidArgument("density vector has length " + std::to_string(f.size()) +
                          ", expected " + std::to_string(grid.node_count()));
  }
}

}  // namespace

double discrete_probability(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  const double h = grid.spacing();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) interior += f[i];
  return 0.5 * h * f.front() + 0.5 * h * f.back() + h * interior;
}

double discrete_expectation(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  const double h = grid.spacing();
  const auto x = grid.nodes();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) interior += x[i] * f[i];
  return 0.5 * h * x.front() * f.front() + 0.5 * h * x.back() * f.back() + h * interior;
}

double interior_mass(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * grid.spacing();
}

double weighted_interior_norm(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  const auto d = grid.diffusion();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const double v = d[i] * f[i];
    sum += v * v;
  }
  return std::sqrt(sum * grid.spacing());
}

double laplacian_min_eigenvalue(const Grid& grid) {
  const double h = grid.spacing();
  const double s = std::sin(std::numbers::pi / (2.0 * grid.cells()));
  return 4.0 / (h * h) * s * s;
}

double interior_mass_bound(const Grid& grid, double t, double initial_interior_mass) {
  const double h = grid.spacing();
  const double decay = std::exp(-std::numbers::pi * std::numbers::pi * t / 4.0);
  return decay / (4.0 * h * (1.0 - h)) * initial_interior_mass;
}

DiagnosticsRecord measure(const Grid& grid, const State& state) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.probability = discrete_probability(grid, state.f);
  r.expectation = discrete_expectation(grid, state.f);
  r.interior_mass = interior_mass(grid, state.f);
  r.v_norm = weighted_interior_norm(grid, state.f);
  r.f0 = state.f.front();
  r.fM = state.f.back();
  return r;
}

void DiagnosticsTrace::append(const DiagnosticsRecord& record) {
  if (!records_.empty() && !(record.t > records_.back().t)) {
    throw InvalidArgument("diagnostics times must be strictly increasing");
  }
  records_.push_back(record);
}

double DiagnosticsTrace::max_probability_drift() const {
  double worst = 0.0;
  for (const auto& r : records_) {
    worst = std::max(worst, std::abs(r.probability - records_.front().probability));
  }
  return worst;
}

double DiagnosticsTrace::max_expectation_drift() const {
  double worst = 0.0;
  for (const auto& r : records_) {
    worst = std::max(worst, std::abs(r.expectation - records_.front().expectation));
  }
  return worst;
}

SteadyStateReport steady_report(const Grid& grid, const State& terminal, double p0, double e0) {
  require_length(grid, terminal.f);
  const double h = grid.spacing();
  SteadyStateReport r;
  r.w0 = 0.5 * h * terminal.f.front();
  r.w1 = 0.5 * h * terminal.f.back();
  r.interior_mass = interior_mass(grid, terminal.f);
  r.predicted_w0 = p0 - e0;
  r.predicted_w1 = e0;
  r.w0_deviation = std::abs(r.w0 - r.predicted_w0);
  r.w1_deviation = std::abs(r.w1 - r.predicted_w1);
  return r;
}

}  // namespace wfdrift
