#include "wfdrift/grid.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "wfdrift/error.hpp"

namespace wfdrift {

Grid::Grid(int cells) : cells_(cells) {
  if (cells < 3) {
    throw InvalidArgument("grid needs at least 3 cells, got " + std::to_string(cells));
  }
  // Keeps M^2 and the integer numerators below exact in double.
  if (cells > (1 << 24)) {
    throw InvalidArgument("grid cell count too large: " + std::to_string(cells));
  }
  const auto m = static_cast<std::int64_t>(cells);
  const double md = static_cast<double>(m);
  const double m2 = static_cast<double>(m * m);
  spacing_ = 1.0 / md;

  nodes_.resize(cells + 1);
  diffusion_.resize(cells + 1);
  cell_widths_.assign(cells + 1, spacing_);
  cell_widths_.front() = cell_widths_.back() = 0.5 * spacing_;
  for (std::int64_t i = 0; i <= m; ++i) {
    nodes_[i] = static_cast<double>(i) / md;
    diffusion_[i] = static_cast<double>(i * (m - i)) / m2;
  }

  half_nodes_.resize(cells);
  half_diffusion_.resize(cells);
  half_slope_.resize(cells);
  for (std::int64_t i = 0; i < m; ++i) {
    half_nodes_[i] = static_cast<double>(2 * i + 1) / (2.0 * md);
    half_diffusion_[i] = static_cast<double>((2 * i + 1) * (2 * m - 2 * i - 1)) / (4.0 * m2);
    half_slope_[i] = static_cast<double>(m - 2 * i - 1) / md;
  }
}

Grid build_grid(int cells) { return Grid(cells); }

void InitialCondition::validate() const {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("initial mean p must lie in (0, 1)");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("initial sigma must be positive");
  }
}

State gaussian_initial(const Grid& grid, const InitialCondition& ic) {
  ic.validate();
  const double md = static_cast<double>(grid.cells());
  const double scale = 1.0 / (ic.sigma * std::sqrt(2.0 * std::numbers::pi));
  const double pm = ic.p * md;

  State state;
  state.f.resize(grid.node_count());
  for (std::size_t i = 0; i < state.f.size(); ++i) {
    // (i - pM)/M is antisymmetric under i -> M-i when p = 1/2.
    const double d = (static_cast<double>(i) - pm) / md;
    state.f[i] = scale * std::exp(-(d * d) / (2.0 * ic.sigma * ic.sigma));
  }
  if (ic.renormalize) {
    const auto w = grid.cell_widths();
    double total = 0.0;
    for (std::size_t i = 0; i < state.f.size(); ++i) total += w[i] * state.f[i];
    if (!(total > 0.0)) {
      throw InvalidArgument("initial Gaussian has no mass on the grid");
    }
    for (double& v : state.f) v /= total;
  }
  return state;
}

State state_from_values(const Grid& grid, std::vector<double> f, double t) {
  if (f.size() != grid.node_count()) {
    throw InvalidArgument("state has " + std::to_string(f.size()) + " values, grid has " +
                          std::to_string(grid.node_count()) + " nodes");
  }
  for (double v : f) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("state values must be finite and nonnegative");
    }
  }
  return State{std::move(f), t};
}

}  // namespace wfdrift
