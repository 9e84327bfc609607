#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wfdrift {

/// Uniform partition of [0, 1] into M cells with the genetic-drift
/// coefficients sampled at nodes and half-nodes.
///
/// Nodes are x_i = i/M for i = 0..M and half-nodes are x_{i+1/2} = (i+1/2)/M
/// for i = 0..M-1. The diffusion coefficient D(x) = x(1-x) and its derivative
/// b(x) = 1 - 2x are evaluated from integer numerators so that D_i and D_{M-i}
/// are bitwise equal and D_0 = D_M = 0 exactly.
class Grid {
 public:
  /// Throws InvalidArgument when cells < 3.
  explicit Grid(int cells);

  int cells() const { return cells_; }
  std::size_t node_count() const { return nodes_.size(); }
  double spacing() const { return spacing_; }

  std::span<const double> nodes() const { return nodes_; }
  /// D_i = x_i (1 - x_i).
  std::span<const double> diffusion() const { return diffusion_; }
  std::span<const double> half_nodes() const { return half_nodes_; }
  /// D at the half-nodes.
  std::span<const double> half_diffusion() const { return half_diffusion_; }
  /// b_{i+1/2} = 1 - 2 x_{i+1/2}.
  std::span<const double> half_slope() const { return half_slope_; }
  /// Control-volume widths: h/2 at both ends, h elsewhere.
  std::span<const double> cell_widths() const { return cell_widths_; }

 private:
  int cells_;
  double spacing_;
  std::vector<double> nodes_;
  std::vector<double> diffusion_;
  std::vector<double> half_nodes_;
  std::vector<double> half_diffusion_;
  std::vector<double> half_slope_;
  std::vector<double> cell_widths_;
};

Grid build_grid(int cells);

/// Probability density over the nodes at one time level.
struct State {
  std::vector<double> f;
  double t = 0.0;
};

/// Truncated Gaussian N(p, sigma^2) standing in for the initial Dirac mass.
struct InitialCondition {
  double p = 0.5;
  double sigma = 0.01;
  /// Rescale so that the discrete probability is exactly one.
  bool renormalize = false;

  /// Throws InvalidArgument unless 0 < p < 1 and sigma > 0.
  void validate() const;
};

/// Pointwise Gaussian density at the nodes, t = 0.
State gaussian_initial(const Grid& grid, const InitialCondition& ic);

/// Wraps a user-supplied node vector; throws if its length is not M+1 or any
/// entry is negative or non-finite.
State state_from_values(const Grid& grid, std::vector<double> f, double t = 0.0);

}  // namespace wfdrift
