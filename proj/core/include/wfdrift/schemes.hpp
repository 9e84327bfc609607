#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "wfdrift/grid.hpp"
#include "wfdrift/linear_solver.hpp"

namespace wfdrift {

/// The three finite-volume discretizations of the probability current
/// j = -d/dx(x(1-x) f) at the half-nodes.
enum class SchemeKind {
  /// Diffusion and convection split, convection upwinded.
  Upwind,
  /// Diffusion and convection split, both central.
  CentralSplit,
  /// The whole flux differenced centrally: j = -(D_{i+1} f_{i+1} - D_i f_i)/h.
  CentralWhole,
};

std::string_view to_string(SchemeKind kind);
/// Accepts "upwind", "central-split", "central-whole".
std::optional<SchemeKind> parse_scheme(std::string_view name);

/// The flux at half-node i+1/2 is linear in (f_i, f_{i+1}):
///   j_{i+1/2} = h * (left * f_i + right * f_{i+1}).
/// Coefficients are stored divided by h so they are exact dyadic rationals
/// (integers for CentralWhole, quarter-integers otherwise).
struct FluxStencil {
  double left = 0.0;
  double right = 0.0;
};

/// Stencil at half-node index i (0 <= i < M). Throws InvalidArgument when i is
/// out of range. For Upwind at the half-node where 2x-1 = 0 the downwind
/// branch is taken; the convection coefficient is zero there either way.
FluxStencil flux_stencil(SchemeKind kind, const Grid& grid, int i);

/// j_{i+1/2} evaluated on f.
double half_node_flux(SchemeKind kind, const Grid& grid, std::span<const double> f, int i);

/// (j_{i+1/2} - j_{i-1/2}) / h at the interior nodes i = 1..M-1.
std::vector<double> spatial_residual(SchemeKind kind, const Grid& grid,
                                     std::span<const double> f);

/// Lambda_i = -(f_{i+1} - 2 f_i + f_{i-1}) / 4 at interior nodes: the O(h^2)
/// viscosity separating CentralSplit from CentralWhole.
std::vector<double> lambda_residual(const Grid& grid, std::span<const double> f);

/// Lambda~_i = -(h/2) (|b_{i+1/2}| f_{i+1} - (|b_{i+1/2}| + |b_{i-1/2}|) f_i
///              + |b_{i-1/2}| f_{i-1}) / h^2 at interior nodes: the O(h)
/// viscosity separating Upwind from CentralSplit.
std::vector<double> lambda_tilde_residual(const Grid& grid, std::span<const double> f);

/// Fully implicit Euler operator for one scheme and step size.
///
/// The full system has M+1 rows, one per control volume, written as
///   f_i^{n+1}/tau + (j_{i+1/2} - j_{i-1/2})/w_i = f_i^n/tau
/// with w_i the cell width and zero current at x = 0 and x = 1.
///
/// For CentralWhole the interior unknowns decouple from f_0 and f_M because
/// D_0 = D_M = 0: the interior system (size M-1) has diagonal
/// 1/tau + 2 D_i/h^2 and off-diagonals -D_{i+-1}/h^2, and the boundary values
/// are recovered as f_0^{n+1} = f_0^n + 2 D_1 gamma f_1^{n+1} (and mirrored).
class SchemeOperator {
 public:
  SchemeKind scheme() const { return scheme_; }
  int cells() const { return cells_; }
  double tau() const { return tau_; }
  /// gamma = tau / h^2.
  double mesh_ratio() const { return mesh_ratio_; }

  const TridiagonalMatrix& full_system() const { return full_; }
  /// Empty unless boundaries_decoupled().
  const TridiagonalMatrix& interior_system() const { return interior_; }
  bool boundaries_decoupled() const { return scheme_ == SchemeKind::CentralWhole; }
  /// 2 D_1 gamma and 2 D_{M-1} gamma.
  double left_recovery() const { return left_recovery_; }
  double right_recovery() const { return right_recovery_; }
  /// True when the full system failed both dominance checks and is solved by
  /// a cached dense LU.
  bool uses_dense_fallback() const { return std::holds_alternative<DenseLu>(full_solver_); }

  /// f^{n+1} from f^n.
  std::vector<double> advance(std::span<const double> f) const;

 private:
  friend SchemeOperator assemble_operator(SchemeKind, const Grid&, double);

  SchemeKind scheme_ = SchemeKind::CentralWhole;
  int cells_ = 0;
  double tau_ = 0.0;
  double mesh_ratio_ = 0.0;
  TridiagonalMatrix full_;
  TridiagonalMatrix interior_;
  double left_recovery_ = 0.0;
  double right_recovery_ = 0.0;
  std::vector<double> row_weights_;
  TridiagonalFactor interior_solver_;
  std::variant<std::monostate, TridiagonalFactor, DenseLu> full_solver_;
};

/// Throws InvalidArgument when tau is not positive and finite.
SchemeOperator assemble_operator(SchemeKind kind, const Grid& grid, double tau);

}  // namespace wfdrift
