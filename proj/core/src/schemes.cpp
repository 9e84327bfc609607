#include "wfdrift/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
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

struct Split {
  double value;
  double error;
};

Split two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

Split two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Three-point stencil a*f[i-1] + b*f[i] + c*f[i+1], compensated (Ogita, Rump
// and Oishi's Dot2): as accurate as evaluating in twice the working precision
// and rounding once. The stencil terms are O(M^2) while their sum is not.
double apply3(double a, double b, double c, double fm, double f0, double fp) {
  const Split p1 = two_product(a, fm);
  const Split p2 = two_product(b, f0);
  const Split p3 = two_product(c, fp);
  const Split s1 = two_sum(p1.value, p2.value);
  const Split s2 = two_sum(s1.value, p3.value);
  return s2.value + (s1.error + s2.error + p1.error + p2.error + p3.error);
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Upwind:
      return "upwind";
    case SchemeKind::CentralSplit:
      return "central-split";
    case SchemeKind::CentralWhole:
      return "central-whole";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  if (name == "upwind") return SchemeKind::Upwind;
  if (name == "central-split") return SchemeKind::CentralSplit;
  if (name == "central-whole") return SchemeKind::CentralWhole;
  return std::nullopt;
}

FluxStencil flux_stencil(SchemeKind kind, const Grid& grid, int i) {
  const int cells = grid.cells();
  if (i < 0 || i >= cells) {
    throw InvalidArgument("half-node index " + std::to_string(i) + " outside [0, " +
                          std::to_string(cells - 1) + "]");
  }
  const auto m = static_cast<std::int64_t>(cells);
  const auto k = static_cast<std::int64_t>(i);

  if (kind == SchemeKind::CentralWhole) {
    // D_i / h^2 = i (M - i).
    return {static_cast<double>(k * (m - k)), -static_cast<double>((k + 1) * (m - k - 1))};
  }

  // D_{i+1/2} / h^2 and (2 x_{i+1/2} - 1) / h, both exact.
  const double diffusion = static_cast<double>((2 * k + 1) * (2 * m - 2 * k - 1)) / 4.0;
  const double velocity = static_cast<double>(2 * k + 1 - m);
  FluxStencil s{diffusion, -diffusion};
  if (kind == SchemeKind::CentralSplit) {
    s.left += 0.5 * velocity;
    s.right += 0.5 * velocity;
  } else if (velocity <= 0.0) {
    // Velocity points toward x = 0: take f_{i+1}. At velocity == 0 either
    // branch adds nothing.
    s.right += velocity;
  } else {
    s.left += velocity;
  }
  return s;
}

double half_node_flux(SchemeKind kind, const Grid& grid, std::span<const double> f, int i) {
  require_length(grid, f);
  const FluxStencil s = flux_stencil(kind, grid, i);
  return grid.spacing() * (s.left * f[i] + s.right * f[i + 1]);
}

std::vector<double> spatial_residual(SchemeKind kind, const Grid& grid,
                                     std::span<const double> f) {
  require_length(grid, f);
  const int cells = grid.cells();
  std::vector<FluxStencil> stencils(cells);
  for (int i = 0; i < cells; ++i) stencils[i] = flux_stencil(kind, grid, i);

  std::vector<double> r(cells - 1);
  for (int i = 1; i < cells; ++i) {
    const FluxStencil& lo = stencils[i - 1];
    const FluxStencil& hi = stencils[i];
    r[i - 1] = apply3(-lo.left, hi.left - lo.right, hi.right, f[i - 1], f[i], f[i + 1]);
  }
  return r;
}

std::vector<double> lambda_residual(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  const int cells = grid.cells();
  std::vector<double> r(cells - 1);
  for (int i = 1; i < cells; ++i) {
    r[i - 1] = -0.25 * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
  }
  return r;
}

std::vector<double> lambda_tilde_residual(const Grid& grid, std::span<const double> f) {
  require_length(grid, f);
  const auto m = static_cast<std::int64_t>(grid.cells());
  std::vector<double> r(m - 1);
  for (std::int64_t i = 1; i < m; ++i) {
    // |b_{i+-1/2}| / h as exact integers.
    const double up = static_cast<double>(std::abs(m - 2 * i - 1));
    const double down = static_cast<double>(std::abs(m - 2 * i + 1));
    r[i - 1] = -0.5 * apply3(down, -(up + down), up, f[i - 1], f[i], f[i + 1]);
  }
  return r;
}

SchemeOperator assemble_operator(SchemeKind kind, const Grid& grid, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("time step must be positive and finite");
  }
  const int cells = grid.cells();
  const double h = grid.spacing();

  SchemeOperator op;
  op.scheme_ = kind;
  op.cells_ = cells;
  op.tau_ = tau;
  op.mesh_ratio_ = tau / (h * h);

  const double inv_tau = 1.0 / tau;
  TridiagonalMatrix& a = op.full_;
  a = TridiagonalMatrix(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i < cells; ++i) {
    const FluxStencil s = flux_stencil(kind, grid, i);
    // +J_{i+1/2} in row i and -J_{i+1/2} in row i+1, divided by w/h.
    const double row_i = (i == 0) ? 2.0 : 1.0;
    const double row_next = (i + 1 == cells) ? 2.0 : 1.0;
    a.diag[i] += row_i * s.left;
    a.super[i] += row_i * s.right;
    a.sub[i] -= row_next * s.left;
    a.diag[i + 1] -= row_next * s.right;
  }
  for (double& d : a.diag) d += inv_tau;

  if (kind == SchemeKind::CentralWhole) {
    const std::size_t n = static_cast<std::size_t>(cells) - 1;
    op.interior_ = TridiagonalMatrix(n);
    for (std::size_t r = 0; r < n; ++r) {
      op.interior_.diag[r] = a.diag[r + 1];
      if (r > 0) op.interior_.sub[r - 1] = a.sub[r];
      if (r + 1 < n) op.interior_.super[r] = a.super[r + 1];
    }
    const auto d = grid.diffusion();
    op.left_recovery_ = 2.0 * d[1] * op.mesh_ratio_;
    op.right_recovery_ = 2.0 * d[cells - 1] * op.mesh_ratio_;
    op.interior_solver_ = TridiagonalFactor(op.interior_);
    return op;
  }

  // Row i scaled by its cell width turns the flux part into a pure
  // divergence, which is column dominant for the upwind scheme.
  if (is_row_dominant(a) || is_column_dominant(a)) {
    op.full_solver_ = TridiagonalFactor(a);
    return op;
  }
  const auto w = grid.cell_widths();
  TridiagonalMatrix weighted = a.scaled_rows(w);
  if (is_row_dominant(weighted) || is_column_dominant(weighted)) {
    op.row_weights_.assign(w.begin(), w.end());
    op.full_solver_ = TridiagonalFactor(weighted);
    return op;
  }
  op.full_solver_ = DenseLu(to_dense(a));
  return op;
}

std::vector<double> SchemeOperator::advance(std::span<const double> f) const {
  const std::size_t n = static_cast<std::size_t>(cells_) + 1;
  if (f.size() != n) {
    throw InvalidArgument("density vector has length " + std::to_string(f.size()) +
                          ", operator expects " + std::to_string(n));
  }
  const double inv_tau = 1.0 / tau_;

  if (boundaries_decoupled()) {
    std::vector<double> rhs(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) rhs[i - 1] = f[i] * inv_tau;
    const std::vector<double> inner = interior_solver_.solve(rhs);
    std::vector<double> out(n);
    std::copy(inner.begin(), inner.end(), out.begin() + 1);
    out.front() = f.front() + left_recovery_ * inner.front();
    out.back() = f.back() + right_recovery_ * inner.back();
    return out;
  }

  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = f[i] * inv_tau;
    if (!row_weights_.empty()) rhs[i] *= row_weights_[i];
  }
  if (const auto* tri = std::get_if<TridiagonalFactor>(&full_solver_)) return tri->solve(rhs);
  if (const auto* lu = std::get_if<DenseLu>(&full_solver_)) return lu->solve(rhs);
  throw InvalidArgument("scheme operator was not assembled");
}

}  // namespace wfdrift
