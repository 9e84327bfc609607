#include "wfdrift/linear_solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "wfdrift/error.hpp"

namespace wfdrift {

namespace {

constexpr double kTinyPivot = 1e-300;

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InvalidArgument(std::string(what) + ": expected length " + std::to_string(want) +
                          ", got " + std::to_string(got));
  }
}

}  // namespace

TridiagonalMatrix::TridiagonalMatrix(std::size_t n)
    : sub(n > 0 ? n - 1 : 0, 0.0), diag(n, 0.0), super(n > 0 ? n - 1 : 0, 0.0) {}

void TridiagonalMatrix::validate() const {
  const std::size_t n = diag.size();
  const std::size_t off = n > 0 ? n - 1 : 0;
  require_size(sub.size(), off, "tridiagonal sub-diagonal");
  require_size(super.size(), off, "tridiagonal super-diagonal");
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
  validate();
  const std::size_t n = size();
  require_size(x.size(), n, "tridiagonal multiply");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += sub[i - 1] * x[i - 1];
    if (i + 1 < n) acc += super[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

TridiagonalMatrix TridiagonalMatrix::scaled_rows(std::span<const double> weights) const {
  validate();
  require_size(weights.size(), size(), "row weights");
  TridiagonalMatrix out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    out.diag[i] *= weights[i];
    if (i > 0) out.sub[i - 1] *= weights[i];
    if (i + 1 < size()) out.super[i] *= weights[i];
  }
  return out;
}

bool is_row_dominant(const TridiagonalMatrix& a) {
  a.validate();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    if (i > 0) off += std::abs(a.sub[i - 1]);
    if (i + 1 < n) off += std::abs(a.super[i]);
    if (!(std::abs(a.diag[i]) > off)) return false;
  }
  return true;
}

bool is_column_dominant(const TridiagonalMatrix& a) {
  a.validate();
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    double off = 0.0;
    if (j > 0) off += std::abs(a.super[j - 1]);  // row j-1, column j
    if (j + 1 < n) off += std::abs(a.sub[j]);    // row j+1, column j
    if (!(std::abs(a.diag[j]) > off)) return false;
  }
  return true;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalMatrix& a) {
  a.validate();
  const std::size_t n = a.size();
  sub_ = a.sub;
  pivot_inverse_.resize(n);
  upper_.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double pivot = a.diag[i];
    if (i > 0) pivot -= a.sub[i - 1] * upper_[i - 1];
    if (!(std::abs(pivot) >= kTinyPivot)) {
      throw SingularSystem("tridiagonal pivot vanishes at row " + std::to_string(i));
    }
    pivot_inverse_[i] = 1.0 / pivot;
    if (i + 1 < n) upper_[i] = a.super[i] * pivot_inverse_[i];
  }
}

std::vector<double> TridiagonalFactor::solve(std::span<const double> rhs) const {
  const std::size_t n = size();
  require_size(rhs.size(), n, "tridiagonal right-hand side");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = rhs[i];
    if (i > 0) r -= sub_[i - 1] * x[i - 1];
    x[i] = r * pivot_inverse_[i];
  }
  for (std::size_t i = n; i-- > 1;) {
    x[i - 1] -= upper_[i - 1] * x[i];
  }
  return x;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  return TridiagonalFactor(sys.matrix).solve(sys.rhs);
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  require_size(x.size(), n_, "dense multiply");
  std::vector<double> y(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

DenseMatrix to_dense(const TridiagonalMatrix& a) {
  a.validate();
  const std::size_t n = a.size();
  DenseMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = a.diag[i];
    if (i > 0) d(i, i - 1) = a.sub[i - 1];
    if (i + 1 < n) d(i, i + 1) = a.super[i];
  }
  return d;
}

DenseLu::DenseLu(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.size()) {
  const std::size_t n = lu_.size();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu_(r, k)) > std::abs(lu_(best, k))) best = r;
    }
    if (!(std::abs(lu_(best, k)) >= kTinyPivot)) {
      throw SingularSystem("dense matrix is singular at column " + std::to_string(k));
    }
    if (best != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(best, c));
      std::swap(perm_[k], perm_[best]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = lu_(r, k) * inv;
      lu_(r, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
    }
  }
}

std::vector<double> DenseLu::solve(std::span<const double> rhs) const {
  const std::size_t n = size();
  require_size(rhs.size(), n, "dense right-hand side");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = rhs[perm_[i]];
    for (std::size_t c = 0; c < i; ++c) r -= lu_(i, c) * x[c];
    x[i] = r;
  }
  for (std::size_t i = n; i-- > 0;) {
    double r = x[i];
    for (std::size_t c = i + 1; c < n; ++c) r -= lu_(i, c) * x[c];
    x[i] = r / lu_(i, i);
  }
  return x;
}

std::vector<double> solve_dense(const DenseMatrix& a, std::span<const double> rhs) {
  return DenseLu(a).solve(rhs);
}

}  // namespace wfdrift
