#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wfdrift {

/// Tridiagonal matrix stored by diagonals. Row i couples x_{i-1} (sub[i-1]),
/// x_i (diag[i]) and x_{i+1} (super[i]).
struct TridiagonalMatrix {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  TridiagonalMatrix() = default;
  explicit TridiagonalMatrix(std::size_t n);

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
  /// Scales row i by weights[i].
  TridiagonalMatrix scaled_rows(std::span<const double> weights) const;
  /// Throws InvalidArgument if the diagonal lengths are inconsistent.
  void validate() const;
};

struct TridiagonalSystem {
  TridiagonalMatrix matrix;
  std::vector<double> rhs;
};

/// Strict row-wise diagonal dominance: |d_i| > |l_i| + |u_i| for every row.
bool is_row_dominant(const TridiagonalMatrix& a);
/// Strict column-wise diagonal dominance.
bool is_column_dominant(const TridiagonalMatrix& a);

/// Thomas algorithm: forward elimination and back substitution, no pivoting.
/// Throws SingularSystem when a pivot falls below 1e-300 in magnitude.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// Elimination of a fixed tridiagonal matrix, reused across right-hand sides.
class TridiagonalFactor {
 public:
  TridiagonalFactor() = default;
  explicit TridiagonalFactor(const TridiagonalMatrix& a);

  std::size_t size() const { return pivot_inverse_.size(); }
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  std::vector<double> sub_;
  std::vector<double> pivot_inverse_;
  std::vector<double> upper_;  // super / pivot
};

/// Row-major square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

DenseMatrix to_dense(const TridiagonalMatrix& a);

/// LU factorization with partial pivoting.
class DenseLu {
 public:
  DenseLu() = default;
  /// Throws SingularSystem when no usable pivot exists in some column.
  explicit DenseLu(DenseMatrix a);

  std::size_t size() const { return lu_.size(); }
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Gaussian elimination with partial pivoting (n <= 200 expected).
std::vector<double> solve_dense(const DenseMatrix& a, std::span<const double> rhs);

}  // namespace wfdrift
