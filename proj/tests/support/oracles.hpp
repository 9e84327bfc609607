#pragma once

// Test-only reference computations. Nothing here calls the code under test
// except the dense solver, which is itself checked against closed forms.

#include <cmath>
#include <numbers>
#include <vector>

#include "wfdrift/linear_solver.hpp"
#include "wfdrift/schemes.hpp"
#include "wfdrift/wright_fisher.hpp"

namespace wfdrift::testing {

/// Full (M+1)x(M+1) implicit Euler matrix built straight from the half-node
/// flux formulas, with node coordinates computed as i*h.
inline DenseMatrix dense_full_system(SchemeKind kind, int cells, double tau) {
  const double h = 1.0 / cells;
  const auto d = [](double x) { return x * (1.0 - x); };
  DenseMatrix a(cells + 1);
  for (int i = 0; i <= cells; ++i) a(i, i) += 1.0 / tau;
  for (int i = 0; i < cells; ++i) {
    const double xl = i * h;
    const double xr = (i + 1) * h;
    const double xh = (i + 0.5) * h;
    const double c = 2.0 * xh - 1.0;
    double alpha = 0.0;  // coefficient of f_i in j_{i+1/2}
    double beta = 0.0;   // coefficient of f_{i+1}
    switch (kind) {
      case SchemeKind::CentralWhole:
        alpha = d(xl) / h;
        beta = -d(xr) / h;
        break;
      case SchemeKind::CentralSplit:
        alpha = d(xh) / h + 0.5 * c;
        beta = -d(xh) / h + 0.5 * c;
        break;
      case SchemeKind::Upwind:
        alpha = d(xh) / h;
        beta = -d(xh) / h;
        if (c < 0.0) {
          beta += c;
        } else {
          alpha += c;
        }
        break;
    }
    const double wl = (i == 0) ? 0.5 * h : h;
    const double wr = (i + 1 == cells) ? 0.5 * h : h;
    a(i, i) += alpha / wl;
    a(i, i + 1) += beta / wl;
    a(i + 1, i) -= alpha / wr;
    a(i + 1, i + 1) -= beta / wr;
  }
  return a;
}

/// One implicit Euler step by dense elimination of the full system.
inline std::vector<double> dense_step(SchemeKind kind, const std::vector<double>& f, double tau) {
  const int cells = static_cast<int>(f.size()) - 1;
  std::vector<double> rhs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = f[i] / tau;
  return solve_dense(dense_full_system(kind, cells, tau), rhs);
}

/// Mass of N(p, sigma^2) on [0, 1].
inline double gaussian_mass_on_unit(double p, double sigma) {
  const double s = sigma * std::numbers::sqrt2;
  return 0.5 * (std::erf((1.0 - p) / s) - std::erf(-p / s));
}

/// First moment of N(p, sigma^2) restricted to [0, 1].
inline double gaussian_mean_on_unit(double p, double sigma) {
  const double s = sigma * std::numbers::sqrt2;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  // int x phi = p * mass - sigma^2 [phi(x)] over the interval.
  const auto phi = [&](double x) { return norm * std::exp(-(x - p) * (x - p) / (s * s)); };
  return p * gaussian_mass_on_unit(p, sigma) - sigma * sigma * (phi(1.0) - phi(0.0));
}

inline std::vector<double> random_vector(std::size_t n, Rng& rng, double lo = 0.0,
                                         double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * uniform01(rng);
  return v;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace wfdrift::testing
