#include "wfdrift/viscosity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wfdrift/error.hpp"

namespace wfdrift {

namespace {

constexpr int kGaussOrder = 20;

struct GaussLegendre {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guesses.
GaussLegendre make_gauss_legendre() {
  GaussLegendre rule;
  constexpr int n = kGaussOrder;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k] = -x;
    rule.nodes[n - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  return rule;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = make_gauss_legendre();
  return rule;
}

double gauss_panel(const std::function<double(double)>& g, double a, double b) {
  const GaussLegendre& rule = gauss_legendre();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int k = 0; k < kGaussOrder; ++k) sum += rule.weights[k] * g(mid + half * rule.nodes[k]);
  return sum * half;
}

double refine(const std::function<double(double)>& g, double a, double b, double whole,
              const QuadratureOptions& opt, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(g, a, m);
  const double right = gauss_panel(g, m, b);
  const double both = left + right;
  if (std::abs(both - whole) <= std::max(opt.abs_tol, opt.rel_tol * std::abs(both))) {
    return both;
  }
  if (depth >= opt.max_depth) {
    throw QuadratureFailure("adaptive quadrature did not converge on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
  }
  return refine(g, a, m, left, opt, depth + 1) + refine(g, m, b, right, opt, depth + 1);
}

// Breaks at eps * 2^k from each end so every panel is at most twice as far
// from the nearest boundary layer as it is wide.
std::vector<double> graded_breaks(double epsilon) {
  std::vector<double> breaks{0.0, 0.5, 1.0};
  for (double s = epsilon; s < 0.5; s *= 2.0) {
    breaks.push_back(s);
    breaks.push_back(1.0 - s);
  }
  return breaks;
}

double bump(double x, double center, double radius) {
  const double u = (x - center) / radius;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace

ViscosityProfile::ViscosityProfile(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("viscosity epsilon must be positive");
  }
  c_plus_ = std::sqrt(0.25 + epsilon);
  // (c + 1/2)/(c - 1/2) = (c + 1/2)^2 / eps, free of cancellation.
  const double log_ratio = 2.0 * std::log(c_plus_ + 0.5) - std::log(epsilon);
  normalization_ = c_plus_ / log_ratio;
}

double ViscosityProfile::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("f_epsilon is defined on [0, 1]; got x = " + std::to_string(x));
  }
  return normalization_ / (x * (1.0 - x) + epsilon_);
}

double ViscosityProfile::extended(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) return 0.0;
  return normalization_ / (x * (1.0 - x) + epsilon_);
}

std::optional<TestFunctionKind> parse_test_function(std::string_view name) {
  if (name == "bump0") return TestFunctionKind::Bump0;
  if (name == "bump1") return TestFunctionKind::Bump1;
  if (name == "bumpmid") return TestFunctionKind::BumpMid;
  if (name == "one") return TestFunctionKind::One;
  return std::nullopt;
}

std::string_view to_string(TestFunctionKind kind) {
  switch (kind) {
    case TestFunctionKind::Bump0:
      return "bump0";
    case TestFunctionKind::Bump1:
      return "bump1";
    case TestFunctionKind::BumpMid:
      return "bumpmid";
    case TestFunctionKind::One:
      return "one";
  }
  return "unknown";
}

TestFunction make_test_function(TestFunctionKind kind) {
  switch (kind) {
    case TestFunctionKind::Bump0:
      return {[](double x) { return bump(x, 0.0, 0.75); }, {0.75}, 1.0, 0.0};
    case TestFunctionKind::Bump1:
      return {[](double x) { return bump(x, 1.0, 0.75); }, {0.25}, 0.0, 1.0};
    case TestFunctionKind::BumpMid:
      return {[](double x) { return bump(x, 0.5, 0.25); }, {0.25, 0.75}, 0.0, 0.0};
    case TestFunctionKind::One:
      return {[](double) { return 1.0; }, {}, 1.0, 1.0};
  }
  throw InvalidArgument("unknown test function");
}

double integrate_adaptive(const std::function<double(double)>& g, std::vector<double> breakpoints,
                          const QuadratureOptions& options) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k];
    const double b = breakpoints[k + 1];
    total += refine(g, a, b, gauss_panel(g, a, b), options, 0);
  }
  return total;
}

double pair_with_test_function(const ViscosityProfile& profile, const TestFunction& phi,
                               const QuadratureOptions& options) {
  std::vector<double> breaks = graded_breaks(profile.epsilon());
  for (double b : phi.breakpoints) {
    if (b > 0.0 && b < 1.0) breaks.push_back(b);
  }
  return integrate_adaptive([&](double x) { return profile(x) * phi.phi(x); }, std::move(breaks),
                            options);
}

double outer_mass(const ViscosityProfile& profile, double delta,
                  const QuadratureOptions& options) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw InvalidArgument("outer_mass needs 0 < delta < 1/2");
  }
  std::vector<double> left{0.0, delta};
  std::vector<double> right{1.0 - delta, 1.0};
  for (double s = profile.epsilon(); s < delta; s *= 2.0) {
    left.push_back(s);
    right.push_back(1.0 - s);
  }
  const auto f = [&](double x) { return profile(x); };
  return integrate_adaptive(f, std::move(left), options) +
         integrate_adaptive(f, std::move(right), options);
}

}  // namespace wfdrift
