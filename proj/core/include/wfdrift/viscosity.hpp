#pragma once

#include <functional>
#include <string_view>
#include <optional>
#include <vector>

namespace wfdrift {

/// Normalized steady state of the drift equation with an added constant
/// diffusion epsilon:
///   f_eps(x) = b_eps / (x(1-x) + eps),
///   b_eps = c / ln((c + 1/2) / (c - 1/2)),  c = sqrt(1/4 + eps).
class ViscosityProfile {
 public:
  /// Throws InvalidArgument unless epsilon > 0 and finite.
  explicit ViscosityProfile(double epsilon);

  double epsilon() const { return epsilon_; }
  double c_plus() const { return c_plus_; }
  double normalization() const { return normalization_; }

  /// Throws InvalidArgument for x outside [0, 1].
  double operator()(double x) const;
  /// Zero outside [0, 1].
  double extended(double x) const;

 private:
  double epsilon_;
  double c_plus_;
  double normalization_;
};

/// A smooth test function together with the points where it is not analytic
/// (support endpoints); the quadrature places panel breaks there.
struct TestFunction {
  std::function<double(double)> phi;
  std::vector<double> breakpoints;
  double value_at_zero = 0.0;
  double value_at_one = 0.0;
};

enum class TestFunctionKind { Bump0, Bump1, BumpMid, One };

std::optional<TestFunctionKind> parse_test_function(std::string_view name);
std::string_view to_string(TestFunctionKind kind);

/// Bump0: e * exp(-1/(1 - (x/0.75)^2)), phi(0) = 1, phi(1) = 0.
/// Bump1: its mirror image about x = 1/2.
/// BumpMid: e * exp(-1/(1 - ((x-1/2)/(1/4))^2)), supported in (1/4, 3/4).
/// One: 1 on [0, 1].
TestFunction make_test_function(TestFunctionKind kind);

struct QuadratureOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_depth = 40;
};

/// Integral of f_eps * phi over [0, 1] by adaptive Gauss-Legendre on a mesh
/// graded geometrically toward both endpoints. Throws QuadratureFailure when
/// a panel cannot be resolved within max_depth bisections.
double pair_with_test_function(const ViscosityProfile& profile, const TestFunction& phi,
                               const QuadratureOptions& options = {});

/// Integral of f_eps over [0, delta] and [1 - delta, 1].
double outer_mass(const ViscosityProfile& profile, double delta,
                  const QuadratureOptions& options = {});

/// Integral of g over [a, b]; g is integrated panel by panel between the sorted
/// breakpoints, each panel refined adaptively.
double integrate_adaptive(const std::function<double(double)>& g, std::vector<double> breakpoints,
                          const QuadratureOptions& options = {});

}  // namespace wfdrift
