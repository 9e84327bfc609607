#pragma once

#include <span>
#include <vector>

#include "wfdrift/grid.hpp"

namespace wfdrift {

/// P = (h/2) f_0 + (h/2) f_M + sum_{i=1}^{M-1} f_i h.
double discrete_probability(const Grid& grid, std::span<const double> f);

/// E = (h/2) x_0 f_0 + (h/2) x_M f_M + sum_{i=1}^{M-1} x_i f_i h.
double discrete_expectation(const Grid& grid, std::span<const double> f);

/// sum_{i=1}^{M-1} f_i h.
double interior_mass(const Grid& grid, std::span<const double> f);

/// ||v||_h = (sum_{i=1}^{M-1} v_i^2 h)^{1/2} with v_i = D_i f_i.
double weighted_interior_norm(const Grid& grid, std::span<const double> f);

/// Smallest eigenvalue of the negative discrete Dirichlet Laplacian on the
/// grid: (4/h^2) sin^2(pi / (2M)).
double laplacian_min_eigenvalue(const Grid& grid);

/// exp(-pi^2 t / 4) / (4 h (1 - h)) * initial_interior_mass.
double interior_mass_bound(const Grid& grid, double t, double initial_interior_mass);

struct DiagnosticsRecord {
  double t = 0.0;
  double probability = 0.0;
  double expectation = 0.0;
  double interior_mass = 0.0;
  double v_norm = 0.0;
  double f0 = 0.0;
  double fM = 0.0;
};

DiagnosticsRecord measure(const Grid& grid, const State& state);

/// Time series of conservation functionals; t strictly increasing.
class DiagnosticsTrace {
 public:
  /// Throws InvalidArgument if record.t does not exceed the previous time.
  void append(const DiagnosticsRecord& record);

  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const DiagnosticsRecord& front() const { return records_.front(); }
  const DiagnosticsRecord& back() const { return records_.back(); }

  /// max_n |P_n - P_0| and max_n |E_n - E_0| over the trace.
  double max_probability_drift() const;
  double max_expectation_drift() const;

 private:
  std::vector<DiagnosticsRecord> records_;
};

/// Boundary weights of a terminal state against the limits predicted by
/// conservation of probability and expectation.
struct SteadyStateReport {
  double w0 = 0.0;  ///< (h/2) f_0
  double w1 = 0.0;  ///< (h/2) f_M
  double interior_mass = 0.0;
  double predicted_w0 = 0.0;  ///< P_0 - E_0
  double predicted_w1 = 0.0;  ///< E_0
  double w0_deviation = 0.0;
  double w1_deviation = 0.0;
};

/// p0 and e0 should come from the discrete initial data, not the nominal 1, p.
SteadyStateReport steady_report(const Grid& grid, const State& terminal, double p0, double e0);

}  // namespace wfdrift
