#include "wfdrift/wright_fisher.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wfdrift/error.hpp"

namespace wfdrift {
namespace {

std::vector<double> binomial_pmf(std::int64_t n, double p) {
  std::vector<double> pmf(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p));
  }
  return pmf;
}

// Pearson statistic over cells with expected count >= 5, pooled tails.
// Returns (statistic, degrees of freedom).
std::pair<double, int> chi_square(const std::vector<std::int64_t>& counts,
                                  const std::vector<double>& pmf, std::int64_t draws) {
  double stat = 0.0;
  int cells = 0;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double e = pmf[k] * draws;
    if (e >= 5.0) {
      stat += (counts[k] - e) * (counts[k] - e) / e;
      ++cells;
    } else {
      pooled_obs += counts[k];
      pooled_exp += e;
    }
  }
  if (pooled_exp > 0.0) {
    stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  return {stat, cells - 1};
}

TEST(RngTest, Uniform01Range) {
  Rng rng = trial_rng(1, 0);
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(RngTest, TrialStreamsDifferAndRepeat) {
  Rng a = trial_rng(42, 0);
  Rng b = trial_rng(42, 1);
  Rng c = trial_rng(42, 0);
  Rng d = trial_rng(43, 0);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_EQ(x, c());
  EXPECT_NE(x, d());
}

TEST(BinomialTest, DegenerateParameters) {
  Rng rng = trial_rng(1, 0);
  EXPECT_EQ(sample_binomial(10, 0.0, rng), 0);
  EXPECT_EQ(sample_binomial(10, 1.0, rng), 10);
  EXPECT_EQ(sample_binomial(0, 0.3, rng), 0);
  EXPECT_THROW(sample_binomial(-1, 0.3, rng), InvalidArgument);
  EXPECT_THROW(sample_binomial(5, 1.5, rng), InvalidArgument);
}

// Covers both the inversion path (small n or small np) and transformed
// rejection (large np), including p > 1/2.
TEST(BinomialTest, MatchesExactDistribution) {
  struct Case {
    std::int64_t n;
    double p;
  };
  const Case cases[] = {{10, 0.3}, {64, 0.5}, {100, 0.05}, {100, 0.4},
                        {100, 0.93}, {1000, 0.5}, {5000, 0.01}, {5000, 0.2}};
  const std::int64_t draws = 200000;
  for (const Case& c : cases) {
    Rng rng = trial_rng(123, static_cast<std::uint64_t>(c.n));
    std::vector<std::int64_t> counts(c.n + 1, 0);
    for (std::int64_t k = 0; k < draws; ++k) {
      const std::int64_t x = sample_binomial(c.n, c.p, rng);
      ASSERT_GE(x, 0);
      ASSERT_LE(x, c.n);
      ++counts[x];
    }
    const auto [stat, dof] = chi_square(counts, binomial_pmf(c.n, c.p), draws);
    // Normal approximation to the chi-square upper tail, about 1e-5.
    const double limit = dof + 4.3 * std::sqrt(2.0 * dof);
    EXPECT_LT(stat, limit) << "n=" << c.n << " p=" << c.p << " dof=" << dof;
  }
}

TEST(WfStepTest, AbsorbingStates) {
  Rng rng = trial_rng(2, 0);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(wf_step(100, 0, rng), 0);
    EXPECT_EQ(wf_step(100, 100, rng), 100);
  }
  EXPECT_THROW(wf_step(100, 101, rng), InvalidArgument);
}

TEST(OneStepMomentsTest, NeutralMoments) {
  const StepMoments m = one_step_moments(100, 40, 1000000, 7);
  EXPECT_EQ(m.expected_mean, 40.0);
  EXPECT_DOUBLE_EQ(m.expected_variance, 24.0);
  EXPECT_LE(std::abs(m.mean - m.expected_mean), 4 * m.mean_stderr);
  EXPECT_LE(std::abs(m.variance - m.expected_variance), 4 * m.variance_stderr);
  EXPECT_NEAR(m.mean_stderr, std::sqrt(24.0 / 1e6), 1e-6);
}

TEST(ChainConfigTest, Validation) {
  ChainConfig cfg;
  cfg.population = 100;
  cfg.p = 0.004;  // rounds to zero copies
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.p = 0.996;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.p = 0.4;
  EXPECT_EQ(cfg.initial_count(), 40);
  EXPECT_NO_THROW(cfg.validate());
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(FixationTest, SmallEnsemble) {
  ChainConfig cfg;
  cfg.population = 20;
  cfg.p = 0.25;
  cfg.trials = 20000;
  cfg.seed = 3;
  const FixationResult r = fixation_probability(cfg);
  EXPECT_EQ(r.fixed + r.lost + r.unresolved, cfg.trials);
  EXPECT_EQ(r.unresolved, 0);
  const double se = std::sqrt(0.25 * 0.75 / cfg.trials);
  EXPECT_NEAR(r.fixed_fraction, 0.25, 6 * se);
  EXPECT_GT(r.mean_absorption_time, 1.0);
  // The ensemble mean of X_k stays at the starting count.
  for (const GenerationMoments& gm : r.martingale) {
    EXPECT_NEAR(gm.mean, 5.0, 6 * gm.stddev / std::sqrt(cfg.trials) + 1e-12) << gm.generation;
  }
}

TEST(FixationTest, NearlyFixedStart) {
  ChainConfig cfg;
  cfg.population = 50;
  cfg.p = 0.98;  // 49 copies
  cfg.trials = 20000;
  const FixationResult r = fixation_probability(cfg);
  const double se = std::sqrt(0.98 * 0.02 / cfg.trials);
  EXPECT_NEAR(r.fixed_fraction, 0.98, 6 * se);
}

TEST(FixationTest, IndependentOfThreadCount) {
  ChainConfig cfg;
  cfg.population = 30;
  cfg.p = 0.5;
  cfg.trials = 3001;
  cfg.seed = 99;
  cfg.threads = 1;
  const FixationResult a = fixation_probability(cfg);
  cfg.threads = 4;
  const FixationResult b = fixation_probability(cfg);
  EXPECT_EQ(a.fixed, b.fixed);
  EXPECT_EQ(a.lost, b.lost);
  EXPECT_EQ(a.mean_absorption_time, b.mean_absorption_time);
  ASSERT_EQ(a.martingale.size(), b.martingale.size());
  for (std::size_t k = 0; k < a.martingale.size(); ++k) {
    EXPECT_EQ(a.martingale[k].mean, b.martingale[k].mean);
    EXPECT_EQ(a.martingale[k].stddev, b.martingale[k].stddev);
  }
}

TEST(FixationTest, GenerationCapLeavesChainsUnresolved) {
  ChainConfig cfg;
  cfg.population = 1000;
  cfg.p = 0.5;
  cfg.trials = 100;
  cfg.max_generations = 3;
  const FixationResult r = fixation_probability(cfg);
  EXPECT_EQ(r.unresolved, 100);
  EXPECT_EQ(r.unresolved_fraction, 1.0);
}

}  // namespace
}  // namespace wfdrift
