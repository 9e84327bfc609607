#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wfdrift {

/// Random engine for every stochastic routine: 64-bit Mersenne Twister
/// (std::mt19937_64), whose output sequence is fixed by the C++ standard.
using Rng = std::mt19937_64;

/// Engine for trial `trial` of an ensemble seeded with `seed`: the seed is
/// mixed with the trial index through SplitMix64.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(Rng& rng);

/// Exact Binomial(n, p) draw. Uses sequential inversion when n <= 64 or
/// n*min(p, 1-p) < 10, and Hormann's BTRS transformed rejection otherwise.
std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng);

/// One Wright-Fisher generation: Binomial(N, i/N). States 0 and N absorb.
std::int64_t wf_step(std::int64_t population, std::int64_t count, Rng& rng);

struct ChainConfig {
  std::int64_t population = 100;
  double p = 0.5;
  std::int64_t trials = 10000;
  std::int64_t max_generations = 100000;
  std::uint64_t seed = 1;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  std::int64_t initial_count() const;
  /// Throws InvalidArgument unless 0 < round(pN) < N and trials >= 1.
  void validate() const;
};

/// Ensemble mean and spread of X_k at one generation.
struct GenerationMoments {
  std::int64_t generation = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct FixationResult {
  std::int64_t fixed = 0;
  std::int64_t lost = 0;
  std::int64_t unresolved = 0;
  double fixed_fraction = 0.0;
  double lost_fraction = 0.0;
  double unresolved_fraction = 0.0;
  double mean_absorption_time = 0.0;
  /// Recorded at generations 1, 2, 4, 8, ... up to max_generations.
  std::vector<GenerationMoments> martingale;
};

/// Runs `trials` independent chains to absorption or max_generations. The
/// result does not depend on the thread count.
FixationResult fixation_probability(const ChainConfig& cfg);

struct StepMoments {
  std::int64_t draws = 0;
  double mean = 0.0;
  double variance = 0.0;
  double expected_mean = 0.0;      ///< i
  double expected_variance = 0.0;  ///< i (1 - i/N)
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
};

/// Sample moments of `draws` one-step transitions from count i, with the
/// standard errors implied by the exact binomial central moments.
StepMoments one_step_moments(std::int64_t population, std::int64_t count, std::int64_t draws,
                             std::uint64_t seed);

}  // namespace wfdrift
