#include "wfdrift/wright_fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "wfdrift/error.hpp"

namespace wfdrift {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Sequential search from k = 0 using the recurrence
// P(k) = P(k-1) * ((n+1)/k - 1) * p/q. Requires p <= 1/2.
std::int64_t binomial_inversion(std::int64_t n, double p, Rng& rng) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  const double r0 = std::pow(q, static_cast<double>(n));
  for (;;) {
    double u = uniform01(rng);
    double r = r0;
    std::int64_t x = 0;
    while (u > r) {
      u -= r;
      ++x;
      if (x > n) break;
      r *= a / static_cast<double>(x) - s;
    }
    if (x <= n) return x;
  }
}

// W. Hormann, "The generation of binomial random variates", J. Stat. Comput.
// Simul. 46 (1993): transformed rejection with squeeze. Requires p <= 1/2 and
// n * p >= 10.
std::int64_t binomial_btrs(std::int64_t n, double p, Rng& rng) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const double m = std::floor((nd + 1.0) * p);
  const double h = std::lgamma(m + 1.0) + std::lgamma(nd - m + 1.0);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    double v = uniform01(rng);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + c);
    if (k < 0.0 || k > nd) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    v = std::log(v * alpha / (a / (us * us) + b));
    if (v <= h - std::lgamma(k + 1.0) - std::lgamma(nd - k + 1.0) + (k - m) * lpq) {
      return static_cast<std::int64_t>(k);
    }
  }
}

struct Partial {
  std::int64_t fixed = 0;
  std::int64_t lost = 0;
  std::int64_t absorption_time = 0;
  std::vector<std::int64_t> sum;
  std::vector<std::int64_t> sum_sq;
};

std::vector<std::int64_t> recorded_generations(std::int64_t max_generations) {
  std::vector<std::int64_t> gens;
  for (std::int64_t g = 1; g <= max_generations; g *= 2) gens.push_back(g);
  return gens;
}

void simulate_range(const ChainConfig& cfg, const std::vector<std::int64_t>& gens,
                    std::int64_t begin, std::int64_t end, Partial& out) {
  out.sum.assign(gens.size(), 0);
  out.sum_sq.assign(gens.size(), 0);
  const std::int64_t n = cfg.population;
  for (std::int64_t trial = begin; trial < end; ++trial) {
    Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(trial));
    std::int64_t x = cfg.initial_count();
    std::size_t next = 0;
    std::int64_t g = 0;
    while (g < cfg.max_generations && x > 0 && x < n) {
      x = wf_step(n, x, rng);
      ++g;
      if (next < gens.size() && gens[next] == g) {
        out.sum[next] += x;
        out.sum_sq[next] += x * x;
        ++next;
      }
    }
    // Absorbed chains stay put for the remaining recorded generations.
    for (; next < gens.size(); ++next) {
      out.sum[next] += x;
      out.sum_sq[next] += x * x;
    }
    if (x == n) {
      ++out.fixed;
      out.absorption_time += g;
    } else if (x == 0) {
      ++out.lost;
      out.absorption_time += g;
    }
  }
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t mixed = splitmix64(seed ^ splitmix64(trial));
  std::seed_seq seq{static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("binomial parameters out of range");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);
  if (n <= 64 || static_cast<double>(n) * p < 10.0) return binomial_inversion(n, p, rng);
  return binomial_btrs(n, p, rng);
}

std::int64_t wf_step(std::int64_t population, std::int64_t count, Rng& rng) {
  if (population < 1 || count < 0 || count > population) {
    throw InvalidArgument("Wright-Fisher count outside [0, N]");
  }
  if (count == 0 || count == population) return count;
  return sample_binomial(population,
                         static_cast<double>(count) / static_cast<double>(population), rng);
}

std::int64_t ChainConfig::initial_count() const {
  return static_cast<std::int64_t>(std::llround(p * static_cast<double>(population)));
}

void ChainConfig::validate() const {
  if (population < 2) throw InvalidArgument("population size must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("initial frequency must lie in (0, 1)");
  const std::int64_t i0 = initial_count();
  if (i0 <= 0 || i0 >= population) {
    throw InvalidArgument("round(pN) = " + std::to_string(i0) +
                          " is an absorbing state; choose p with 0 < round(pN) < N");
  }
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (max_generations < 1) throw InvalidArgument("max_generations must be at least 1");
}

FixationResult fixation_probability(const ChainConfig& cfg) {
  cfg.validate();
  const auto gens = recorded_generations(cfg.max_generations);

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::min<std::int64_t>(cfg.trials, 256))));
  std::vector<Partial> partials(threads);
  std::vector<std::thread> workers;
  const std::int64_t chunk = (cfg.trials + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::int64_t begin = std::min(cfg.trials, chunk * t);
    const std::int64_t end = std::min(cfg.trials, begin + chunk);
    workers.emplace_back(simulate_range, std::cref(cfg), std::cref(gens), begin, end,
                         std::ref(partials[t]));
  }
  for (auto& w : workers) w.join();

  FixationResult result;
  std::vector<std::int64_t> sum(gens.size(), 0);
  std::vector<std::int64_t> sum_sq(gens.size(), 0);
  std::int64_t absorption_time = 0;
  for (const Partial& part : partials) {
    result.fixed += part.fixed;
    result.lost += part.lost;
    absorption_time += part.absorption_time;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      sum[k] += part.sum[k];
      sum_sq[k] += part.sum_sq[k];
    }
  }
  const double trials = static_cast<double>(cfg.trials);
  result.unresolved = cfg.trials - result.fixed - result.lost;
  result.fixed_fraction = static_cast<double>(result.fixed) / trials;
  result.lost_fraction = static_cast<double>(result.lost) / trials;
  result.unresolved_fraction = static_cast<double>(result.unresolved) / trials;
  const std::int64_t resolved = result.fixed + result.lost;
  result.mean_absorption_time =
      resolved > 0 ? static_cast<double>(absorption_time) / static_cast<double>(resolved) : 0.0;

  for (std::size_t k = 0; k < gens.size(); ++k) {
    const double mean = static_cast<double>(sum[k]) / trials;
    const double second = static_cast<double>(sum_sq[k]) / trials;
    const double var = cfg.trials > 1 ? std::max(0.0, second - mean * mean) * trials / (trials - 1.0)
                                      : 0.0;
    result.martingale.push_back({gens[k], mean, std::sqrt(var)});
  }
  return result;
}

StepMoments one_step_moments(std::int64_t population, std::int64_t count, std::int64_t draws,
                             std::uint64_t seed) {
  if (draws < 2) throw InvalidArgument("need at least two draws");
  if (population < 1 || count < 0 || count > population) {
    throw InvalidArgument("Wright-Fisher count outside [0, N]");
  }
  Rng rng = trial_rng(seed, 0);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t k = 1; k <= draws; ++k) {
    const double x = static_cast<double>(wf_step(population, count, rng));
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  const double n = static_cast<double>(draws);
  const double pi = static_cast<double>(count) / static_cast<double>(population);
  const double nn = static_cast<double>(population);

  StepMoments s;
  s.draws = draws;
  s.mean = mean;
  s.variance = m2 / (n - 1.0);
  s.expected_mean = static_cast<double>(count);
  s.expected_variance = nn * pi * (1.0 - pi);
  const double pq = pi * (1.0 - pi);
  const double mu4 = nn * pq * (1.0 + 3.0 * (nn - 2.0) * pq);
  const double var2 = s.expected_variance * s.expected_variance;
  s.mean_stderr = std::sqrt(s.expected_variance / n);
  s.variance_stderr = std::sqrt(std::max(0.0, mu4 - var2 * (n - 3.0) / (n - 1.0)) / n);
  return s;
}

}  // namespace wfdrift
