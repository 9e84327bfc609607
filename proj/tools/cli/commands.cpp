#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "cli/format.hpp"
#include "wfdrift/diagnostics.hpp"
#include "wfdrift/error.hpp"
#include "wfdrift/integrator.hpp"
#include "wfdrift/schemes.hpp"
#include "wfdrift/viscosity.hpp"
#include "wfdrift/wright_fisher.hpp"

namespace wfdrift::cli {

namespace {

namespace fs = std::filesystem;

/// I/O failures are reported separately from usage and numerical errors.
class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered key=value lines.
class Summary {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }

  std::string str() const {
    std::ostringstream os;
    for (const auto& [k, v] : lines_) os << k << '=' << v << '\n';
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoFailure("cannot create output directory " + dir.string());
  }
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
}

void write_text(const fs::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw IoFailure("failed writing " + path.string());
}

void csv(const fs::path& path, const std::vector<std::string>& header,
         const std::vector<std::vector<double>>& rows) {
  ensure_parent(path);
  try {
    write_csv(path, header, rows);
  } catch (const std::runtime_error& e) {
    throw IoFailure(e.what());
  }
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string scheme = "central-whole";
  int cells = 1000;
  double tau = 1e-3;
  double t_end = 1.0;
  double p = 0.4;
  double sigma = 0.01;
  std::vector<double> snapshots;
  std::string out_dir = ".";
  bool renormalize = false;
  std::optional<double> steady_tol;
  int diagnostics_stride = 1;
  long long seed_unused = 0;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw UsageFailure("unknown scheme '" + o.scheme + "'");

  RunConfig cfg;
  cfg.scheme = *scheme;
  cfg.cells = o.cells;
  cfg.tau = o.tau;
  cfg.t_end = o.t_end;
  cfg.snapshot_times = o.snapshots;
  cfg.steady_tol = o.steady_tol;
  cfg.ic = InitialCondition{o.p, o.sigma, o.renormalize};
  cfg.diagnostics_stride = o.diagnostics_stride;
  cfg.validate();

  const fs::path dir(o.out_dir);
  ensure_dir(dir);

  const auto start = std::chrono::steady_clock::now();
  const Grid grid(cfg.cells);
  const State initial = gaussian_initial(grid, cfg.ic);
  const double p0 = discrete_probability(grid, initial.f);
  const double e0 = discrete_expectation(grid, initial.f);
  const Trajectory traj = run(cfg, grid, initial);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto x = grid.nodes();
  std::string snapshot_list;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    std::vector<std::vector<double>> rows;
    rows.reserve(s.f.size());
    for (std::size_t i = 0; i < s.f.size(); ++i) rows.push_back({x[i], s.f[i]});
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", k);
    csv(dir / name, {"x", "f"}, rows);
    snapshot_list += (k ? "," : "") + format_double(s.t);
  }

  std::vector<std::vector<double>> diag_rows;
  diag_rows.reserve(traj.diagnostics.size());
  for (const auto& r : traj.diagnostics.records()) {
    diag_rows.push_back({r.t, r.probability, r.expectation, r.interior_mass, r.v_norm, r.f0, r.fM});
  }
  csv(dir / "diagnostics.csv", {"t", "P", "E", "interior_mass", "v_norm", "f0", "fM"}, diag_rows);

  const SteadyStateReport rep = steady_report(grid, traj.terminal, p0, e0);
  Summary sum;
  sum.add("scheme", std::string(to_string(cfg.scheme)));
  sum.add("M", static_cast<long long>(cfg.cells));
  sum.add("tau", cfg.tau);
  sum.add("t_end", cfg.t_end);
  sum.add("p", o.p);
  sum.add("sigma", o.sigma);
  sum.add("renormalize", std::string(o.renormalize ? "true" : "false"));
  sum.add("P_0", p0);
  sum.add("E_0", e0);
  sum.add("P_final", traj.diagnostics.back().probability);
  sum.add("E_final", traj.diagnostics.back().expectation);
  sum.add("t_final", traj.terminal.t);
  sum.add("f0", traj.terminal.f.front());
  sum.add("fM", traj.terminal.f.back());
  sum.add("w0", rep.w0);
  sum.add("w1", rep.w1);
  sum.add("w0_predicted", rep.predicted_w0);
  sum.add("w1_predicted", rep.predicted_w1);
  sum.add("w0_deviation", rep.w0_deviation);
  sum.add("w1_deviation", rep.w1_deviation);
  sum.add("interior_mass", rep.interior_mass);
  sum.add("max_probability_drift", traj.diagnostics.max_probability_drift());
  sum.add("max_expectation_drift", traj.diagnostics.max_expectation_drift());
  sum.add("steps", static_cast<long long>(traj.steps_taken));
  sum.add("snapshot_count", static_cast<long long>(traj.snapshots.size()));
  sum.add("snapshot_times", snapshot_list);
  sum.add("wall_time_s", wall);

  const std::string text = sum.str();
  write_text(dir / "summary.txt", text);
  out << text;
  return kSuccess;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOptions {
  int cells = 8;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string out;
};

constexpr double kIdentityLimit = 1e-12;

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  if (o.samples < 1) throw UsageFailure("--samples must be at least 1");
  const Grid grid(o.cells);
  Rng rng = trial_rng(o.seed, 0);

  double split_abs = 0.0;
  double split_scaled = 0.0;
  double upwind_abs = 0.0;
  double upwind_scaled = 0.0;
  std::vector<double> f(grid.node_count());
  for (int s = 0; s < o.samples; ++s) {
    for (double& v : f) v = uniform01(rng);
    const auto whole = spatial_residual(SchemeKind::CentralWhole, grid, f);
    const auto split = spatial_residual(SchemeKind::CentralSplit, grid, f);
    const auto upwind = spatial_residual(SchemeKind::Upwind, grid, f);
    const auto lambda = lambda_residual(grid, f);
    const auto lambda_tilde = lambda_tilde_residual(grid, f);
    for (std::size_t i = 0; i < whole.size(); ++i) {
      const double d1 = std::abs(split[i] - whole[i] - lambda[i]);
      const double d2 = std::abs(upwind[i] - split[i] - lambda_tilde[i]);
      split_abs = std::max(split_abs, d1);
      upwind_abs = std::max(upwind_abs, d2);
      split_scaled = std::max(
          split_scaled, d1 / std::max({std::abs(split[i]), std::abs(whole[i]), 1.0}));
      upwind_scaled = std::max(
          upwind_scaled, d2 / std::max({std::abs(upwind[i]), std::abs(split[i]), 1.0}));
    }
  }

  std::ostringstream os;
  os << "identity,cells,samples,max_abs_deviation,max_scaled_deviation\n";
  os << "split_minus_whole_minus_lambda," << o.cells << ',' << o.samples << ','
     << format_double(split_abs) << ',' << format_double(split_scaled) << '\n';
  os << "upwind_minus_split_minus_lambda_tilde," << o.cells << ',' << o.samples << ','
     << format_double(upwind_abs) << ',' << format_double(upwind_scaled) << '\n';
  if (!o.out.empty()) write_text(o.out, os.str());
  out << os.str();
  return (split_abs > kIdentityLimit || upwind_abs > kIdentityLimit) ? kNumerical : kSuccess;
}

// ---------------------------------------------------------------------------
// viscosity

struct ViscosityOptions {
  std::vector<double> epsilons{0.5, 0.01};
  int profile_points = 201;
  std::string test_function = "bump0";
  std::string out_dir = ".";
};

int cmd_viscosity(const ViscosityOptions& o, std::ostream& out) {
  const auto kind = parse_test_function(o.test_function);
  if (!kind) throw UsageFailure("unknown test function '" + o.test_function + "'");
  if (o.profile_points < 2) throw UsageFailure("--profile-points must be at least 2");
  if (o.epsilons.empty()) throw UsageFailure("--epsilons must not be empty");
  const fs::path dir(o.out_dir);
  ensure_dir(dir);

  const TestFunction phi = make_test_function(*kind);
  std::vector<std::vector<double>> profiles;
  std::vector<std::vector<double>> pairings;
  for (double eps : o.epsilons) {
    const ViscosityProfile profile(eps);
    for (int k = 0; k < o.profile_points; ++k) {
      const double x = static_cast<double>(k) / (o.profile_points - 1);
      profiles.push_back({eps, x, profile(x)});
    }
    pairings.push_back({eps, profile.normalization(), pair_with_test_function(profile, phi)});
  }
  csv(dir / "profiles.csv", {"epsilon", "x", "f"}, profiles);
  csv(dir / "pairing.csv", {"epsilon", "b_eps", "pairing"}, pairings);

  out << "test_function=" << to_string(*kind) << '\n';
  out << "epsilon,b_eps,pairing\n";
  for (const auto& row : pairings) {
    out << format_double(row[0]) << ',' << format_double(row[1]) << ',' << format_double(row[2])
        << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
  long long pop_size = 100;
  double p = 0.4;
  long long trials = 100000;
  std::uint64_t seed = 1;
  long long max_generations = 100000;
  long long moment_draws = 1000000;
  unsigned threads = 0;
  std::string out;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  ChainConfig cfg;
  cfg.population = o.pop_size;
  cfg.p = o.p;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.max_generations = o.max_generations;
  cfg.threads = o.threads;
  cfg.validate();
  if (o.moment_draws < 2) throw UsageFailure("--moment-draws must be at least 2");

  const FixationResult fix = fixation_probability(cfg);
  const StepMoments mom = one_step_moments(cfg.population, cfg.initial_count(), o.moment_draws,
                                           cfg.seed);
  const double i0 = static_cast<double>(cfg.initial_count());
  const double freq = i0 / static_cast<double>(cfg.population);
  const double trials = static_cast<double>(cfg.trials);

  double worst_z = 0.0;
  for (const auto& g : fix.martingale) {
    const double se = g.stddev / std::sqrt(trials);
    if (se > 0.0) worst_z = std::max(worst_z, std::abs(g.mean - i0) / se);
  }

  Summary sum;
  sum.add("pop_size", static_cast<long long>(cfg.population));
  sum.add("initial_count", static_cast<long long>(cfg.initial_count()));
  sum.add("initial_frequency", freq);
  sum.add("trials", static_cast<long long>(cfg.trials));
  sum.add("seed", static_cast<long long>(cfg.seed));
  sum.add("max_generations", static_cast<long long>(cfg.max_generations));
  sum.add("fixed", static_cast<long long>(fix.fixed));
  sum.add("lost", static_cast<long long>(fix.lost));
  sum.add("unresolved", static_cast<long long>(fix.unresolved));
  sum.add("fixed_fraction", fix.fixed_fraction);
  sum.add("lost_fraction", fix.lost_fraction);
  sum.add("unresolved_fraction", fix.unresolved_fraction);
  sum.add("fixed_stderr", std::sqrt(freq * (1.0 - freq) / trials));
  sum.add("mean_absorption_time", fix.mean_absorption_time);
  sum.add("martingale_max_z", worst_z);
  sum.add("moment_draws", static_cast<long long>(mom.draws));
  sum.add("moment_mean", mom.mean);
  sum.add("moment_expected_mean", mom.expected_mean);
  sum.add("moment_mean_z", (mom.mean - mom.expected_mean) / mom.mean_stderr);
  sum.add("moment_variance", mom.variance);
  sum.add("moment_expected_variance", mom.expected_variance);
  sum.add("moment_variance_z", (mom.variance - mom.expected_variance) / mom.variance_stderr);

  const std::string text = sum.str();
  if (!o.out.empty()) write_text(o.out, text);
  out << text;
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-volume solvers for the Wright-Fisher genetic drift equation"};
  app.name("wfdrift");
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Run one scheme and write snapshots, diagnostics, summary");
  solve->add_option("--scheme", solve_opts.scheme, "upwind | central-split | central-whole")
      ->check(CLI::IsMember({"upwind", "central-split", "central-whole"}));
  solve->add_option("--cells", solve_opts.cells, "Number of cells M (h = 1/M)");
  solve->add_option("--tau", solve_opts.tau, "Time step");
  solve->add_option("--t-end", solve_opts.t_end, "Final time");
  solve->add_option("--p", solve_opts.p, "Mean of the initial Gaussian");
  solve->add_option("--sigma", solve_opts.sigma, "Standard deviation of the initial Gaussian");
  solve->add_option("--snapshots", solve_opts.snapshots, "Comma-separated snapshot times")
      ->delimiter(',');
  solve->add_option("--out-dir", solve_opts.out_dir, "Output directory");
  solve->add_flag("--renormalize", solve_opts.renormalize,
                  "Scale the initial data to unit discrete probability");
  solve->add_option("--steady-tol", solve_opts.steady_tol,
                    "Stop once max|f^{n+1}-f^n|/tau drops below this value");
  solve->add_option("--diagnostics-stride", solve_opts.diagnostics_stride,
                    "Record diagnostics every N steps");
  solve->add_option("--seed-unused", solve_opts.seed_unused, "Accepted and ignored");

  CompareOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "Check the viscosity decomposition of the schemes");
  compare->add_option("--cells", compare_opts.cells, "Number of cells M");
  compare->add_option("--samples", compare_opts.samples, "Number of random vectors");
  compare->add_option("--seed", compare_opts.seed, "Random seed");
  compare->add_option("--out", compare_opts.out, "Also write the CSV to this file");

  ViscosityOptions visc_opts;
  auto* viscosity = app.add_subcommand("viscosity", "Vanishing-viscosity steady profiles");
  viscosity->add_option("--epsilons", visc_opts.epsilons, "Comma-separated viscosities")
      ->delimiter(',');
  viscosity->add_option("--profile-points", visc_opts.profile_points, "Points per profile");
  viscosity->add_option("--test-function", visc_opts.test_function, "bump0 | bump1 | bumpmid | one")
      ->check(CLI::IsMember({"bump0", "bump1", "bumpmid", "one"}));
  viscosity->add_option("--out-dir", visc_opts.out_dir, "Output directory");

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Monte Carlo Wright-Fisher fixation oracle");
  oracle->add_option("--pop-size", oracle_opts.pop_size, "Population size N");
  oracle->add_option("--p", oracle_opts.p, "Initial allele frequency");
  oracle->add_option("--trials", oracle_opts.trials, "Number of independent chains");
  oracle->add_option("--seed", oracle_opts.seed, "Random seed");
  oracle->add_option("--max-generations", oracle_opts.max_generations, "Generation cap per chain");
  oracle->add_option("--moment-draws", oracle_opts.moment_draws, "One-step draws for moment check");
  oracle->add_option("--threads", oracle_opts.threads, "Worker threads (0 = all cores)");
  oracle->add_option("--out", oracle_opts.out, "Also write the summary to this file");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("wfdrift");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_opts, out);
    if (*compare) return cmd_compare(compare_opts, out);
    if (*viscosity) return cmd_viscosity(visc_opts, out);
    if (*oracle) return cmd_oracle(oracle_opts, out);
  } catch (const UsageFailure& e) {
    err << "wfdrift: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "wfdrift: " << e.what() << '\n';
    return kUsage;
  } catch (const IoFailure& e) {
    err << "wfdrift: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "wfdrift: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace wfdrift::cli
