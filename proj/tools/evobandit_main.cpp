#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "evobandit/config.hpp"
#include "evobandit/io.hpp"
#include "evobandit/verify.hpp"
#include "evobandit/version.hpp"

namespace {

using namespace evobandit;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

struct CliOverrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int jobs = 0;  // 0 = hardware default
  bool single = false;
  std::string algorithm;
  std::string schedule;
  std::optional<double> c;
  std::string out_dir;
};

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// precedence: --seed > config file > EVOBANDIT_SEED > 0
std::uint64_t resolve_seed(const CliOverrides& cli, const RunSpec& spec) {
  if (cli.seed) return *cli.seed;
  if (spec.seed_in_file) return spec.base.seed;
  if (const char* env = std::getenv("EVOBANDIT_SEED")) {
    try {
      return parse_config_text("seed = " + std::string(env), "EVOBANDIT_SEED")
          .base.seed;
    } catch (const ConfigError&) {
      throw ConfigError("EVOBANDIT_SEED: not an unsigned integer: '" +
                        std::string(env) + "'");
    }
  }
  return 0;
}

RunSpec load_spec(const CliOverrides& cli) {
  RunSpec spec;
  if (!cli.config_path.empty()) spec = parse_config_file(cli.config_path);
  if (!cli.algorithm.empty()) {
    if (cli.algorithm == "tsde")
      spec.base.algorithm = Algorithm::TSDE;
    else if (cli.algorithm == "basic-de")
      spec.base.algorithm = Algorithm::BasicDE;
    else
      throw ConfigError("--algorithm: want tsde|basic-de, got '" +
                        cli.algorithm + "'");
  }
  if (!cli.schedule.empty()) {
    if (cli.schedule == "constant")
      spec.base.schedule.kind = ScheduleKind::Constant;
    else if (cli.schedule == "inverse-sqrt")
      spec.base.schedule.kind = ScheduleKind::InverseSqrt;
    else if (cli.schedule == "inverse")
      spec.base.schedule.kind = ScheduleKind::Inverse;
    else if (cli.schedule == "zero")
      spec.base.schedule.kind = ScheduleKind::Zero;
    else
      throw ConfigError(
          "--schedule: want constant|inverse-sqrt|inverse|zero, got '" +
          cli.schedule + "'");
  }
  if (cli.c) spec.base.schedule.c = *cli.c;
  if (!cli.out_dir.empty()) spec.output_dir = cli.out_dir;
  if (cli.single) spec.n_trials = 1;
  spec.base.seed = resolve_seed(cli, spec);
  try {
    validate_config(spec.base);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

std::string out_path(const RunSpec& spec, const std::string& name) {
  return (std::filesystem::path(spec.output_dir) / name).string();
}

int cmd_run(const CliOverrides& cli) {
  const RunSpec spec = load_spec(cli);
  const int jobs = resolve_jobs(cli.jobs);
  std::filesystem::create_directories(spec.output_dir);

  std::vector<std::string> outputs;
  std::vector<RegretSummary> summaries;
  summaries.reserve(spec.m_values.size());
  for (int m : spec.m_values) {
    ExperimentConfig cfg = spec.base;
    cfg.M = m;
    summaries.push_back(
        estimate_bayes_regret(cfg, spec.n_trials, spec.base.seed, jobs));
    std::cout << "M=" << m << ": final per-member cumulative regret "
              << format_double(summaries.back().mean_per_member.back())
              << " +- "
              << format_double(summaries.back().stderr_per_member.back())
              << " over " << spec.n_trials << " trial(s)\n";
  }

  std::vector<std::pair<int, const RegretSummary*>> by_m;
  for (std::size_t i = 0; i < summaries.size(); ++i)
    by_m.emplace_back(spec.m_values[i], &summaries[i]);
  write_regret_csv(out_path(spec, "regret.csv"), by_m);
  outputs.push_back("regret.csv");

  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const std::string name =
        spec.m_values.size() == 1
            ? "fitness.csv"
            : "fitness_M" + std::to_string(spec.m_values[i]) + ".csv";
    write_fitness_csv(out_path(spec, name), summaries[i]);
    outputs.push_back(name);
  }

  if (spec.base.snapshot_every > 0) {
    // snapshots are per-population; emit trial 0 of the first swept M
    write_snapshots_csv(out_path(spec, "snapshots.csv"),
                        summaries.front().trials.front(), spec.base.d);
    outputs.push_back("snapshots.csv");
  }

  write_manifest(out_path(spec, "manifest.json"), "run", spec, spec.base.seed,
                 outputs);
  std::cout << "wrote " << spec.output_dir << "/{";
  for (std::size_t i = 0; i < outputs.size(); ++i)
    std::cout << (i ? "," : "") << outputs[i];
  std::cout << ",manifest.json}\n";
  return kExitOk;
}

int cmd_compare(const CliOverrides& cli) {
  const RunSpec spec = load_spec(cli);
  if (spec.arms.empty())
    throw ConfigError("compare needs an 'arms' list in the config file");
  bool has_tsde = false, has_basic = false;
  for (const auto& arm : spec.arms) {
    (arm.algorithm == Algorithm::TSDE ? has_tsde : has_basic) = true;
  }
  if (!has_tsde || !has_basic)
    throw ConfigError(
        "compare needs a tsde arm plus at least one basic-de arm");

  const int jobs = resolve_jobs(cli.jobs);
  std::filesystem::create_directories(spec.output_dir);

  // every arm's trial k faces the same theta*: the per-trial stream is
  // derived identically and theta* is drawn from it first
  std::vector<double> optima(static_cast<std::size_t>(spec.n_trials));
  {
    RandomStream master(spec.base.seed);
    for (int k = 0; k < spec.n_trials; ++k) {
      RandomStream trial_rng = master.derive(static_cast<std::uint64_t>(k));
      optima[static_cast<std::size_t>(k)] = optimum_value(
          sample_prior_theta(spec.base.d, spec.base.prior, trial_rng));
    }
  }

  std::vector<std::pair<std::string, std::vector<ComparePoint>>> curves;
  std::vector<CompareSummaryRow> rows;
  for (const auto& arm : spec.arms) {
    ExperimentConfig cfg = spec.base;
    cfg.algorithm = arm.algorithm;
    cfg.schedule = arm.schedule;
    cfg.init = arm.algorithm == Algorithm::TSDE ? InitKind::Zeros : arm.init;
    const RegretSummary summary =
        estimate_bayes_regret(cfg, spec.n_trials, spec.base.seed, jobs);

    std::vector<ComparePoint> points(static_cast<std::size_t>(cfg.T));
    for (int t = 0; t < cfg.T; ++t) {
      double evals = 0.0, fit = 0.0;
      for (const auto& trial : summary.trials) {
        evals += static_cast<double>(
            trial.rounds[static_cast<std::size_t>(t)].n_evals);
        fit += trial.rounds[static_cast<std::size_t>(t)].mean_fitness;
      }
      points[static_cast<std::size_t>(t)] = {
          t + 1, evals / spec.n_trials, fit / spec.n_trials};
    }
    curves.emplace_back(arm.label, std::move(points));

    std::vector<double> evals90;
    int reached = 0;
    for (int k = 0; k < spec.n_trials; ++k) {
      const auto& traj = summary.trials[static_cast<std::size_t>(k)];
      const double threshold = 0.9 * optima[static_cast<std::size_t>(k)];
      double e = std::numeric_limits<double>::infinity();
      for (const auto& r : traj.rounds)
        if (r.mean_fitness >= threshold) {
          e = static_cast<double>(r.n_evals);
          break;
        }
      if (std::isfinite(e)) ++reached;
      evals90.push_back(e);
    }
    std::sort(evals90.begin(), evals90.end());
    const std::size_t n = evals90.size();
    const double median = n % 2 == 1
                              ? evals90[n / 2]
                              : 0.5 * (evals90[n / 2 - 1] + evals90[n / 2]);
    rows.push_back({arm.label, median, reached, spec.n_trials});
  }

  std::cout << "evaluations to reach 90% of the optimum (median over "
            << spec.n_trials << " matched trials):\n";
  for (const auto& r : rows)
    std::cout << "  " << r.arm << ": " << format_double(r.median_evals_to_90pct)
              << "  (reached in " << r.n_reached << "/" << r.n_trials
              << " trials)\n";

  write_compare_csv(out_path(spec, "fitness-vs-evaluations.csv"), curves);
  write_compare_summary_csv(out_path(spec, "compare_summary.csv"), rows);
  write_manifest(out_path(spec, "manifest.json"), "compare", spec,
                 spec.base.seed,
                 {"fitness-vs-evaluations.csv", "compare_summary.csv"});
  std::cout << "wrote " << spec.output_dir
            << "/{fitness-vs-evaluations.csv,compare_summary.csv,"
               "manifest.json}\n";
  return kExitOk;
}

int cmd_verify(const std::string& level) {
  const auto scale =
      level == "full" ? verify::full_scale() : verify::fast_scale();
  std::cout << "verify level: " << level << "\n";
  const auto results = verify::run_all(scale);
  verify::print_results(results, std::cout);
  return verify::all_hard_passed(results) ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson-sampling guided directed evolution simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CliOverrides cli;
  std::string level = "fast";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "config file path");
    sub->add_option("--seed", cli.seed, "master seed (64-bit)");
    sub->add_option("--jobs", cli.jobs, "worker threads (default: hardware)");
    sub->add_option("--out", cli.out_dir, "output directory");
  };

  CLI::App* run = app.add_subcommand(
      "run", "simulate and write regret/fitness/snapshot CSVs");
  add_common(run);
  run->add_flag("--single", cli.single, "run exactly one trial");
  run->add_option("--algorithm", cli.algorithm, "tsde|basic-de");
  run->add_option("--schedule", cli.schedule,
                  "constant|inverse-sqrt|inverse|zero (basic-de)");
  run->add_option("--c", cli.c, "mutation schedule scale");

  CLI::App* compare = app.add_subcommand(
      "compare", "run the arms listed in the config against matched seeds");
  add_common(compare);
  compare->get_option("--config")->required();

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the invariant and oracle suites");
  verify_cmd->add_option("level", level, "fast|full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(cli);
    if (compare->parsed()) return cmd_compare(cli);
    return cmd_verify(level);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
