#pragma once

#include <cstdint>
#include <vector>

#include "evobandit/bayes.hpp"
#include "evobandit/core.hpp"
#include "evobandit/evolution.hpp"
#include "evobandit/random.hpp"

namespace evobandit {

enum class Algorithm { TSDE, BasicDE };
enum class ScheduleKind { Constant, InverseSqrt, Inverse, Zero };
enum class InitKind { Zeros, Uniform };

struct MutationSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double c = 0.0;

  // mu_t = clamp(c * g(t), 0, 1), g in {1, 1/sqrt(t), 1/t, 0}, t >= 1
  double rate(int t) const;
};

struct ExperimentConfig {
  int d = 10;
  int M = 20;
  int T = 100;
  double mu = 0.8;  // TS-DE directed-mutation rate
  PriorSpec prior;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::TSDE;
  MutationSchedule schedule;           // BasicDE only
  InitKind init = InitKind::Zeros;     // BasicDE only; TS-DE pins all-zeros
  int snapshot_every = 0;              // 0 = never
  bool record_details = false;         // keep per-round posterior means and
                                       // batches for audits (TS-DE)
};

void validate_config(const ExperimentConfig& cfg);

struct RoundRecord {
  int t = 0;
  double mean_fitness = 0.0;      // F_{theta*}(S_t), true fitness
  double inst_regret = 0.0;       // sum_i (F* - f_{theta*}(x_{t,i})), all
                                  // evaluated individuals this round
  double cum_regret = 0.0;
  long long n_evals = 0;          // cumulative noisy_evaluate calls
  double min_favored_ratio = 0.0; // min_i p_i^{theta~_t}(S'_{t-1}); NaN for
                                  // BasicDE (no Thompson draw exists)
};

struct Snapshot {
  int t = 0;  // 0 = initial population
  Population members;
};

struct TrialTrajectory {
  std::vector<RoundRecord> rounds;
  std::vector<Snapshot> snapshots;
  // populated only when record_details is set (TS-DE):
  std::vector<Eigen::VectorXd> posterior_means;         // after round t ingest
  std::vector<std::vector<Observation>> round_batches;  // batch of round t
};

// Thompson-sampling DE loop: S_0 all zeros; per round: Thompson draw from
// the posterior, directed mutation, crossover-selection against the drawn
// utility, noisy evaluation of every member against theta*, batch ingest.
TrialTrajectory run_tsde(const ExperimentConfig& cfg,
                         const UtilityParams& theta_star, RandomStream& rng);

// Model-free baseline: uniform mutation at the scheduled rate on all sites,
// then a selection loop structurally identical to crossover_selection but
// with acceptance decided by noisy measurements: accept z iff
// u(z) >= (u(x)+u(y))/2, parent measurements cached once per member per
// round, one fresh measurement per candidate child. Every measurement is
// regret-charged and counted in n_evals.
TrialTrajectory run_basic_de(const ExperimentConfig& cfg,
                             const UtilityParams& theta_star,
                             RandomStream& rng);

struct RegretSummary {
  std::vector<double> mean_per_member;    // per round: mean of cum_regret/M
  std::vector<double> stderr_per_member;  // per round: stderr across trials
  std::vector<TrialTrajectory> trials;
};

// Trial k runs on the stream derive(master_seed, k): theta* ~ prior first,
// then the configured algorithm on the same stream. n_trials = 1 reproduces
// a single run_tsde/run_basic_de exactly under that derived stream. jobs > 1
// distributes trials across threads; results are identical to jobs = 1.
RegretSummary estimate_bayes_regret(const ExperimentConfig& cfg, int n_trials,
                                    std::uint64_t master_seed, int jobs = 1);

}  // namespace evobandit
