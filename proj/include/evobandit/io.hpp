#pragma once

#include <string>
#include <utility>
#include <vector>

#include "evobandit/config.hpp"
#include "evobandit/drivers.hpp"

namespace evobandit {

// Shortest round-trippable decimal for CSV cells ("%.12g"; "inf"/"nan"
// verbatim for non-finite values).
std::string format_double(double v);

// regret.csv: round,M,mean_cum_regret_per_member,stderr — one block per
// swept population size.
void write_regret_csv(const std::string& path,
                      const std::vector<std::pair<int, const RegretSummary*>>&
                          summaries_by_m);

// fitness.csv: round,trial,mean_fitness.
void write_fitness_csv(const std::string& path, const RegretSummary& summary);

// snapshots.csv: round,member_index,bit_0..bit_{d-1}.
void write_snapshots_csv(const std::string& path, const TrialTrajectory& traj,
                         int d);

struct ComparePoint {
  int round = 0;
  double mean_evals = 0.0;
  double mean_fitness = 0.0;
};

// fitness-vs-evaluations.csv: arm,round,evaluations,mean_fitness.
void write_compare_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<ComparePoint>>>&
        arms);

// compare_summary.csv: arm,median_evals_to_90pct,n_reached,n_trials.
struct CompareSummaryRow {
  std::string arm;
  double median_evals_to_90pct = 0.0;  // +inf when most trials never reach
  int n_reached = 0;
  int n_trials = 0;
};
void write_compare_summary_csv(const std::string& path,
                               const std::vector<CompareSummaryRow>& rows);

// manifest.json next to every CSV batch: resolved config, tool version,
// master seed, trial count, timestamp, and the emitted file list.
void write_manifest(const std::string& path, const std::string& command,
                    const RunSpec& spec, std::uint64_t master_seed,
                    const std::vector<std::string>& outputs);

}  // namespace evobandit
