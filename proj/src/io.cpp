#include "evobandit/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "evobandit/version.hpp"

namespace evobandit {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_regret_csv(
    const std::string& path,
    const std::vector<std::pair<int, const RegretSummary*>>& summaries_by_m) {
  auto out = open_out(path);
  out << "round,M,mean_cum_regret_per_member,stderr\n";
  for (const auto& [m, summary] : summaries_by_m) {
    for (std::size_t t = 0; t < summary->mean_per_member.size(); ++t) {
      out << (t + 1) << ',' << m << ','
          << format_double(summary->mean_per_member[t]) << ','
          << format_double(summary->stderr_per_member[t]) << '\n';
    }
  }
}

void write_fitness_csv(const std::string& path, const RegretSummary& summary) {
  auto out = open_out(path);
  out << "round,trial,mean_fitness\n";
  for (std::size_t k = 0; k < summary.trials.size(); ++k)
    for (const auto& r : summary.trials[k].rounds)
      out << r.t << ',' << k << ',' << format_double(r.mean_fitness) << '\n';
}

void write_snapshots_csv(const std::string& path, const TrialTrajectory& traj,
                         int d) {
  auto out = open_out(path);
  out << "round,member_index";
  for (int i = 0; i < d; ++i) out << ",bit_" << i;
  out << '\n';
  for (const auto& snap : traj.snapshots) {
    for (std::size_t m = 0; m < snap.members.size(); ++m) {
      out << snap.t << ',' << m;
      for (int i = 0; i < d; ++i)
        out << ',' << int(snap.members[m][static_cast<std::size_t>(i)]);
      out << '\n';
    }
  }
}

void write_compare_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<ComparePoint>>>&
        arms) {
  auto out = open_out(path);
  out << "arm,round,evaluations,mean_fitness\n";
  for (const auto& [label, points] : arms)
    for (const auto& p : points)
      out << label << ',' << p.round << ',' << format_double(p.mean_evals)
          << ',' << format_double(p.mean_fitness) << '\n';
}

void write_compare_summary_csv(const std::string& path,
                               const std::vector<CompareSummaryRow>& rows) {
  auto out = open_out(path);
  out << "arm,median_evals_to_90pct,n_reached,n_trials\n";
  for (const auto& r : rows)
    out << r.arm << ',' << format_double(r.median_evals_to_90pct) << ','
        << r.n_reached << ',' << r.n_trials << '\n';
}

void write_manifest(const std::string& path, const std::string& command,
                    const RunSpec& spec, std::uint64_t master_seed,
                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["tool"] = "evobandit";
  j["version"] = kVersion;
  j["command"] = command;
  j["master_seed"] = master_seed;
  j["n_trials"] = spec.n_trials;
  j["timestamp"] = utc_now();

  nlohmann::json cfg;
  cfg["d"] = spec.base.d;
  cfg["M"] = spec.m_values;
  cfg["T"] = spec.base.T;
  cfg["mu"] = spec.base.mu;
  cfg["lambda"] = spec.base.prior.lambda;
  cfg["sigma"] = spec.base.prior.sigma;
  cfg["algorithm"] = algorithm_name(spec.base.algorithm);
  cfg["schedule"] = schedule_name(spec.base.schedule.kind);
  cfg["c"] = spec.base.schedule.c;
  cfg["init"] = init_name(spec.base.init);
  cfg["snapshot_every"] = spec.base.snapshot_every;
  j["config"] = cfg;

  if (!spec.arms.empty()) {
    nlohmann::json arms = nlohmann::json::array();
    for (const auto& a : spec.arms) arms.push_back(a.label);
    j["arms"] = arms;
  }
  j["outputs"] = outputs;

  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace evobandit
