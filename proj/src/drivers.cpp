#include "evobandit/drivers.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace evobandit {

double MutationSchedule::rate(int t) const {
  if (t < 1) throw std::invalid_argument("schedule rate: t must be >= 1");
  double g = 0.0;
  switch (kind) {
    case ScheduleKind::Constant: g = 1.0; break;
    case ScheduleKind::InverseSqrt: g = 1.0 / std::sqrt(static_cast<double>(t)); break;
    case ScheduleKind::Inverse: g = 1.0 / static_cast<double>(t); break;
    case ScheduleKind::Zero: g = 0.0; break;
  }
  const double mu = c * g;
  return mu < 0.0 ? 0.0 : (mu > 1.0 ? 1.0 : mu);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (cfg.M < 1) throw std::invalid_argument("config: M must be >= 1");
  if (cfg.T < 1) throw std::invalid_argument("config: T must be >= 1");
  if (!(cfg.mu > 0.0) || cfg.mu > 1.0 || !std::isfinite(cfg.mu))
    throw std::invalid_argument("config: mu must lie in (0, 1]");
  validate_prior(cfg.prior);
  if (cfg.snapshot_every < 0)
    throw std::invalid_argument("config: snapshot_every must be >= 0");
  if (cfg.schedule.c < 0.0 || !std::isfinite(cfg.schedule.c))
    throw std::invalid_argument("config: schedule c must be >= 0");
  if (cfg.algorithm == Algorithm::TSDE && cfg.init != InitKind::Zeros)
    throw std::invalid_argument(
        "config: the TS-DE loop always starts from the all-zeros population; "
        "init applies to basic-de only");
}

namespace {

Population zeros_population(int m, int d) {
  return Population(static_cast<std::size_t>(m),
                    MotifVector(static_cast<std::size_t>(d), 0));
}

Population uniform_population(int m, int d, RandomStream& rng) {
  Population s(static_cast<std::size_t>(m),
               MotifVector(static_cast<std::size_t>(d)));
  for (auto& x : s)
    for (auto& bit : x) bit = static_cast<std::uint8_t>(rng.coin());
  return s;
}

void maybe_snapshot(TrialTrajectory& traj, const ExperimentConfig& cfg, int t,
                    const Population& s) {
  if (cfg.snapshot_every <= 0) return;
  if (t == 0 || t % cfg.snapshot_every == 0) traj.snapshots.push_back({t, s});
}

}  // namespace

TrialTrajectory run_tsde(const ExperimentConfig& cfg,
                         const UtilityParams& theta_star, RandomStream& rng) {
  validate_config(cfg);
  if (static_cast<int>(theta_star.size()) != cfg.d)
    throw std::invalid_argument("run_tsde: theta_star dimension mismatch");

  const double f_star = optimum_value(theta_star);
  Population s = zeros_population(cfg.M, cfg.d);
  PosteriorState post(cfg.d, cfg.prior);

  TrialTrajectory traj;
  traj.rounds.reserve(static_cast<std::size_t>(cfg.T));
  maybe_snapshot(traj, cfg, 0, s);

  double cum_regret = 0.0;
  for (int t = 1; t <= cfg.T; ++t) {
    const UtilityParams theta_t = post.sample(rng);
    const Population mutated = directed_mutation(theta_t, s, cfg.mu, rng);
    const double min_fav = favored_ratio(theta_t, mutated).minCoeff();
    s = crossover_selection(theta_t, mutated, rng);

    std::vector<Observation> batch;
    batch.reserve(s.size());
    double inst_regret = 0.0;
    double fitness_sum = 0.0;
    for (const auto& x : s) {
      const double u = noisy_evaluate(theta_star, x, cfg.prior.sigma, rng);
      batch.push_back({x, u});
      const double f = fitness(theta_star, x);
      fitness_sum += f;
      inst_regret += f_star - f;
    }
    post.ingest(batch);

    cum_regret += inst_regret;
    traj.rounds.push_back({t, fitness_sum / cfg.M, inst_regret, cum_regret,
                           static_cast<long long>(cfg.M) * t, min_fav});
    maybe_snapshot(traj, cfg, t, s);
    if (cfg.record_details) {
      traj.posterior_means.push_back(post.mean());
      traj.round_batches.push_back(std::move(batch));
    }
  }
  return traj;
}

TrialTrajectory run_basic_de(const ExperimentConfig& cfg,
                             const UtilityParams& theta_star,
                             RandomStream& rng) {
  validate_config(cfg);
  if (static_cast<int>(theta_star.size()) != cfg.d)
    throw std::invalid_argument("run_basic_de: theta_star dimension mismatch");

  const double f_star = optimum_value(theta_star);
  Population s = cfg.init == InitKind::Uniform
                     ? uniform_population(cfg.M, cfg.d, rng)
                     : zeros_population(cfg.M, cfg.d);
  const MutationTargets everything = all_sites(cfg.d);
  const std::size_t m = s.size();
  const std::size_t budget = 1000 * m;

  TrialTrajectory traj;
  traj.rounds.reserve(static_cast<std::size_t>(cfg.T));
  maybe_snapshot(traj, cfg, 0, s);

  double cum_regret = 0.0;
  long long n_evals = 0;
  for (int t = 1; t <= cfg.T; ++t) {
    const double mu_t = cfg.schedule.rate(t);
    if (mu_t > 0.0) {
      Population mutated;
      mutated.reserve(m);
      for (const auto& x : s)
        mutated.push_back(mutate(x, everything, mu_t, rng));
      s = std::move(mutated);
    }

    double inst_regret = 0.0;
    auto charge = [&](const MotifVector& x) {
      const double u = noisy_evaluate(theta_star, x, cfg.prior.sigma, rng);
      inst_regret += f_star - fitness(theta_star, x);
      ++n_evals;
      return u;
    };

    // one cached measurement per parent per round
    std::vector<double> u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = charge(s[i]);

    Population next;
    next.reserve(m);
    std::size_t attempts = 0;
    while (next.size() < m) {
      if (++attempts > budget)
        throw std::runtime_error(
            "run_basic_de: selection attempt budget exhausted");
      const std::size_t i = rng.uniform_index(m);
      const std::size_t j = rng.uniform_index(m);
      MotifVector z = recombine(s[i], s[j], rng);
      const double uz = charge(z);
      if (uz >= 0.5 * (u[i] + u[j])) next.push_back(std::move(z));
    }
    s = std::move(next);

    cum_regret += inst_regret;
    traj.rounds.push_back({t, population_fitness(theta_star, s), inst_regret,
                           cum_regret, n_evals,
                           std::numeric_limits<double>::quiet_NaN()});
    maybe_snapshot(traj, cfg, t, s);
  }
  return traj;
}

RegretSummary estimate_bayes_regret(const ExperimentConfig& cfg, int n_trials,
                                    std::uint64_t master_seed, int jobs) {
  validate_config(cfg);
  if (n_trials < 1)
    throw std::invalid_argument("estimate_bayes_regret: n_trials must be >= 1");
  if (jobs < 1) jobs = 1;

  RegretSummary out;
  out.trials.resize(static_cast<std::size_t>(n_trials));

  RandomStream master(master_seed);
  auto run_trial = [&](int k) {
    RandomStream rng = master.derive(static_cast<std::uint64_t>(k));
    const UtilityParams theta_star = sample_prior_theta(cfg.d, cfg.prior, rng);
    out.trials[static_cast<std::size_t>(k)] =
        cfg.algorithm == Algorithm::TSDE ? run_tsde(cfg, theta_star, rng)
                                         : run_basic_de(cfg, theta_star, rng);
  };

  if (jobs == 1) {
    for (int k = 0; k < n_trials; ++k) run_trial(k);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (int k = w; k < n_trials; k += jobs) run_trial(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : workers) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  const auto rounds = static_cast<std::size_t>(cfg.T);
  out.mean_per_member.assign(rounds, 0.0);
  out.stderr_per_member.assign(rounds, 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    double sum = 0.0;
    for (const auto& trial : out.trials)
      sum += trial.rounds[t].cum_regret / cfg.M;
    const double mean = sum / n_trials;
    out.mean_per_member[t] = mean;
    if (n_trials > 1) {
      double ss = 0.0;
      for (const auto& trial : out.trials) {
        const double dev = trial.rounds[t].cum_regret / cfg.M - mean;
        ss += dev * dev;
      }
      out.stderr_per_member[t] =
          std::sqrt(ss / (n_trials - 1) / n_trials);
    }
  }
  return out;
}

}  // namespace evobandit
