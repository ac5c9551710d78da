#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evobandit/drivers.hpp"
#include "evobandit/oracle.hpp"

namespace evobandit::verify {

struct CheckResult {
  std::string name;
  bool pass = true;
  bool hard = true;  // report-only checks set false and never gate exit codes
  double seconds = 0.0;
  std::string summary;                // one line
  std::vector<std::string> details;   // forensic lines (violating instances)
};

// Sample counts per level. Every check draws its instances from its own
// frozen seed, so fast and full see the same leading instances.
struct Scale {
  int oracle_instances;
  int oracle_samples;
  int ascent_instances;
  int direction_instances;
  int ordering_instances;
  int ridge_datasets;
  int sampler_draws;
  int mutation_calls;
  int ratio_trials;
  int regret_trials;
  int compare_trials;
  int sweep_trials;
  int convergence_runs;
  int driver_ratio_trials;
};

Scale fast_scale();
Scale full_scale();

// A random small instance: theta ~ N(0, I), members uniform over {0,1}^d,
// d in [1, dmax], M in [1, mmax]. All checks below that take instance counts
// consume instances from a frozen generator seed noted on each function.
struct Instance {
  UtilityParams theta;
  Population s;
};
Instance random_instance(RandomStream& gen, int dmax, int mmax);

// Monte Carlo accepted-child mean through the production selection loop vs
// the enumeration oracle, within 3 standard errors per instance.
CheckResult check_selection_oracle(int instances, int samples);

// theta=(1,1), S={(0,0),(1,1)}: accepted mean 8/7, acceptance 7/8,
// gain 1/7, lower bounds (1/4, 1/4), all to 1e-12.
CheckResult check_selection_worked_instance();

// Exact gain >= 0.5 * max(ascent_lower_bounds) on every instance. Zero
// violations required. Known to be unattainable under resample-on-reject
// selection: rejection reweights toward zero-gain identical-parent pairs,
// and the accepted mean can even drop below the population mean (see
// check_ascent_full_constant_report for deterministic counterexamples and
// README "Known limitations"). Kept hard on purpose: an honest red.
CheckResult check_ascent_halved(int instances);

// Report-only: violation counts for the unhalved bound and the halved bound
// on the same instance stream, plus two deterministic counterexamples with
// exact rational gains. Never gates an exit code.
CheckResult check_ascent_full_constant_report(int instances);

// Exact gain >= 0.5 * (min_i p_i / sqrt(2d)) * suboptimality_gap on
// instances filtered to min_i p_i(S) > 0. Zero violations required. Fails
// for the same structural reason as check_ascent_halved: e.g. d=1,
// theta=(1), S={0,0,1,0,0} has gain 4/105 * theta against a bound of
// 0.04 sqrt(2) * theta, exactly. Kept hard on purpose: an honest red.
CheckResult check_convergence_direction(int instances);

// ascent_lower_bounds ordering: first >= second on every instance.
CheckResult check_bound_ordering(int instances);

// Incremental posterior vs dense ridge oracle to 1e-8 relative.
CheckResult check_posterior_ridge(int datasets);

// Sampler moments: prior reproduction and posterior mean/covariance within
// 3 sigma on `draws` samples.
CheckResult check_posterior_sampler(int draws);

// Batch ingest == sequential ingest == permuted ingest, to 1e-10.
CheckResult check_posterior_batch_invariance();

// Directed mutation mean law E[p_i'] = p_i + (1/2 - p_i) mu within 3 sigma
// per site (theta all-positive, S all-zeros, M=200, mu=0.8).
CheckResult check_mutation_law(int calls);

// Ratio floor: at M = ceil(32 ln(10 d) / mu^2) (=231 for d=10, mu=0.8), one
// directed mutation from the adversarial all-zeros population reaches
// min_i p_i >= mu/4 in >= 90% of trials.
CheckResult check_mutation_ratio_floor(int trials);

// Sublinear per-member regret: d=10, M=20, T=100, mu=0.8, lambda=sigma=1.
// R(t) nondecreasing and R(100) <= 1.2 * R(50).
CheckResult check_regret_sublinearity(int trials);

// Matched-seed arms at d=10, M=50: TS-DE median evaluations-to-90%-optimum
// strictly below every baseline arm and at least 2x below both
// constant-rate arms.
CheckResult check_baseline_comparison(int trials);

// Mean total cumulative regret at T=100 nondecreasing in M over {10,20,40}.
CheckResult check_batch_monotonicity(int trials);

// Same seed twice -> identical trajectories; jobs=1 == jobs=4.
CheckResult check_driver_determinism();

// Driver's posterior equals the from-scratch ridge oracle over everything
// ingested so far, spot-checked at t in {1, T/2, T} to 1e-8 relative.
CheckResult check_driver_posterior_consistency();

// Rounds with min_favored_ratio >= mu/4 are >= 90% of all (trial, round)
// records at M = ceil(32 ln(2 d T * 10) / mu^2) (=496 for d=10, T=100,
// mu=0.8).
CheckResult check_driver_ratio_diagnostic(int trials);

// theta* all-positive, d=10, M=50, T=100, mu=0.8: final population fitness
// within 5% of the optimum in >= 90% of seeded runs.
CheckResult check_driver_convergence(int runs);

std::vector<CheckResult> run_all(const Scale& scale);

// Pass/fail table; forensic detail lines are printed for failing checks and
// for report-only checks.
void print_results(const std::vector<CheckResult>& results, std::ostream& os);

bool all_hard_passed(const std::vector<CheckResult>& results);

}  // namespace evobandit::verify
