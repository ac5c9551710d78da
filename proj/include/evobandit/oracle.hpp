#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "evobandit/bayes.hpp"
#include "evobandit/core.hpp"

namespace evobandit {

// Brute-force ground truth used by tests. Deliberately naive code paths that
// share nothing with production beyond the core types.

struct PairStats {
  int i = 0;  // parent indices into the population
  int j = 0;
  double acceptance_prob = 0.0;   // P(child accepted | this ordered pair)
  double accepted_mean = 0.0;     // E[f(z) | accepted, this pair]
  double parent_avg = 0.0;        // (f(x_i)+f(x_j))/2
};

struct ExactSelectionStats {
  double expected_accepted_fitness = 0.0;  // E[f(z) | accepted]
  double acceptance_probability = 0.0;     // P(accept) per attempt
  std::vector<PairStats> pairs;            // per ordered pair breakdown
};

// Enumerates all M^2 ordered parent pairs (weight 1/M^2) and all 2^{d'} coin
// outcomes over the sites where the parents differ (weight 2^{-d'}), and
// returns the accepted-sample distribution stats of the resample-on-reject
// selection loop: E[f(z)*1{accept}] / P(accept). Enforces d <= 14, M <= 12.
ExactSelectionStats exact_crossover_selection_mean(const UtilityParams& theta,
                                                   const Population& s);

// Full scan of {0,1}^d (d <= 20). Returns the max value and the
// lexicographically largest argmax, which matches the tie rule x*_i = 1 at
// theta_i = 0.
std::pair<double, MotifVector> exhaustive_optimum(const UtilityParams& theta);

// Ridge regression from raw matrices: materializes Phi (n x d) and U (n) and
// returns ((Phi^T Phi + sigma^2 lambda I)^{-1} Phi^T U,
//          (1/sigma^2) Phi^T Phi + lambda I)
// via a dense QR solve, independently of PosteriorState's incremental path.
std::pair<UtilityParams, Eigen::MatrixXd> dense_ridge(
    const std::vector<Observation>& data, int d, const PriorSpec& prior);

// The two ascent lower-bound quantities, by exact enumeration of ordered
// pairs with replacement:
//   first  = E_{x,y}[ ||theta . (x-y)|| ] / (2 sqrt 2)
//   second = (1 / sqrt(2 d)) sum_i |theta_i| Var_i(S)
// first >= second always (Cauchy-Schwarz).
std::pair<double, double> ascent_lower_bounds(const UtilityParams& theta,
                                              const Population& s);

}  // namespace evobandit
