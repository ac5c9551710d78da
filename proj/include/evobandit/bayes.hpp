#pragma once

#include <vector>

#include <Eigen/Dense>

#include "evobandit/core.hpp"
#include "evobandit/random.hpp"

namespace evobandit {

struct Observation {
  MotifVector x;
  double u = 0.0;  // noisy utility measurement
};

// Gaussian posterior over theta held as sufficient statistics:
//   precision V = lambda*I + (1/sigma^2) sum x x^T
//   xu_accum    = (1/sigma^2) sum x*u
// Memory is O(d^2) regardless of how much data is ingested; raw history is
// retained only when keep_history is set (audit/debug).
class PosteriorState {
 public:
  PosteriorState(int d, const PriorSpec& prior, bool keep_history = false);

  void ingest(const std::vector<Observation>& batch);

  // posterior mean: SPD solve of precision * mean = xu_accum
  Eigen::VectorXd mean() const;

  // one draw from N(mean, precision^{-1}): mean + U^{-1} g with
  // precision = U^T U (Cholesky), g standard normal. The precision matrix is
  // factored afresh on every call; at desk scale O(d^3) per draw is fine.
  Eigen::VectorXd sample(RandomStream& rng) const;

  int dim() const { return d_; }
  const PriorSpec& prior() const { return prior_; }
  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::VectorXd& xu_accum() const { return xu_accum_; }
  long long n_obs() const { return n_obs_; }
  const std::vector<Observation>& history() const { return history_; }

 private:
  int d_;
  PriorSpec prior_;
  Eigen::MatrixXd precision_;
  Eigen::VectorXd xu_accum_;
  long long n_obs_ = 0;
  bool keep_history_;
  std::vector<Observation> history_;
};

// <theta*, x> + sigma * g, one gaussian per call; sigma > 0
double noisy_evaluate(const UtilityParams& theta_star, const MotifVector& x,
                      double sigma, RandomStream& rng);

// i.i.d. N(0, 1/lambda) coordinates
UtilityParams sample_prior_theta(int d, const PriorSpec& prior,
                                 RandomStream& rng);

}  // namespace evobandit
