#include "evobandit/bayes.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace evobandit {

PosteriorState::PosteriorState(int d, const PriorSpec& prior, bool keep_history)
    : d_(d), prior_(prior), keep_history_(keep_history) {
  if (d < 1) throw std::invalid_argument("posterior: d must be >= 1");
  validate_prior(prior);
  precision_ = prior.lambda * Eigen::MatrixXd::Identity(d, d);
  xu_accum_ = Eigen::VectorXd::Zero(d);
}

void PosteriorState::ingest(const std::vector<Observation>& batch) {
  const double inv_s2 = 1.0 / (prior_.sigma * prior_.sigma);
  for (const auto& obs : batch) {
    validate_motif(obs.x);
    if (static_cast<int>(obs.x.size()) != d_)
      throw std::invalid_argument("posterior ingest: dimension mismatch");
    if (!std::isfinite(obs.u))
      throw std::invalid_argument("posterior ingest: non-finite measurement");
    for (int a = 0; a < d_; ++a) {
      if (!obs.x[static_cast<std::size_t>(a)]) continue;
      xu_accum_[a] += inv_s2 * obs.u;
      for (int b = 0; b < d_; ++b)
        if (obs.x[static_cast<std::size_t>(b)]) precision_(a, b) += inv_s2;
    }
    ++n_obs_;
    if (keep_history_) history_.push_back(obs);
  }
}

Eigen::VectorXd PosteriorState::mean() const {
  Eigen::LLT<Eigen::MatrixXd> llt(precision_);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("posterior mean: precision matrix not SPD");
  return llt.solve(xu_accum_);
}

Eigen::VectorXd PosteriorState::sample(RandomStream& rng) const {
  Eigen::LLT<Eigen::MatrixXd> llt(precision_);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("posterior sample: precision matrix not SPD");
  Eigen::VectorXd g(d_);
  for (int i = 0; i < d_; ++i) g[i] = rng.gaussian();
  // precision = U^T U, so A = U^{-1} gives A A^T = precision^{-1}
  return llt.solve(xu_accum_) +
         llt.matrixU().solve(g);
}

double noisy_evaluate(const UtilityParams& theta_star, const MotifVector& x,
                      double sigma, RandomStream& rng) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("noisy_evaluate: sigma must be positive");
  return fitness(theta_star, x) + sigma * rng.gaussian();
}

UtilityParams sample_prior_theta(int d, const PriorSpec& prior,
                                 RandomStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_prior_theta: d must be >= 1");
  validate_prior(prior);
  const double scale = 1.0 / std::sqrt(prior.lambda);
  UtilityParams theta(d);
  for (int i = 0; i < d; ++i) theta[i] = scale * rng.gaussian();
  return theta;
}

}  // namespace evobandit
