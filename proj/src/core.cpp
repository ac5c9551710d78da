#include "evobandit/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evobandit {

void validate_prior(const PriorSpec& prior) {
  if (!(prior.lambda > 0.0) || !std::isfinite(prior.lambda))
    throw std::invalid_argument("prior: lambda must be positive");
  if (!(prior.sigma > 0.0) || !std::isfinite(prior.sigma))
    throw std::invalid_argument("prior: sigma must be positive");
}

void validate_motif(const MotifVector& x) {
  if (x.empty()) throw std::invalid_argument("motif vector must be nonempty");
  for (auto b : x)
    if (b != 0 && b != 1)
      throw std::invalid_argument("motif vector entries must be 0 or 1");
}

void validate_population(const Population& s) {
  if (s.empty()) throw std::invalid_argument("population must be nonempty");
  const std::size_t d = s.front().size();
  for (const auto& x : s) {
    if (x.size() != d)
      throw std::invalid_argument("population members must share dimension");
    validate_motif(x);
  }
}

static void check_dims(const UtilityParams& theta, const MotifVector& x) {
  if (static_cast<std::size_t>(theta.size()) != x.size())
    throw std::invalid_argument("theta dimension " +
                                std::to_string(theta.size()) +
                                " does not match motif dimension " +
                                std::to_string(x.size()));
}

double fitness(const UtilityParams& theta, const MotifVector& x) {
  check_dims(theta, x);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    if (x[static_cast<std::size_t>(i)]) acc += theta[i];
  return acc;
}

double population_fitness(const UtilityParams& theta, const Population& s) {
  if (s.empty()) throw std::invalid_argument("population_fitness: empty population");
  double acc = 0.0;
  for (const auto& x : s) acc += fitness(theta, x);
  return acc / static_cast<double>(s.size());
}

double optimum_value(const UtilityParams& theta) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    if (theta[i] > 0.0) acc += theta[i];
  return acc;
}

MotifVector optimum_point(const UtilityParams& theta) {
  MotifVector x(static_cast<std::size_t>(theta.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    x[static_cast<std::size_t>(i)] = theta[i] >= 0.0 ? 1 : 0;
  return x;
}

Eigen::VectorXd site_mean(const Population& s) {
  if (s.empty()) throw std::invalid_argument("site_mean: empty population");
  const auto d = static_cast<Eigen::Index>(s.front().size());
  Eigen::VectorXd q = Eigen::VectorXd::Zero(d);
  for (const auto& x : s) {
    if (static_cast<Eigen::Index>(x.size()) != d)
      throw std::invalid_argument("site_mean: dimension mismatch");
    for (Eigen::Index i = 0; i < d; ++i)
      q[i] += x[static_cast<std::size_t>(i)];
  }
  return q / static_cast<double>(s.size());
}

Eigen::VectorXd favored_ratio(const UtilityParams& theta, const Population& s) {
  const Eigen::VectorXd q = site_mean(s);
  if (theta.size() != q.size())
    throw std::invalid_argument("favored_ratio: dimension mismatch");
  Eigen::VectorXd p(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i)
    p[i] = theta[i] >= 0.0 ? q[i] : 1.0 - q[i];
  return p;
}

Eigen::VectorXd site_variance(const Population& s) {
  const Eigen::VectorXd q = site_mean(s);
  return q.array() * (1.0 - q.array());
}

double suboptimality_gap(const UtilityParams& theta, const Population& s) {
  return optimum_value(theta) - population_fitness(theta, s);
}

}  // namespace evobandit
