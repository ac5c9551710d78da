#include "evobandit/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evobandit {

ExactSelectionStats exact_crossover_selection_mean(const UtilityParams& theta,
                                                   const Population& s) {
  validate_population(s);
  const int m = static_cast<int>(s.size());
  const int d = static_cast<int>(s.front().size());
  if (d > 14 || m > 12)
    throw std::invalid_argument(
        "exact_crossover_selection_mean: enumeration limit is d <= 14, "
        "M <= 12 (got d=" + std::to_string(d) + ", M=" + std::to_string(m) + ")");
  if (static_cast<int>(theta.size()) != d)
    throw std::invalid_argument("exact_crossover_selection_mean: dimension mismatch");

  const double pair_w = 1.0 / (static_cast<double>(m) * m);
  ExactSelectionStats stats;
  double total_accept = 0.0;
  double total_f_accept = 0.0;

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const MotifVector& x = s[static_cast<std::size_t>(i)];
      const MotifVector& y = s[static_cast<std::size_t>(j)];
      std::vector<int> diff;
      for (int a = 0; a < d; ++a)
        if (x[static_cast<std::size_t>(a)] != y[static_cast<std::size_t>(a)])
          diff.push_back(a);
      const double fx = fitness(theta, x);
      const double fy = fitness(theta, y);
      const double threshold = 0.5 * (fx + fy);
      const int k = static_cast<int>(diff.size());
      const double outcome_w = std::ldexp(1.0, -k);  // 2^{-k}

      double pair_accept = 0.0;
      double pair_f_accept = 0.0;
      MotifVector z = y;
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        // bit set -> take the site from x, else from y
        for (int b = 0; b < k; ++b) {
          const auto site = static_cast<std::size_t>(diff[static_cast<std::size_t>(b)]);
          z[site] = (mask >> b) & 1u ? x[site] : y[site];
        }
        const double fz = fitness(theta, z);
        if (fz >= threshold) {  // same comparison as the production loop
          pair_accept += outcome_w;
          pair_f_accept += outcome_w * fz;
        }
      }
      total_accept += pair_w * pair_accept;
      total_f_accept += pair_w * pair_f_accept;
      stats.pairs.push_back(
          {i, j, pair_accept,
           pair_accept > 0.0 ? pair_f_accept / pair_accept : 0.0, threshold});
    }
  }

  stats.acceptance_probability = total_accept;
  stats.expected_accepted_fitness = total_f_accept / total_accept;
  return stats;
}

std::pair<double, MotifVector> exhaustive_optimum(const UtilityParams& theta) {
  const int d = static_cast<int>(theta.size());
  if (d < 1) throw std::invalid_argument("exhaustive_optimum: d must be >= 1");
  if (d > 20)
    throw std::invalid_argument("exhaustive_optimum: d <= 20 (got " +
                                std::to_string(d) + ")");

  auto lex_greater = [](const MotifVector& a, const MotifVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  };

  double best = 0.0;
  MotifVector best_x(static_cast<std::size_t>(d), 0);
  MotifVector x(static_cast<std::size_t>(d));
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    for (int i = 0; i < d; ++i)
      x[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    const double v = fitness(theta, x);
    if (v > best || (v == best && lex_greater(x, best_x))) {
      best = v;
      best_x = x;
    }
  }
  return {best, best_x};
}

std::pair<UtilityParams, Eigen::MatrixXd> dense_ridge(
    const std::vector<Observation>& data, int d, const PriorSpec& prior) {
  if (d < 1) throw std::invalid_argument("dense_ridge: d must be >= 1");
  validate_prior(prior);
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd phi(n, d);
  Eigen::VectorXd u(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& obs = data[static_cast<std::size_t>(r)];
    if (static_cast<int>(obs.x.size()) != d)
      throw std::invalid_argument("dense_ridge: dimension mismatch");
    for (int c = 0; c < d; ++c)
      phi(r, c) = obs.x[static_cast<std::size_t>(c)];
    u[r] = obs.u;
  }
  const double s2 = prior.sigma * prior.sigma;
  const Eigen::MatrixXd gram = phi.transpose() * phi;
  const Eigen::MatrixXd reg =
      gram + s2 * prior.lambda * Eigen::MatrixXd::Identity(d, d);
  const Eigen::VectorXd theta_hat =
      reg.colPivHouseholderQr().solve(phi.transpose() * u);
  const Eigen::MatrixXd precision =
      gram / s2 + prior.lambda * Eigen::MatrixXd::Identity(d, d);
  return {theta_hat, precision};
}

std::pair<double, double> ascent_lower_bounds(const UtilityParams& theta,
                                              const Population& s) {
  validate_population(s);
  const auto m = s.size();
  const int d = static_cast<int>(s.front().size());
  if (static_cast<int>(theta.size()) != d)
    throw std::invalid_argument("ascent_lower_bounds: dimension mismatch");

  double norm_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double sq = 0.0;
      for (int a = 0; a < d; ++a) {
        const double delta =
            static_cast<double>(s[i][static_cast<std::size_t>(a)]) -
            static_cast<double>(s[j][static_cast<std::size_t>(a)]);
        const double w = theta[a] * delta;
        sq += w * w;
      }
      norm_sum += std::sqrt(sq);
    }
  }
  const double first =
      norm_sum / (static_cast<double>(m) * m) / (2.0 * std::sqrt(2.0));

  const Eigen::VectorXd var = site_variance(s);
  const double second =
      theta.cwiseAbs().dot(var) / std::sqrt(2.0 * d);
  return {first, second};
}

}  // namespace evobandit
