#include "evobandit/evolution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace evobandit {

MutationTargets all_sites(int d) {
  if (d < 1) throw std::invalid_argument("all_sites: d must be >= 1");
  MutationTargets t;
  t.sites.resize(static_cast<std::size_t>(d));
  std::iota(t.sites.begin(), t.sites.end(), 0);
  return t;
}

static void check_targets(const MutationTargets& targets, std::size_t d) {
  int prev = -1;
  for (int i : targets.sites) {
    if (i < 0 || static_cast<std::size_t>(i) >= d)
      throw std::invalid_argument("mutate: site index " + std::to_string(i) +
                                  " out of range for d=" + std::to_string(d));
    if (i <= prev)
      throw std::invalid_argument("mutate: sites must be sorted and unique");
    prev = i;
  }
}

MotifVector mutate(const MotifVector& x, const MutationTargets& targets,
                   double mu, RandomStream& rng) {
  if (!(mu > 0.0) || mu > 1.0 || !std::isfinite(mu))
    throw std::invalid_argument("mutate: mu must lie in (0, 1]");
  check_targets(targets, x.size());
  MotifVector out = x;
  for (int i : targets.sites) {
    if (rng.bernoulli(mu))
      out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.coin());
  }
  return out;
}

MotifVector recombine(const MotifVector& x, const MotifVector& y,
                      RandomStream& rng) {
  if (x.size() != y.size())
    throw std::invalid_argument("recombine: dimension mismatch");
  MotifVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    z[i] = rng.coin() ? x[i] : y[i];
  return z;
}

Population crossover_selection(const UtilityParams& theta, const Population& s,
                               RandomStream& rng, std::size_t max_attempts) {
  if (s.empty())
    throw std::invalid_argument("crossover_selection: empty population");
  const std::size_t m = s.size();
  if (max_attempts == 0) max_attempts = 1000 * m;

  std::vector<double> f(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = fitness(theta, s[i]);

  Population out;
  out.reserve(m);
  std::size_t attempts = 0;
  while (out.size() < m) {
    if (++attempts > max_attempts)
      throw std::runtime_error(
          "crossover_selection: attempt budget exhausted (" +
          std::to_string(max_attempts) +
          "); the acceptance comparison is broken");
    const std::size_t i = rng.uniform_index(m);
    const std::size_t j = rng.uniform_index(m);
    MotifVector z = recombine(s[i], s[j], rng);
    const double fz = fitness(theta, z);
    if (fz >= 0.5 * (f[i] + f[j])) out.push_back(std::move(z));
  }
  return out;
}

MutationTargets directed_targets(const UtilityParams& theta,
                                 const Population& s) {
  const Eigen::VectorXd q = site_mean(s);
  if (theta.size() != q.size())
    throw std::invalid_argument("directed_targets: dimension mismatch");
  MutationTargets t;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    // literal product form: theta_i = 0 sites satisfy <= and are targeted
    if (theta[i] * q[i] <= theta[i] * 0.5) t.sites.push_back(static_cast<int>(i));
  }
  return t;
}

Population directed_mutation(const UtilityParams& theta, const Population& s,
                             double mu, RandomStream& rng) {
  const MutationTargets targets = directed_targets(theta, s);
  Population out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(mutate(x, targets, mu, rng));
  return out;
}

}  // namespace evobandit
