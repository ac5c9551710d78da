#pragma once

#include <cstddef>
#include <vector>

#include "evobandit/core.hpp"
#include "evobandit/random.hpp"

namespace evobandit {

// Set of sites eligible for mutation (0-based indices, sorted, unique).
struct MutationTargets {
  std::vector<int> sites;
};

MutationTargets all_sites(int d);

// Each targeted site is independently resampled uniform on {0,1} with
// probability mu (so it flips with probability mu/2); untargeted sites are
// copied exactly. mu must lie in (0,1].
//
// Stream consumption, pinned for reproducibility: sites in ascending order,
// one bernoulli(mu) per targeted site, plus one coin when it fires.
MotifVector mutate(const MotifVector& x, const MutationTargets& targets,
                   double mu, RandomStream& rng);

// z_i = x_i or y_i with probability 1/2, independently per site. Consumes one
// coin per site regardless of whether the parents agree there.
MotifVector recombine(const MotifVector& x, const MotifVector& y,
                      RandomStream& rng);

// Fills a same-size population with children: sample an ordered parent pair
// uniformly with replacement (x = y occurs with probability 1/M), recombine,
// accept z iff fitness(z) >= (fitness(x)+fitness(y))/2 (inclusive, so
// identical parents always pass), else discard and resample the pair.
// max_attempts = 0 means the default budget of 1000*|S|; exhausting the
// budget is a hard error (cannot happen mathematically; guards against a
// broken comparison).
Population crossover_selection(const UtilityParams& theta, const Population& s,
                               RandomStream& rng,
                               std::size_t max_attempts = 0);

// Sites where the population's mean per-site score underperforms a uniform
// bit: I = { i : theta_i * mean_i <= theta_i * 0.5 }. The literal product
// form makes theta_i = 0 sites targeted (mutating a zero-weight site costs
// nothing). Evaluated once against the input population.
MutationTargets directed_targets(const UtilityParams& theta,
                                 const Population& s);

// One independent mutate(x, directed_targets(theta, s), mu) per member.
Population directed_mutation(const UtilityParams& theta, const Population& s,
                             double mu, RandomStream& rng);

}  // namespace evobandit
