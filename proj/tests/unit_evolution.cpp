#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "evobandit/core.hpp"
#include "evobandit/evolution.hpp"
#include "evobandit/oracle.hpp"
#include "evobandit/random.hpp"

using namespace evobandit;

namespace {

UtilityParams make_theta(std::initializer_list<double> v) {
  UtilityParams theta(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) theta[i++] = x;
  return theta;
}

}  // namespace

TEST_CASE("all_sites enumerates 0..d-1") {
  const MutationTargets t = all_sites(3);
  CHECK(t.sites == std::vector<int>{0, 1, 2});
  CHECK(all_sites(1).sites == std::vector<int>{0});
}

TEST_CASE("mutate leaves untargeted sites untouched") {
  RandomStream rng(11);
  const MotifVector x = {1, 0, 1, 1, 0};
  MutationTargets t;
  t.sites = {1, 3};
  for (int rep = 0; rep < 200; ++rep) {
    const MotifVector y = mutate(x, t, 1.0, rng);
    CHECK(y[0] == x[0]);
    CHECK(y[2] == x[2]);
    CHECK(y[4] == x[4]);
  }

  const MutationTargets none;
  CHECK(mutate(x, none, 0.5, rng) == x);
}

TEST_CASE("mutate at mu=1 resamples targeted sites as fair bits") {
  RandomStream rng(17);
  const int n = 100000;
  const MotifVector x = {0, 0};
  const MutationTargets t = all_sites(2);
  int ones0 = 0, ones1 = 0;
  for (int i = 0; i < n; ++i) {
    const MotifVector y = mutate(x, t, 1.0, rng);
    ones0 += y[0];
    ones1 += y[1];
  }
  const double tol = 3.0 * 0.5 / std::sqrt(n);
  CHECK(std::abs(ones0 / static_cast<double>(n) - 0.5) <= tol);
  CHECK(std::abs(ones1 / static_cast<double>(n) - 0.5) <= tol);
}

TEST_CASE("mutate flips a targeted site with probability mu/2") {
  RandomStream rng(23);
  const int n = 100000;
  const double mu = 0.8;
  const MotifVector x = {1};
  const MutationTargets t = all_sites(1);
  int flips = 0;
  for (int i = 0; i < n; ++i) flips += (mutate(x, t, mu, rng)[0] != x[0]);
  const double p = mu / 2;
  CHECK(std::abs(flips / static_cast<double>(n) - p) <=
        3.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("mutate validates its inputs") {
  RandomStream rng(3);
  const MotifVector x = {1, 0};
  const MutationTargets ok = all_sites(2);
  CHECK_THROWS_AS(mutate(x, ok, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(mutate(x, ok, 1.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(mutate(x, ok, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(mutate(x, ok, std::nan(""), rng), std::invalid_argument);

  MutationTargets bad;
  bad.sites = {0, 2};  // out of range
  CHECK_THROWS_AS(mutate(x, bad, 0.5, rng), std::invalid_argument);
  bad.sites = {1, 0};  // unsorted
  CHECK_THROWS_AS(mutate(x, bad, 0.5, rng), std::invalid_argument);
  bad.sites = {0, 0};  // duplicate
  CHECK_THROWS_AS(mutate(x, bad, 0.5, rng), std::invalid_argument);
  bad.sites = {-1};
  CHECK_THROWS_AS(mutate(x, bad, 0.5, rng), std::invalid_argument);
}

TEST_CASE("recombine reproduces agreements and mixes disagreements") {
  RandomStream rng(29);
  const MotifVector x = {1, 0, 1, 0};
  CHECK(recombine(x, x, rng) == x);

  const MotifVector y = {1, 1, 0, 0};
  for (int rep = 0; rep < 100; ++rep) {
    const MotifVector z = recombine(x, y, rng);
    CHECK(z[0] == 1);  // parents agree
    CHECK(z[3] == 0);
    CHECK((z[1] == 0 || z[1] == 1));
  }

  const MotifVector short_y = {1, 1};
  CHECK_THROWS_AS(recombine(x, short_y, rng), std::invalid_argument);
}

TEST_CASE("recombine picks each disagreeing site fairly and independently") {
  RandomStream rng(37);
  const int n = 100000;
  const MotifVector x = {0, 0};
  const MotifVector y = {1, 1};
  int ones0 = 0, ones1 = 0, both = 0;
  for (int i = 0; i < n; ++i) {
    const MotifVector z = recombine(x, y, rng);
    ones0 += z[0];
    ones1 += z[1];
    both += (z[0] == 1 && z[1] == 1);
  }
  const double tol = 3.0 * 0.5 / std::sqrt(n);
  const double f0 = ones0 / static_cast<double>(n);
  const double f1 = ones1 / static_cast<double>(n);
  const double f01 = both / static_cast<double>(n);
  CHECK(std::abs(f0 - 0.5) <= tol);
  CHECK(std::abs(f1 - 0.5) <= tol);
  // independence: joint frequency of (1,1) near product of marginals
  CHECK(std::abs(f01 - f0 * f1) <= 3.0 / std::sqrt(n));
}

TEST_CASE("crossover_selection over a constant population copies it") {
  RandomStream rng(41);
  const UtilityParams theta = make_theta({1.0, -2.0, 0.5});
  const Population s(5, MotifVector{1, 0, 1});
  const Population out = crossover_selection(theta, s, rng);
  REQUIRE(out.size() == s.size());
  for (const auto& z : out) CHECK(z == s[0]);
}

TEST_CASE("crossover_selection preserves population size") {
  RandomStream rng(43);
  const UtilityParams theta = make_theta({1.0, -1.0, 2.0, 0.0});
  Population s;
  for (int k = 0; k < 7; ++k) {
    MotifVector x(4);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng.coin());
    s.push_back(x);
  }
  for (int rep = 0; rep < 20; ++rep)
    CHECK(crossover_selection(theta, s, rng).size() == s.size());
}

TEST_CASE("crossover_selection matches the exact accepted-mean on a small instance") {
  // theta = (1,1), S = {(0,0),(0,1),(1,0),(1,1)}: hand enumeration over the
  // 16 ordered pairs gives E[f 1{accept}] = 7/8 and P(accept) = 11/16, so
  // the accepted mean is 14/11.
  const UtilityParams theta = make_theta({1.0, 1.0});
  const Population s = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const ExactSelectionStats exact = exact_crossover_selection_mean(theta, s);
  REQUIRE(exact.expected_accepted_fitness ==
          doctest::Approx(14.0 / 11.0).epsilon(1e-12));
  REQUIRE(exact.acceptance_probability ==
          doctest::Approx(11.0 / 16.0).epsilon(1e-12));

  RandomStream rng(47);
  const int calls = 10000;
  double sum = 0.0;
  long long count = 0;
  for (int c = 0; c < calls; ++c) {
    const Population out = crossover_selection(theta, s, rng);
    for (const auto& z : out) {
      sum += fitness(theta, z);
      ++count;
    }
  }
  const double mc = sum / count;
  // accepted fitness lives in [0,2]; 3 pooled standard errors with sd <= 1
  const double se = 1.0 / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(mc - 14.0 / 11.0) <= 3.0 * se);
}

TEST_CASE("crossover_selection budget exhaustion is a hard error") {
  RandomStream rng(53);
  const UtilityParams theta = make_theta({1.0});
  const Population s = {{0}, {1}};
  // two slots to fill but only one attempt allowed
  CHECK_THROWS_AS(crossover_selection(theta, s, rng, 1), std::runtime_error);
}

TEST_CASE("directed_targets covers forced cases") {
  const UtilityParams theta = make_theta({1.0, 2.0, 0.5});

  const Population zeros(4, MotifVector{0, 0, 0});
  CHECK(directed_targets(theta, zeros).sites == std::vector<int>{0, 1, 2});

  const Population ones(4, MotifVector{1, 1, 1});
  CHECK(directed_targets(theta, ones).sites.empty());

  // zero-weight sites always qualify
  const UtilityParams zero_theta = make_theta({0.0, 0.0});
  const Population any = {{1, 0}, {0, 1}};
  CHECK(directed_targets(zero_theta, any).sites == std::vector<int>{0, 1});

  // negative weight: favored allele is 0, so an all-zero site is satisfied
  const UtilityParams mixed = make_theta({1.0, -1.0});
  const Population good = {{1, 0}};
  CHECK(directed_targets(mixed, good).sites.empty());
  const Population bad = {{0, 1}};
  CHECK(directed_targets(mixed, bad).sites == std::vector<int>{0, 1});
}

TEST_CASE("directed_mutation is a no-op when every site is satisfied") {
  RandomStream rng(59);
  const UtilityParams theta = make_theta({1.0, 2.0});
  const Population ones(3, MotifVector{1, 1});
  CHECK(directed_mutation(theta, ones, 0.9, rng) == ones);
}

TEST_CASE("directed_mutation drives site means toward one half") {
  // From all zeros with positive theta every site is targeted; after one round
  // E[p_i'] = mu/2 = 0.4.
  RandomStream rng(61);
  const int d = 10, m = 200, calls = 300;
  const double mu = 0.8;
  const UtilityParams theta = UtilityParams::Ones(d);
  const Population s(m, MotifVector(d, 0));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  for (int c = 0; c < calls; ++c)
    acc += site_mean(directed_mutation(theta, s, mu, rng));
  acc /= calls;
  const double p = mu / 2;
  const double tol = 3.0 * std::sqrt(p * (1 - p) / (m * calls));
  for (int i = 0; i < d; ++i) CHECK(std::abs(acc[i] - p) <= tol);
}
