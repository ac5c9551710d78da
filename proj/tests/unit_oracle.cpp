#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "evobandit/core.hpp"
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

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("selection enumeration matches the worked two-member instance") {
  // theta=(1,1), S={(0,0),(1,1)}: identical pairs accept surely with zero
  // gain; mixed pairs accept 3/4 of children with conditional mean 4/3.
  const UtilityParams theta = make_theta({1.0, 1.0});
  const Population s = {{0, 0}, {1, 1}};
  const ExactSelectionStats stats = exact_crossover_selection_mean(theta, s);

  CHECK(stats.expected_accepted_fitness == doctest::Approx(8.0 / 7.0).epsilon(kTol));
  CHECK(stats.acceptance_probability == doctest::Approx(7.0 / 8.0).epsilon(kTol));
  REQUIRE(stats.pairs.size() == 4);
  for (const auto& p : stats.pairs) {
    if (p.i == p.j) {
      CHECK(p.acceptance_prob == doctest::Approx(1.0).epsilon(kTol));
    } else {
      CHECK(p.acceptance_prob == doctest::Approx(0.75).epsilon(kTol));
      CHECK(p.accepted_mean == doctest::Approx(4.0 / 3.0).epsilon(kTol));
      CHECK(p.parent_avg == doctest::Approx(1.0).epsilon(kTol));
    }
  }
}

TEST_CASE("selection gain can fall below the halved ascent bound") {
  // d=1, theta=(1), S={0,0,0,1}. Hand enumeration over the 16 ordered pairs:
  // E[f 1{accept}] = 1/4, P(accept) = 13/16, accepted mean 4/13,
  // gain 4/13 - 1/4 = 3/52 ~ 0.0577 < 3/(32 sqrt 2) ~ 0.0663.
  const UtilityParams theta = make_theta({1.0});
  const Population s = {{0}, {0}, {0}, {1}};
  const ExactSelectionStats stats = exact_crossover_selection_mean(theta, s);
  const auto [b1, b2] = ascent_lower_bounds(theta, s);

  CHECK(stats.expected_accepted_fitness == doctest::Approx(4.0 / 13.0).epsilon(kTol));
  CHECK(stats.acceptance_probability == doctest::Approx(13.0 / 16.0).epsilon(kTol));
  const double gain =
      stats.expected_accepted_fitness - population_fitness(theta, s);
  CHECK(gain == doctest::Approx(3.0 / 52.0).epsilon(kTol));
  CHECK(b1 == doctest::Approx(3.0 / (16.0 * std::sqrt(2.0))).epsilon(kTol));
  CHECK(b2 == doctest::Approx(3.0 / (16.0 * std::sqrt(2.0))).epsilon(kTol));
  CHECK(gain < 0.5 * std::max(b1, b2));  // positive gain, bound still missed
}

TEST_CASE("selection gain can be negative outright") {
  // d=8, theta=all-ones, S={5x zeros, all-ones}. Mixed pairs resample a
  // Bin(8,1/2) child against threshold 4: P = 163/256, E[f 1{f>=4}] = 792/256.
  // Pooled: accepted mean 4984/4143 < F(S) = 4/3, gain -180/1381.
  const UtilityParams theta = UtilityParams::Ones(8);
  Population s(5, MotifVector(8, 0));
  s.push_back(MotifVector(8, 1));
  const ExactSelectionStats stats = exact_crossover_selection_mean(theta, s);

  CHECK(stats.expected_accepted_fitness ==
        doctest::Approx(4984.0 / 4143.0).epsilon(kTol));
  CHECK(stats.acceptance_probability ==
        doctest::Approx(1381.0 / 1536.0).epsilon(kTol));
  const double gain =
      stats.expected_accepted_fitness - population_fitness(theta, s);
  CHECK(gain == doctest::Approx(-180.0 / 1381.0).epsilon(kTol));
  CHECK(gain < 0.0);

  const auto [b1, b2] = ascent_lower_bounds(theta, s);
  CHECK(b1 == doctest::Approx(5.0 / 18.0).epsilon(kTol));
  CHECK(b2 == doctest::Approx(5.0 / 18.0).epsilon(kTol));
}

TEST_CASE("selection over a constant population is the population itself") {
  const UtilityParams theta = make_theta({2.0, -1.0, 0.5});
  const Population s(6, MotifVector{1, 0, 1});
  const ExactSelectionStats stats = exact_crossover_selection_mean(theta, s);
  CHECK(stats.expected_accepted_fitness ==
        doctest::Approx(population_fitness(theta, s)).epsilon(kTol));
  CHECK(stats.acceptance_probability == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("selection enumeration enforces its size limits") {
  const UtilityParams wide = UtilityParams::Ones(15);
  const Population wide_pop(2, MotifVector(15, 0));
  CHECK_THROWS_AS(exact_crossover_selection_mean(wide, wide_pop),
                  std::invalid_argument);

  const UtilityParams theta = UtilityParams::Ones(2);
  const Population big(13, MotifVector(2, 0));
  CHECK_THROWS_AS(exact_crossover_selection_mean(theta, big),
                  std::invalid_argument);

  const Population mismatched(2, MotifVector(3, 0));
  CHECK_THROWS_AS(exact_crossover_selection_mean(theta, mismatched),
                  std::invalid_argument);
}

TEST_CASE("exhaustive_optimum handles hand-checkable cases") {
  {
    const auto [v, x] = exhaustive_optimum(make_theta({1.0, -2.0, 3.0}));
    CHECK(v == doctest::Approx(4.0).epsilon(kTol));
    CHECK(x == MotifVector{1, 0, 1});
  }
  {
    // all weights zero: every point ties at 0, lexicographically largest wins
    const auto [v, x] = exhaustive_optimum(make_theta({0.0, 0.0, 0.0}));
    CHECK(v == 0.0);
    CHECK(x == MotifVector{1, 1, 1});
  }
  {
    const auto [v, x] = exhaustive_optimum(make_theta({-1.0, -0.5}));
    CHECK(v == 0.0);
    CHECK(x == MotifVector{0, 0});
  }
  CHECK_THROWS_AS(exhaustive_optimum(UtilityParams::Ones(21)),
                  std::invalid_argument);
}

TEST_CASE("exhaustive_optimum agrees with the closed-form optimum") {
  RandomStream rng(211);
  const int d = 12;
  for (int rep = 0; rep < 1000; ++rep) {
    UtilityParams theta(d);
    for (int i = 0; i < d; ++i) theta[i] = rng.gaussian();
    const auto [v, x] = exhaustive_optimum(theta);
    CHECK(v == doctest::Approx(optimum_value(theta)).epsilon(1e-10));
    CHECK(x == optimum_point(theta));
  }
}

TEST_CASE("dense_ridge on no data returns the prior") {
  PriorSpec prior;
  prior.lambda = 3.0;
  prior.sigma = 0.5;
  const auto [mean, precision] = dense_ridge({}, 2, prior);
  CHECK(mean.cwiseAbs().maxCoeff() <= kTol);
  CHECK((precision - 3.0 * Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() <= kTol);
}

TEST_CASE("dense_ridge matches the one-observation hand solve") {
  PriorSpec prior;  // lambda = sigma = 1
  const std::vector<Observation> data = {{{1, 0}, 1.0}};
  const auto [mean, precision] = dense_ridge(data, 2, prior);
  CHECK(mean[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(mean[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(precision(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(precision(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(precision(0, 1) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS_AS(dense_ridge({{{1, 0, 1}, 1.0}}, 2, prior),
                  std::invalid_argument);
}

TEST_CASE("ascent bounds: constant population gives zero") {
  const UtilityParams theta = make_theta({1.0, -2.0});
  const Population s(4, MotifVector{1, 0});
  const auto [b1, b2] = ascent_lower_bounds(theta, s);
  CHECK(b1 == 0.0);
  CHECK(b2 == 0.0);
}

TEST_CASE("ascent bounds are ordered first >= second") {
  RandomStream rng(223);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform_index(12));
    const int m = 1 + static_cast<int>(rng.uniform_index(8));
    UtilityParams theta(d);
    for (int i = 0; i < d; ++i) theta[i] = rng.gaussian();
    Population s(m, MotifVector(d));
    for (auto& x : s)
      for (auto& b : x) b = static_cast<std::uint8_t>(rng.coin());
    const auto [b1, b2] = ascent_lower_bounds(theta, s);
    CHECK(b1 >= b2 - kTol);
    CHECK(b1 >= 0.0);
    CHECK(b2 >= 0.0);
  }
}
