#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "evobandit/bayes.hpp"
#include "evobandit/core.hpp"
#include "evobandit/oracle.hpp"
#include "evobandit/random.hpp"

using namespace evobandit;

TEST_CASE("fresh posterior is the prior") {
  PriorSpec prior;
  prior.lambda = 2.5;
  prior.sigma = 0.7;
  const PosteriorState post(3, prior);
  CHECK(post.dim() == 3);
  CHECK(post.n_obs() == 0);
  CHECK((post.precision() - 2.5 * Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK(post.xu_accum().norm() == 0.0);
  CHECK(post.mean().norm() == 0.0);

  CHECK_THROWS_AS(PosteriorState(0, prior), std::invalid_argument);
  PriorSpec bad = prior;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(PosteriorState(3, bad), std::invalid_argument);
  bad = prior;
  bad.sigma = -1.0;
  CHECK_THROWS_AS(PosteriorState(3, bad), std::invalid_argument);
}

TEST_CASE("one observation updates mean and precision exactly") {
  // d=2, lambda=1, sigma=1, observe x=(1,0) with u=1:
  //   precision = [[2,0],[0,1]], xu = (1,0), mean = (0.5, 0)
  PriorSpec prior;  // lambda = sigma = 1
  PosteriorState post(2, prior);
  post.ingest({{{1, 0}, 1.0}});
  CHECK(post.n_obs() == 1);
  CHECK(post.precision()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(post.precision()(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(post.precision()(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(post.precision()(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::VectorXd m = post.mean();
  CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ingest rejects malformed observations") {
  PriorSpec prior;
  PosteriorState post(2, prior);
  CHECK_THROWS_AS(post.ingest({{{1, 0, 1}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(post.ingest({{{1, 0}, std::nan("")}}), std::invalid_argument);
  CHECK_THROWS_AS(post.ingest({{{1, 2}, 1.0}}), std::invalid_argument);
  CHECK(post.n_obs() == 0);
}

TEST_CASE("posterior is invariant to batching and observation order") {
  RandomStream rng(101);
  PriorSpec prior;
  prior.lambda = 0.8;
  prior.sigma = 1.3;
  const int d = 5, n = 30;
  std::vector<Observation> obs;
  for (int k = 0; k < n; ++k) {
    Observation o;
    o.x.resize(d);
    for (auto& b : o.x) b = static_cast<std::uint8_t>(rng.coin());
    o.u = rng.gaussian();
    obs.push_back(o);
  }

  PosteriorState batch(d, prior);
  batch.ingest(obs);

  PosteriorState seq(d, prior);
  for (const auto& o : obs) seq.ingest({o});

  std::vector<Observation> shuffled = obs;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
  PosteriorState perm(d, prior);
  perm.ingest(shuffled);

  const double tol = 1e-10;
  CHECK((batch.precision() - seq.precision()).cwiseAbs().maxCoeff() <= tol);
  CHECK((batch.precision() - perm.precision()).cwiseAbs().maxCoeff() <= tol);
  CHECK((batch.xu_accum() - seq.xu_accum()).cwiseAbs().maxCoeff() <= tol);
  CHECK((batch.xu_accum() - perm.xu_accum()).cwiseAbs().maxCoeff() <= tol);
  CHECK((batch.mean() - seq.mean()).cwiseAbs().maxCoeff() <= tol);
  CHECK((batch.mean() - perm.mean()).cwiseAbs().maxCoeff() <= tol);
}

TEST_CASE("incremental posterior agrees with the dense ridge solve") {
  RandomStream rng(103);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform_index(8));
    const int n = static_cast<int>(rng.uniform_index(40));
    PriorSpec prior;
    prior.lambda = 0.1 + 2.9 * rng.unit_uniform();
    prior.sigma = 0.3 + 1.7 * rng.unit_uniform();

    std::vector<Observation> obs;
    for (int k = 0; k < n; ++k) {
      Observation o;
      o.x.resize(d);
      for (auto& b : o.x) b = static_cast<std::uint8_t>(rng.coin());
      o.u = 3.0 * rng.gaussian();
      obs.push_back(o);
    }

    PosteriorState post(d, prior);
    post.ingest(obs);
    const auto [ref_mean, ref_precision] = dense_ridge(obs, d, prior);

    const double mden = std::max(1.0, ref_mean.cwiseAbs().maxCoeff());
    const double pden = std::max(1.0, ref_precision.cwiseAbs().maxCoeff());
    CHECK((post.mean() - ref_mean).cwiseAbs().maxCoeff() / mden <= 1e-8);
    CHECK((post.precision() - ref_precision).cwiseAbs().maxCoeff() / pden <=
          1e-8);
  }
}

TEST_CASE("sampling from an empty posterior reproduces the prior") {
  PriorSpec prior;
  prior.lambda = 4.0;  // sd = 0.5 per coordinate
  PosteriorState post(3, prior);
  RandomStream rng(107);
  const int n = 20000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(3);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd t = post.sample(rng);
    sum += t;
    sumsq += t.cwiseProduct(t);
  }
  const double v = 1.0 / prior.lambda;
  for (int i = 0; i < 3; ++i) {
    const double mean = sum[i] / n;
    const double var = sumsq[i] / n - mean * mean;
    CHECK(std::abs(mean) <= 3.0 * std::sqrt(v / n));
    CHECK(std::abs(var - v) <= 3.0 * v * std::sqrt(2.0 / (n - 1.0)));
  }
}

TEST_CASE("noisy_evaluate adds gaussian noise around the true fitness") {
  RandomStream rng(109);
  UtilityParams theta(3);
  theta << 1.0, -2.0, 0.5;
  const MotifVector x = {1, 1, 0};
  const double truth = -1.0;
  const double sigma = 0.4;
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = noisy_evaluate(theta, x, sigma, rng);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean - truth) <= 3.0 * sigma / std::sqrt(n));
  CHECK(std::abs(var - sigma * sigma) <=
        3.0 * sigma * sigma * std::sqrt(2.0 / (n - 1.0)));

  CHECK_THROWS_AS(noisy_evaluate(theta, x, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(noisy_evaluate(theta, x, -1.0, rng), std::invalid_argument);
}

TEST_CASE("sample_prior_theta has variance 1/lambda per coordinate") {
  RandomStream rng(113);
  PriorSpec prior;
  prior.lambda = 2.0;
  const int n = 20000, d = 4;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < n; ++k) {
    const UtilityParams t = sample_prior_theta(d, prior, rng);
    sum += t;
    sumsq += t.cwiseProduct(t);
  }
  const double v = 1.0 / prior.lambda;
  for (int i = 0; i < d; ++i) {
    const double mean = sum[i] / n;
    const double var = sumsq[i] / n - mean * mean;
    CHECK(std::abs(mean) <= 3.0 * std::sqrt(v / n));
    CHECK(std::abs(var - v) <= 3.0 * v * std::sqrt(2.0 / (n - 1.0)));
  }

  CHECK_THROWS_AS(sample_prior_theta(0, prior, rng), std::invalid_argument);
}

TEST_CASE("history is retained only on request") {
  PriorSpec prior;
  PosteriorState quiet(2, prior);
  quiet.ingest({{{1, 0}, 1.0}, {{0, 1}, 2.0}});
  CHECK(quiet.history().empty());
  CHECK(quiet.n_obs() == 2);

  PosteriorState loud(2, prior, true);
  loud.ingest({{{1, 0}, 1.0}, {{0, 1}, 2.0}});
  REQUIRE(loud.history().size() == 2);
  CHECK(loud.history()[1].u == 2.0);
}
