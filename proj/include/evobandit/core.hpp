#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace evobandit {

// A motif vector is a length-d binary string; populations are ordered multisets
// so iteration and serialization are deterministic.
using MotifVector = std::vector<std::uint8_t>;
using Population = std::vector<MotifVector>;

// Utility weights theta defining f_theta(x) = <theta, x>.
using UtilityParams = Eigen::VectorXd;

struct PriorSpec {
  double lambda = 1.0;  // prior precision scale, theta* ~ N(0, I/lambda)
  double sigma = 1.0;   // observation noise std
};

void validate_prior(const PriorSpec& prior);
void validate_motif(const MotifVector& x);
void validate_population(const Population& s);

double fitness(const UtilityParams& theta, const MotifVector& x);
double population_fitness(const UtilityParams& theta, const Population& s);

// max over {0,1}^d of <theta, x>, attained at optimum_point.
double optimum_value(const UtilityParams& theta);

// x*_i = 1 iff theta_i >= 0; ties at zero resolve to 1 so every module
// tie-breaks the same way.
MotifVector optimum_point(const UtilityParams& theta);

// p_i = fraction of members carrying the favored bit (1 when theta_i >= 0,
// else 0).
Eigen::VectorXd favored_ratio(const UtilityParams& theta, const Population& s);

// fraction of members with x_i = 1.
Eigen::VectorXd site_mean(const Population& s);

// population (divide-by-M) variance of x_i under uniform sampling from s:
// q_i(1-q_i).
Eigen::VectorXd site_variance(const Population& s);

// optimum_value - population_fitness; algebraically equals
// sum_i |theta_i| (1 - p_i).
double suboptimality_gap(const UtilityParams& theta, const Population& s);

}  // namespace evobandit
