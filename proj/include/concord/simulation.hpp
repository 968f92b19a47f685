#pragma once

#include <cstdint>
#include <vector>

#include "concord/types.hpp"

namespace concord {

// Beta-binomial scenario: p ~ Beta(mu*kappa, (1-mu)*kappa) is stored as the
// prediction, the binomial outcome over n_trials as the response.
struct BetaBinConfig {
    double mu = 0.1;
    double kappa = 50.0;
    int n_trials = 1;
    std::uint64_t seed = 0;

    double alpha() const { return mu * kappa; }
    double beta() const { return (1.0 - mu) * kappa; }
    // Below 1 on either shape the density piles onto the boundary; callers
    // warn but proceed.
    bool unimodal() const { return alpha() > 1.0 && beta() > 1.0; }
};

// Correlated standard-normal scenario: y ~ N(0,1),
// pi = rho*y + sqrt(1-rho^2)*z with z ~ N(0,1), so corr(y, pi) = rho.
struct GaussianPairConfig {
    double rho = 0.5;
    double nu = 0.0;
    std::uint64_t seed = 0;
};

std::vector<ScoredPair> sample_beta_binomial(const BetaBinConfig& cfg, std::size_t n);
std::vector<ScoredPair> sample_gaussian_pairs(const GaussianPairConfig& cfg, std::size_t n);

// P(X = x) for the beta-binomial via log-gamma; zero outside [0, n_trials].
double betabin_pmf(int x, int n_trials, double alpha, double beta);

// Gap values matched to percentiles of pairwise absolute differences of
// standard normals: for each x in x_percents, the nearest-rank x-th
// percentile of the |N(0,1) - N(0,1)| pair distribution from a fresh sample
// of inner_n draws, averaged over inner_reps samples, that mean averaged
// again over outer_reps rounds. x = 0 gives 0.
std::vector<double> calibrate_nu(const std::vector<double>& x_percents,
                                 std::size_t inner_n = 10000, std::size_t inner_reps = 10,
                                 std::size_t outer_reps = 10, std::uint64_t seed = 0);

// Monte-Carlo population values: mean exact estimate over reps independent
// samples of n_pop observations, per-repetition seeds derived from the
// config/master seed.
double population_c_discrete(const BetaBinConfig& cfg, std::size_t n_pop, std::size_t reps);
double population_c_continuous(double rho, double nu, std::size_t n_pop = 50000,
                               std::size_t reps = 5, std::uint64_t seed = 0);

}  // namespace concord
