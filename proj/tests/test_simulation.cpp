#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "concord/exact.hpp"
#include "concord/simulation.hpp"
#include "doctest.h"

using namespace concord;

TEST_SUITE_BEGIN("simulation");

TEST_CASE("beta-binomial config derives shapes") {
    BetaBinConfig cfg;
    cfg.mu = 0.10;
    cfg.kappa = 50.0;
    CHECK(cfg.alpha() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(cfg.beta() == doctest::Approx(45.0).epsilon(1e-15));
    CHECK(cfg.unimodal());
    cfg.kappa = 5.0;
    CHECK_FALSE(cfg.unimodal());  // alpha = 0.5
}

TEST_CASE("sampler hits the configured mean") {
    BetaBinConfig cfg;
    cfg.mu = 0.5;
    cfg.kappa = 10.0;
    cfg.seed = 7;
    const auto rows = sample_beta_binomial(cfg, 100000);
    REQUIRE(rows.size() == 100000);
    double resp = 0.0, pred = 0.0;
    for (const auto& r : rows) {
        REQUIRE((r.response == 0.0 || r.response == 1.0));
        REQUIRE(r.prediction >= 0.0);
        REQUIRE(r.prediction <= 1.0);
        resp += r.response;
        pred += r.prediction;
    }
    resp /= 100000.0;
    pred /= 100000.0;
    // 3 sigma of a Bernoulli(0.5) mean at n = 1e5 is 0.0047
    CHECK(std::fabs(resp - 0.5) < 0.005);
    CHECK(std::fabs(pred - 0.5) < 0.005);
}

TEST_CASE("sampler is deterministic per seed") {
    BetaBinConfig cfg;
    cfg.seed = 99;
    const auto a = sample_beta_binomial(cfg, 500);
    const auto b = sample_beta_binomial(cfg, 500);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].response == b[i].response);
        CHECK(a[i].prediction == b[i].prediction);
    }
    cfg.seed = 100;
    const auto c = sample_beta_binomial(cfg, 500);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (c[i].prediction != a[i].prediction) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("multi-trial responses count successes") {
    BetaBinConfig cfg;
    cfg.mu = 0.3;
    cfg.kappa = 8.0;
    cfg.n_trials = 3;
    cfg.seed = 21;
    const auto rows = sample_beta_binomial(cfg, 50000);
    double mean = 0.0;
    for (const auto& r : rows) {
        REQUIRE(r.response >= 0.0);
        REQUIRE(r.response <= 3.0);
        REQUIRE(r.response == std::floor(r.response));
        mean += r.response;
    }
    mean /= 50000.0;
    CHECK(std::fabs(mean - 0.9) < 0.02);
}

TEST_CASE("config validation") {
    BetaBinConfig cfg;
    cfg.mu = 1.0;
    CHECK_THROWS_AS(sample_beta_binomial(cfg, 10), std::invalid_argument);
    cfg.mu = 0.5;
    cfg.kappa = 0.0;
    CHECK_THROWS_AS(sample_beta_binomial(cfg, 10), std::invalid_argument);
    cfg.kappa = 10.0;
    cfg.n_trials = 0;
    CHECK_THROWS_AS(sample_beta_binomial(cfg, 10), std::invalid_argument);
}

TEST_CASE("beta-binomial pmf closed forms") {
    CHECK(betabin_pmf(1, 1, 5.0, 45.0) == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(betabin_pmf(1, 1, 2.0, 6.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(betabin_pmf(0, 1, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(betabin_pmf(1, 1, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(betabin_pmf(-1, 5, 2.0, 2.0) == 0.0);
    CHECK(betabin_pmf(6, 5, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(betabin_pmf(0, 1, 0.0, 1.0), std::invalid_argument);
    for (auto [a, b, n] : {std::tuple{5.0, 45.0, 10}, {0.5, 0.5, 7}, {2.4, 5.6, 4}}) {
        double sum = 0.0;
        for (int x = 0; x <= n; ++x) sum += betabin_pmf(x, n, a, b);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pmf matches sampled frequencies") {
    BetaBinConfig cfg;
    cfg.mu = 0.3;
    cfg.kappa = 8.0;
    cfg.n_trials = 4;
    cfg.seed = 31;
    const std::size_t n = 100000;
    const auto rows = sample_beta_binomial(cfg, n);
    std::vector<double> freq(5, 0.0);
    for (const auto& r : rows) freq[static_cast<std::size_t>(r.response)] += 1.0;
    for (int x = 0; x <= 4; ++x) {
        const double p = betabin_pmf(x, 4, cfg.alpha(), cfg.beta());
        const double got = freq[static_cast<std::size_t>(x)] / static_cast<double>(n);
        const double bound = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        REQUIRE(std::fabs(got - p) <= bound);
    }
}

TEST_CASE("gaussian pairs have the requested correlation") {
    GaussianPairConfig cfg;
    cfg.rho = 1.0;
    cfg.seed = 41;
    for (const auto& r : sample_gaussian_pairs(cfg, 1000)) REQUIRE(r.prediction == r.response);

    for (double rho : {0.0, 0.75}) {
        cfg.rho = rho;
        const auto rows = sample_gaussian_pairs(cfg, 100000);
        double sy = 0, sp = 0, syy = 0, spp = 0, syp = 0;
        for (const auto& r : rows) {
            sy += r.response;
            sp += r.prediction;
            syy += r.response * r.response;
            spp += r.prediction * r.prediction;
            syp += r.response * r.prediction;
        }
        const double n = 100000.0;
        const double cy = syy / n - (sy / n) * (sy / n);
        const double cp = spp / n - (sp / n) * (sp / n);
        const double cyp = syp / n - (sy / n) * (sp / n);
        CHECK(std::fabs(cyp / std::sqrt(cy * cp) - rho) < 0.01);
        CHECK(std::fabs(sy / n) < 0.02);
        CHECK(std::fabs(cy - 1.0) < 0.03);
    }
    cfg.rho = 1.5;
    CHECK_THROWS_AS(sample_gaussian_pairs(cfg, 10), std::invalid_argument);
}

TEST_CASE("nu calibration matches a literal materialization of the procedure") {
    const std::vector<double> percents{0.0, 20.0, 40.0, 77.5};
    const std::size_t inner_n = 500, inner_reps = 2, outer_reps = 2;
    const std::uint64_t seed = 5;
    const auto got = calibrate_nu(percents, inner_n, inner_reps, outer_reps, seed);
    REQUIRE(got.size() == percents.size());
    CHECK(got[0] == 0.0);

    const u128 total = static_cast<u128>(inner_n) * (inner_n - 1) / 2;
    std::vector<double> want(percents.size(), 0.0);
    for (std::size_t o = 0; o < outer_reps; ++o) {
        std::vector<double> round_acc(percents.size(), 0.0);
        for (std::size_t r = 0; r < inner_reps; ++r) {
            std::mt19937_64 rng(derive_seed(seed, o * inner_reps + r));
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<double> draws(inner_n);
            for (auto& d : draws) d = normal(rng);
            std::vector<double> diffs;
            diffs.reserve(static_cast<std::size_t>(total));
            for (std::size_t i = 0; i < draws.size(); ++i)
                for (std::size_t j = i + 1; j < draws.size(); ++j)
                    diffs.push_back(std::fabs(draws[i] - draws[j]));
            std::sort(diffs.begin(), diffs.end());
            for (std::size_t ix = 0; ix < percents.size(); ++ix) {
                const u64 rank = static_cast<u64>(quantile_rank(percents[ix] / 100.0, total));
                round_acc[ix] += rank == 0 ? 0.0 : diffs[rank - 1];
            }
        }
        for (std::size_t ix = 0; ix < percents.size(); ++ix)
            want[ix] += round_acc[ix] / static_cast<double>(inner_reps);
    }
    for (auto& v : want) v /= static_cast<double>(outer_reps);
    for (std::size_t ix = 0; ix < percents.size(); ++ix) REQUIRE(got[ix] == want[ix]);
}

TEST_CASE("nu calibration lands near the analytic percentiles") {
    // |N(0,1) - N(0,1)| has cdf 2*Phi(t/sqrt(2)) - 1: the 20th and 40th
    // percentiles are 0.3583 and 0.7416
    const auto nus = calibrate_nu({20.0, 40.0}, 4000, 5, 5, 17);
    CHECK(std::fabs(nus[0] - 0.3583) < 0.010);
    CHECK(std::fabs(nus[1] - 0.7416) < 0.015);
}

TEST_CASE("nu calibration guards") {
    CHECK_THROWS_AS(calibrate_nu({100.0}), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_nu({-2.0}), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_nu({50.0}, 1, 1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_nu({50.0}, 100, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("population oracles in miniature") {
    BetaBinConfig cfg;
    cfg.mu = 0.10;
    cfg.kappa = 50.0;
    cfg.seed = 3;
    const double c_disc = population_c_discrete(cfg, 20000, 2);
    CHECK(std::fabs(c_disc - 0.6297) < 0.02);

    CHECK(population_c_continuous(1.0, 0.0, 2000, 1, 11) == 1.0);
    const double c0 = population_c_continuous(0.0, 0.0, 4000, 2, 13);
    CHECK(std::fabs(c0 - 0.5) < 0.02);
    const double lo = population_c_continuous(0.25, 0.0, 4000, 2, 19);
    const double hi = population_c_continuous(0.75, 0.0, 4000, 2, 19);
    CHECK(lo < hi);

    CHECK_THROWS_AS(population_c_discrete(cfg, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(population_c_continuous(2.0, 0.0, 100, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(population_c_continuous(0.5, -1.0, 100, 1, 0), std::invalid_argument);
}

TEST_SUITE_END();
