#include "concord/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "concord/exact.hpp"

namespace concord {
namespace {

void check_betabin(const BetaBinConfig& cfg) {
    if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) throw std::invalid_argument("mu must lie in (0,1)");
    if (!(cfg.kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (cfg.n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
}

// pairs (i, j), i < j, with sorted[j] - sorted[i] <= t
u64 count_diffs_leq(const std::vector<double>& sorted, double t) {
    u64 cnt = 0;
    std::size_t lo = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        while (sorted[j] - sorted[lo] > t) ++lo;
        cnt += j - lo;
    }
    return cnt;
}

// smallest realized pairwise difference whose running count reaches rank,
// found by bisecting the value axis; lands on the exact order statistic at
// double resolution without materializing the O(n^2) differences
double diff_percentile(const std::vector<double>& sorted, u64 rank) {
    double lo = 0.0;
    double hi = sorted.back() - sorted.front();
    if (count_diffs_leq(sorted, lo) >= rank) return lo;
    for (int guard = 0; guard < 2000 && std::nextafter(lo, hi) < hi; ++guard) {
        const double mid = std::midpoint(lo, hi);
        if (count_diffs_leq(sorted, mid) >= rank)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

std::vector<ScoredPair> sample_beta_binomial(const BetaBinConfig& cfg, std::size_t n) {
    check_betabin(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::gamma_distribution<double> ga(cfg.alpha(), 1.0);
    std::gamma_distribution<double> gb(cfg.beta(), 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<ScoredPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ga(rng);
        const double y = gb(rng);
        // both draws underflowing to zero is possible only for shapes far
        // below anything sensible; fall back to the mean rather than 0/0
        const double p = x + y > 0.0 ? x / (x + y) : cfg.mu;
        int hits = 0;
        for (int t = 0; t < cfg.n_trials; ++t) hits += unit(rng) < p ? 1 : 0;
        out.emplace_back(static_cast<double>(hits), p);
    }
    return out;
}

std::vector<ScoredPair> sample_gaussian_pairs(const GaussianPairConfig& cfg, std::size_t n) {
    if (!(std::fabs(cfg.rho) <= 1.0)) throw std::invalid_argument("rho must lie in [-1,1]");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double residual = std::sqrt(1.0 - cfg.rho * cfg.rho);

    std::vector<ScoredPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = normal(rng);
        const double z = normal(rng);
        out.emplace_back(y, cfg.rho * y + residual * z);
    }
    return out;
}

double betabin_pmf(int x, int n_trials, double alpha, double beta) {
    if (n_trials < 0) throw std::invalid_argument("n_trials must be >= 0");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("alpha and beta must be positive");
    if (x < 0 || x > n_trials) return 0.0;
    const double lg = std::lgamma(n_trials + 1.0) + std::lgamma(alpha + beta) +
                      std::lgamma(x + alpha) + std::lgamma(n_trials - x + beta) -
                      std::lgamma(x + 1.0) - std::lgamma(n_trials - x + 1.0) -
                      std::lgamma(alpha) - std::lgamma(beta) -
                      std::lgamma(n_trials + alpha + beta);
    return std::exp(lg);
}

std::vector<double> calibrate_nu(const std::vector<double>& x_percents, std::size_t inner_n,
                                 std::size_t inner_reps, std::size_t outer_reps,
                                 std::uint64_t seed) {
    for (double x : x_percents)
        if (!(x >= 0.0 && x < 100.0))
            throw std::invalid_argument("percents must lie in [0,100)");
    if (inner_n < 2 || inner_reps == 0 || outer_reps == 0)
        throw std::invalid_argument("calibrate_nu needs inner_n >= 2 and positive rep counts");

    const u128 total = static_cast<u128>(inner_n) * (inner_n - 1) / 2;
    std::vector<u64> ranks;
    ranks.reserve(x_percents.size());
    for (double x : x_percents)
        ranks.push_back(static_cast<u64>(quantile_rank(x / 100.0, total)));

    std::vector<double> result(x_percents.size(), 0.0);
    std::vector<double> draws(inner_n);
    for (std::size_t o = 0; o < outer_reps; ++o) {
        std::vector<double> round_acc(x_percents.size(), 0.0);
        for (std::size_t r = 0; r < inner_reps; ++r) {
            std::mt19937_64 rng(derive_seed(seed, o * inner_reps + r));
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& d : draws) d = normal(rng);
            std::sort(draws.begin(), draws.end());
            for (std::size_t ix = 0; ix < ranks.size(); ++ix)
                round_acc[ix] += ranks[ix] == 0 ? 0.0 : diff_percentile(draws, ranks[ix]);
        }
        // mean of this round's percentiles, then the rounds averaged again
        for (std::size_t ix = 0; ix < result.size(); ++ix)
            result[ix] += round_acc[ix] / static_cast<double>(inner_reps);
    }
    for (auto& v : result) v /= static_cast<double>(outer_reps);
    return result;
}

double population_c_discrete(const BetaBinConfig& cfg, std::size_t n_pop, std::size_t reps) {
    check_betabin(cfg);
    if (n_pop == 0 || reps == 0)
        throw std::invalid_argument("population oracle needs n_pop and reps >= 1");
    double acc = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        BetaBinConfig per = cfg;
        per.seed = derive_seed(cfg.seed, r);
        acc += exact_discrete_rank(split_binary(sample_beta_binomial(per, n_pop))).c_hat;
    }
    return acc / static_cast<double>(reps);
}

double population_c_continuous(double rho, double nu, std::size_t n_pop, std::size_t reps,
                               std::uint64_t seed) {
    if (!(std::fabs(rho) <= 1.0)) throw std::invalid_argument("rho must lie in [-1,1]");
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("nu must be finite and >= 0");
    if (n_pop < 2 || reps == 0)
        throw std::invalid_argument("population oracle needs n_pop >= 2 and reps >= 1");
    double acc = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        GaussianPairConfig per;
        per.rho = rho;
        per.nu = nu;
        per.seed = derive_seed(seed, r);
        acc += exact_continuous(ContinuousDataset{sample_gaussian_pairs(per, n_pop), nu}).c_hat;
    }
    return acc / static_cast<double>(reps);
}

}  // namespace concord
