#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "concord/csv.hpp"
#include "concord/exact.hpp"
#include "concord/kmeans_estimator.hpp"
#include "concord/marginal_estimator.hpp"
#include "concord/simulation.hpp"
#include "concord/trapezium.hpp"
#include "json.hpp"

namespace concord::cli {

void register_compute(CLI::App& app);
void register_generate(CLI::App& app);
void register_simulate(CLI::App& app);
void register_bench(CLI::App& app);

// One estimator invocation. k applies to kmeans, q to marginal, ties to the
// exact forms; seed drives the clustering initialization.
struct MethodRun {
    std::string method;  // exact | rank | trapezium | kmeans | marginal
    std::size_t k = 8;
    std::size_t q = 10;
    TiesPolicy ties = TiesPolicy::exclude;
    std::uint64_t seed = 0;
};

inline TiesPolicy parse_ties(const std::string& s) {
    return s == "half" ? TiesPolicy::half : TiesPolicy::exclude;
}

// Wall time of the full method, boundary and cluster construction included,
// so timings are comparable across methods.
template <typename F>
ConcordanceEstimate timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    ConcordanceEstimate est = f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    est.elapsed_seconds = dt.count();
    return est;
}

inline ConcordanceEstimate run_discrete(const GroupedBinaryData& g, const MethodRun& m) {
    return timed([&] {
        if (m.method == "exact") return exact_discrete_brute(g, m.ties);
        if (m.method == "rank") return exact_discrete_rank(g, m.ties);
        if (m.method == "trapezium") return trapezium_estimate(g);
        if (m.method == "kmeans") {
            KMeansConfig cfg;
            cfg.k = m.k;
            cfg.seed = m.seed;
            return kmeans_discrete(g, cfg);
        }
        if (m.method == "marginal") {
            std::vector<double> pooled = g.group_a;
            pooled.insert(pooled.end(), g.group_b.begin(), g.group_b.end());
            return marginal_discrete(g, percentile_boundaries(pooled, m.q));
        }
        throw CLI::ValidationError("--method", "unknown method " + m.method);
    });
}

inline ConcordanceEstimate run_continuous(const ContinuousDataset& d, const MethodRun& m) {
    return timed([&] {
        if (m.method == "exact") return exact_continuous(d, m.ties);
        if (m.method == "kmeans") {
            KMeansConfig cfg;
            cfg.k = m.k;
            cfg.seed = m.seed;
            return kmeans_continuous(d, cfg);
        }
        if (m.method == "marginal") {
            std::vector<double> responses;
            responses.reserve(d.rows.size());
            for (const auto& r : d.rows) responses.push_back(r.response);
            return marginal_continuous(d, percentile_boundaries(responses, m.q));
        }
        throw CLI::ValidationError("--method", m.method + " needs binary outcomes");
    });
}

// The pinned record shape: method, params, c_hat, masses, elapsed_ms, n.
inline nlohmann::json record_json(const ConcordanceEstimate& est, nlohmann::json params,
                                  std::size_t n) {
    return {{"method", method_name(est.method)}, {"params", std::move(params)},
            {"c_hat", est.c_hat},               {"concordant_mass", est.concordant_mass},
            {"discordant_mass", est.discordant_mass}, {"elapsed_ms", est.elapsed_seconds * 1e3},
            {"n", n}};
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Aggregates reported by cmd_simulate: mean, sample standard deviation, and
// nearest-rank median and interquartile range, all recomputable from the
// per-repetition records.
struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double sigma = 0.0;
    double iqr = 0.0;
};

inline Summary summarize(std::vector<double> xs) {
    Summary s;
    if (xs.empty()) return s;
    for (double v : xs) s.mean += v;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double v : xs) ss += (v - s.mean) * (v - s.mean);
        s.sigma = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    std::sort(xs.begin(), xs.end());
    auto at = [&](double p) {
        const u128 r = quantile_rank(p, xs.size());
        return xs[static_cast<std::size_t>(r == 0 ? 0 : r - 1)];
    };
    s.median = at(0.5);
    s.iqr = at(0.75) - at(0.25);
    return s;
}

}  // namespace concord::cli
