#include "concord/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace concord {
namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void check_groups(const GroupedBinaryData& data) {
    if (data.group_a.empty()) throw EmptyGroup("A (response 0)");
    if (data.group_b.empty()) throw EmptyGroup("B (response 1)");
}

// norm is the mass denominator: |A|*|B| cross pairs for the binary case so
// the masses are probabilities; the continuous case passes 1 so the masses
// stay raw gate-passing pair counts.
ConcordanceEstimate finish_estimate(const PairCounts& pc, u128 norm, TiesPolicy ties,
                                    Method method, double elapsed) {
    ConcordanceEstimate est;
    est.method = method;
    est.elapsed_seconds = elapsed;
    est.tied_mass = ratio(pc.tied, norm);
    if (ties == TiesPolicy::exclude) {
        if (pc.comparable() == 0) throw AllTied();
        est.c_hat = ratio(pc.concordant, pc.comparable());
        est.concordant_mass = ratio(pc.concordant, norm);
        est.discordant_mass = ratio(pc.discordant, norm);
    } else {
        // half: c_hat = (c + t/2) / (c + d + t), kept in integers as
        // (2c + t) / 2(c + d + t)
        const u128 denom = pc.concordant + pc.discordant + pc.tied;
        est.c_hat = ratio(2 * pc.concordant + pc.tied, 2 * denom);
        est.concordant_mass = ratio(2 * pc.concordant + pc.tied, 2 * norm);
        est.discordant_mass = ratio(2 * pc.discordant + pc.tied, 2 * norm);
    }
    return est;
}

}  // namespace

PairCounts count_pairs_discrete(const GroupedBinaryData& data) {
    return kernels::discrete_scan_parallel(data.group_a.data(), data.group_a.size(),
                                           data.group_b.data(), data.group_b.size());
}

PairCounts count_pairs_discrete_rank(const GroupedBinaryData& data) {
    std::vector<double> a = data.group_a;
    std::vector<double> b = data.group_b;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    PairCounts pc;
    u64 cum_a = 0, cum_b = 0;  // counts strictly below the current value
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double v;
        if (i < a.size() && j < b.size())
            v = std::min(a[i], b[j]);
        else if (i < a.size())
            v = a[i];
        else
            v = b[j];
        u64 run_a = 0, run_b = 0;
        while (i < a.size() && a[i] == v) ++i, ++run_a;
        while (j < b.size() && b[j] == v) ++j, ++run_b;
        pc.concordant += static_cast<u128>(run_b) * cum_a;  // b at v beats every a below
        pc.discordant += static_cast<u128>(run_a) * cum_b;  // a at v beats every b below
        pc.tied += static_cast<u128>(run_a) * run_b;
        cum_a += run_a;
        cum_b += run_b;
    }
    pc.gapped = static_cast<u128>(a.size()) * b.size();
    return pc;
}

PairCounts count_pairs_continuous(const std::vector<ScoredPair>& rows, double nu) {
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return rows[l].response < rows[r].response; });
    std::vector<double> ys(n), ps(n);
    for (std::size_t i = 0; i < n; ++i) {
        ys[i] = rows[order[i]].response;
        ps[i] = rows[order[i]].prediction;
    }
    return kernels::continuous_scan_parallel(ys.data(), ps.data(), n, nu);
}

ConcordanceEstimate exact_discrete_brute(const GroupedBinaryData& data, TiesPolicy ties) {
    check_groups(data);
    const auto t0 = clock::now();
    const PairCounts pc = count_pairs_discrete(data);
    const u128 norm = static_cast<u128>(data.group_a.size()) * data.group_b.size();
    return finish_estimate(pc, norm, ties, Method::exact_brute, seconds_since(t0));
}

ConcordanceEstimate exact_discrete_rank(const GroupedBinaryData& data, TiesPolicy ties) {
    check_groups(data);
    const auto t0 = clock::now();
    const PairCounts pc = count_pairs_discrete_rank(data);
    const u128 norm = static_cast<u128>(data.group_a.size()) * data.group_b.size();
    return finish_estimate(pc, norm, ties, Method::exact_rank, seconds_since(t0));
}

ConcordanceEstimate exact_continuous(const ContinuousDataset& data, TiesPolicy ties) {
    if (data.rows.empty()) throw EmptyInput();
    if (!(data.nu >= 0.0) || !std::isfinite(data.nu))
        throw std::invalid_argument("nu must be finite and >= 0");
    const auto t0 = clock::now();
    const PairCounts pc = count_pairs_continuous(data.rows, data.nu);
    if (pc.gapped == 0) throw NoComparablePairs();
    return finish_estimate(pc, 1, ties, Method::exact_brute, seconds_since(t0));
}

u128 quantile_rank(double p, u128 total) {
    if (!(p > 0.0)) return 0;
    if (p >= 1.0) return total;
    // Integer percents take the exact ceil-division path; 0.2*total in
    // floating point can land a hair above the true product and shift the
    // rank by one otherwise.
    const double percent = p * 100.0;
    if (percent == std::floor(percent)) {
        const u128 x = static_cast<u128>(percent);
        return (x * total + 99) / 100;
    }
    const long double target = static_cast<long double>(p) * static_cast<long double>(total);
    u128 r = static_cast<u128>(std::ceil(target));
    if (r > total) r = total;
    if (r == 0) r = 1;
    return r;
}

double DiffEcdf::quantile(double p) const {
    const u128 r = quantile_rank(p, total);
    if (r == 0 || diffs.empty()) return 0.0;
    const auto it = std::lower_bound(cum.begin(), cum.end(), r);
    return diffs[static_cast<std::size_t>(it - cum.begin())];
}

DiffEcdf pairwise_diff_ecdf(const std::vector<double>& values) {
    if (values.size() < 2) throw EmptyInput("pairwise_diff_ecdf: need at least 2 values");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> uniq;
    std::vector<u64> mult;
    for (double v : sorted) {
        if (!std::isfinite(v)) throw std::invalid_argument("pairwise_diff_ecdf: non-finite value");
        if (uniq.empty() || uniq.back() != v) {
            uniq.push_back(v);
            mult.push_back(1);
        } else {
            ++mult.back();
        }
    }

    const std::size_t u = uniq.size();
    if (u > 1 && static_cast<u128>(u) * (u - 1) / 2 > 20000000)
        throw std::invalid_argument(
            "pairwise_diff_ecdf: too many distinct values to enumerate pair differences");

    u128 zero_mass = 0;
    for (u64 m : mult) zero_mass += static_cast<u128>(m) * (m - 1) / 2;

    std::vector<std::pair<double, u64>> entries;
    entries.reserve(u * (u - 1) / 2);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = i + 1; j < u; ++j)
            entries.emplace_back(uniq[j] - uniq[i], mult[i] * mult[j]);
    std::sort(entries.begin(), entries.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    DiffEcdf ecdf;
    u128 running = zero_mass;
    if (zero_mass > 0) {
        ecdf.diffs.push_back(0.0);
        ecdf.cum.push_back(running);
    }
    for (const auto& [d, m] : entries) {
        running += m;
        if (!ecdf.diffs.empty() && ecdf.diffs.back() == d)
            ecdf.cum.back() = running;
        else {
            ecdf.diffs.push_back(d);
            ecdf.cum.push_back(running);
        }
    }
    ecdf.total = running;
    return ecdf;
}

}  // namespace concord
