#pragma once

#include <vector>

#include "concord/kernels.hpp"
#include "concord/types.hpp"

namespace concord {

// Raw tallies behind the exact estimators.
PairCounts count_pairs_discrete(const GroupedBinaryData& data);        // O(|A|*|B|) scan
PairCounts count_pairs_discrete_rank(const GroupedBinaryData& data);   // O(n log n), same tallies
PairCounts count_pairs_continuous(const std::vector<ScoredPair>& rows, double nu);

// C-hat = concordant / (concordant + discordant) over all cross pairs
// (prediction ties excluded unless policy is half). Throws EmptyGroup,
// AllTied.
ConcordanceEstimate exact_discrete_brute(const GroupedBinaryData& data,
                                         TiesPolicy ties = TiesPolicy::exclude);
ConcordanceEstimate exact_discrete_rank(const GroupedBinaryData& data,
                                        TiesPolicy ties = TiesPolicy::exclude);

// Pairs comparable when y_hi - y_lo > nu, strictly. Throws EmptyInput,
// NoComparablePairs (nothing passes the gap), AllTied.
ConcordanceEstimate exact_continuous(const ContinuousDataset& data,
                                     TiesPolicy ties = TiesPolicy::exclude);

// Distribution of |y_i - y_j| over all unordered pairs, built from the unique
// values and their multiplicities: u unique values cost O(u^2) regardless of
// n, and k duplicates of one value contribute k(k-1)/2 zero differences.
// Intended for data with few distinct values.
struct DiffEcdf {
    std::vector<double> diffs;  // ascending unique absolute differences
    std::vector<u128> cum;      // cumulative pair counts, cum.back() == total
    u128 total = 0;             // n(n-1)/2 exactly

    // Nearest-rank quantile: smallest difference d with at least
    // ceil(p * total) pairs <= d; p <= 0 returns 0.
    double quantile(double p) const;
};

DiffEcdf pairwise_diff_ecdf(const std::vector<double>& values);

// Nearest-rank target: ceil(p * total), clamped to [0, total], with an exact
// integer path for whole percents (p * 100 integral).
u128 quantile_rank(double p, u128 total);

}  // namespace concord
