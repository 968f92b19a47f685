#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "concord/errors.hpp"

namespace concord {

using u64 = std::uint64_t;
// Pair counts: n = 5e7 observations give ~1.25e15 pairs, and products of
// group counts can exceed 64 bits, so tallies are kept in 128-bit integers.
using u128 = unsigned __int128;

// Exact for values below 2^64; above that rounds through long double.
inline double to_double(u128 v) { return static_cast<double>(static_cast<long double>(v)); }

// Single rounding step, shared by every estimator so that estimators fed the
// same integer tallies return bit-identical ratios.
inline double ratio(u128 num, u128 den) {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

// splitmix64 over (master, index): cheap decorrelated seed streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct ScoredPair {
    double response = 0.0;
    double prediction = 0.0;

    ScoredPair() = default;
    ScoredPair(double resp, double pred) : response(resp), prediction(pred) {
        if (!std::isfinite(resp) || !std::isfinite(pred))
            throw std::invalid_argument("ScoredPair: non-finite value");
    }
};

// Binary-outcome data split by response: group_a holds predictions with
// response 0, group_b those with response 1.
struct GroupedBinaryData {
    std::vector<double> group_a;
    std::vector<double> group_b;
};

// Throws NonBinaryResponse unless every response is exactly 0.0 or 1.0,
// EmptyGroup if either side ends up empty.
GroupedBinaryData split_binary(const std::vector<ScoredPair>& rows);

struct ContinuousDataset {
    std::vector<ScoredPair> rows;
    double nu = 0.0;  // comparability gap, >= 0
};

struct WeightedCluster {
    double y = 0.0;      // response coordinate, meaningful for 2-D clusters only
    double pi = 0.0;     // prediction coordinate
    double weight = 0.0; // count / total, in (0, 1]
    u64 count = 0;       // members behind this centroid
};

struct WeightedClusterSet {
    std::vector<WeightedCluster> clusters;
    u64 total = 0;  // points clustered
    int dims = 1;   // 1: prediction only; 2: (y, pi)

    // Weights must sum to 1 within 1e-9 and every weight must be positive.
    void validate() const;
};

// Left-closed grid over one axis: band i is [tau_i, tau_{i+1}) with
// tau_0 = -inf and tau_{q+1} = +inf implied. q() boundaries give q()+1 bands.
struct GridSpec {
    std::vector<double> boundaries;

    GridSpec() = default;
    explicit GridSpec(std::vector<double> b);  // validates: finite, strictly increasing, size >= 1

    std::size_t q() const { return boundaries.size(); }
    std::size_t bands() const { return boundaries.size() + 1; }
    // 0-based band index: number of boundaries <= v.
    std::size_t band(double v) const;
};

// (q+1) x (q+1) joint histogram over (response band, prediction band).
struct CellCounts {
    std::size_t bands = 0;
    std::vector<u64> counts;  // row-major, [y_band * bands + pi_band]

    CellCounts() = default;
    explicit CellCounts(std::size_t band_count)
        : bands(band_count), counts(band_count * band_count, 0) {}

    u64& at(std::size_t yb, std::size_t pb) { return counts[yb * bands + pb]; }
    u64 at(std::size_t yb, std::size_t pb) const { return counts[yb * bands + pb]; }
    u64 total() const;
};

enum class Method { exact_brute, exact_rank, trapezium, kmeans, marginal };

const char* method_name(Method m);

enum class TiesPolicy { exclude, half };

// How prediction ties among comparable pairs enter the estimate:
//   exclude - dropped from both masses (the default everywhere);
//   half    - half the tied mass goes to each side, so
//             c_hat = (c + t/2) / (c + d + t).
// Either way c_hat == concordant_mass / (concordant_mass + discordant_mass)
// holds whenever the denominator is positive; tied_mass always reports the
// raw tie mass for diagnostics.
struct ConcordanceEstimate {
    double c_hat = 0.0;
    double concordant_mass = 0.0;
    double discordant_mass = 0.0;
    double tied_mass = 0.0;
    double elapsed_seconds = 0.0;
    Method method = Method::exact_brute;
};

}  // namespace concord
