#pragma once

#include <cstddef>
#include <cstdint>

#include "concord/types.hpp"

namespace concord {

// Raw pair tallies. "gapped" counts every pair that passed the
// outcome-comparability test (all cross pairs in the binary case, pairs with
// y_hi - y_lo > nu in the continuous case); concordant/discordant/tied
// partition it by the prediction comparison.
struct PairCounts {
    u128 concordant = 0;
    u128 discordant = 0;
    u128 tied = 0;
    u128 gapped = 0;

    u128 comparable() const { return concordant + discordant; }

    PairCounts& operator+=(const PairCounts& o) {
        concordant += o.concordant;
        discordant += o.discordant;
        tied += o.tied;
        gapped += o.gapped;
        return *this;
    }
};

// Hot loops, each in a serial reference form and an OpenMP form. The parallel
// forms reduce integer tallies or write disjoint slots, so results are
// identical to the serial forms for any worker count. kernel_bench compares
// their wall times.
namespace kernels {

// All (a, b) cross pairs: concordant when b > a.
PairCounts discrete_scan_serial(const double* a, std::size_t na, const double* b, std::size_t nb);
PairCounts discrete_scan_parallel(const double* a, std::size_t na, const double* b, std::size_t nb);

// Pairs over rows sorted by response ascending; the higher-response side must
// win by more than nu. Inputs must be sorted by y (ties in any order).
PairCounts continuous_scan_serial(const double* y_sorted, const double* pi, std::size_t n, double nu);
PairCounts continuous_scan_parallel(const double* y_sorted, const double* pi, std::size_t n, double nu);

// Nearest-centroid assignment, squared Euclidean, ties to the lowest index.
// label[i] gets the centroid index, d2[i] the squared distance (d2 may be null).
void assign_1d_serial(const double* x, std::size_t n, const double* c, std::size_t k,
                      std::uint32_t* label, double* d2);
void assign_1d_parallel(const double* x, std::size_t n, const double* c, std::size_t k,
                        std::uint32_t* label, double* d2);

// 2-D points as interleaved (y, pi) pairs, centroids likewise.
void assign_2d_serial(const double* xy, std::size_t n, const double* c, std::size_t k,
                      std::uint32_t* label, double* d2);
void assign_2d_parallel(const double* xy, std::size_t n, const double* c, std::size_t k,
                        std::uint32_t* label, double* d2);

// Joint (response band, prediction band) histogram; counts has bands*bands slots.
void cell_count_serial(const ScoredPair* rows, std::size_t n, const GridSpec& grid, u64* counts);
void cell_count_parallel(const ScoredPair* rows, std::size_t n, const GridSpec& grid, u64* counts);

}  // namespace kernels
}  // namespace concord
