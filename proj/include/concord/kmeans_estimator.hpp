#pragma once

#include "concord/clustering.hpp"
#include "concord/types.hpp"

namespace concord {

// Pair tallies over cluster pairs, as products of integer member counts
// (normalize by total_a * total_b, or total^2 for the continuous case).
struct ClusterPairMass {
    u128 concordant = 0;
    u128 discordant = 0;
    u128 tied = 0;    // exact centroid-prediction ties
    u128 gapped = 0;  // cluster pairs passing the response gap (continuous)
};

ClusterPairMass cluster_pair_mass_discrete(const WeightedClusterSet& a,
                                           const WeightedClusterSet& b);
ClusterPairMass cluster_pair_mass_continuous(const WeightedClusterSet& cs, double nu);

// Cluster each response group's predictions with cfg.k centroids, then weight
// every cross pair of centroids by its member-count product. Exact centroid
// ties are excluded from the denominator and surface as tied_mass. Throws
// EmptyGroup, AllTied.
ConcordanceEstimate kmeans_discrete(const GroupedBinaryData& data, const KMeansConfig& cfg);

// Cluster (y, pi) jointly, then compare cluster pairs whose centroid
// responses differ by more than data.nu. Throws EmptyInput,
// NoComparableClusters, AllTied.
ConcordanceEstimate kmeans_continuous(const ContinuousDataset& data, const KMeansConfig& cfg);

}  // namespace concord
