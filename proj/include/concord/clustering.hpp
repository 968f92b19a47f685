#pragma once

#include <cstdint>
#include <vector>

#include "concord/types.hpp"

namespace concord {

enum class KMeansInit { kmeanspp, random_points };

struct KMeansConfig {
    std::size_t k = 8;
    std::size_t max_iters = 50;
    double rel_tol = 1e-6;  // centroid movement threshold, relative to data range
    std::uint64_t seed = 0;
    KMeansInit init = KMeansInit::kmeanspp;
    bool standardize = true;  // 2-D only: z-score both axes before clustering
};

struct KMeansDiag {
    std::vector<double> sse;  // objective recorded at each assignment pass
    std::size_t iterations = 0;
    bool converged = false;
    bool degenerate = false;  // distinct inputs <= k: singletons returned directly
};

// Weighted Lloyd k-means. Fewer distinct values than (or exactly) k gives one
// exact singleton cluster per distinct value. Empty clusters are repaired by
// re-seeding at the point farthest from its centroid; the returned set never
// contains an empty cluster and its weights sum to 1. Deterministic for a
// fixed seed regardless of OpenMP worker count.
WeightedClusterSet kmeans_1d(const std::vector<double>& values, const KMeansConfig& cfg,
                             KMeansDiag* diag = nullptr);

// Joint clustering of (response, prediction) points. With cfg.standardize the
// axes are z-scored first (an axis with zero variance is left unscaled);
// centroids are reported in original units as exact member means.
WeightedClusterSet kmeans_2d(const std::vector<ScoredPair>& points, const KMeansConfig& cfg,
                             KMeansDiag* diag = nullptr);

}  // namespace concord
