#include "concord/kmeans_estimator.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace concord {
namespace {

using clock = std::chrono::steady_clock;

}  // namespace

ClusterPairMass cluster_pair_mass_discrete(const WeightedClusterSet& a,
                                           const WeightedClusterSet& b) {
    ClusterPairMass m;
    for (const auto& cb : b.clusters) {
        for (const auto& ca : a.clusters) {
            const u128 mass = static_cast<u128>(cb.count) * ca.count;
            if (cb.pi > ca.pi)
                m.concordant += mass;
            else if (cb.pi < ca.pi)
                m.discordant += mass;
            else
                m.tied += mass;
        }
    }
    m.gapped = static_cast<u128>(a.total) * b.total;
    return m;
}

ClusterPairMass cluster_pair_mass_continuous(const WeightedClusterSet& cs, double nu) {
    ClusterPairMass m;
    const auto& cl = cs.clusters;
    for (std::size_t i = 0; i < cl.size(); ++i) {
        for (std::size_t j = i + 1; j < cl.size(); ++j) {
            const bool i_hi = cl[i].y > cl[j].y;
            const auto& hi = i_hi ? cl[i] : cl[j];
            const auto& lo = i_hi ? cl[j] : cl[i];
            if (!(hi.y - lo.y > nu)) continue;
            const u128 mass = static_cast<u128>(hi.count) * lo.count;
            m.gapped += mass;
            if (hi.pi > lo.pi)
                m.concordant += mass;
            else if (hi.pi < lo.pi)
                m.discordant += mass;
            else
                m.tied += mass;
        }
    }
    return m;
}

ConcordanceEstimate kmeans_discrete(const GroupedBinaryData& data, const KMeansConfig& cfg) {
    if (data.group_a.empty()) throw EmptyGroup("A (response 0)");
    if (data.group_b.empty()) throw EmptyGroup("B (response 1)");

    const auto t0 = clock::now();
    // same seed for both groups, so swapping the groups swaps the cluster
    // sets unchanged and C maps exactly to 1 - C
    const WeightedClusterSet ca = kmeans_1d(data.group_a, cfg);
    const WeightedClusterSet cb = kmeans_1d(data.group_b, cfg);
    const ClusterPairMass m = cluster_pair_mass_discrete(ca, cb);

    ConcordanceEstimate est;
    est.method = Method::kmeans;
    const u128 norm = static_cast<u128>(ca.total) * cb.total;
    est.tied_mass = ratio(m.tied, norm);
    if (m.concordant + m.discordant == 0) throw AllTied();
    est.c_hat = ratio(m.concordant, m.concordant + m.discordant);
    est.concordant_mass = ratio(m.concordant, norm);
    est.discordant_mass = ratio(m.discordant, norm);
    est.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return est;
}

ConcordanceEstimate kmeans_continuous(const ContinuousDataset& data, const KMeansConfig& cfg) {
    if (data.rows.empty()) throw EmptyInput();
    if (!(data.nu >= 0.0) || !std::isfinite(data.nu))
        throw std::invalid_argument("nu must be finite and >= 0");

    const auto t0 = clock::now();
    const WeightedClusterSet cs = kmeans_2d(data.rows, cfg);
    const ClusterPairMass m = cluster_pair_mass_continuous(cs, data.nu);

    if (m.gapped == 0) throw NoComparableClusters();
    ConcordanceEstimate est;
    est.method = Method::kmeans;
    // continuous masses stay raw count products, matching the exact scan
    const u128 norm = 1;
    est.tied_mass = ratio(m.tied, norm);
    if (m.concordant + m.discordant == 0) throw AllTied();
    est.c_hat = ratio(m.concordant, m.concordant + m.discordant);
    est.concordant_mass = ratio(m.concordant, norm);
    est.discordant_mass = ratio(m.discordant, norm);
    est.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return est;
}

}  // namespace concord
