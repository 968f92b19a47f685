#include "concord/types.hpp"

#include <algorithm>
#include <cmath>

namespace concord {

GroupedBinaryData split_binary(const std::vector<ScoredPair>& rows) {
    if (rows.empty()) throw EmptyInput();
    GroupedBinaryData out;
    for (const auto& r : rows) {
        if (r.response == 0.0) {
            out.group_a.push_back(r.prediction);
        } else if (r.response == 1.0) {
            out.group_b.push_back(r.prediction);
        } else {
            throw NonBinaryResponse(r.response);
        }
    }
    if (out.group_a.empty()) throw EmptyGroup("A (response 0)");
    if (out.group_b.empty()) throw EmptyGroup("B (response 1)");
    return out;
}

void WeightedClusterSet::validate() const {
    double sum = 0.0;
    u64 members = 0;
    for (const auto& c : clusters) {
        if (!(c.weight > 0.0)) throw std::logic_error("cluster with non-positive weight");
        if (c.count == 0) throw std::logic_error("cluster with zero count");
        sum += c.weight;
        members += c.count;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw std::logic_error("cluster weights do not sum to 1");
    if (members != total) throw std::logic_error("cluster counts do not sum to total");
}

GridSpec::GridSpec(std::vector<double> b) : boundaries(std::move(b)) {
    if (boundaries.empty()) throw std::invalid_argument("GridSpec: no boundaries");
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (!std::isfinite(boundaries[i]))
            throw std::invalid_argument("GridSpec: non-finite boundary");
        if (i > 0 && !(boundaries[i - 1] < boundaries[i]))
            throw std::invalid_argument("GridSpec: boundaries not strictly increasing");
    }
}

std::size_t GridSpec::band(double v) const {
    return static_cast<std::size_t>(
        std::upper_bound(boundaries.begin(), boundaries.end(), v) - boundaries.begin());
}

u64 CellCounts::total() const {
    u64 t = 0;
    for (u64 c : counts) t += c;
    return t;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const char* method_name(Method m) {
    switch (m) {
        case Method::exact_brute: return "exact";
        case Method::exact_rank: return "rank";
        case Method::trapezium: return "trapezium";
        case Method::kmeans: return "kmeans";
        case Method::marginal: return "marginal";
    }
    return "unknown";
}

}  // namespace concord
