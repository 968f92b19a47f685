#include "concord/trapezium.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <string>
#include <charconv>

#include "concord/errors.hpp"

namespace concord {

std::vector<RocPoint> roc_points(const GroupedBinaryData& data) {
    if (data.group_a.empty()) throw EmptyGroup("A (response 0)");
    if (data.group_b.empty()) throw EmptyGroup("B (response 1)");

    // pooled scores walked in descending order; is_b marks response 1
    struct Scored {
        double score;
        bool is_b;
    };
    std::vector<Scored> pooled;
    pooled.reserve(data.group_a.size() + data.group_b.size());
    for (double v : data.group_a) pooled.push_back({v, false});
    for (double v : data.group_b) pooled.push_back({v, true});
    std::sort(pooled.begin(), pooled.end(),
              [](const Scored& l, const Scored& r) { return l.score > r.score; });

    const double na = static_cast<double>(data.group_a.size());
    const double nb = static_cast<double>(data.group_b.size());
    std::vector<RocPoint> pts;
    pts.push_back({0.0, 0.0});
    u64 cum_a = 0, cum_b = 0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        const double v = pooled[i].score;
        // one vertex per distinct threshold: a run of ties is a single
        // diagonal step
        while (i < pooled.size() && pooled[i].score == v) {
            if (pooled[i].is_b)
                ++cum_b;
            else
                ++cum_a;
            ++i;
        }
        pts.push_back({static_cast<double>(cum_a) / na, static_cast<double>(cum_b) / nb});
    }
    return pts;
}

double auc_trapezium(const std::vector<RocPoint>& points) {
    if (points.size() < 2 || points.front().fpr != 0.0 || points.front().tpr != 0.0 ||
        points.back().fpr != 1.0 || points.back().tpr != 1.0)
        throw std::invalid_argument("auc_trapezium: vertices must run from (0,0) to (1,1)");
    long double area = 0.0L;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].fpr < points[i - 1].fpr || points[i].tpr < points[i - 1].tpr)
            throw std::invalid_argument("auc_trapezium: vertices must be monotone");
        const long double dx = static_cast<long double>(points[i].fpr) - points[i - 1].fpr;
        const long double ysum = static_cast<long double>(points[i].tpr) + points[i - 1].tpr;
        area += dx * ysum * 0.5L;
    }
    return static_cast<double>(area);
}

ConcordanceEstimate trapezium_estimate(const GroupedBinaryData& data) {
    const auto t0 = std::chrono::steady_clock::now();
    const double auc = auc_trapezium(roc_points(data));
    ConcordanceEstimate est;
    est.method = Method::trapezium;
    est.c_hat = auc;
    est.concordant_mass = auc;
    est.discordant_mass = 1.0 - auc;
    est.tied_mass = 0.0;
    est.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

void write_roc_csv(const std::vector<RocPoint>& points, std::ostream& out) {
    std::string buf = "fpr,tpr\n";
    char tmp[32];
    for (const auto& p : points) {
        auto r1 = std::to_chars(tmp, tmp + sizeof tmp, p.fpr);
        buf.append(tmp, r1.ptr);
        buf += ',';
        auto r2 = std::to_chars(tmp, tmp + sizeof tmp, p.tpr);
        buf.append(tmp, r2.ptr);
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace concord
