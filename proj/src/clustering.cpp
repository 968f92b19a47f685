#include "concord/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "concord/kernels.hpp"

namespace concord {
namespace {

using Rng = std::mt19937_64;

void check_config(const KMeansConfig& cfg) {
    if (cfg.k == 0) throw std::invalid_argument("k must be >= 1");
    if (cfg.max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
    if (!(cfg.rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be >= 0");
}

// k distinct indices; collisions are cheap because k < n always holds here.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::unordered_set<std::size_t> seen;
    std::vector<std::size_t> out;
    out.reserve(k);
    while (out.size() < k) {
        const std::size_t i = pick(rng);
        if (seen.insert(i).second) out.push_back(i);
    }
    return out;
}

// Generic over dim = 1 or 2; points are interleaved when dim == 2.
struct LloydResult {
    std::vector<double> centroids;  // dim * k, means of final members
    std::vector<u64> counts;
    std::vector<std::uint32_t> labels;
    std::vector<double> sse;
    std::size_t iterations = 0;
    bool converged = false;
};

void assign_pass(int dim, const double* pts, std::size_t n, const double* c, std::size_t k,
                 std::uint32_t* label, double* d2) {
    if (dim == 1)
        kernels::assign_1d_parallel(pts, n, c, k, label, d2);
    else
        kernels::assign_2d_parallel(pts, n, c, k, label, d2);
}

// counts and per-cluster coordinate sums, serial in index order so results do
// not depend on the worker count
void accumulate(int dim, const double* pts, std::size_t n, const std::uint32_t* label,
                std::size_t k, std::vector<u64>& counts, std::vector<double>& sums) {
    counts.assign(k, 0);
    sums.assign(dim * k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t l = label[i];
        ++counts[l];
        for (int d = 0; d < dim; ++d) sums[dim * l + d] += pts[dim * i + d];
    }
}

// Move every empty centroid onto the point farthest from its current
// centroid, stealing it from its cluster; stale assignments elsewhere are
// fixed by the next assignment pass.
void repair_empties(int dim, const double* pts, std::size_t n, std::vector<double>& centroids,
                    std::size_t k, std::uint32_t* label, double* d2, std::vector<u64>& counts,
                    std::vector<double>& sums) {
    for (std::size_t guard = 0; guard < 2 * k + 4; ++guard) {
        std::size_t empty = k;
        for (std::size_t j = 0; j < k; ++j)
            if (counts[j] == 0) {
                empty = j;
                break;
            }
        if (empty == k) return;

        std::size_t far = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (d2[i] > best) {
                best = d2[i];
                far = i;
            }
        const std::uint32_t old = label[far];
        --counts[old];
        ++counts[empty];
        for (int d = 0; d < dim; ++d) {
            sums[dim * old + d] -= pts[dim * far + d];
            sums[dim * empty + d] += pts[dim * far + d];
            centroids[dim * empty + d] = pts[dim * far + d];
        }
        label[far] = static_cast<std::uint32_t>(empty);
        d2[far] = 0.0;
    }
    throw std::logic_error("empty-cluster repair did not terminate");
}

std::vector<double> init_random_points(int dim, const double* pts, std::size_t n, std::size_t k,
                                       Rng& rng) {
    std::vector<double> c(dim * k);
    const auto idx = sample_indices(n, k, rng);
    for (std::size_t j = 0; j < k; ++j)
        for (int d = 0; d < dim; ++d) c[dim * j + d] = pts[dim * idx[j] + d];
    return c;
}

std::vector<double> init_kmeanspp(int dim, const double* pts, std::size_t n, std::size_t k,
                                  Rng& rng) {
    std::vector<double> c(dim * k);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t first = pick(rng);
    for (int d = 0; d < dim; ++d) c[d] = pts[dim * first + d];

    // d2 tracks the distance to the nearest chosen centroid; refreshing it
    // against only the newest centroid gives the same minima as a full
    // assignment pass at a fraction of the cost
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    for (std::size_t chosen = 1; chosen < k; ++chosen) {
        const double* latest = c.data() + dim * (chosen - 1);
        const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::ptrdiff_t i = 0; i < nn; ++i) {
            double dd;
            if (dim == 1) {
                const double d = pts[i] - latest[0];
                dd = d * d;
            } else {
                const double dx = pts[2 * i] - latest[0];
                const double dy = pts[2 * i + 1] - latest[1];
                dd = dx * dx + dy * dy;
            }
            if (dd < d2[static_cast<std::size_t>(i)]) d2[static_cast<std::size_t>(i)] = dd;
        }
        long double total = 0.0L;
        for (std::size_t i = 0; i < n; ++i) total += d2[i];
        std::size_t next;
        if (total > 0.0L) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const long double r = u(rng) * total;
            long double run = 0.0L;
            next = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                run += d2[i];
                if (run > r) {
                    next = i;
                    break;
                }
            }
        } else {
            // all mass on existing centroids; cannot happen when distinct > k,
            // but fall back to a uniform draw rather than divide by zero
            next = pick(rng);
        }
        for (int d = 0; d < dim; ++d) c[dim * chosen + d] = pts[dim * next + d];
    }
    return c;
}

LloydResult lloyd(int dim, const double* pts, std::size_t n, const KMeansConfig& cfg) {
    const std::size_t k = cfg.k;
    Rng rng(cfg.seed);
    std::vector<double> centroids = cfg.init == KMeansInit::kmeanspp
                                        ? init_kmeanspp(dim, pts, n, k, rng)
                                        : init_random_points(dim, pts, n, k, rng);

    std::vector<double> tol(dim);
    for (int d = 0; d < dim; ++d) {
        double lo = pts[d], hi = pts[d];
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, pts[dim * i + d]);
            hi = std::max(hi, pts[dim * i + d]);
        }
        tol[d] = cfg.rel_tol * (hi - lo);
    }

    std::vector<std::uint32_t> label(n);
    std::vector<double> d2(n);
    std::vector<u64> counts;
    std::vector<double> sums;
    LloydResult res;

    for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
        assign_pass(dim, pts, n, centroids.data(), k, label.data(), d2.data());
        long double sse = 0.0L;
        for (std::size_t i = 0; i < n; ++i) sse += d2[i];
        res.sse.push_back(static_cast<double>(sse));
        accumulate(dim, pts, n, label.data(), k, counts, sums);
        repair_empties(dim, pts, n, centroids, k, label.data(), d2.data(), counts, sums);

        bool moved = false;
        for (std::size_t j = 0; j < k; ++j) {
            for (int d = 0; d < dim; ++d) {
                const double next = sums[dim * j + d] / static_cast<double>(counts[j]);
                if (std::fabs(next - centroids[dim * j + d]) > tol[d]) moved = true;
                centroids[dim * j + d] = next;
            }
        }
        res.iterations = iter + 1;
        if (!moved) {
            res.converged = true;
            break;
        }
    }

    // final pass so the emitted weights and centroids describe one consistent
    // assignment (centroids become exact member means)
    assign_pass(dim, pts, n, centroids.data(), k, label.data(), d2.data());
    accumulate(dim, pts, n, label.data(), k, counts, sums);
    repair_empties(dim, pts, n, centroids, k, label.data(), d2.data(), counts, sums);
    res.centroids.assign(dim * k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (int d = 0; d < dim; ++d)
            res.centroids[dim * j + d] = sums[dim * j + d] / static_cast<double>(counts[j]);
    res.counts = counts;
    res.labels = std::move(label);
    return res;
}

}  // namespace

WeightedClusterSet kmeans_1d(const std::vector<double>& values, const KMeansConfig& cfg,
                             KMeansDiag* diag) {
    check_config(cfg);
    if (values.empty()) throw EmptyInput("kmeans_1d: no values");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("kmeans_1d: non-finite value");

    const std::size_t n = values.size();
    WeightedClusterSet out;
    out.dims = 1;
    out.total = n;

    // distinct values <= k: exact singleton clusters, no iteration
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> uniq;
    std::vector<u64> mult;
    for (double v : sorted) {
        if (uniq.empty() || uniq.back() != v) {
            uniq.push_back(v);
            mult.push_back(1);
        } else
            ++mult.back();
    }
    if (uniq.size() <= cfg.k) {
        for (std::size_t i = 0; i < uniq.size(); ++i)
            out.clusters.push_back({0.0, uniq[i],
                                    static_cast<double>(mult[i]) / static_cast<double>(n),
                                    mult[i]});
        if (diag) {
            *diag = KMeansDiag{};
            diag->degenerate = true;
            diag->converged = true;
        }
        return out;
    }

    LloydResult res = lloyd(1, values.data(), n, cfg);
    for (std::size_t j = 0; j < cfg.k; ++j)
        out.clusters.push_back({0.0, res.centroids[j],
                                static_cast<double>(res.counts[j]) / static_cast<double>(n),
                                res.counts[j]});
    if (diag) {
        diag->sse = std::move(res.sse);
        diag->iterations = res.iterations;
        diag->converged = res.converged;
        diag->degenerate = false;
    }
    return out;
}

WeightedClusterSet kmeans_2d(const std::vector<ScoredPair>& points, const KMeansConfig& cfg,
                             KMeansDiag* diag) {
    check_config(cfg);
    if (points.empty()) throw EmptyInput("kmeans_2d: no points");

    const std::size_t n = points.size();
    WeightedClusterSet out;
    out.dims = 2;
    out.total = n;

    // distinct (y, pi) pairs <= k: exact singletons
    std::vector<std::pair<double, double>> sorted;
    sorted.reserve(n);
    for (const auto& p : points) sorted.emplace_back(p.response, p.prediction);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> uniq;
    std::vector<u64> mult;
    for (const auto& v : sorted) {
        if (uniq.empty() || uniq.back() != v) {
            uniq.push_back(v);
            mult.push_back(1);
        } else
            ++mult.back();
    }
    if (uniq.size() <= cfg.k) {
        for (std::size_t i = 0; i < uniq.size(); ++i)
            out.clusters.push_back({uniq[i].first, uniq[i].second,
                                    static_cast<double>(mult[i]) / static_cast<double>(n),
                                    mult[i]});
        if (diag) {
            *diag = KMeansDiag{};
            diag->degenerate = true;
            diag->converged = true;
        }
        return out;
    }

    // work in z-scored space when asked; an axis with zero spread is left as is
    std::vector<double> xy(2 * n);
    double mean[2] = {0.0, 0.0}, scale[2] = {1.0, 1.0};
    if (cfg.standardize) {
        long double s0 = 0.0L, s1 = 0.0L;
        for (const auto& p : points) {
            s0 += p.response;
            s1 += p.prediction;
        }
        mean[0] = static_cast<double>(s0 / n);
        mean[1] = static_cast<double>(s1 / n);
        long double v0 = 0.0L, v1 = 0.0L;
        for (const auto& p : points) {
            v0 += (p.response - mean[0]) * (p.response - mean[0]);
            v1 += (p.prediction - mean[1]) * (p.prediction - mean[1]);
        }
        const double sd0 = std::sqrt(static_cast<double>(v0 / n));
        const double sd1 = std::sqrt(static_cast<double>(v1 / n));
        if (sd0 > 0.0) scale[0] = sd0;
        if (sd1 > 0.0) scale[1] = sd1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        xy[2 * i] = (points[i].response - mean[0]) / scale[0];
        xy[2 * i + 1] = (points[i].prediction - mean[1]) / scale[1];
    }

    LloydResult res = lloyd(2, xy.data(), n, cfg);

    // report centroids as exact member means in original units: redo the sums
    // over the original coordinates with the final labels
    std::vector<double> sums(2 * cfg.k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t l = res.labels[i];
        sums[2 * l] += points[i].response;
        sums[2 * l + 1] += points[i].prediction;
    }
    for (std::size_t j = 0; j < cfg.k; ++j) {
        out.clusters.push_back({sums[2 * j] / static_cast<double>(res.counts[j]),
                                sums[2 * j + 1] / static_cast<double>(res.counts[j]),
                                static_cast<double>(res.counts[j]) / static_cast<double>(n),
                                res.counts[j]});
    }
    if (diag) {
        diag->sse = std::move(res.sse);
        diag->iterations = res.iterations;
        diag->converged = res.converged;
        diag->degenerate = false;
    }
    return out;
}

}  // namespace concord
