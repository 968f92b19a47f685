#include "concord/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace concord::kernels {

PairCounts discrete_scan_serial(const double* a, std::size_t na, const double* b, std::size_t nb) {
    PairCounts pc;
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = a[i];
        u64 above = 0, below = 0, eq = 0;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b[j] > ai)
                ++above;
            else if (b[j] < ai)
                ++below;
            else
                ++eq;
        }
        pc.concordant += above;
        pc.discordant += below;
        pc.tied += eq;
    }
    pc.gapped = static_cast<u128>(na) * nb;
    return pc;
}

PairCounts discrete_scan_parallel(const double* a, std::size_t na, const double* b, std::size_t nb) {
#ifdef _OPENMP
    PairCounts pc;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(na);
#pragma omp parallel
    {
        PairCounts local;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double ai = a[i];
            u64 above = 0, below = 0, eq = 0;
            for (std::size_t j = 0; j < nb; ++j) {
                if (b[j] > ai)
                    ++above;
                else if (b[j] < ai)
                    ++below;
                else
                    ++eq;
            }
            local.concordant += above;
            local.discordant += below;
            local.tied += eq;
        }
#pragma omp critical
        pc += local;
    }
    pc.gapped = static_cast<u128>(na) * nb;
    return pc;
#else
    return discrete_scan_serial(a, na, b, nb);
#endif
}

PairCounts continuous_scan_serial(const double* y_sorted, const double* pi, std::size_t n,
                                  double nu) {
    PairCounts pc;
    std::size_t lo = 0;  // first index with y > y_sorted[i] + nu; nondecreasing in i
    for (std::size_t i = 0; i < n; ++i) {
        const double gate = y_sorted[i] + nu;
        if (lo < i + 1) lo = i + 1;
        while (lo < n && !(y_sorted[lo] > gate)) ++lo;
        const double pii = pi[i];
        u64 above = 0, below = 0, eq = 0;
        for (std::size_t j = lo; j < n; ++j) {
            if (pi[j] > pii)
                ++above;
            else if (pi[j] < pii)
                ++below;
            else
                ++eq;
        }
        pc.concordant += above;
        pc.discordant += below;
        pc.tied += eq;
        pc.gapped += n - lo;
    }
    return pc;
}

PairCounts continuous_scan_parallel(const double* y_sorted, const double* pi, std::size_t n,
                                    double nu) {
#ifdef _OPENMP
    PairCounts pc;
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
    {
        PairCounts local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::ptrdiff_t i = 0; i < nn; ++i) {
            const double gate = y_sorted[i] + nu;
            // first index strictly past the gate; the window start must also
            // stay past i itself (y ties sit adjacent after sorting)
            std::size_t lo = static_cast<std::size_t>(
                std::upper_bound(y_sorted + i + 1, y_sorted + n, gate) - y_sorted);
            const double pii = pi[i];
            u64 above = 0, below = 0, eq = 0;
            for (std::size_t j = lo; j < n; ++j) {
                if (pi[j] > pii)
                    ++above;
                else if (pi[j] < pii)
                    ++below;
                else
                    ++eq;
            }
            local.concordant += above;
            local.discordant += below;
            local.tied += eq;
            local.gapped += n - lo;
        }
#pragma omp critical
        pc += local;
    }
    return pc;
#else
    return continuous_scan_serial(y_sorted, pi, n, nu);
#endif
}

namespace {

inline void assign_1d_point(const double* x, const double* c, std::size_t k, std::size_t i,
                            std::uint32_t* label, double* d2) {
    const double xi = x[i];
    double best = (xi - c[0]) * (xi - c[0]);
    std::uint32_t bi = 0;
    for (std::size_t j = 1; j < k; ++j) {
        const double d = (xi - c[j]) * (xi - c[j]);
        if (d < best) {
            best = d;
            bi = static_cast<std::uint32_t>(j);
        }
    }
    label[i] = bi;
    if (d2) d2[i] = best;
}

inline void assign_2d_point(const double* xy, const double* c, std::size_t k, std::size_t i,
                            std::uint32_t* label, double* d2) {
    const double xa = xy[2 * i], xb = xy[2 * i + 1];
    double dx = xa - c[0], dy = xb - c[1];
    double best = dx * dx + dy * dy;
    std::uint32_t bi = 0;
    for (std::size_t j = 1; j < k; ++j) {
        dx = xa - c[2 * j];
        dy = xb - c[2 * j + 1];
        const double d = dx * dx + dy * dy;
        if (d < best) {
            best = d;
            bi = static_cast<std::uint32_t>(j);
        }
    }
    label[i] = bi;
    if (d2) d2[i] = best;
}

}  // namespace

void assign_1d_serial(const double* x, std::size_t n, const double* c, std::size_t k,
                      std::uint32_t* label, double* d2) {
    for (std::size_t i = 0; i < n; ++i) assign_1d_point(x, c, k, i, label, d2);
}

// Binary search over value-sorted centroids instead of the O(k) sweep. The
// serial scan keeps the first index reaching the minimal squared distance, so
// ties must resolve to the lowest original index; distances are a nonstrictly
// monotone function of the value gap on each side, which means the nearest
// run of equal values on either side attains the minimum and any equal-d2
// collisions sit in adjacent runs, found by extending outward while the
// computed distance stays equal.
void assign_1d_parallel(const double* x, std::size_t n, const double* c, std::size_t k,
                        std::uint32_t* label, double* d2) {
    std::vector<std::uint32_t> order(k);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return c[a] < c[b] || (c[a] == c[b] && a < b);
    });
    std::vector<double> sval(k);
    for (std::size_t s = 0; s < k; ++s) sval[s] = c[order[s]];
    // first and one-past-last position of the run of equal values at s
    std::vector<std::uint32_t> run(k), run_end(k);
    for (std::size_t s = 0; s < k; ++s)
        run[s] = s > 0 && sval[s] == sval[s - 1] ? run[s - 1] : static_cast<std::uint32_t>(s);
    for (std::size_t s = k; s-- > 0;)
        run_end[s] = s + 1 < k && sval[s + 1] == sval[s] ? run_end[s + 1]
                                                         : static_cast<std::uint32_t>(s + 1);

    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double xi = x[i];
        const std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(sval.begin(), sval.end(), xi) - sval.begin());
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t bi = 0;
        bool have = false;
        auto probe = [&](std::size_t rs) {  // rs is a run start; false once worse
            const double d = xi - sval[rs];
            const double dd = d * d;
            if (!have || dd < best) {
                best = dd;
                bi = order[rs];
                have = true;
                return true;
            }
            if (dd == best) {
                bi = std::min(bi, order[rs]);
                return true;
            }
            return false;
        };
        const std::size_t lrun = pos > 0 ? run[pos - 1] : k;  // k marks no side
        const std::size_t rrun = pos < k ? pos : k;           // pos is a run start
        if (lrun != k) probe(lrun);
        if (rrun != k) probe(rrun);
        for (std::size_t s = lrun; s != k && s > 0;) {
            const std::size_t prev = run[s - 1];
            if (!probe(prev)) break;
            s = prev;
        }
        for (std::size_t s = rrun; s != k && run_end[s] < k;) {
            const std::size_t next = run_end[s];
            if (!probe(next)) break;
            s = next;
        }
        label[i] = bi;
        if (d2) d2[i] = best;
    }
}

void assign_2d_serial(const double* xy, std::size_t n, const double* c, std::size_t k,
                      std::uint32_t* label, double* d2) {
    for (std::size_t i = 0; i < n; ++i) assign_2d_point(xy, c, k, i, label, d2);
}

// Walk centroids outward from the query's insertion point along the sorted
// first axis; a side is finished once its axis gap squared alone exceeds the
// best distance, since the full distance only adds a nonnegative term. The
// gap-equal case keeps scanning, so exact ties still resolve to the lowest
// original index like the serial sweep.
void assign_2d_parallel(const double* xy, std::size_t n, const double* c, std::size_t k,
                        std::uint32_t* label, double* d2) {
    std::vector<std::uint32_t> order(k);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return c[2 * a] < c[2 * b] || (c[2 * a] == c[2 * b] && a < b);
    });
    std::vector<double> ys(k);
    for (std::size_t s = 0; s < k; ++s) ys[s] = c[2 * order[s]];

    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double xa = xy[2 * i], xb = xy[2 * i + 1];
        std::ptrdiff_t l = std::lower_bound(ys.begin(), ys.end(), xa) - ys.begin();
        std::ptrdiff_t r = l;
        --l;
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t bi = 0;
        bool have = false;
        const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
        while (l >= 0 || r < kk) {
            std::ptrdiff_t s;
            if (l < 0)
                s = r;
            else if (r >= kk)
                s = l;
            else
                s = xa - ys[l] <= ys[r] - xa ? l : r;
            const double g = xa - ys[s];
            if (have && g * g > best) {  // everything farther on this side is worse
                if (s == l)
                    l = -1;
                else
                    r = kk;
                continue;
            }
            const std::uint32_t j = order[static_cast<std::size_t>(s)];
            const double dx = xa - c[2 * j];
            const double dy = xb - c[2 * j + 1];
            const double dd = dx * dx + dy * dy;
            if (!have || dd < best) {
                best = dd;
                bi = j;
                have = true;
            } else if (dd == best) {
                bi = std::min(bi, j);
            }
            if (s == l)
                --l;
            else
                ++r;
        }
        label[i] = bi;
        if (d2) d2[i] = best;
    }
}

void cell_count_serial(const ScoredPair* rows, std::size_t n, const GridSpec& grid, u64* counts) {
    const std::size_t bands = grid.bands();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t yb = grid.band(rows[i].response);
        const std::size_t pb = grid.band(rows[i].prediction);
        ++counts[yb * bands + pb];
    }
}

void cell_count_parallel(const ScoredPair* rows, std::size_t n, const GridSpec& grid, u64* counts) {
#ifdef _OPENMP
    const std::size_t bands = grid.bands();
    const std::size_t cells = bands * bands;
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
    {
        std::vector<u64> local(cells, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < nn; ++i) {
            const std::size_t yb = grid.band(rows[i].response);
            const std::size_t pb = grid.band(rows[i].prediction);
            ++local[yb * bands + pb];
        }
#pragma omp critical
        for (std::size_t c = 0; c < cells; ++c) counts[c] += local[c];
    }
#else
    cell_count_serial(rows, n, grid, counts);
#endif
}

}  // namespace concord::kernels
