#include "concord/marginal_estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "concord/kernels.hpp"

namespace concord {
namespace {

using clock = std::chrono::steady_clock;

// branch-free upper bound: index of the first boundary above v, computed with
// conditional moves so random values do not stall the branch predictor
std::size_t band_above(const double* tau, std::size_t q, double v) {
    const double* base = tau;
    std::size_t len = q;
    while (len > 1) {
        const std::size_t half = len / 2;
        base += (base[half - 1] <= v) * half;
        len -= half;
    }
    return static_cast<std::size_t>(base - tau) + (*base <= v);
}

// counts strictly below each boundary: band-index histogram plus prefix sums,
// no sort of the values
std::vector<u64> counts_below(const std::vector<double>& values, const GridSpec& grid) {
    const auto& tau = grid.boundaries;
    std::vector<u64> hist(grid.q() + 1, 0);
    for (const double v : values) ++hist[band_above(tau.data(), grid.q(), v)];
    std::vector<u64> lt(grid.q());
    u64 run = 0;
    for (std::size_t m = 0; m < grid.q(); ++m) {
        run += hist[m];
        lt[m] = run;
    }
    return lt;
}

// places the exact order statistic at every requested position, leaving the
// rest of the array only partitioned; positions must be sorted and unique
void multiselect(std::vector<double>& v, const std::vector<std::size_t>& pos, std::size_t p_lo,
                 std::size_t p_hi, std::size_t lo, std::size_t hi) {
    if (p_lo >= p_hi) return;
    const std::size_t mid = p_lo + (p_hi - p_lo) / 2;
    const std::size_t target = pos[mid];
    std::nth_element(v.begin() + static_cast<std::ptrdiff_t>(lo),
                     v.begin() + static_cast<std::ptrdiff_t>(target),
                     v.begin() + static_cast<std::ptrdiff_t>(hi));
    multiselect(v, pos, p_lo, mid, lo, target);
    multiselect(v, pos, mid + 1, p_hi, target + 1, hi);
}

}  // namespace

GridSpec percentile_boundaries(const std::vector<double>& values, std::size_t q) {
    if (values.empty()) throw EmptyInput("percentile_boundaries: no values");
    if (q == 0) throw std::invalid_argument("q must be >= 1");
    const u64 n = values.size();
    std::vector<std::size_t> pos;
    pos.reserve(q);
    for (u64 m = 1; m <= q; ++m) {
        // nearest-rank order statistic, exact in integers
        const u64 rank = (n * m + q) / (q + 1);  // ceil(n*m / (q+1))
        pos.push_back(static_cast<std::size_t>(rank == 0 ? 0 : rank - 1));
    }
    std::vector<std::size_t> uniq = pos;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    // partial selection instead of a full sort: every requested rank ends up
    // holding exactly the value a full sort would put there
    std::vector<double> work = values;
    multiselect(work, uniq, 0, uniq.size(), 0, work.size());

    std::vector<double> bounds;
    bounds.reserve(q);
    for (const std::size_t p : pos) {
        const double v = work[p];
        if (bounds.empty() || bounds.back() < v) bounds.push_back(v);
    }
    return GridSpec(std::move(bounds));
}

ConcordanceEstimate marginal_discrete(const GroupedBinaryData& data, const GridSpec& grid) {
    if (data.group_a.empty()) throw EmptyGroup("A (response 0)");
    if (data.group_b.empty()) throw EmptyGroup("B (response 1)");

    const auto t0 = clock::now();
    const std::size_t q = grid.q();
    const u64 na = data.group_a.size();
    const u64 nb = data.group_b.size();
    const std::vector<u64> a_lt = counts_below(data.group_a, grid);
    const std::vector<u64> b_lt = counts_below(data.group_b, grid);

    // band m (0-based, m = 0..q) holds [tau_m-1, tau_m); mass from the count
    // differences at its edges
    auto cell = [q](const std::vector<u64>& lt, u64 n, std::size_t m) -> u64 {
        const u64 hi = m == q ? n : lt[m];
        const u64 lo = m == 0 ? 0 : lt[m - 1];
        return hi - lo;
    };

    u128 conc = 0, disc = 0, same = 0;
    for (std::size_t m = 0; m <= q; ++m) {
        const u64 a_m = cell(a_lt, na, m);
        if (a_m == 0) {
            continue;
        }
        // concordant: B at or above this band's upper boundary
        if (m < q) conc += static_cast<u128>(a_m) * (nb - b_lt[m]);
        // discordant: B strictly below this band's lower boundary
        if (m > 0) disc += static_cast<u128>(a_m) * b_lt[m - 1];
        same += static_cast<u128>(a_m) * cell(b_lt, nb, m);
    }

    ConcordanceEstimate est;
    est.method = Method::marginal;
    const u128 norm = static_cast<u128>(na) * nb;
    est.tied_mass = ratio(same, norm);
    if (conc + disc == 0) throw AllTied();
    est.c_hat = ratio(conc, conc + disc);
    est.concordant_mass = ratio(conc, norm);
    est.discordant_mass = ratio(disc, norm);
    est.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return est;
}

CellCounts build_cell_counts(const std::vector<ScoredPair>& rows, const GridSpec& grid) {
    if (rows.empty()) throw EmptyInput();
    CellCounts cells(grid.bands());
    kernels::cell_count_parallel(rows.data(), rows.size(), grid, cells.counts.data());
    return cells;
}

RegionPairCounts marginal_continuous_counts(const CellCounts& cells, const GridSpec& grid,
                                            double nu, ScanDirection dir) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("nu must be finite and >= 0");
    const std::size_t B = grid.bands();
    if (cells.bands != B) throw std::invalid_argument("cell matrix does not match grid");
    const auto& tau = grid.boundaries;

    std::vector<u64> rowtot(B, 0);
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t l = 0; l < B; ++l) rowtot[b] += cells.at(b, l);
    std::vector<u64> rtp(B + 1, 0);  // rtp[b+1] = sum of rowtot[0..b]
    for (std::size_t b = 0; b < B; ++b) rtp[b + 1] = rtp[b] + rowtot[b];

    RegionPairCounts out;
    std::vector<u64> S(B, 0);  // summed prediction-band prefixes of admitted rows
    u64 T = 0;
    std::vector<u64> adj_pre(B, 0);

    auto add_row = [&](std::size_t k) {
        u64 run = 0;
        for (std::size_t l = 0; l < B; ++l) {
            run += cells.at(k, l);
            S[l] += run;
        }
        T += run;
    };
    auto row_prefix = [&](std::size_t k) {
        u64 run = 0;
        for (std::size_t l = 0; l < B; ++l) {
            run += cells.at(k, l);
            adj_pre[l] = run;
        }
    };

    if (dir == ScanDirection::rightward) {
        // source band i, target bands k > i admitted when tau_i + nu <= tau_(k-1)
        std::size_t kcur = B;  // admitted suffix start; B means none
        for (std::size_t i = B - 1; i-- > 0;) {
            while (kcur > 1 && tau[kcur - 2] >= tau[i] + nu) {
                --kcur;
                add_row(kcur);
            }
            if (rowtot[i] == 0) continue;
            const bool adjacent = kcur == i + 1;
            if (adjacent) row_prefix(i + 1);
            for (std::size_t j = 0; j < B; ++j) {
                const u64 cnt = cells.at(i, j);
                if (cnt == 0) continue;
                const u64 below = j > 0 ? S[j - 1] : 0;
                out.concordant += static_cast<u128>(cnt) * (T - S[j]);
                out.discordant += static_cast<u128>(cnt) * below;
                out.same_pi_band += static_cast<u128>(cnt) * (S[j] - below);
                if (adjacent) {
                    const u64 apre = j > 0 ? adj_pre[j - 1] : 0;
                    out.adjacent_concordant += static_cast<u128>(cnt) * (rowtot[i + 1] - adj_pre[j]);
                    out.adjacent_discordant += static_cast<u128>(cnt) * apre;
                }
            }
            // target rows between i and the admitted suffix failed the gate
            out.gap_excluded += static_cast<u128>(rowtot[i]) * (rtp[kcur] - rtp[i + 1]);
        }
    } else {
        // source band i, target bands k < i admitted when tau_k + nu <= tau_(i-1)
        std::size_t kend = 0;  // admitted prefix end; rows [0, kend)
        for (std::size_t i = 1; i < B; ++i) {
            while (kend < B - 1 && tau[kend] + nu <= tau[i - 1]) {
                add_row(kend);
                ++kend;
            }
            if (rowtot[i] == 0) continue;
            const bool adjacent = kend == i;
            if (adjacent) row_prefix(i - 1);
            for (std::size_t j = 0; j < B; ++j) {
                const u64 cnt = cells.at(i, j);
                if (cnt == 0) continue;
                const u64 below = j > 0 ? S[j - 1] : 0;
                out.concordant += static_cast<u128>(cnt) * below;
                out.discordant += static_cast<u128>(cnt) * (T - S[j]);
                out.same_pi_band += static_cast<u128>(cnt) * (S[j] - below);
                if (adjacent) {
                    const u64 apre = j > 0 ? adj_pre[j - 1] : 0;
                    out.adjacent_concordant += static_cast<u128>(cnt) * apre;
                    out.adjacent_discordant += static_cast<u128>(cnt) * (rowtot[i - 1] - adj_pre[j]);
                }
            }
            out.gap_excluded += static_cast<u128>(rowtot[i]) * (rtp[i] - rtp[kend]);
        }
    }
    return out;
}

ConcordanceEstimate marginal_continuous(const CellCounts& cells, const GridSpec& grid, double nu) {
    const auto t0 = clock::now();
    const RegionPairCounts rc = marginal_continuous_counts(cells, grid, nu);
    if (rc.admitted() == 0) throw NoComparableRegions();
    ConcordanceEstimate est;
    est.method = Method::marginal;
    est.tied_mass = to_double(rc.same_pi_band);
    if (rc.concordant + rc.discordant == 0) throw AllTied();
    est.c_hat = ratio(rc.concordant, rc.concordant + rc.discordant);
    est.concordant_mass = to_double(rc.concordant);
    est.discordant_mass = to_double(rc.discordant);
    est.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return est;
}

ConcordanceEstimate marginal_continuous(const ContinuousDataset& data, const GridSpec& grid) {
    const auto t0 = clock::now();
    const CellCounts cells = build_cell_counts(data.rows, grid);
    ConcordanceEstimate est = marginal_continuous(cells, grid, data.nu);
    est.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return est;
}

void write_cells_csv(const CellCounts& cells, std::ostream& out) {
    std::string buf;
    for (std::size_t y = 0; y < cells.bands; ++y) {
        for (std::size_t p = 0; p < cells.bands; ++p) {
            if (p) buf += ',';
            buf += std::to_string(cells.at(y, p));
        }
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace concord
