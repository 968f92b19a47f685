#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "concord/exact.hpp"
#include "concord/marginal_estimator.hpp"
#include "doctest.h"

using namespace concord;

namespace {

// exhaustive over every (source band, target band, source cell, target cell)
// quadruple: the O(q^4) oracle for the windowed scan
RegionPairCounts brute_regions(const CellCounts& cells, const GridSpec& grid, double nu) {
    const std::size_t B = grid.bands();
    const auto& tau = grid.boundaries;
    std::vector<u64> rowtot(B, 0);
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t l = 0; l < B; ++l) rowtot[b] += cells.at(b, l);

    RegionPairCounts out;
    for (std::size_t i = 0; i < B; ++i) {
        for (std::size_t k = i + 1; k < B; ++k) {
            if (!(tau[i] + nu <= tau[k - 1])) {
                out.gap_excluded += static_cast<u128>(rowtot[i]) * rowtot[k];
                continue;
            }
            for (std::size_t j = 0; j < B; ++j) {
                const u64 src = cells.at(i, j);
                if (src == 0) continue;
                for (std::size_t l = 0; l < B; ++l) {
                    const u128 mass = static_cast<u128>(src) * cells.at(k, l);
                    if (l > j)
                        out.concordant += mass;
                    else if (l < j)
                        out.discordant += mass;
                    else
                        out.same_pi_band += mass;
                    if (k == i + 1) {
                        if (l > j)
                            out.adjacent_concordant += mass;
                        else if (l < j)
                            out.adjacent_discordant += mass;
                    }
                }
            }
        }
    }
    return out;
}

bool same_regions(const RegionPairCounts& a, const RegionPairCounts& b) {
    return a.concordant == b.concordant && a.discordant == b.discordant &&
           a.same_pi_band == b.same_pi_band && a.gap_excluded == b.gap_excluded;
}

CellCounts random_cells(std::mt19937_64& rng, std::size_t bands) {
    std::uniform_int_distribution<int> cnt(0, 6);
    std::uniform_real_distribution<double> zero_chance(0.0, 1.0);
    CellCounts cells(bands);
    const bool sparse = zero_chance(rng) < 0.3;
    for (std::size_t y = 0; y < bands; ++y)
        for (std::size_t p = 0; p < bands; ++p)
            cells.at(y, p) = sparse && zero_chance(rng) < 0.7 ? 0 : static_cast<u64>(cnt(rng));
    return cells;
}

GridSpec random_grid(std::mt19937_64& rng, std::size_t q) {
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::vector<double> b;
    while (b.size() < q) {
        double v = val(rng);
        if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
    }
    std::sort(b.begin(), b.end());
    return GridSpec(std::move(b));
}

}  // namespace

TEST_SUITE_BEGIN("percentile_boundaries");

TEST_CASE("quartiles of 1..100") {
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    const GridSpec g = percentile_boundaries(v, 3);
    CHECK(g.boundaries == std::vector<double>{25, 50, 75});
}

TEST_CASE("median of four") {
    const GridSpec g = percentile_boundaries({1, 2, 3, 4}, 1);
    CHECK(g.boundaries == std::vector<double>{2});
}

TEST_CASE("constant values dedupe to one boundary") {
    const GridSpec g = percentile_boundaries({7, 7, 7, 7}, 10);
    CHECK(g.boundaries == std::vector<double>{7});
}

TEST_CASE("q beyond the sample size returns data values") {
    const GridSpec g = percentile_boundaries({5, 1, 3}, 50);
    CHECK(g.q() <= 3);
    for (double b : g.boundaries)
        CHECK((b == 1.0 || b == 3.0 || b == 5.0));
    for (std::size_t i = 1; i < g.q(); ++i) CHECK(g.boundaries[i - 1] < g.boundaries[i]);
}

TEST_CASE("order does not matter") {
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = 100 - i;
    const GridSpec g = percentile_boundaries(v, 3);
    CHECK(g.boundaries == std::vector<double>{25, 50, 75});
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(percentile_boundaries({}, 3), EmptyInput);
    CHECK_THROWS_AS(percentile_boundaries({1.0}, 0), std::invalid_argument);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("marginal_discrete");

TEST_CASE("one concordant block") {
    const GridSpec g({0.5});
    const auto est = marginal_discrete({{0.1, 0.2}, {0.7, 0.9}}, g);
    CHECK(est.c_hat == 1.0);
    CHECK(est.method == Method::marginal);
    CHECK(est.tied_mass == 0.0);
}

TEST_CASE("identical band distributions are symmetric") {
    const GridSpec g({0.5});
    const std::vector<double> vals{0.1, 0.4, 0.6, 0.9};
    const auto est = marginal_discrete({vals, vals}, g);
    CHECK(est.c_hat == 0.5);
    CHECK(est.concordant_mass == est.discordant_mass);
    CHECK(est.concordant_mass + est.discordant_mass + est.tied_mass ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("everything in one band throws AllTied") {
    const GridSpec g({5.0});
    CHECK_THROWS_AS(marginal_discrete({{5.5}, {5.5}}, g), AllTied);
    CHECK_THROWS_AS(marginal_discrete({{4.0}, {4.5}}, g), AllTied);
}

TEST_CASE("boundaries at every distinct pooled value reproduce the exact estimator") {
    std::mt19937_64 rng(151);
    std::uniform_int_distribution<int> support(0, 11);
    std::uniform_int_distribution<int> size_d(2, 250);
    for (int rep = 0; rep < 100; ++rep) {
        GroupedBinaryData d;
        const int na = size_d(rng), nb = size_d(rng);
        for (int i = 0; i < na; ++i) d.group_a.push_back(support(rng) / 11.0);
        for (int i = 0; i < nb; ++i) d.group_b.push_back(support(rng) / 11.0);

        std::vector<double> pooled = d.group_a;
        pooled.insert(pooled.end(), d.group_b.begin(), d.group_b.end());
        std::sort(pooled.begin(), pooled.end());
        pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
        const GridSpec grid(pooled);

        bool exact_threw = false, marg_threw = false;
        ConcordanceEstimate want{}, got{};
        try {
            want = exact_discrete_brute(d);
        } catch (const AllTied&) {
            exact_threw = true;
        }
        try {
            got = marginal_discrete(d, grid);
        } catch (const AllTied&) {
            marg_threw = true;
        }
        REQUIRE(exact_threw == marg_threw);
        if (!exact_threw) {
            REQUIRE(got.c_hat == want.c_hat);
            REQUIRE(got.concordant_mass == want.concordant_mass);
            REQUIRE(got.discordant_mass == want.discordant_mass);
            REQUIRE(got.tied_mass == want.tied_mass);
        }
    }
}

TEST_CASE("masses partition the unit cross mass") {
    std::mt19937_64 rng(157);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t q : {1u, 3u, 10u, 40u}) {
        GroupedBinaryData d;
        for (int i = 0; i < 150; ++i) d.group_a.push_back(normal(rng));
        for (int i = 0; i < 130; ++i) d.group_b.push_back(normal(rng) + 0.4);
        std::vector<double> pooled = d.group_a;
        pooled.insert(pooled.end(), d.group_b.begin(), d.group_b.end());
        const auto est = marginal_discrete(d, percentile_boundaries(pooled, q));
        REQUIRE(est.concordant_mass + est.discordant_mass + est.tied_mass ==
                doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(est.c_hat >= 0.0);
        REQUIRE(est.c_hat <= 1.0);
    }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("cell_counts");

TEST_CASE("single point lands in one cell") {
    const GridSpec g({0.0, 1.0});
    const CellCounts cells = build_cell_counts({{0.5, -2.0}}, g);
    CHECK(cells.total() == 1);
    CHECK(cells.at(1, 0) == 1);
}

TEST_CASE("diagonal points fill diagonal cells") {
    const GridSpec g({1.5, 2.5});
    const CellCounts cells =
        build_cell_counts({{1, 1}, {2, 2}, {3, 3}}, g);
    CHECK(cells.at(0, 0) == 1);
    CHECK(cells.at(1, 1) == 1);
    CHECK(cells.at(2, 2) == 1);
    CHECK(cells.total() == 3);
}

TEST_CASE("row and column sums match independent histograms") {
    std::mt19937_64 rng(163);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<ScoredPair> rows;
    for (int i = 0; i < 500; ++i) rows.emplace_back(normal(rng), normal(rng));
    std::vector<double> ys;
    for (const auto& r : rows) ys.push_back(r.response);
    const GridSpec g = percentile_boundaries(ys, 7);
    const CellCounts cells = build_cell_counts(rows, g);
    CHECK(cells.total() == 500);

    std::vector<u64> yhist(g.bands(), 0), phist(g.bands(), 0);
    for (const auto& r : rows) {
        ++yhist[g.band(r.response)];
        ++phist[g.band(r.prediction)];
    }
    for (std::size_t b = 0; b < g.bands(); ++b) {
        u64 row = 0, col = 0;
        for (std::size_t o = 0; o < g.bands(); ++o) {
            row += cells.at(b, o);
            col += cells.at(o, b);
        }
        REQUIRE(row == yhist[b]);
        REQUIRE(col == phist[b]);
    }
}

TEST_CASE("cells csv export") {
    CellCounts cells(2);
    cells.at(0, 0) = 1;
    cells.at(0, 1) = 2;
    cells.at(1, 0) = 3;
    cells.at(1, 1) = 4;
    std::ostringstream out;
    write_cells_csv(cells, out);
    CHECK(out.str() == "1,2\n3,4\n");
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("marginal_continuous");

TEST_CASE("two diagonal blocks are fully concordant") {
    const GridSpec g({1.0});
    CellCounts cells(2);
    cells.at(0, 0) = 3;
    cells.at(1, 1) = 4;
    const auto est = marginal_continuous(cells, g, 0.0);
    CHECK(est.c_hat == 1.0);
    CHECK(est.concordant_mass == 12.0);
    CHECK(est.discordant_mass == 0.0);
}

TEST_CASE("nu wider than the boundary span leaves no comparable regions") {
    const GridSpec g({0.0, 1.0, 2.0});
    CellCounts cells(4);
    for (std::size_t y = 0; y < 4; ++y)
        for (std::size_t p = 0; p < 4; ++p) cells.at(y, p) = 1;
    CHECK_THROWS_AS(marginal_continuous(cells, g, 2.5), NoComparableRegions);
    CHECK_NOTHROW(marginal_continuous(cells, g, 1.5));
}

TEST_CASE("admitted regions that share a prediction band throw AllTied") {
    const GridSpec g({0.0, 1.0});
    CellCounts cells(3);
    cells.at(0, 1) = 2;
    cells.at(2, 1) = 5;
    CHECK_THROWS_AS(marginal_continuous(cells, g, 0.0), AllTied);
}

TEST_CASE("windowed scan matches the exhaustive cell-pair oracle") {
    std::mt19937_64 rng(167);
    std::uniform_int_distribution<std::size_t> q_d(1, 12);
    std::uniform_real_distribution<double> nu_pick(0.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t q = q_d(rng);
        const GridSpec grid = random_grid(rng, q);
        const CellCounts cells = random_cells(rng, grid.bands());
        double nu;
        switch (rep % 4) {
            case 0: nu = 0.0; break;
            case 1: nu = 0.37; break;
            case 2: nu = nu_pick(rng) * 6.0; break;
            default:
                // exactly at a boundary gap, probing the <= in the gate
                nu = grid.boundaries.back() - grid.boundaries.front();
        }
        const RegionPairCounts want = brute_regions(cells, grid, nu);
        const RegionPairCounts right = marginal_continuous_counts(cells, grid, nu);
        const RegionPairCounts left =
            marginal_continuous_counts(cells, grid, nu, ScanDirection::leftward);
        REQUIRE(same_regions(want, right));
        REQUIRE(same_regions(want, left));
        REQUIRE(right.adjacent_concordant == want.adjacent_concordant);
        REQUIRE(right.adjacent_discordant == want.adjacent_discordant);
        if (nu > 0.0) {
            REQUIRE(right.adjacent_concordant == 0);
            REQUIRE(right.adjacent_discordant == 0);
        }

        // every cross-band product is concordant, discordant, same-band or
        // gap-excluded, exactly once
        std::vector<u128> rowtot(grid.bands(), 0);
        for (std::size_t y = 0; y < grid.bands(); ++y)
            for (std::size_t p = 0; p < grid.bands(); ++p) rowtot[y] += cells.at(y, p);
        u128 cross = 0;
        for (std::size_t i = 0; i < grid.bands(); ++i)
            for (std::size_t k = i + 1; k < grid.bands(); ++k) cross += rowtot[i] * rowtot[k];
        REQUIRE(right.admitted() + right.gap_excluded == cross);
    }
}

TEST_CASE("dataset overload agrees with the cells path") {
    std::mt19937_64 rng(173);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<ScoredPair> rows;
    for (int i = 0; i < 400; ++i) {
        const double y = normal(rng);
        rows.emplace_back(y, 0.6 * y + 0.8 * normal(rng));
    }
    std::vector<double> ys;
    for (const auto& r : rows) ys.push_back(r.response);
    const GridSpec grid = percentile_boundaries(ys, 9);
    const CellCounts cells = build_cell_counts(rows, grid);
    for (double nu : {0.0, 0.35}) {
        const auto via_cells = marginal_continuous(cells, grid, nu);
        const auto via_data = marginal_continuous(ContinuousDataset{rows, nu}, grid);
        CHECK(via_data.c_hat == via_cells.c_hat);
        CHECK(via_data.concordant_mass == via_cells.concordant_mass);
        CHECK(via_data.discordant_mass == via_cells.discordant_mass);
    }
}

TEST_CASE("mismatched cells and grid are rejected") {
    CellCounts cells(3);
    const GridSpec g({0.0});
    CHECK_THROWS_AS(marginal_continuous_counts(cells, g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(marginal_continuous_counts(cells, GridSpec({0.0, 1.0}), -1.0),
                    std::invalid_argument);
}

TEST_SUITE_END();
