#pragma once

#include <iosfwd>
#include <vector>

#include "concord/types.hpp"

namespace concord {

// Nearest-rank percentile boundaries: tau_m = x_(ceil(n*m/(q+1))) for
// m = 1..q, computed in integer arithmetic, then deduplicated, so the result
// may hold fewer than q boundaries. Throws EmptyInput; q must be >= 1.
GridSpec percentile_boundaries(const std::vector<double>& values, std::size_t q);

// Marginal-ECDF estimator for binary outcomes: band masses of each group
// against the grid, concordant mass = sum_i massA_i * P(B >= tau_i),
// discordant mass symmetric, same-band mass excluded (reported as tied_mass).
// Throws EmptyGroup, AllTied.
ConcordanceEstimate marginal_discrete(const GroupedBinaryData& data, const GridSpec& grid);

// Joint (response band, prediction band) histogram; the same boundaries are
// used on both axes.
CellCounts build_cell_counts(const std::vector<ScoredPair>& rows, const GridSpec& grid);

enum class ScanDirection { rightward, leftward };

// Region-pair tallies for the continuous marginal estimator. Source cell
// (i, j) is compared against cells in response bands k on the chosen side
// whose gap passes tau_i + nu <= tau_(k-1) (rightward form); within an
// admitted band pair, a higher prediction band on the higher response side is
// concordant, lower discordant, the same band incomparable. Products of cell
// counts accumulate in 128-bit integers.
struct RegionPairCounts {
    u128 concordant = 0;
    u128 discordant = 0;
    u128 same_pi_band = 0;         // admitted but prediction bands equal
    u128 gap_excluded = 0;         // response-band pairs failing the nu gate
    u128 adjacent_concordant = 0;  // share of concordant from k == i+1 (nu == 0 only)
    u128 adjacent_discordant = 0;

    u128 admitted() const { return concordant + discordant + same_pi_band; }
};

RegionPairCounts marginal_continuous_counts(const CellCounts& cells, const GridSpec& grid,
                                            double nu,
                                            ScanDirection dir = ScanDirection::rightward);

// C-hat over the admitted region pairs; masses are the raw pair counts
// n_C(nu) and n_D(nu). Throws NoComparableRegions when nothing passes the nu
// gate (e.g. nu exceeds the boundary span), AllTied when admitted pairs exist
// but all fall in equal prediction bands.
ConcordanceEstimate marginal_continuous(const CellCounts& cells, const GridSpec& grid, double nu);
ConcordanceEstimate marginal_continuous(const ContinuousDataset& data, const GridSpec& grid);

void write_cells_csv(const CellCounts& cells, std::ostream& out);

}  // namespace concord
