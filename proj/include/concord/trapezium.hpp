#pragma once

#include <iosfwd>
#include <vector>

#include "concord/types.hpp"

namespace concord {

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// ROC vertices from (0,0) to (1,1), one vertex per distinct prediction value
// walked in descending order; tied predictions collapse into a single
// diagonal step. Throws EmptyGroup.
std::vector<RocPoint> roc_points(const GroupedBinaryData& data);

// Trapezium rule over the vertices, accumulated in long double.
double auc_trapezium(const std::vector<RocPoint>& points);

// Convenience wrapper: c_hat = AUC, masses normalized to auc / (1 - auc).
// Never throws AllTied: fully tied data gives a two-vertex diagonal, AUC 0.5,
// matching the ties-as-half exact estimate.
ConcordanceEstimate trapezium_estimate(const GroupedBinaryData& data);

void write_roc_csv(const std::vector<RocPoint>& points, std::ostream& out);

}  // namespace concord
