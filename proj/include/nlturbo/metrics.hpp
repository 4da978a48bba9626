#ifndef NLTURBO_METRICS_HPP
#define NLTURBO_METRICS_HPP

#include <string>
#include <vector>

#include "nlturbo/trellis.hpp"

namespace nlturbo {

enum class DistanceMetric { hamming, directional, z };

std::string to_string(DistanceMetric metric);
DistanceMetric metric_from_string(const std::string& name);

/// Distance between two rows of an unordered pair. hamming sums the two
/// directional counts, z takes the larger one, directional the smaller (the
/// minimum over both orderings, so "min pairwise directional distance" over a
/// set is the min of this over its pairs).
int pair_distance(DistanceMetric metric, uint32_t a, uint32_t b, int n);

/// Minimum pair_distance over all unordered row pairs of the sub-table.
int branch_distance(const StateSubTable& table, DistanceMetric metric);

struct DistanceReport {
    int branch_distance = 0;
    int merge_distance = 0;
    std::vector<int> per_state_branch;
    std::vector<int> per_state_merge;
};

/// Per-state branch distances (between outputs leaving each state) and merge
/// distances (between outputs of the transitions entering each state);
/// trellis-level values are the minima over states.
DistanceReport distance_report(const TableTrellis& trellis, DistanceMetric metric);

struct FreeDistanceResult {
    int value = 0;
    /// False when no diverge-remerge pair closed within max_depth; value is
    /// then a lower bound accumulated up to the horizon.
    bool merged = false;
};

/// Minimum accumulated pairwise distance over pairs of paths that leave a
/// common state under different inputs and re-merge within max_depth steps.
/// Each step contributes the label-pair distance plus, when
/// include_systematic is set, the input-pair distance. Directional sums are
/// tracked separately per product state and combined by the metric only when
/// a pair closes, so z distances of whole label sequences are exact.
FreeDistanceResult effective_free_distance(const TableTrellis& trellis, DistanceMetric metric,
                                           bool include_systematic, int max_depth);

/// Default search horizon: 4 * num_states.
int default_free_distance_depth(const TableTrellis& trellis);

} // namespace nlturbo

#endif
