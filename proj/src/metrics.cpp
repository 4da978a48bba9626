#include "nlturbo/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nlturbo {

std::string to_string(DistanceMetric metric) {
    switch (metric) {
        case DistanceMetric::hamming: return "hamming";
        case DistanceMetric::directional: return "directional";
        case DistanceMetric::z: return "z";
    }
    return "?";
}

DistanceMetric metric_from_string(const std::string& name) {
    if (name == "hamming") return DistanceMetric::hamming;
    if (name == "directional") return DistanceMetric::directional;
    if (name == "z") return DistanceMetric::z;
    throw std::invalid_argument("unknown distance metric '" + name + "'");
}

int pair_distance(DistanceMetric metric, uint32_t a, uint32_t b, int n) {
    const int ab = directional_distance(a, b, n);
    const int ba = directional_distance(b, a, n);
    switch (metric) {
        case DistanceMetric::hamming: return ab + ba;
        case DistanceMetric::directional: return ab < ba ? ab : ba;
        case DistanceMetric::z: return ab > ba ? ab : ba;
    }
    return 0;
}

namespace {

int min_pairwise(const std::vector<uint32_t>& rows, int n, DistanceMetric metric) {
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j)
            best = std::min(best, pair_distance(metric, rows[i], rows[j], n));
    return best;
}

} // namespace

int branch_distance(const StateSubTable& table, DistanceMetric metric) {
    if (table.num_rows() < 2)
        throw std::invalid_argument("branch_distance: need at least two rows");
    return min_pairwise(table.rows(), table.n(), metric);
}

DistanceReport distance_report(const TableTrellis& trellis, DistanceMetric metric) {
    DistanceReport report;
    const int states = trellis.num_states();
    report.per_state_branch.resize(static_cast<size_t>(states));
    report.per_state_merge.resize(static_cast<size_t>(states));
    for (int s = 0; s < states; ++s)
        report.per_state_branch[static_cast<size_t>(s)] = branch_distance(trellis.subtable(s), metric);
    const auto& incoming = trellis.topology().incoming();
    for (int s = 0; s < states; ++s) {
        std::vector<uint32_t> labels;
        labels.reserve(incoming[static_cast<size_t>(s)].size());
        for (auto [from, input] : incoming[static_cast<size_t>(s)])
            labels.push_back(trellis.label(from, input));
        report.per_state_merge[static_cast<size_t>(s)] = min_pairwise(labels, trellis.n(), metric);
    }
    report.branch_distance =
        *std::min_element(report.per_state_branch.begin(), report.per_state_branch.end());
    report.merge_distance =
        *std::min_element(report.per_state_merge.begin(), report.per_state_merge.end());
    return report;
}

int default_free_distance_depth(const TableTrellis& trellis) { return 4 * trellis.num_states(); }

namespace {

// Directional-sum pair carried through the product-trellis search. The final
// metric value is formed only when a path pair closes.
struct DistPair {
    int ab = 0;
    int ba = 0;
};

int finalize(DistanceMetric metric, DistPair d) {
    switch (metric) {
        case DistanceMetric::hamming: return d.ab + d.ba;
        case DistanceMetric::directional: return d.ab < d.ba ? d.ab : d.ba;
        case DistanceMetric::z: return d.ab > d.ba ? d.ab : d.ba;
    }
    return 0;
}

// Non-dominated (ab, ba) pairs per product state. Sets stay tiny because
// labels dominated in both components are dropped and anything whose
// finalized value already meets the incumbent is pruned by the caller.
void insert_pareto(std::vector<DistPair>& set, DistPair d) {
    for (const DistPair& e : set)
        if (e.ab <= d.ab && e.ba <= d.ba) return;
    std::erase_if(set, [&](const DistPair& e) { return d.ab <= e.ab && d.ba <= e.ba; });
    set.push_back(d);
}

} // namespace

FreeDistanceResult effective_free_distance(const TableTrellis& trellis, DistanceMetric metric,
                                           bool include_systematic, int max_depth) {
    if (max_depth < 2)
        throw std::invalid_argument("effective_free_distance: max_depth must be >= 2");
    const int states = trellis.num_states();
    const int inputs = trellis.num_inputs();
    const int n = trellis.n();
    const int k = trellis.k();
    const auto& topo = trellis.topology();

    const auto step_cost = [&](int sa, int ua, int sb, int ub) -> DistPair {
        const uint32_t la = trellis.label(sa, ua);
        const uint32_t lb = trellis.label(sb, ub);
        DistPair c{directional_distance(la, lb, n), directional_distance(lb, la, n)};
        if (include_systematic) {
            c.ab += directional_distance(static_cast<uint32_t>(ua), static_cast<uint32_t>(ub), k);
            c.ba += directional_distance(static_cast<uint32_t>(ub), static_cast<uint32_t>(ua), k);
        }
        return c;
    };

    int best = std::numeric_limits<int>::max();
    bool merged = false;

    // front[sa * states + sb]: accumulated sums of still-open path pairs.
    std::vector<std::vector<DistPair>> front(static_cast<size_t>(states) * states);
    const auto offer = [&](std::vector<std::vector<DistPair>>& f, int sa, int sb, DistPair d) {
        if (sa == sb) {
            const int v = finalize(metric, d);
            if (v < best) {
                best = v;
                merged = true;
            }
            return;
        }
        if (finalize(metric, d) >= best) return;
        insert_pareto(f[static_cast<size_t>(sa) * states + sb], d);
    };

    for (int s = 0; s < states; ++s)
        for (int ua = 0; ua < inputs; ++ua)
            for (int ub = ua + 1; ub < inputs; ++ub)
                offer(front, topo.next_state(s, ua), topo.next_state(s, ub), step_cost(s, ua, s, ub));

    for (int depth = 2; depth <= max_depth; ++depth) {
        bool any_open = false;
        std::vector<std::vector<DistPair>> next(static_cast<size_t>(states) * states);
        for (int sa = 0; sa < states; ++sa) {
            for (int sb = 0; sb < states; ++sb) {
                const auto& labels = front[static_cast<size_t>(sa) * states + sb];
                if (labels.empty()) continue;
                for (const DistPair& d : labels) {
                    if (finalize(metric, d) >= best) continue;
                    any_open = true;
                    for (int ua = 0; ua < inputs; ++ua) {
                        for (int ub = 0; ub < inputs; ++ub) {
                            const DistPair c = step_cost(sa, ua, sb, ub);
                            offer(next, topo.next_state(sa, ua), topo.next_state(sb, ub),
                                  DistPair{d.ab + c.ab, d.ba + c.ba});
                        }
                    }
                }
            }
        }
        front = std::move(next);
        if (!any_open) break;
    }

    if (merged) return {best, true};

    // Nothing closed: report the smallest accumulated bound at the horizon.
    int bound = std::numeric_limits<int>::max();
    for (const auto& labels : front)
        for (const DistPair& d : labels) bound = std::min(bound, finalize(metric, d));
    if (bound == std::numeric_limits<int>::max()) bound = best;
    return {bound, false};
}

} // namespace nlturbo
