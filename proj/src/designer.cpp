#include "nlturbo/designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nlturbo {

int target_ones(double u1, int n, int k) {
    if (!(u1 > 0.0 && u1 < 1.0))
        throw std::invalid_argument("target_ones: density must lie strictly inside (0, 1)");
    const int cells = n << k;
    const int nu = static_cast<int>(std::floor(u1 * cells + 0.5));
    if (nu <= 0 || nu >= cells)
        throw infeasible_design("target_ones: density " + std::to_string(u1) +
                                " rounds to a degenerate table (" + std::to_string(nu) + " of " +
                                std::to_string(cells) + " ones)");
    return nu;
}

namespace {

double log_binomial(int n, int r) {
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

// Advances to the next n-bit value with the same popcount (Gosper's hack);
// returns 0 past the end.
uint32_t next_same_weight(uint32_t x, int n) {
    const uint32_t u = x & (~x + 1u);
    const uint32_t v = x + u;
    if (v > row_mask(n)) return 0;
    return v | (((x ^ v) / u) >> 2);
}

// Row-by-row exhaustive search; a row is checked against all earlier rows as
// soon as it completes, which prunes most of the space. Row weights are
// visited balanced-first (closest to the per-row average), so the first
// solution spreads ones across rows instead of stacking them into the last
// rows and leaving all-zero outputs behind.
bool exhaustive_search(std::vector<uint32_t>& rows, int row, int remaining, int n, int k, int d_b,
                       DistanceMetric metric) {
    const int num_rows = 1 << k;
    if (row == num_rows) return remaining == 0;
    const int rows_left = num_rows - row - 1;
    const int w_lo = std::max(0, remaining - rows_left * n);
    const int w_hi = std::min(remaining, n);
    const int ideal = (2 * remaining + (rows_left + 1)) / (2 * (rows_left + 1));
    std::vector<int> weights;
    for (int d = 0; d <= w_hi - w_lo; ++d) {
        if (ideal + d >= w_lo && ideal + d <= w_hi) weights.push_back(ideal + d);
        if (d > 0 && ideal - d >= w_lo && ideal - d <= w_hi) weights.push_back(ideal - d);
    }
    for (int w : weights) {
        uint32_t mask = w == 0 ? 0u : (1u << w) - 1u;
        do {
            bool ok = true;
            for (int i = 0; i < row && ok; ++i)
                ok = pair_distance(metric, rows[static_cast<size_t>(i)], mask, n) > d_b;
            if (ok) {
                rows[static_cast<size_t>(row)] = mask;
                if (exhaustive_search(rows, row + 1, remaining - w, n, k, d_b, metric)) return true;
            }
            mask = w == 0 ? 0u : next_same_weight(mask, n);
        } while (mask != 0u);
    }
    return false;
}

int min_pairwise(const std::vector<uint32_t>& rows, int n, DistanceMetric metric) {
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j)
            best = std::min(best, pair_distance(metric, rows[i], rows[j], n));
    return best;
}

// Near-even row weights (differing by at most one). Extreme-weight rows are
// poison for the permutation replication step: an all-ones or all-zeros row
// is invariant under every column permutation, so every state's copy shares
// it and merge collisions become near-certain.
std::vector<uint32_t> random_placement(int nu, int n, int k, Prng& rng) {
    const int num_rows = 1 << k;
    std::vector<int> weights(static_cast<size_t>(num_rows), nu / num_rows);
    std::vector<int> row_order(static_cast<size_t>(num_rows));
    std::iota(row_order.begin(), row_order.end(), 0);
    for (int i = num_rows - 1; i > 0; --i)
        std::swap(row_order[static_cast<size_t>(i)],
                  row_order[rng.next_below(static_cast<uint32_t>(i + 1))]);
    for (int e = 0; e < nu % num_rows; ++e) ++weights[static_cast<size_t>(row_order[static_cast<size_t>(e)])];

    std::vector<int> cols(static_cast<size_t>(n));
    std::vector<uint32_t> rows(static_cast<size_t>(num_rows), 0);
    for (int r = 0; r < num_rows; ++r) {
        std::iota(cols.begin(), cols.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(cols[static_cast<size_t>(i)], cols[rng.next_below(static_cast<uint32_t>(i + 1))]);
        for (int c = 0; c < weights[static_cast<size_t>(r)]; ++c)
            rows[static_cast<size_t>(r)] |= 1u << (n - 1 - cols[static_cast<size_t>(c)]);
    }
    return rows;
}

} // namespace

StateSubTable design_m1(int nu, int n, int k, int d_b, DistanceMetric metric, Prng& rng) {
    const int num_rows = 1 << k;
    const int cells = n * num_rows;
    if (nu <= 0 || nu >= cells)
        throw infeasible_design("design_m1: " + std::to_string(nu) + " ones of " +
                                std::to_string(cells) +
                                " cells forces a degenerate table (branch distance 0)");

    if (cells <= 40 && log_binomial(cells, nu) <= std::log(1e7)) {
        std::vector<uint32_t> rows(static_cast<size_t>(num_rows), 0);
        if (!exhaustive_search(rows, 0, nu, n, k, d_b, metric))
            throw infeasible_design("design_m1: no sub-table with " + std::to_string(nu) +
                                    " ones has branch distance > " + std::to_string(d_b) +
                                    "; lower d_b");
        return StateSubTable(k, n, std::move(rows));
    }

    // Randomized search: swap a one and a zero within one row (keeping the
    // balanced weights of the starting placement), keep the move when the
    // minimum pairwise distance does not decrease, restart periodically.
    constexpr int kMovesPerRestart = 10000;
    constexpr int kMaxRestarts = 200;
    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        std::vector<uint32_t> rows = random_placement(nu, n, k, rng);
        int current = min_pairwise(rows, n, metric);
        if (current > d_b) return StateSubTable(k, n, std::move(rows));
        for (int move = 0; move < kMovesPerRestart; ++move) {
            const int r = static_cast<int>(rng.next_below(static_cast<uint32_t>(num_rows)));
            const int w = ones_count(rows[static_cast<size_t>(r)]);
            if (w == 0 || w == n) continue;
            int one_col = -1, zero_col = -1;
            while (one_col < 0 || zero_col < 0) {
                const int col = static_cast<int>(rng.next_below(static_cast<uint32_t>(n)));
                const bool set = row_bit(rows[static_cast<size_t>(r)], n, col) != 0;
                if (set && one_col < 0) one_col = col;
                if (!set && zero_col < 0) zero_col = col;
            }
            const uint32_t flip = (1u << (n - 1 - one_col)) | (1u << (n - 1 - zero_col));
            rows[static_cast<size_t>(r)] ^= flip;
            const int candidate = min_pairwise(rows, n, metric);
            if (candidate < current) {
                rows[static_cast<size_t>(r)] ^= flip;
                continue;
            }
            current = candidate;
            if (current > d_b) return StateSubTable(k, n, std::move(rows));
        }
    }
    throw infeasible_design("design_m1: randomized search exhausted without reaching branch "
                            "distance > " +
                            std::to_string(d_b) + "; lower d_b");
}

StateSubTable permute_subtable(const StateSubTable& table, std::span<const int> row_perm,
                               std::span<const int> col_perm) {
    const int num_rows = table.num_rows();
    const int n = table.n();
    if (static_cast<int>(row_perm.size()) != num_rows)
        throw std::invalid_argument("permute_subtable: row permutation size mismatch");
    if (static_cast<int>(col_perm.size()) != n)
        throw std::invalid_argument("permute_subtable: column permutation size mismatch");
    std::vector<uint32_t> rows(static_cast<size_t>(num_rows), 0);
    for (int i = 0; i < num_rows; ++i) {
        const uint32_t src = table.row(row_perm[static_cast<size_t>(i)]);
        uint32_t out = 0;
        for (int j = 0; j < n; ++j)
            out |= static_cast<uint32_t>(row_bit(src, n, col_perm[static_cast<size_t>(j)])) << (n - 1 - j);
        rows[static_cast<size_t>(i)] = out;
    }
    return StateSubTable(table.k(), n, std::move(rows));
}

namespace {

std::vector<int> random_permutation(int size, Prng& rng) {
    std::vector<int> perm(static_cast<size_t>(size));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = size - 1; i > 0; --i)
        std::swap(perm[static_cast<size_t>(i)], perm[rng.next_below(static_cast<uint32_t>(i + 1))]);
    return perm;
}

} // namespace

DesignResult design_trellis(const DesignParams& params, const TrellisTopology& topology) {
    if (params.num_candidates < 1)
        throw std::invalid_argument("design_trellis: need at least one candidate");
    const int k = topology.k();
    const int n = params.n;
    const int states = topology.num_states();
    const int nu = target_ones(params.target_ones_density, n, k);

    SeedTrace trace;
    trace.rng_seed = params.rng_seed;

    Prng m1_rng(mix_keys({params.rng_seed, 0x6d31ull}));
    const StateSubTable m1 = design_m1(nu, n, k, params.branch_floor, params.metric, m1_rng);
    trace.design_m1_calls = 1;

    const int depth = params.free_distance_depth > 0 ? params.free_distance_depth : 4 * states;

    std::optional<DesignResult> best;
    for (int cand = 0; cand < params.num_candidates; ++cand) {
        std::vector<StateSubTable> subtables;
        int retries = 0;
        bool accepted = false;
        for (; retries <= params.max_merge_retries && !accepted; ++retries) {
            subtables.clear();
            subtables.reserve(static_cast<size_t>(states));
            subtables.push_back(m1);
            for (int s = 1; s < states; ++s) {
                Prng perm_rng(mix_keys({params.rng_seed, static_cast<uint64_t>(cand),
                                        static_cast<uint64_t>(s), static_cast<uint64_t>(retries)}));
                const std::vector<int> rows = random_permutation(1 << k, perm_rng);
                const std::vector<int> cols = random_permutation(n, perm_rng);
                subtables.push_back(permute_subtable(m1, rows, cols));
            }
            TableTrellis candidate(topology, subtables);
            const DistanceReport report = distance_report(candidate, params.metric);
            if (report.merge_distance < params.merge_floor) continue;
            accepted = true;
            const FreeDistanceResult efd =
                effective_free_distance(candidate, params.metric, params.rank_systematic, depth);
            DesignResult result{std::move(candidate),
                                nu,
                                static_cast<double>(nu) / (n << k),
                                report.branch_distance,
                                report.merge_distance,
                                efd,
                                {}};
            const bool better =
                !best ||
                result.effective_free_distance.value > best->effective_free_distance.value ||
                (result.effective_free_distance.value == best->effective_free_distance.value &&
                 result.merge_distance > best->merge_distance);
            if (better) {
                result.seed_trace.chosen_candidate = cand;
                best = std::move(result);
            }
        }
        trace.retries_per_candidate.push_back(retries - (accepted ? 1 : 0));
        if (!accepted)
            throw retries_exhausted("design_trellis: merge distance >= " +
                                    std::to_string(params.merge_floor) + " not reached within " +
                                    std::to_string(params.max_merge_retries) +
                                    " permutation redraws; lower d_m");
    }

    trace.chosen_candidate = best->seed_trace.chosen_candidate;
    best->seed_trace = trace;
    return *best;
}

} // namespace nlturbo
