#ifndef NLTURBO_DESIGNER_HPP
#define NLTURBO_DESIGNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlturbo/metrics.hpp"
#include "nlturbo/rng.hpp"
#include "nlturbo/trellis.hpp"

namespace nlturbo {

/// Raised when no sub-table with the requested ones count can beat the
/// branch-distance floor; callers should lower d_b.
class infeasible_design : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the merge-distance filter rejects every permutation draw
/// within the retry budget; callers should lower d_m.
class retries_exhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DesignParams {
    double target_ones_density = 0.5; ///< u1, in (0, 1)
    int n = 9;                        ///< output bits per transition
    int branch_floor = 0;             ///< d_b; accepted sub-tables have branch distance > d_b
    int merge_floor = 0;              ///< d_m; accepted trellises have merge distance >= d_m
    DistanceMetric metric = DistanceMetric::z;
    int max_merge_retries = 1000; ///< permutation redraws per candidate
    int num_candidates = 1;
    uint64_t rng_seed = 0;
    int free_distance_depth = 0;    ///< 0 = 4 * num_states
    bool rank_systematic = true;    ///< count systematic bits in the free-distance ranking
};

/// Ones count for a sub-table at density u1: round(u1 * n * 2^k), halves up.
/// Throws infeasible_design on the degenerate all-zero / all-one counts.
int target_ones(double u1, int n, int k);

/// Builds one sub-table with exactly nu ones and branch distance > d_b.
/// Exhaustive (lexicographically first solution) while C(n*2^k, nu) <= 1e7;
/// randomized swap search with periodic restarts above. Throws
/// infeasible_design when provably (exhaustive) or apparently (randomized
/// budget spent) impossible.
StateSubTable design_m1(int nu, int n, int k, int d_b, DistanceMetric metric, Prng& rng);

/// Row/column permutation of a sub-table: row i of the result is row
/// row_perm[i] of the input with columns rearranged so that column j reads
/// input column col_perm[j]. Preserves ones count and the multiset of
/// pairwise row distances.
StateSubTable permute_subtable(const StateSubTable& table, std::span<const int> row_perm,
                               std::span<const int> col_perm);

struct SeedTrace {
    uint64_t rng_seed = 0;
    int design_m1_calls = 0;
    int chosen_candidate = -1;
    std::vector<int> retries_per_candidate;
};

struct DesignResult {
    TableTrellis trellis;
    int ones_per_subtable = 0;
    double achieved_density = 0.0; ///< nu / (n * 2^k)
    int branch_distance = 0;
    int merge_distance = 0;
    FreeDistanceResult effective_free_distance;
    SeedTrace seed_trace;
};

/// The full design scheme: one design_m1 call builds M(1) (installed at
/// state 0); every other state receives a fresh random row/column permutation
/// of it, redrawn until the trellis merge distance reaches d_m; the best of
/// num_candidates accepted trellises by effective free distance wins (ties:
/// larger merge distance, then lower candidate index). Deterministic in
/// rng_seed.
DesignResult design_trellis(const DesignParams& params, const TrellisTopology& topology);

} // namespace nlturbo

#endif
