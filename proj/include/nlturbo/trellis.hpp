#ifndef NLTURBO_TRELLIS_HPP
#define NLTURBO_TRELLIS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nlturbo/bits.hpp"

namespace nlturbo {

/// Next-state structure of a constituent trellis: num_states() states, 2^k
/// transitions out of each, and (checked at construction) exactly 2^k
/// transitions into each. Immutable once built.
class TrellisTopology {
  public:
    /// next is row-major: next[s * 2^k + u] = successor of state s under the
    /// input k-tuple with lexicographic index u. Throws std::invalid_argument
    /// on out-of-range targets or non-uniform in-degree.
    TrellisTopology(int num_states, int k, std::vector<int> next);

    int num_states() const { return num_states_; }
    int k() const { return k_; }
    int num_inputs() const { return 1 << k_; }
    int next_state(int state, int input) const { return next_[static_cast<size_t>(state) * num_inputs() + input]; }

    /// Transitions (source state, input) entering each state; every list has
    /// exactly 2^k entries.
    const std::vector<std::vector<std::pair<int, int>>>& incoming() const { return incoming_; }

    bool operator==(const TrellisTopology& other) const = default;

  private:
    int num_states_;
    int k_;
    std::vector<int> next_;
    std::vector<std::vector<std::pair<int, int>>> incoming_;
};

/// The 2^k-by-n binary matrix mapping input k-tuples (rows, in lexicographic
/// order) to output n-tuples at one state.
class StateSubTable {
  public:
    StateSubTable(int k, int n, std::vector<uint32_t> rows);

    int k() const { return k_; }
    int n() const { return n_; }
    int num_rows() const { return 1 << k_; }
    uint32_t row(int input) const { return rows_[static_cast<size_t>(input)]; }
    const std::vector<uint32_t>& rows() const { return rows_; }

    int ones() const;

    bool operator==(const StateSubTable& other) const = default;

  private:
    int k_;
    int n_;
    std::vector<uint32_t> rows_;
};

/// Complete table-driven constituent encoder: a topology plus one sub-table
/// per state. Immutable and safe to share across threads.
class TableTrellis {
  public:
    TableTrellis(TrellisTopology topology, std::vector<StateSubTable> subtables);

    const TrellisTopology& topology() const { return topology_; }
    const StateSubTable& subtable(int state) const { return subtables_[static_cast<size_t>(state)]; }
    int num_states() const { return topology_.num_states(); }
    int k() const { return topology_.k(); }
    int num_inputs() const { return topology_.num_inputs(); }
    int n() const { return n_; }

    uint32_t label(int state, int input) const { return subtables_[static_cast<size_t>(state)].row(input); }

    struct Step {
        uint32_t output;
        int next_state;
    };
    Step step(int state, int input) const {
        return {label(state, input), topology_.next_state(state, input)};
    }

    /// Runs the encoder over a symbol sequence from start_state (default 0,
    /// the convention used throughout) and returns one output row per step.
    std::vector<uint32_t> encode(std::span<const int> symbols, int start_state = 0) const;

    long total_ones() const;

    bool operator==(const TableTrellis& other) const = default;

  private:
    TrellisTopology topology_;
    std::vector<StateSubTable> subtables_;
    int n_;
};

/// Fraction of ones over all table cells: total_ones / (states * 2^k * n).
double ones_density(const TableTrellis& trellis);

/// Default 16-state duo-binary recursive topology. State bits s1 s2 s3 s4
/// (s1 = index MSB), input bits a b (a = MSB) update as
///   s1' = a + b + s1 + s2 + s3 + s4
///   s2' = s1 + a + b
///   s3' = s2 + a
///   s4' = s3        (all sums mod 2)
TrellisTopology default_topology_16();

/// The shipped 16-state, k=2, n=9 constituent code on default_topology_16().
TableTrellis table1();

} // namespace nlturbo

#endif
