#include "nlturbo/trellis.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace nlturbo {

TrellisTopology::TrellisTopology(int num_states, int k, std::vector<int> next)
    : num_states_(num_states), k_(k), next_(std::move(next)) {
    if (num_states_ < 1 || num_states_ > 64)
        throw std::invalid_argument("TrellisTopology: state count must be in [1, 64]");
    if (k_ < 1 || k_ > 4)
        throw std::invalid_argument("TrellisTopology: k must be in [1, 4]");
    const size_t expected = static_cast<size_t>(num_states_) << k_;
    if (next_.size() != expected)
        throw std::invalid_argument("TrellisTopology: next-state map has wrong size");
    incoming_.assign(static_cast<size_t>(num_states_), {});
    for (int s = 0; s < num_states_; ++s) {
        for (int u = 0; u < num_inputs(); ++u) {
            const int t = next_state(s, u);
            if (t < 0 || t >= num_states_)
                throw std::invalid_argument("TrellisTopology: next state " + std::to_string(t) +
                                            " out of range");
            incoming_[static_cast<size_t>(t)].emplace_back(s, u);
        }
    }
    for (int s = 0; s < num_states_; ++s) {
        if (static_cast<int>(incoming_[static_cast<size_t>(s)].size()) != num_inputs())
            throw std::invalid_argument("TrellisTopology: state " + std::to_string(s) +
                                        " has in-degree " +
                                        std::to_string(incoming_[static_cast<size_t>(s)].size()) +
                                        ", expected " + std::to_string(num_inputs()));
    }
}

StateSubTable::StateSubTable(int k, int n, std::vector<uint32_t> rows)
    : k_(k), n_(n), rows_(std::move(rows)) {
    if (k_ < 1 || k_ > 4)
        throw std::invalid_argument("StateSubTable: k must be in [1, 4]");
    if (n_ < 1 || n_ > kMaxRowWidth)
        throw std::invalid_argument("StateSubTable: row width must be in [1, 32]");
    if (rows_.size() != (1u << k_))
        throw std::invalid_argument("StateSubTable: expected 2^k rows");
    for (uint32_t r : rows_) {
        if (r > row_mask(n_))
            throw std::invalid_argument("StateSubTable: row does not fit in width");
    }
}

int StateSubTable::ones() const {
    int total = 0;
    for (uint32_t r : rows_) total += ones_count(r);
    return total;
}

TableTrellis::TableTrellis(TrellisTopology topology, std::vector<StateSubTable> subtables)
    : topology_(std::move(topology)), subtables_(std::move(subtables)) {
    if (subtables_.size() != static_cast<size_t>(topology_.num_states()))
        throw std::invalid_argument("TableTrellis: one sub-table per state required");
    n_ = subtables_.front().n();
    for (const StateSubTable& m : subtables_) {
        if (m.n() != n_)
            throw std::invalid_argument("TableTrellis: sub-tables disagree on output width");
        if (m.k() != topology_.k())
            throw std::invalid_argument("TableTrellis: sub-table k does not match topology");
    }
}

std::vector<uint32_t> TableTrellis::encode(std::span<const int> symbols, int start_state) const {
    std::vector<uint32_t> out;
    out.reserve(symbols.size());
    int state = start_state;
    for (int u : symbols) {
        const Step st = step(state, u);
        out.push_back(st.output);
        state = st.next_state;
    }
    return out;
}

long TableTrellis::total_ones() const {
    long total = 0;
    for (const StateSubTable& m : subtables_) total += m.ones();
    return total;
}

double ones_density(const TableTrellis& trellis) {
    const double cells = static_cast<double>(trellis.num_states()) * trellis.num_inputs() * trellis.n();
    return static_cast<double>(trellis.total_ones()) / cells;
}

TrellisTopology default_topology_16() {
    std::vector<int> next(16 * 4);
    for (int s = 0; s < 16; ++s) {
        const int s1 = (s >> 3) & 1, s2 = (s >> 2) & 1, s3 = (s >> 1) & 1, s4 = s & 1;
        for (int u = 0; u < 4; ++u) {
            const int a = (u >> 1) & 1, b = u & 1;
            const int t1 = a ^ b ^ s1 ^ s2 ^ s3 ^ s4;
            const int t2 = s1 ^ a ^ b;
            const int t3 = s2 ^ a;
            const int t4 = s3;
            next[static_cast<size_t>(s) * 4 + u] = (t1 << 3) | (t2 << 2) | (t3 << 1) | t4;
        }
    }
    return TrellisTopology(16, 2, std::move(next));
}

TableTrellis table1() {
    // Octal parity labels; rows are states 0000..1111, columns inputs 00..11.
    static constexpr std::array<const char*, 64> kLabels = {
        "534", "343", "671", "517", //
        "476", "073", "707", "364", //
        "346", "257", "571", "632", //
        "137", "752", "711", "265", //
        "754", "566", "227", "171", //
        "370", "467", "516", "335", //
        "743", "574", "037", "626", //
        "566", "273", "532", "615", //
        "465", "457", "343", "334", //
        "752", "665", "037", "370", //
        "274", "563", "754", "307", //
        "723", "354", "617", "465", //
        "435", "643", "317", "564", //
        "153", "666", "703", "334", //
        "327", "176", "453", "664", //
        "466", "153", "335", "761", //
    };
    std::vector<StateSubTable> subtables;
    subtables.reserve(16);
    for (int s = 0; s < 16; ++s) {
        std::vector<uint32_t> rows(4);
        for (int u = 0; u < 4; ++u)
            rows[static_cast<size_t>(u)] = octal_decode(kLabels[static_cast<size_t>(s) * 4 + u], 9);
        subtables.emplace_back(2, 9, std::move(rows));
    }
    return TableTrellis(default_topology_16(), std::move(subtables));
}

} // namespace nlturbo
