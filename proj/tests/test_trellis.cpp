#include <doctest.h>

#include <stdexcept>

#include "nlturbo/rng.hpp"
#include "nlturbo/trellis.hpp"

using namespace nlturbo;

TEST_CASE("octal decode matches labels bit for bit") {
    CHECK(octal_decode("534", 9) == 0b101011100u);
    CHECK(octal_decode("000", 9) == 0u);
    CHECK(octal_decode("761", 9) == 0b111110001u);
    CHECK(octal_decode("343", 9) == 0b011100011u);
}

TEST_CASE("octal round-trip over all 9-bit rows") {
    for (uint32_t row = 0; row < 512; ++row) CHECK(octal_decode(octal_encode(row, 9), 9) == row);
}

TEST_CASE("octal widths that are not multiples of 3") {
    CHECK(octal_encode(0b1111111u, 7) == "177");
    CHECK(octal_decode("177", 7) == 0b1111111u);
    CHECK_THROWS_AS(octal_decode("277", 7), std::invalid_argument); // leading pad bit set
    CHECK(octal_decode("11", 4) == 0b1001u);
}

TEST_CASE("octal decode rejects malformed labels") {
    CHECK_THROWS_AS(octal_decode("58", 6), std::invalid_argument);
    CHECK_THROWS_AS(octal_decode("1234", 9), std::invalid_argument);
    CHECK_THROWS_AS(octal_decode("12", 9), std::invalid_argument);
}

TEST_CASE("table1 matches the shipped fixture") {
    const TableTrellis t = table1();
    CHECK(t.num_states() == 16);
    CHECK(t.k() == 2);
    CHECK(t.n() == 9);
    CHECK(t.label(0b0000, 0b01) == octal_decode("343", 9));
    CHECK(t.label(0b1010, 0b10) == octal_decode("754", 9));
    CHECK(t.label(0b1111, 0b11) == octal_decode("761", 9));
    CHECK(t.num_states() * t.num_inputs() * t.n() == 576);
}

TEST_CASE("table1 ones density golden") {
    const TableTrellis t = table1();
    CHECK(t.total_ones() == 349);
    CHECK(ones_density(t) == doctest::Approx(349.0 / 576.0).epsilon(1e-12));
    CHECK(ones_density(t) > 0.55);
    CHECK(ones_density(t) < 0.65);
}

TEST_CASE("ones density extremes") {
    const TrellisTopology topo = default_topology_16();
    std::vector<StateSubTable> zeros, ones;
    for (int s = 0; s < 16; ++s) {
        zeros.emplace_back(2, 9, std::vector<uint32_t>(4, 0u));
        ones.emplace_back(2, 9, std::vector<uint32_t>(4, row_mask(9)));
    }
    CHECK(ones_density(TableTrellis(topo, zeros)) == 0.0);
    CHECK(ones_density(TableTrellis(topo, ones)) == 1.0);
}

TEST_CASE("topology outgoing and incoming transitions are uniform") {
    const TrellisTopology topo = default_topology_16();
    for (int s = 0; s < topo.num_states(); ++s) {
        CHECK(static_cast<int>(topo.incoming()[static_cast<size_t>(s)].size()) == 4);
        // all 2^k inputs leave each state exactly once by construction
        for (int u = 0; u < 4; ++u) {
            const int t = topo.next_state(s, u);
            CHECK(t >= 0);
            CHECK(t < 16);
        }
    }
}

TEST_CASE("topology construction rejects non-uniform in-degree") {
    // both inputs of both states land in state 0
    CHECK_THROWS_AS(TrellisTopology(2, 1, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(TrellisTopology(2, 1, {0, 3, 1, 0}), std::invalid_argument);
}

TEST_CASE("encoding replays deterministically") {
    const TableTrellis t = table1();
    std::vector<int> symbols;
    Prng rng(7);
    for (int i = 0; i < 200; ++i) symbols.push_back(static_cast<int>(rng.next_below(4)));
    const auto a = t.encode(symbols);
    const auto b = t.encode(symbols);
    CHECK(a == b);
    CHECK(a.size() == symbols.size());
}

TEST_CASE("zero message from state 0 emits the state-0 row-0 label") {
    const TableTrellis t = table1();
    const std::vector<int> symbols{0};
    CHECK(t.encode(symbols)[0] == octal_decode("534", 9));
}

TEST_CASE("subtable validation") {
    CHECK_THROWS_AS(StateSubTable(2, 9, std::vector<uint32_t>(3, 0u)), std::invalid_argument);
    CHECK_THROWS_AS(StateSubTable(2, 9, std::vector<uint32_t>(4, 1u << 9)), std::invalid_argument);
    CHECK_THROWS_AS(StateSubTable(2, 33, std::vector<uint32_t>(4, 0u)), std::invalid_argument);
}
