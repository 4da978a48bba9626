// Acceptance suite: end-to-end checks of the shipped codes, calculators,
// designer, decoder and the two-user pipeline. Prints one line per
// criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "nlturbo/codefile.hpp"
#include "nlturbo/designer.hpp"
#include "nlturbo/sim.hpp"
#include "oracles.hpp"

using namespace nlturbo;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct PunctureRow {
    const char* mask1;
    const char* mask2;
    Rational rate;
    double reference_density;
};

const std::vector<PunctureRow>& table2_rows() {
    static const std::vector<PunctureRow> rows = {
        {"000", "000", {1, 10}, 0.5953}, {"001", "002", {1, 9}, 0.5955},
        {"201", "042", {1, 8}, 0.5938},  {"241", "043", {1, 7}, 0.5915},
        {"243", "243", {1, 6}, 0.5911},  {"247", "263", {1, 5}, 0.5828},
        {"257", "267", {1, 4}, 0.5742},  {"277", "367", {1, 3}, 0.5599},
    };
    return rows;
}

CodeSpec row_spec(const PunctureRow& row, int info_bits, uint64_t seed) {
    return make_code_spec(table1(), info_bits, true, PuncturePattern::from_octal(row.mask1, 9),
                          PuncturePattern::from_octal(row.mask2, 9), seed);
}

// The shipped two-user operating point: (alpha, beta) = (0.188, 0.2017),
// p1 = 0.15, rates (1/10, 1/20), equal codeword length 200000.
struct BbscCodes {
    CodeSpec spec1;
    CodeSpec spec2;
};

BbscCodes bbsc_codes() {
    DesignParams d1;
    d1.target_ones_density = 0.15;
    d1.n = 10;
    d1.branch_floor = 1;
    d1.merge_floor = 1;
    d1.metric = DistanceMetric::hamming;
    d1.num_candidates = 30;
    d1.rng_seed = 2024;
    d1.rank_systematic = false;
    const DesignResult r1 = design_trellis(d1, default_topology_16());

    DesignParams d2;
    d2.target_ones_density = 0.5;
    d2.n = 19;
    d2.branch_floor = 6;
    d2.merge_floor = 3;
    d2.metric = DistanceMetric::hamming;
    d2.num_candidates = 10;
    d2.rng_seed = 4096;
    const DesignResult r2 = design_trellis(d2, default_topology_16());

    return {make_code_spec(r1.trellis, 20000, false, PuncturePattern::none(10),
                           PuncturePattern::none(10), 31, 70),
            make_code_spec(r2.trellis, 10000, true, PuncturePattern::none(19),
                           PuncturePattern::none(19), 37, 50)};
}

void criterion1_densities() {
    Timer timer;
    bool pass = true;
    std::string detail;
    for (const PunctureRow& row : table2_rows()) {
        const CodeSpec spec = row_spec(row, 20000, 1);
        const int blocks = static_cast<int>(1100000 / spec.codeword_bits()) + 1;
        const DensityEstimate estimate = measure_ones_density(spec, blocks, 17);
        const double err = std::abs(estimate.density - row.reference_density);
        if (estimate.total_bits < 1000000 || err > 0.005) pass = false;
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%s:%.4f/%.4f ", spec.rate().str().c_str(),
                      estimate.density, row.reference_density);
        detail += buffer;
    }
    report(1, pass, "codeword ones densities match the eight reference rows within 0.005",
           detail, timer.seconds());
}

void criterion2_rates() {
    Timer timer;
    bool pass = true;
    for (const PunctureRow& row : table2_rows()) {
        const CodeSpec spec = row_spec(row, 720, 1);
        if (spec.rate() != row.rate) pass = false;
    }
    report(2, pass, "puncture rows produce exact rates 1/10 through 1/3", "8 rows checked",
           timer.seconds());
}

void criterion3_z_capacity() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.05 * i;
        const double u_star = testing::golden_section_max(
            [&](double u) { return z_mutual_information(p, u); }, 0.0, 1.0);
        const double err = std::abs(z_capacity(p) - z_mutual_information(p, u_star));
        worst = std::max(worst, err);
        if (err > 1e-6) pass = false;
        if (!(1.0 - z_optimal_zeros_density(p) > 0.5)) pass = false;
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "max |closed-form - maximized| = %.2e", worst);
    report(3, pass, "closed-form capacity matches numeric maximization; ones density > 1/2",
           buffer, timer.seconds());
}

void criterion4_desk_scale_ber() {
    const struct {
        const PunctureRow& row;
    } points[] = {{table2_rows()[7]}, {table2_rows()[4]}}; // rates 1/3 and 1/6
    bool pass = true;
    std::string detail;
    Timer total;
    for (const auto& [row] : points) {
        Timer timer;
        const CodeSpec spec = row_spec(row, 20000, 1);
        const double p = z_crossover_for_capacity(spec.rate().value() + 0.08);
        MonteCarloConfig config;
        config.max_blocks = 100; // 2e6 information bits
        config.target_bit_errors = 0;
        config.seed = 4;
        config.decoder.max_iterations = 10;
        config.decoder.algorithm = DecoderConfig::Algorithm::log_map;
        config.decoder.early_stop = false;
        const ZSimPoint point = run_z_point(spec, p, config);
        const bool ok = point.tally.info_bits >= 2000000 && point.tally.ber() < 1e-4;
        if (!ok) pass = false;
        char buffer[96];
        std::snprintf(buffer, sizeof buffer, "%s@p=%.4f: %ld errs / %ld bits in %.0fs  ",
                      spec.rate().str().c_str(), p, point.tally.bit_errors,
                      point.tally.info_bits, timer.seconds());
        detail += buffer;
    }
    report(4, pass, "rate-1/3 and rate-1/6 reach BER < 1e-4 at a 0.08-bit capacity gap", detail,
           total.seconds());
}

void criterion5_design_postconditions() {
    Timer timer;
    bool pass = true;
    int worst_retries = 0;
    for (int run = 0; run < 50; ++run) {
        DesignParams params;
        params.target_ones_density = 0.621;
        params.n = 9;
        params.branch_floor = 1;
        params.merge_floor = 1;
        params.metric = DistanceMetric::z;
        params.num_candidates = 4;
        params.rng_seed = 9000 + run;
        const DesignResult result = design_trellis(params, default_topology_16());
        if (result.seed_trace.design_m1_calls != 1) pass = false;
        for (int retries : result.seed_trace.retries_per_candidate)
            worst_retries = std::max(worst_retries, retries);

        const DistanceReport report_z = distance_report(result.trellis, DistanceMetric::z);
        if (!(report_z.branch_distance > params.branch_floor)) pass = false;
        if (!(report_z.merge_distance >= params.merge_floor)) pass = false;

        std::multiset<int> reference;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                reference.insert(pair_distance(DistanceMetric::z,
                                               result.trellis.subtable(0).row(i),
                                               result.trellis.subtable(0).row(j), 9));
        for (int s = 0; s < 16; ++s) {
            if (result.trellis.subtable(s).ones() != 22) pass = false;
            std::multiset<int> dists;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    dists.insert(pair_distance(DistanceMetric::z,
                                               result.trellis.subtable(s).row(i),
                                               result.trellis.subtable(s).row(j), 9));
            if (dists != reference) pass = false;
        }
    }
    char buffer[96];
    std::snprintf(buffer, sizeof buffer,
                  "50 runs, nu=22, one design_m1 call each, max merge retries %d", worst_retries);
    report(5, pass, "design scheme postconditions hold across 50 seeded runs", buffer,
           timer.seconds());
}

void criterion6_decoder_oracle() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    Prng rng(606);
    DecoderConfig config;
    config.algorithm = DecoderConfig::Algorithm::log_map;
    for (int realization = 0; realization < 100; ++realization) {
        const int states = 1 + static_cast<int>(rng.next_below(4));
        const int steps = 1 + static_cast<int>(rng.next_below(6));
        const int n = 1 + static_cast<int>(rng.next_below(3));
        const TableTrellis trellis = testing::random_trellis(states, 1, n, rng);
        std::vector<int> symbols(static_cast<size_t>(steps));
        for (auto& s : symbols) s = static_cast<int>(rng.next_below(2));
        const std::vector<uint32_t> outputs = trellis.encode(symbols);
        std::vector<uint8_t> bits;
        for (int t = 0; t < steps; ++t)
            for (int j = 0; j < n; ++j)
                bits.push_back(static_cast<uint8_t>(row_bit(outputs[static_cast<size_t>(t)], n, j)));
        for (const ChannelModel& channel :
             {ChannelModel::bsc(0.1), ChannelModel::z_channel(0.25)}) {
            const std::vector<uint8_t> received = transmit(channel, bits, rng);
            const std::vector<double> llrs = channel_llr(channel, received, config.llr_cap);
            const BcjrResult got = bcjr(trellis, {}, {}, llrs, config);
            const std::vector<double> expected =
                testing::oracle_map_posterior(trellis, {}, llrs, steps);
            for (size_t i = 0; i < expected.size(); ++i)
                worst = std::max(worst, std::abs(std::exp(got.posterior[i]) - expected[i]));
        }
    }
    if (worst >= 1e-9) pass = false;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "max abs posterior error %.2e over 200 runs", worst);
    report(6, pass, "BCJR equals exhaustive MAP on small instances", buffer, timer.seconds());
}

void criterion7_free_distance_oracle() {
    Timer timer;
    bool pass = true;
    Prng rng(707);
    for (int checked = 0; checked < 20; ++checked) {
        const int states = 2 + static_cast<int>(rng.next_below(3));
        const TableTrellis trellis = testing::random_trellis(states, 1, 3, rng);
        for (DistanceMetric metric : {DistanceMetric::hamming, DistanceMetric::z}) {
            bool oracle_merged = false;
            const int expected =
                testing::oracle_free_distance(trellis, metric, true, 8, &oracle_merged);
            const FreeDistanceResult got = effective_free_distance(trellis, metric, true, 8);
            if (got.merged != oracle_merged) pass = false;
            if (oracle_merged && got.value != expected) pass = false;
        }
    }
    report(7, pass, "product-trellis free distance equals exhaustive codeword-pair search",
           "20 trellises x {hamming, z}", timer.seconds());
}

void criterion8_bbsc() {
    Timer timer;
    bool pass = true;
    std::string detail;

    // Analytic corners, exact.
    const double alpha = 0.188, beta = 0.2017;
    const RatePoint corner0 = bbsc_region(alpha, beta, 0.0);
    const RatePoint corner5 = bbsc_region(alpha, beta, 0.5);
    if (corner0.r1 != 0.0 || corner0.r2 != 1.0 - binary_entropy(beta)) pass = false;
    if (corner5.r1 != 1.0 - binary_entropy(alpha) || corner5.r2 != 0.0) pass = false;
    for (int g = 0; g <= 10; ++g)
        if (bbsc_region(0.0, 0.1, 0.05 * g).r1 != binary_entropy(0.05 * g)) pass = false;

    // Pipeline at a point >= 0.05 bits inside on each axis.
    const BbscCodes codes = bbsc_codes();
    const double p1 = ones_density(codes.spec1.constituent);
    const RatePoint boundary = bbsc_region(alpha, beta, p1);
    const double margin1 = boundary.r1 - codes.spec1.rate().value();
    const double margin2 = boundary.r2 - codes.spec2.rate().value();
    if (!(margin1 >= 0.05 && margin2 >= 0.05)) pass = false;

    SuperpositionSpec spec{codes.spec1, codes.spec2, alpha, beta, p1};
    BbscSimConfig config;
    config.blocks = 100;
    config.seed = 8;
    config.decoder.max_iterations = 10;
    config.decoder.early_stop = false;
    config.genie = true;
    const BbscSimResult sim = run_bbsc_sim(spec, config);
    if (!(sim.user1.ber() < 1e-4)) pass = false;
    if (!(sim.user2.ber() < 1e-4)) pass = false;
    if (!(sim.user1_genie.ber() <= sim.user1.ber())) pass = false;

    char buffer[200];
    std::snprintf(buffer, sizeof buffer,
                  "corners exact; p1=%.3f margins (%.3f, %.3f); user1 %ld/%ld user2 %ld/%ld "
                  "genie %ld errs; stage1 failures %ld",
                  p1, margin1, margin2, sim.user1.bit_errors, sim.user1.info_bits,
                  sim.user2.bit_errors, sim.user2.info_bits, sim.user1_genie.bit_errors,
                  sim.stage1_block_failures);
    report(8, pass, "BBSC region corners and two-user pipeline at (0.188, 0.2017)", buffer,
           timer.seconds());
}

void criterion9_permutation_invariance() {
    Timer timer;
    bool pass = true;
    Prng rng(909);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<uint32_t> rows(4);
        for (auto& r : rows) r = rng.next_below(1u << 9);
        const StateSubTable table(2, 9, rows);
        std::vector<int> rp{0, 1, 2, 3}, cp{0, 1, 2, 3, 4, 5, 6, 7, 8};
        for (int j = 3; j > 0; --j)
            std::swap(rp[static_cast<size_t>(j)], rp[rng.next_below(static_cast<uint32_t>(j + 1))]);
        for (int j = 8; j > 0; --j)
            std::swap(cp[static_cast<size_t>(j)], cp[rng.next_below(static_cast<uint32_t>(j + 1))]);
        const StateSubTable permuted = permute_subtable(table, rp, cp);
        if (permuted.ones() != table.ones()) pass = false;
        for (DistanceMetric metric :
             {DistanceMetric::hamming, DistanceMetric::directional, DistanceMetric::z}) {
            std::multiset<int> before, after;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    before.insert(pair_distance(metric, table.row(i), table.row(j), 9));
                    after.insert(pair_distance(metric, permuted.row(i), permuted.row(j), 9));
                }
            if (before != after) pass = false;
        }
    }
    report(9, pass, "1000 random permutation pairs preserve ones count and distance multisets",
           "4x9 sub-tables, all three metrics", timer.seconds());
}

} // namespace

int main() {
    std::printf("nlturbo acceptance suite\n");
    criterion1_densities();
    criterion2_rates();
    criterion3_z_capacity();
    criterion4_desk_scale_ber();
    criterion5_design_postconditions();
    criterion6_decoder_oracle();
    criterion7_free_distance_oracle();
    criterion8_bbsc();
    criterion9_permutation_invariance();
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
