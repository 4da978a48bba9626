#include <doctest.h>

#include <cstdlib>

#include "nlturbo/sim.hpp"

using namespace nlturbo;

namespace {

CodeSpec small_spec(uint64_t seed) {
    return make_code_spec(table1(), 200, true, PuncturePattern::from_octal("277", 9),
                          PuncturePattern::from_octal("367", 9), seed);
}

} // namespace

TEST_CASE("wilson interval basics") {
    const WilsonInterval none = wilson_interval(0, 0);
    CHECK(none.lo == 0.0);
    CHECK(none.hi == 1.0);
    const WilsonInterval half = wilson_interval(50, 100);
    CHECK(half.lo > 0.39);
    CHECK(half.hi < 0.61);
    CHECK(half.lo < 0.5);
    CHECK(half.hi > 0.5);
    const WilsonInterval rare = wilson_interval(0, 1000000);
    CHECK(rare.lo == 0.0);
    CHECK(rare.hi < 1e-5);
}

TEST_CASE("ber confidence intervals shrink with the block budget") {
    const CodeSpec spec = small_spec(3);
    // far above capacity so errors are plentiful
    const double p = 0.75;
    double previous_width = 1.0;
    for (int blocks : {8, 32, 128}) {
        MonteCarloConfig config;
        config.max_blocks = blocks;
        config.target_bit_errors = 0;
        config.seed = 5;
        config.decoder.max_iterations = 2;
        const ZSimPoint point = run_z_point(spec, p, config);
        const WilsonInterval interval = point.tally.ber_interval();
        const double width = interval.hi - interval.lo;
        CHECK(width < previous_width);
        previous_width = width;
        CHECK(point.tally.frames == blocks);
    }
}

TEST_CASE("z sweep points are deterministic in the seed and thread count") {
    const CodeSpec spec = small_spec(7);
    MonteCarloConfig config;
    config.max_blocks = 12;
    config.target_bit_errors = 0;
    config.seed = 11;
    config.decoder.max_iterations = 3;
    config.threads = 1;
    const ZSimPoint a = run_z_point(spec, 0.55, config);
    config.threads = 2;
    const ZSimPoint b = run_z_point(spec, 0.55, config);
    CHECK(a.tally.bit_errors == b.tally.bit_errors);
    CHECK(a.tally.frame_errors == b.tally.frame_errors);
    CHECK(a.tally.info_bits == b.tally.info_bits);
}

TEST_CASE("error-target stopping reports which bound triggered") {
    const CodeSpec spec = small_spec(9);
    MonteCarloConfig config;
    config.max_blocks = 200;
    config.target_bit_errors = 25;
    config.seed = 13;
    config.decoder.max_iterations = 2;
    const ZSimPoint noisy = run_z_point(spec, 0.8, config);
    CHECK(noisy.stop_reason == "error_target");
    CHECK(noisy.tally.bit_errors >= 25);
    CHECK(noisy.tally.frames < 200);

    const ZSimPoint quiet = run_z_point(spec, 0.0, config);
    CHECK(quiet.stop_reason == "block_budget");
    CHECK(quiet.tally.bit_errors == 0);
    CHECK(quiet.tally.frames == 200);
}

TEST_CASE("gap to capacity is reported, negative when infeasible") {
    const CodeSpec spec = small_spec(15);
    MonteCarloConfig config;
    config.max_blocks = 2;
    config.target_bit_errors = 0;
    config.decoder.max_iterations = 1;
    const ZSimPoint feasible = run_z_point(spec, 0.2, config);
    CHECK(feasible.gap == doctest::Approx(z_capacity(0.2) - 1.0 / 3.0));
    CHECK(feasible.gap > 0.0);
    const ZSimPoint infeasible = run_z_point(spec, 0.85, config);
    CHECK(infeasible.gap < 0.0);
}

TEST_CASE("worker pool honors NLTURBO_THREADS") {
    setenv("NLTURBO_THREADS", "3", 1);
    CHECK(worker_threads() == 3);
    unsetenv("NLTURBO_THREADS");
    CHECK(worker_threads() >= 1);
}
