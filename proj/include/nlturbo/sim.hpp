#ifndef NLTURBO_SIM_HPP
#define NLTURBO_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlturbo/channel.hpp"
#include "nlturbo/decode.hpp"
#include "nlturbo/superposition.hpp"
#include "nlturbo/turbo.hpp"

namespace nlturbo {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

struct BerTally {
    long bit_errors = 0;
    long info_bits = 0;
    long frame_errors = 0;
    long frames = 0;

    void add(const BerTally& other);
    double ber() const { return info_bits ? static_cast<double>(bit_errors) / info_bits : 0.0; }
    double fer() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }
    WilsonInterval ber_interval() const { return wilson_interval(bit_errors, info_bits); }
    WilsonInterval fer_interval() const { return wilson_interval(frame_errors, frames); }
};

/// Worker-pool width: NLTURBO_THREADS when set, hardware concurrency
/// otherwise.
int worker_threads();

struct MonteCarloConfig {
    int max_blocks = 100;
    long target_bit_errors = 100; ///< stop early once reached (0 = never)
    uint64_t seed = 1;
    DecoderConfig decoder;
    int threads = 0; ///< 0 = worker_threads()
};

struct ZSimPoint {
    double crossover = 0.0;
    Rational rate;
    double capacity = 0.0;
    double gap = 0.0; ///< capacity - rate
    BerTally tally;
    std::string stop_reason; ///< "error_target" or "block_budget"
    double seconds = 0.0;
};

/// Simulates one Z-channel operating point. Blocks run in deterministic
/// waves across the worker pool, so results depend only on the seed.
ZSimPoint run_z_point(const CodeSpec& spec, double crossover, const MonteCarloConfig& config);

struct BbscSimResult {
    double alpha = 0.0;
    double beta = 0.0;
    double p1 = 0.0;
    Rational rate1, rate2;
    RatePoint boundary; ///< region boundary at p1
    BerTally user1, user2, user1_genie;
    long stage1_block_failures = 0; ///< cancellation-failure events
    bool genie_enabled = false;
    double seconds = 0.0;
};

struct BbscSimConfig {
    int blocks = 100;
    uint64_t seed = 1;
    DecoderConfig decoder;
    int threads = 0;
    bool genie = true;
};

/// Full two-user pipeline: superpose, broadcast, decode both receivers
/// (optionally plus the genie-aided user-1 diagnostic).
BbscSimResult run_bbsc_sim(const SuperpositionSpec& spec, const BbscSimConfig& config);

} // namespace nlturbo

#endif
