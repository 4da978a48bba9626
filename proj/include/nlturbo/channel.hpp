#ifndef NLTURBO_CHANNEL_HPP
#define NLTURBO_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nlturbo/rng.hpp"

namespace nlturbo {

/// Channel conventions used throughout: the Z-channel transmits 1s
/// noiselessly and flips 0 -> 1 with probability p, so the optimal ones
/// density sits above 50%. BSC flips both ways with probability q. BBSC
/// broadcasts one input through two independent BSCs with alpha < beta.
struct ChannelModel {
    enum class Kind { z, bsc, bbsc };
    Kind kind = Kind::bsc;
    double p = 0.0;     ///< z or bsc crossover
    double alpha = 0.0; ///< bbsc better-user crossover
    double beta = 0.0;  ///< bbsc worse-user crossover

    static ChannelModel z_channel(double p);
    static ChannelModel bsc(double q);
    static ChannelModel bbsc(double alpha, double beta);
};

/// Binary entropy in bits, with 0 log 0 = 0.
double binary_entropy(double x);

/// Crossover of two cascaded BSCs: a(1-b) + b(1-a). Endpoint and half
/// values are returned exactly.
double star(double a, double b);

/// Optimal zeros density of the Z-channel at crossover p.
double z_optimal_zeros_density(double p);

/// Z-channel capacity in bits at crossover p.
double z_capacity(double p);

/// Mutual information of the Z-channel at an arbitrary input zeros density.
double z_mutual_information(double p, double zeros_density);

/// Crossover at which the Z-channel capacity equals `rate` (bisection).
double z_crossover_for_capacity(double rate);

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
    double p1 = 0.0; ///< ones density of user 1
};

/// Boundary of the two-user BBSC region at user-1 ones density p1:
/// R1 = h(alpha * p1) - h(alpha), R2 = 1 - h(beta * p1).
RatePoint bbsc_region(double alpha, double beta, double p1);

/// p1 with R1(p1) = r1 on the increasing branch (f1 inverse, bisection).
double bbsc_p1_for_rate1(double alpha, double beta, double r1);

/// p1 with R2(p1) = r2 on the decreasing branch (f2 inverse, bisection).
double bbsc_p1_for_rate2(double alpha, double beta, double r2);

struct P1Choice {
    double lower = 0.0;    ///< densities below this starve user 1
    double upper = 0.0;    ///< densities above this starve user 2
    double selected = 0.0; ///< interval midpoint
};

/// Feasible user-1 density interval for a working point strictly inside the
/// region; throws std::domain_error when the interval is empty.
P1Choice pick_p1(double alpha, double beta, double r1, double r2);

/// Applies z or bsc noise; bbsc models must go through transmit_bbsc.
std::vector<uint8_t> transmit(const ChannelModel& channel, std::span<const uint8_t> codeword,
                              Prng& rng);

/// The two component-channel observations of one broadcast input.
std::pair<std::vector<uint8_t>, std::vector<uint8_t>> transmit_bbsc(
    const ChannelModel& channel, std::span<const uint8_t> codeword, Prng& rng);

} // namespace nlturbo

#endif
