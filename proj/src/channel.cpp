#include "nlturbo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace nlturbo {

ChannelModel ChannelModel::z_channel(double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("z channel: p must be in [0, 1)");
    return {Kind::z, p, 0.0, 0.0};
}

ChannelModel ChannelModel::bsc(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("bsc: q must be in [0, 1)");
    return {Kind::bsc, q, 0.0, 0.0};
}

ChannelModel ChannelModel::bbsc(double alpha, double beta) {
    if (!(alpha >= 0.0 && beta < 1.0 && alpha < beta))
        throw std::invalid_argument("bbsc: require 0 <= alpha < beta < 1");
    return {Kind::bbsc, 0.0, alpha, beta};
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double star(double a, double b) {
    // Exact at the points the region corners rely on.
    if (a == 0.0) return b;
    if (b == 0.0) return a;
    if (a == 0.5 || b == 0.5) return 0.5;
    return a * (1.0 - b) + b * (1.0 - a);
}

double z_optimal_zeros_density(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("z_optimal_zeros_density: p must be in [0, 1)");
    if (p == 0.0) return 0.5; // limit of p^{p/(1-p)} as p -> 0 is 1
    const double t = std::pow(p, p / (1.0 - p));
    return t / (1.0 + (1.0 - p) * t);
}

double z_mutual_information(double p, double zeros_density) {
    const double u = zeros_density;
    return binary_entropy(u * (1.0 - p)) - u * binary_entropy(p);
}

double z_capacity(double p) {
    return z_mutual_information(p, z_optimal_zeros_density(p));
}

double z_crossover_for_capacity(double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::domain_error("z_crossover_for_capacity: rate must be in (0, 1]");
    double lo = 0.0, hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (z_capacity(mid) > rate)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RatePoint bbsc_region(double alpha, double beta, double p1) {
    if (!(alpha >= 0.0 && alpha < beta && beta < 0.5))
        throw std::invalid_argument("bbsc_region: require 0 <= alpha < beta < 0.5");
    if (!(p1 >= 0.0 && p1 <= 0.5))
        throw std::invalid_argument("bbsc_region: p1 must be in [0, 0.5]");
    RatePoint pt;
    pt.p1 = p1;
    pt.r1 = binary_entropy(star(alpha, p1)) - binary_entropy(alpha);
    pt.r2 = 1.0 - binary_entropy(star(beta, p1));
    return pt;
}

namespace {

// Inverts a monotone function of p1 on [0, 0.5] by bisection.
double invert_monotone(double target, bool increasing, const auto& f) {
    double lo = 0.0, hi = 0.5;
    const double f_lo = f(lo), f_hi = f(hi);
    const double min_v = increasing ? f_lo : f_hi;
    const double max_v = increasing ? f_hi : f_lo;
    if (target < min_v - 1e-12 || target > max_v + 1e-12)
        throw std::domain_error("pick_p1: rate outside the achievable range");
    for (int it = 0; it < 100 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool go_right = increasing ? (f(mid) < target) : (f(mid) > target);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double bbsc_p1_for_rate1(double alpha, double beta, double r1) {
    return invert_monotone(r1, true,
                           [&](double p1) { return bbsc_region(alpha, beta, p1).r1; });
}

double bbsc_p1_for_rate2(double alpha, double beta, double r2) {
    return invert_monotone(r2, false,
                           [&](double p1) { return bbsc_region(alpha, beta, p1).r2; });
}

P1Choice pick_p1(double alpha, double beta, double r1, double r2) {
    if (!(alpha >= 0.0 && alpha < beta && beta < 0.5))
        throw std::invalid_argument("pick_p1: require 0 <= alpha < beta < 0.5");
    // User 1 needs p1 at or above the density where f1 reaches r1; user 2
    // needs p1 at or below the density where the decreasing f2 reaches r2.
    P1Choice choice;
    choice.lower = bbsc_p1_for_rate1(alpha, beta, r1);
    choice.upper = bbsc_p1_for_rate2(alpha, beta, r2);
    if (!(choice.lower < choice.upper))
        throw std::domain_error("pick_p1: (r1, r2) lies outside the region (empty p1 interval)");
    choice.selected = 0.5 * (choice.lower + choice.upper);
    return choice;
}

std::vector<uint8_t> transmit(const ChannelModel& channel, std::span<const uint8_t> codeword,
                              Prng& rng) {
    std::vector<uint8_t> received(codeword.begin(), codeword.end());
    switch (channel.kind) {
        case ChannelModel::Kind::z:
            for (auto& bit : received)
                if (bit == 0 && rng.bernoulli(channel.p)) bit = 1;
            break;
        case ChannelModel::Kind::bsc:
            for (auto& bit : received)
                if (rng.bernoulli(channel.p)) bit ^= 1u;
            break;
        case ChannelModel::Kind::bbsc:
            throw std::invalid_argument("transmit: bbsc channels produce two outputs; use transmit_bbsc");
    }
    return received;
}

std::pair<std::vector<uint8_t>, std::vector<uint8_t>> transmit_bbsc(
    const ChannelModel& channel, std::span<const uint8_t> codeword, Prng& rng) {
    if (channel.kind != ChannelModel::Kind::bbsc)
        throw std::invalid_argument("transmit_bbsc: not a bbsc channel");
    std::vector<uint8_t> y1(codeword.begin(), codeword.end());
    std::vector<uint8_t> y2(codeword.begin(), codeword.end());
    for (size_t i = 0; i < y1.size(); ++i) {
        if (rng.bernoulli(channel.alpha)) y1[i] ^= 1u;
        if (rng.bernoulli(channel.beta)) y2[i] ^= 1u;
    }
    return {std::move(y1), std::move(y2)};
}

} // namespace nlturbo
