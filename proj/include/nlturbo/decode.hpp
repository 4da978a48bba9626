#ifndef NLTURBO_DECODE_HPP
#define NLTURBO_DECODE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nlturbo/channel.hpp"
#include "nlturbo/turbo.hpp"

namespace nlturbo {

struct DecoderConfig {
    enum class Algorithm { log_map, max_log_map };
    int max_iterations = 10;
    Algorithm algorithm = Algorithm::log_map;
    double llr_cap = 30.0; ///< saturation for infinite channel llrs, in nats
    bool early_stop = true;
};

/// Per-bit log(P(y|x=0) / P(y|x=1)) for point-to-point channels, saturated to
/// +-llr_cap. On the Z-channel a received 0 pins the bit (+cap) and a
/// received 1 yields log p.
std::vector<double> channel_llr(const ChannelModel& channel, std::span<const uint8_t> received,
                                double llr_cap = 30.0);

/// Soft outputs of one constituent pass, flattened [step * 2^k + symbol].
struct BcjrResult {
    std::vector<double> posterior; ///< log-probabilities, each step sums to 1
    std::vector<double> extrinsic; ///< log-weights, lse-normalized per step
};

/// Symbol-wise MAP over one table trellis. symbol_priors (log-weights) and
/// systematic_llrs may be empty for uniform priors / non-systematic codes;
/// parity_llrs carries n entries per step with zeros at punctured positions.
/// Starts in state 0 and ends with a uniform final-state prior.
BcjrResult bcjr(const TableTrellis& trellis, std::span<const double> symbol_priors,
                std::span<const double> systematic_llrs, std::span<const double> parity_llrs,
                const DecoderConfig& config);

struct TurboDecodeResult {
    std::vector<uint8_t> message;
    std::vector<double> symbol_posterior; ///< final combined log-probs [step * 2^k + u]
    int iterations = 0;
};

/// Iterative decoding with symbol-wise extrinsic exchange between the two
/// constituent passes. llrs must cover the transmitted codeword in encode()
/// order; punctured parity positions are re-inserted internally with llr 0.
TurboDecodeResult turbo_decode_full(const CodeSpec& spec, std::span<const double> llrs,
                                    const DecoderConfig& config);

std::vector<uint8_t> turbo_decode(const CodeSpec& spec, std::span<const double> llrs,
                                  const DecoderConfig& config);

} // namespace nlturbo

#endif
