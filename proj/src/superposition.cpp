#include "nlturbo/superposition.hpp"

#include <stdexcept>

#include "nlturbo/channel.hpp"

namespace nlturbo {

void SuperpositionSpec::validate() const {
    spec1.validate();
    spec2.validate();
    if (spec1.codeword_bits() != spec2.codeword_bits())
        throw std::invalid_argument("SuperpositionSpec: codeword lengths differ (" +
                                    std::to_string(spec1.codeword_bits()) + " vs " +
                                    std::to_string(spec2.codeword_bits()) + ")");
    if (!(alpha >= 0.0 && alpha < beta && beta < 0.5))
        throw std::invalid_argument("SuperpositionSpec: require 0 <= alpha < beta < 0.5");
}

std::vector<uint8_t> superpose(std::span<const uint8_t> x1, std::span<const uint8_t> x2) {
    if (x1.size() != x2.size()) throw std::invalid_argument("superpose: length mismatch");
    std::vector<uint8_t> out(x1.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = x1[i] ^ x2[i];
    return out;
}

User2Decode decode_user2(const CodeSpec& spec2, std::span<const uint8_t> y2, double beta,
                         double p1, const DecoderConfig& config) {
    User2Decode result;
    result.effective_crossover = star(beta, p1);
    const ChannelModel effective = ChannelModel::bsc(result.effective_crossover);
    const std::vector<double> llrs = channel_llr(effective, y2, config.llr_cap);
    result.message = turbo_decode(spec2, llrs, config);
    return result;
}

User1Decode decode_user1(const CodeSpec& spec1, const CodeSpec& spec2, std::span<const uint8_t> y1,
                         double alpha, double beta, double p1, const DecoderConfig& config) {
    if (!(alpha < beta)) throw std::invalid_argument("decode_user1: require alpha < beta");
    User1Decode result;
    result.stage1_crossover = star(alpha, p1);
    result.stage2_crossover = alpha;

    // Stage 1: channel 1 is the stronger one, so user 2's codeword is
    // decodable from y1 with interference treated as noise.
    const ChannelModel stage1 = ChannelModel::bsc(result.stage1_crossover);
    const std::vector<double> llrs1 = channel_llr(stage1, y1, config.llr_cap);
    result.stage1_message2 = turbo_decode(spec2, llrs1, config);

    // Stage 2: cancel the re-encoded estimate and decode user 1 under
    // BSC(alpha). A stage-1 block error surfaces as residual interference.
    const std::vector<uint8_t> x2_hat = encode(spec2, result.stage1_message2);
    const std::vector<uint8_t> cleaned = superpose(y1, x2_hat);
    const ChannelModel stage2 = ChannelModel::bsc(alpha);
    const std::vector<double> llrs2 = channel_llr(stage2, cleaned, config.llr_cap);
    result.message = turbo_decode(spec1, llrs2, config);
    return result;
}

std::vector<uint8_t> decode_user1_genie(const CodeSpec& spec1, std::span<const uint8_t> y1,
                                        std::span<const uint8_t> x2, double alpha,
                                        const DecoderConfig& config) {
    const std::vector<uint8_t> cleaned = superpose(y1, x2);
    const ChannelModel channel = ChannelModel::bsc(alpha);
    const std::vector<double> llrs = channel_llr(channel, cleaned, config.llr_cap);
    return turbo_decode(spec1, llrs, config);
}

} // namespace nlturbo
