#ifndef NLTURBO_SUPERPOSITION_HPP
#define NLTURBO_SUPERPOSITION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nlturbo/decode.hpp"
#include "nlturbo/turbo.hpp"

namespace nlturbo {

/// Two independently encoded users sharing one broadcast input: user 1's
/// codeword has ones density p1, user 2's has density 0.5, XORed bitwise.
/// Codeword lengths must match exactly.
struct SuperpositionSpec {
    CodeSpec spec1;
    CodeSpec spec2;
    double alpha = 0.0;
    double beta = 0.0;
    double p1 = 0.0;

    void validate() const;
};

/// Bitwise XOR of two equal-length codewords.
std::vector<uint8_t> superpose(std::span<const uint8_t> x1, std::span<const uint8_t> x2);

struct User2Decode {
    std::vector<uint8_t> message;
    double effective_crossover = 0.0; ///< star(beta, p1), fed to the llr map
};

/// Decodes user 2 from its own observation, treating user 1's codeword plus
/// channel noise as one BSC with crossover star(beta, p1).
User2Decode decode_user2(const CodeSpec& spec2, std::span<const uint8_t> y2, double beta,
                         double p1, const DecoderConfig& config);

struct User1Decode {
    std::vector<uint8_t> message;
    std::vector<uint8_t> stage1_message2; ///< user 2's message as seen by user 1
    double stage1_crossover = 0.0;        ///< star(alpha, p1)
    double stage2_crossover = 0.0;        ///< alpha
};

/// Successive cancellation at the stronger receiver: decode user 2's
/// codeword from y1 under BSC(star(alpha, p1)), re-encode and subtract it,
/// then decode user 1 under BSC(alpha).
User1Decode decode_user1(const CodeSpec& spec1, const CodeSpec& spec2, std::span<const uint8_t> y1,
                         double alpha, double beta, double p1, const DecoderConfig& config);

/// Diagnostic receiver with the interfering codeword known exactly; isolates
/// user 1's code quality from cancellation losses.
std::vector<uint8_t> decode_user1_genie(const CodeSpec& spec1, std::span<const uint8_t> y1,
                                        std::span<const uint8_t> x2, double alpha,
                                        const DecoderConfig& config);

} // namespace nlturbo

#endif
