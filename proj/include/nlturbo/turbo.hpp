#ifndef NLTURBO_TURBO_HPP
#define NLTURBO_TURBO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nlturbo/interleaver.hpp"
#include "nlturbo/trellis.hpp"

namespace nlturbo {

/// Exact code rate as a reduced fraction.
struct Rational {
    long num = 0;
    long den = 1;

    Rational() = default;
    Rational(long n, long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rational&) const = default;
};

/// Periodic parity deletion mask; set bits are punctured. Applied cyclically
/// over each encoder's parity stream, most significant octal digit first.
struct PuncturePattern {
    int period = 9;
    uint32_t mask = 0;

    static PuncturePattern none(int period) { return {period, 0}; }
    static PuncturePattern from_octal(const std::string& label, int period);
    std::string to_octal() const;

    int punctured_per_period() const { return ones_count(mask); }
    int kept_per_period() const { return period - punctured_per_period(); }
    bool punctured(long stream_index) const {
        return row_bit(mask, period, static_cast<int>(stream_index % period)) != 0;
    }
};

/// Evenly spaced mask puncturing num_punctured of period positions (every
/// ceil(period/num_punctured)-th parity position, starting at 0).
PuncturePattern uniform_puncture(int period, int num_punctured);

/// A complete parallel-concatenated code: one constituent table used twice,
/// a symbol interleaver, per-encoder puncturing and the systematic policy.
struct CodeSpec {
    TableTrellis constituent;
    Interleaver interleaver;
    PuncturePattern puncture1;
    PuncturePattern puncture2;
    bool systematic = true;
    int info_bits = 0; ///< K

    int k() const { return constituent.k(); }
    int steps() const { return info_bits / k(); }
    long parity_bits(const PuncturePattern& p) const;
    long codeword_bits() const;
    Rational rate() const;

    /// Throws std::invalid_argument when K, the interleaver length and the
    /// constituent disagree.
    void validate() const;
};

/// Builds a spec around one constituent with a fresh spread interleaver.
CodeSpec make_code_spec(TableTrellis constituent, int info_bits, bool systematic,
                        PuncturePattern p1, PuncturePattern p2, uint64_t interleaver_seed,
                        int spread = 0);

/// Systematic bits (when enabled) followed by encoder 1's punctured parity
/// stream and encoder 2's (interleaved message order). Length equals
/// codeword_bits() exactly.
std::vector<uint8_t> encode(const CodeSpec& spec, std::span<const uint8_t> message);

/// Packs bits (first bit = symbol MSB) into k-bit symbol indices.
std::vector<int> bits_to_symbols(std::span<const uint8_t> bits, int k);
std::vector<uint8_t> symbols_to_bits(std::span<const int> symbols, int k);

struct DensityEstimate {
    double density = 0.0;
    double std_error = 0.0;
    long total_bits = 0;
};

/// Monte Carlo ones density of codewords under uniform random messages.
DensityEstimate measure_ones_density(const CodeSpec& spec, int num_blocks, uint64_t seed);

} // namespace nlturbo

#endif
