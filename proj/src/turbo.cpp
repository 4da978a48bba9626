#include "nlturbo/turbo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlturbo/rng.hpp"

namespace nlturbo {

Rational::Rational(long n, long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    const long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

PuncturePattern PuncturePattern::from_octal(const std::string& label, int period) {
    return {period, octal_decode(label, period)};
}

std::string PuncturePattern::to_octal() const { return octal_encode(mask, period); }

PuncturePattern uniform_puncture(int period, int num_punctured) {
    if (num_punctured < 0 || num_punctured > period)
        throw std::invalid_argument("uniform_puncture: count out of range");
    if (num_punctured == 0) return PuncturePattern::none(period);
    const int stride = (period + num_punctured - 1) / num_punctured;
    uint32_t mask = 0;
    int placed = 0;
    for (int j = 0; j < period && placed < num_punctured; j += stride, ++placed)
        mask |= 1u << (period - 1 - j);
    if (placed < num_punctured) {
        // Stride overshoots for counts close to the period; fill remaining
        // zero positions from the left.
        for (int j = 0; j < period && placed < num_punctured; ++j) {
            const uint32_t bit = 1u << (period - 1 - j);
            if (!(mask & bit)) {
                mask |= bit;
                ++placed;
            }
        }
    }
    return {period, mask};
}

long CodeSpec::parity_bits(const PuncturePattern& p) const {
    const long raw = static_cast<long>(steps()) * constituent.n();
    long kept = 0;
    const long full_periods = raw / p.period;
    kept += full_periods * p.kept_per_period();
    for (long i = full_periods * p.period; i < raw; ++i)
        if (!p.punctured(i)) ++kept;
    return kept;
}

long CodeSpec::codeword_bits() const {
    return (systematic ? info_bits : 0L) + parity_bits(puncture1) + parity_bits(puncture2);
}

Rational CodeSpec::rate() const { return Rational(info_bits, codeword_bits()); }

void CodeSpec::validate() const {
    if (info_bits <= 0 || info_bits % k() != 0)
        throw std::invalid_argument("CodeSpec: K must be a positive multiple of k");
    if (interleaver.size() != steps())
        throw std::invalid_argument("CodeSpec: interleaver length " +
                                    std::to_string(interleaver.size()) + " != K/k = " +
                                    std::to_string(steps()));
    if (puncture1.period < 1 || puncture2.period < 1)
        throw std::invalid_argument("CodeSpec: puncture period must be positive");
}

CodeSpec make_code_spec(TableTrellis constituent, int info_bits, bool systematic,
                        PuncturePattern p1, PuncturePattern p2, uint64_t interleaver_seed,
                        int spread) {
    const int symbols = info_bits / constituent.k();
    if (spread <= 0) spread = default_spread(symbols);
    CodeSpec spec{std::move(constituent),
                  make_spread_interleaver(symbols, spread, interleaver_seed),
                  p1,
                  p2,
                  systematic,
                  info_bits};
    spec.validate();
    return spec;
}

std::vector<int> bits_to_symbols(std::span<const uint8_t> bits, int k) {
    if (bits.size() % static_cast<size_t>(k) != 0)
        throw std::invalid_argument("bits_to_symbols: length not a multiple of k");
    std::vector<int> symbols(bits.size() / static_cast<size_t>(k));
    for (size_t t = 0; t < symbols.size(); ++t) {
        int u = 0;
        for (int j = 0; j < k; ++j) u = (u << 1) | bits[t * static_cast<size_t>(k) + j];
        symbols[t] = u;
    }
    return symbols;
}

std::vector<uint8_t> symbols_to_bits(std::span<const int> symbols, int k) {
    std::vector<uint8_t> bits(symbols.size() * static_cast<size_t>(k));
    for (size_t t = 0; t < symbols.size(); ++t)
        for (int j = 0; j < k; ++j)
            bits[t * static_cast<size_t>(k) + j] =
                static_cast<uint8_t>((symbols[t] >> (k - 1 - j)) & 1);
    return bits;
}

namespace {

void append_punctured_parity(const TableTrellis& trellis, const std::vector<int>& symbols,
                             const PuncturePattern& puncture, std::vector<uint8_t>& out) {
    const int n = trellis.n();
    int state = 0;
    long stream_index = 0;
    for (int u : symbols) {
        const TableTrellis::Step st = trellis.step(state, u);
        for (int j = 0; j < n; ++j, ++stream_index)
            if (!puncture.punctured(stream_index))
                out.push_back(static_cast<uint8_t>(row_bit(st.output, n, j)));
        state = st.next_state;
    }
}

} // namespace

std::vector<uint8_t> encode(const CodeSpec& spec, std::span<const uint8_t> message) {
    if (static_cast<int>(message.size()) != spec.info_bits)
        throw std::invalid_argument("encode: message length != K");
    const std::vector<int> symbols = bits_to_symbols(message, spec.k());
    const std::vector<int> symbols2 = spec.interleaver.apply(symbols);

    std::vector<uint8_t> out;
    out.reserve(static_cast<size_t>(spec.codeword_bits()));
    if (spec.systematic) out.insert(out.end(), message.begin(), message.end());
    append_punctured_parity(spec.constituent, symbols, spec.puncture1, out);
    append_punctured_parity(spec.constituent, symbols2, spec.puncture2, out);
    return out;
}

DensityEstimate measure_ones_density(const CodeSpec& spec, int num_blocks, uint64_t seed) {
    if (num_blocks < 1) throw std::invalid_argument("measure_ones_density: need blocks >= 1");
    std::vector<double> block_density(static_cast<size_t>(num_blocks));
    long total_bits = 0;
    for (int b = 0; b < num_blocks; ++b) {
        Prng rng(mix_keys({seed, static_cast<uint64_t>(b), 0xdE25ull}));
        std::vector<uint8_t> message(static_cast<size_t>(spec.info_bits));
        for (auto& bit : message) bit = static_cast<uint8_t>(rng.next_u64() & 1u);
        const std::vector<uint8_t> codeword = encode(spec, message);
        long ones = 0;
        for (uint8_t bit : codeword) ones += bit;
        block_density[static_cast<size_t>(b)] =
            static_cast<double>(ones) / static_cast<double>(codeword.size());
        total_bits += static_cast<long>(codeword.size());
    }
    double mean = 0.0;
    for (double d : block_density) mean += d;
    mean /= num_blocks;
    double var = 0.0;
    for (double d : block_density) var += (d - mean) * (d - mean);
    const double std_error =
        num_blocks > 1 ? std::sqrt(var / (num_blocks - 1.0) / num_blocks) : 0.0;
    return {mean, std_error, total_bits};
}

} // namespace nlturbo
