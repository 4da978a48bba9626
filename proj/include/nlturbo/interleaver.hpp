#ifndef NLTURBO_INTERLEAVER_HPP
#define NLTURBO_INTERLEAVER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nlturbo {

/// Symbol-wise permutation with the spread property: indices closer than the
/// spread map at least the spread apart.
struct Interleaver {
    std::vector<int> pi; ///< interleaved[i] = natural[pi[i]]
    int spread_target = 1;
    int spread_achieved = 1;
    uint64_t seed = 0;

    int size() const { return static_cast<int>(pi.size()); }

    template <typename T>
    std::vector<T> apply(const std::vector<T>& natural) const {
        if (natural.size() != pi.size())
            throw std::invalid_argument("Interleaver::apply: length mismatch");
        std::vector<T> out(natural.size());
        for (size_t i = 0; i < pi.size(); ++i) out[i] = natural[static_cast<size_t>(pi[i])];
        return out;
    }

    template <typename T>
    std::vector<T> invert(const std::vector<T>& interleaved) const {
        if (interleaved.size() != pi.size())
            throw std::invalid_argument("Interleaver::invert: length mismatch");
        std::vector<T> out(interleaved.size());
        for (size_t i = 0; i < pi.size(); ++i) out[static_cast<size_t>(pi[i])] = interleaved[i];
        return out;
    }
};

/// Largest spread value <= limit that the permutation satisfies.
int measure_spread(const std::vector<int>& pi, int limit);

/// Deterministic spread ("S-random") construction. Falls back to smaller
/// spreads when the requested one cannot be met within the retry budget; the
/// result records both the request and what was achieved.
Interleaver make_spread_interleaver(int num_symbols, int spread, uint64_t seed);

/// Default spread for a given length: floor(sqrt(n/2)).
int default_spread(int num_symbols);

} // namespace nlturbo

#endif
