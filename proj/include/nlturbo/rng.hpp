#ifndef NLTURBO_RNG_HPP
#define NLTURBO_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace nlturbo {

/// Counter-based pseudo-random stream (splitmix64). Streams derived from
/// distinct keys are independent, so Monte Carlo workers and designer
/// candidates can each own one without coordination.
class Prng {
  public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    uint32_t next_below(uint32_t n) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return next_double() < p; }

  private:
    uint64_t state_;
};

/// Hash-combines keys into a stream seed; used to derive per-(seed, index,
/// ...) streams whose draws do not depend on iteration order elsewhere.
inline uint64_t mix_keys(std::initializer_list<uint64_t> keys) {
    uint64_t h = 0x6a09e667f3bcc909ull;
    for (uint64_t k : keys) {
        h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        h = z ^ (z >> 31);
    }
    return h;
}

} // namespace nlturbo

#endif
