#include "nlturbo/interleaver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "nlturbo/rng.hpp"

namespace nlturbo {

int default_spread(int num_symbols) {
    return std::max(1, static_cast<int>(std::floor(std::sqrt(num_symbols / 2.0))));
}

int measure_spread(const std::vector<int>& pi, int limit) {
    const int n = static_cast<int>(pi.size());
    int achieved = std::min(limit, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && j - i < achieved; ++j) {
            const int d = std::abs(pi[static_cast<size_t>(i)] - pi[static_cast<size_t>(j)]);
            achieved = std::min(achieved, std::max(j - i, d));
        }
    }
    return achieved;
}

namespace {

// One sequential attempt: place a random still-unused value at each position,
// rejecting values closer than `spread` to any of the previous spread-1
// placements. Sequential placement structurally dead-ends in the tail (the
// leftover values cluster near recent placements), so a stuck position is
// repaired by swapping: a blocked pool value moves to some earlier slot
// whose occupant is valid at the stuck position. Returns an empty vector
// only when the repair budget runs out.
std::vector<int> attempt(int n, int spread, Prng& rng) {
    std::vector<int> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> pi;
    pi.reserve(static_cast<size_t>(n));
    int repairs_left = 8 * spread + 64;

    const auto valid_at_tail = [&](int v, int i) {
        for (int j = std::max(0, i - spread + 1); j < i; ++j)
            if (std::abs(v - pi[static_cast<size_t>(j)]) < spread) return false;
        return true;
    };
    // Whether value v may replace the occupant of slot j (both-sided window).
    const auto valid_at_slot = [&](int v, int j, int placed) {
        const int lo = std::max(0, j - spread + 1);
        const int hi = std::min(placed - 1, j + spread - 1);
        for (int m = lo; m <= hi; ++m) {
            if (m == j) continue;
            if (std::abs(v - pi[static_cast<size_t>(m)]) < spread) return false;
        }
        return true;
    };

    while (static_cast<int>(pi.size()) < n) {
        const int i = static_cast<int>(pi.size());
        int chosen = -1;
        const int pool_size = static_cast<int>(pool.size());
        for (int tries = 0; tries < 40 && chosen < 0; ++tries) {
            const int idx = static_cast<int>(rng.next_below(static_cast<uint32_t>(pool_size)));
            if (valid_at_tail(pool[static_cast<size_t>(idx)], i)) chosen = idx;
        }
        if (chosen < 0) {
            const int start = static_cast<int>(rng.next_below(static_cast<uint32_t>(pool_size)));
            for (int off = 0; off < pool_size && chosen < 0; ++off) {
                const int idx = (start + off) % pool_size;
                if (valid_at_tail(pool[static_cast<size_t>(idx)], i)) chosen = idx;
            }
        }
        if (chosen >= 0) {
            pi.push_back(pool[static_cast<size_t>(chosen)]);
            pool[static_cast<size_t>(chosen)] = pool.back();
            pool.pop_back();
            continue;
        }

        // Repair: move some pool value v into an earlier slot j outside the
        // stuck position's window and place that slot's occupant here.
        bool repaired = false;
        for (int vi = 0; vi < pool_size && !repaired; ++vi) {
            const int v = pool[static_cast<size_t>(vi)];
            const int j_limit = i - spread; // keep j clear of i's window
            if (j_limit <= 0) break;
            const int j_start = static_cast<int>(rng.next_below(static_cast<uint32_t>(j_limit)));
            for (int off = 0; off < j_limit && !repaired; ++off) {
                const int j = (j_start + off) % j_limit;
                if (!valid_at_slot(v, j, i)) continue;
                if (!valid_at_tail(pi[static_cast<size_t>(j)], i)) continue;
                pi.push_back(pi[static_cast<size_t>(j)]);
                pi[static_cast<size_t>(j)] = v;
                pool[static_cast<size_t>(vi)] = pool.back();
                pool.pop_back();
                repaired = true;
            }
        }
        if (!repaired || --repairs_left < 0) return {};
    }
    return pi;
}

} // namespace

Interleaver make_spread_interleaver(int num_symbols, int spread, uint64_t seed) {
    if (num_symbols < 1) throw std::invalid_argument("make_spread_interleaver: empty interleaver");
    spread = std::clamp(spread, 1, num_symbols);
    Interleaver out;
    out.seed = seed;
    out.spread_target = spread;
    if (num_symbols == 1) {
        out.pi = {0};
        out.spread_achieved = 1;
        return out;
    }
    constexpr int kAttempts = 60;
    for (int s = spread; s >= 1; --s) {
        for (int a = 0; a < kAttempts; ++a) {
            Prng rng(mix_keys({seed, static_cast<uint64_t>(s), static_cast<uint64_t>(a)}));
            std::vector<int> pi = attempt(num_symbols, s, rng);
            if (!pi.empty()) {
                out.pi = std::move(pi);
                out.spread_achieved = measure_spread(out.pi, spread);
                return out;
            }
        }
    }
    // Unreachable: spread 1 always succeeds (any permutation qualifies).
    throw std::runtime_error("make_spread_interleaver: construction failed");
}

} // namespace nlturbo
