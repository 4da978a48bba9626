#ifndef NLTURBO_BITS_HPP
#define NLTURBO_BITS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace nlturbo {

/// Bit rows are n-bit values (n <= 32) stored in a uint32_t. Bit i of a row,
/// counting i = 0 as the leftmost position, is (row >> (n-1-i)) & 1, so the
/// octal text form reads left to right like the row itself.
constexpr int kMaxRowWidth = 32;

inline uint32_t row_mask(int n) { return n >= 32 ? 0xffffffffu : ((1u << n) - 1u); }

inline int ones_count(uint32_t row) { return std::popcount(row); }

inline int row_bit(uint32_t row, int n, int i) { return (row >> (n - 1 - i)) & 1u; }

/// Count of positions where x carries 0 and xt carries 1. Asymmetric.
inline int directional_distance(uint32_t x, uint32_t xt, int n) {
    return std::popcount(~x & xt & row_mask(n));
}

inline int hamming_distance(uint32_t x, uint32_t xt) { return std::popcount(x ^ xt); }

/// Larger of the two directional distances; zero iff the rows are equal.
inline int z_distance(uint32_t x, uint32_t xt, int n) {
    int a = directional_distance(x, xt, n);
    int b = directional_distance(xt, x, n);
    return a > b ? a : b;
}

/// Number of octal digits encoding an n-bit row.
inline int octal_digits(int n) { return (n + 2) / 3; }

/// Decodes an octal label into an n-bit row. The most significant digit comes
/// first; when n is not a multiple of 3 the leading digit's high bits must be
/// zero. Throws std::invalid_argument on bad digits or width mismatch.
uint32_t octal_decode(std::string_view label, int n);

/// Inverse of octal_decode; always emits octal_digits(n) digits.
std::string octal_encode(uint32_t row, int n);

} // namespace nlturbo

#endif
