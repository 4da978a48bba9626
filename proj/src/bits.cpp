#include "nlturbo/bits.hpp"

#include <stdexcept>

namespace nlturbo {

uint32_t octal_decode(std::string_view label, int n) {
    if (n < 1 || n > kMaxRowWidth)
        throw std::invalid_argument("octal_decode: width out of range");
    const int digits = octal_digits(n);
    if (static_cast<int>(label.size()) != digits)
        throw std::invalid_argument("octal_decode: label '" + std::string(label) + "' expects " +
                                    std::to_string(digits) + " digits for width " + std::to_string(n));
    uint64_t value = 0;
    for (char c : label) {
        if (c < '0' || c > '7')
            throw std::invalid_argument("octal_decode: non-octal digit in '" + std::string(label) + "'");
        value = (value << 3) | static_cast<uint64_t>(c - '0');
    }
    if (value > row_mask(n))
        throw std::invalid_argument("octal_decode: label '" + std::string(label) +
                                    "' does not fit in " + std::to_string(n) + " bits");
    return static_cast<uint32_t>(value);
}

std::string octal_encode(uint32_t row, int n) {
    if (n < 1 || n > kMaxRowWidth)
        throw std::invalid_argument("octal_encode: width out of range");
    if (row > row_mask(n))
        throw std::invalid_argument("octal_encode: row does not fit in width");
    const int digits = octal_digits(n);
    std::string out(static_cast<size_t>(digits), '0');
    for (int d = digits - 1; d >= 0; --d) {
        out[static_cast<size_t>(d)] = static_cast<char>('0' + (row & 7u));
        row >>= 3;
    }
    return out;
}

} // namespace nlturbo
