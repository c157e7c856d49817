#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigtau {

// Entries of a permutation. Ranks are the only arbitrary-precision values.
using Element = int;

using Rank = boost::multiprecision::cpp_int;

// Smallest order for which the generation grammar is defined.
inline constexpr int kMinOrder = 4;

enum class Letter : char { sigma = 's', tau = 't' };

inline char to_char(Letter l) { return static_cast<char>(l); }

inline Rank factorial(int n) {
    Rank f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline void require_order(int n) {
    if (n < kMinOrder)
        throw std::invalid_argument("order must be at least 4, got " + std::to_string(n));
}

// Parses a non-negative decimal rank; throws std::invalid_argument on anything else.
inline Rank parse_rank(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rank");
    for (char c : text)
        if (c < '0' || c > '9') throw std::invalid_argument("rank is not a decimal number: " + text);
    return Rank(text);
}

}  // namespace sigtau
