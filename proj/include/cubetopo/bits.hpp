#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "cubetopo/error.hpp"

namespace cubetopo {

/// Largest supported cube dimension (dense 2^d tables).
inline constexpr int kMaxDimension = 20;

/// Vertices of {0,1}^d are encoded as integers: bit i holds coordinate i.
using Vertex = std::uint32_t;

inline int popcount(std::uint32_t x) noexcept { return std::popcount(x); }

inline std::uint32_t low_mask(int d) noexcept {
    return d >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << d) - 1;
}

/// Character i of the result is bit i of `v` (coordinate 1 comes first).
inline std::string to_bitstring(std::uint32_t v, int d) {
    std::string s(static_cast<std::size_t>(d), '0');
    for (int i = 0; i < d; ++i)
        if (v >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

/// Inverse of to_bitstring. Throws ParseError on characters other than 0/1.
inline std::uint32_t from_bitstring(std::string_view s, std::size_t line = 0) {
    if (s.size() > 32) throw ParseError(line, "bitstring too long: " + std::string(s));
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v |= std::uint32_t{1} << i;
        else if (s[i] != '0')
            throw ParseError(line, "malformed bitstring '" + std::string(s) + "'");
    }
    return v;
}

/// Deletes the coordinates set in `removed`, packing the survivors downward.
inline std::uint32_t compress_bits(std::uint32_t v, std::uint32_t removed, int d) noexcept {
    std::uint32_t out = 0;
    int k = 0;
    for (int i = 0; i < d; ++i) {
        if (removed >> i & 1u) continue;
        out |= (v >> i & 1u) << k;
        ++k;
    }
    return out;
}

}  // namespace cubetopo
