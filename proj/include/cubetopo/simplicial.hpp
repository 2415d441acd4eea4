#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/error.hpp"
#include "cubetopo/text.hpp"

namespace cubetopo {

/// Abstract simplicial complex on vertices 0..vertex_count-1, given by facets.
/// Simplices are vertex bitmasks, so at most 32 vertices are supported.
struct SimplicialComplex {
    int vertex_count = 0;
    std::vector<std::uint32_t> facets;

    void validate() const {
        if (vertex_count < 1 || vertex_count > 32)
            throw PreconditionError("simplicial complex needs 1..32 vertices");
        for (auto f : facets) {
            if (f == 0) throw PreconditionError("empty facet");
            if (vertex_count < 32 && (f >> vertex_count) != 0)
                throw PreconditionError("facet vertex out of range");
        }
    }

    /// All nonempty simplices grouped by dimension, each level sorted.
    std::vector<std::vector<std::uint32_t>> simplices() const {
        validate();
        std::vector<std::vector<std::uint32_t>> levels;
        for (auto f : facets) {
            const auto dim = static_cast<std::size_t>(std::popcount(f) - 1);
            if (levels.size() <= dim) levels.resize(dim + 1);
            levels[dim].push_back(f);
        }
        for (std::size_t p = levels.size(); p-- > 0;) {
            auto& level = levels[p];
            std::sort(level.begin(), level.end());
            level.erase(std::unique(level.begin(), level.end()), level.end());
            if (p == 0) break;
            for (auto s : level)
                for (auto m = s; m; m &= m - 1) levels[p - 1].push_back(s & ~(m & -m));
        }
        return levels;
    }
};

/// `scomplex <n>` then one facet per line as 1-based vertex indices.
inline SimplicialComplex parse_simplicial(std::string_view input) {
    SimplicialComplex k;
    bool have_header = false;
    for (const auto& line : text::tokenize(input, '#')) {
        if (line.tokens.empty()) continue;
        if (!have_header) {
            if (line.tokens.size() != 2 || line.tokens[0] != "scomplex")
                throw ParseError(line.number, "expected 'scomplex <n>' header");
            const long long n = text::parse_int(line.tokens[1], line.number);
            if (n < 1 || n > 32) throw ParseError(line.number, "vertex count must be in 1..32");
            k.vertex_count = static_cast<int>(n);
            have_header = true;
            continue;
        }
        std::uint32_t facet = 0;
        for (auto tok : line.tokens) {
            const long long v = text::parse_int(tok, line.number);
            if (v < 1 || v > k.vertex_count)
                throw ParseError(line.number, "vertex " + std::string(tok) + " out of range 1.." +
                                                  std::to_string(k.vertex_count));
            facet |= std::uint32_t{1} << (v - 1);
        }
        k.facets.push_back(facet);
    }
    if (!have_header) throw ParseError(0, "missing 'scomplex' header");
    return k;
}

inline void write_simplicial(std::ostream& os, const SimplicialComplex& k) {
    os << "scomplex " << k.vertex_count << '\n';
    for (auto f : k.facets) {
        bool first = true;
        for (int v = 0; v < 32; ++v)
            if (f >> v & 1u) {
                os << (first ? "" : " ") << v + 1;
                first = false;
            }
        os << '\n';
    }
}

namespace simplicial_fixtures {

inline SimplicialComplex triangle_boundary() { return {3, {0b011, 0b110, 0b101}}; }
inline SimplicialComplex two_points() { return {2, {0b01, 0b10}}; }

/// The 6-vertex, 10-triangle minimal triangulation of the real projective plane.
inline SimplicialComplex projective_plane() {
    const int tris[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                             {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}};
    SimplicialComplex k{6, {}};
    for (const auto& t : tris)
        k.facets.push_back((1u << (t[0] - 1)) | (1u << (t[1] - 1)) | (1u << (t[2] - 1)));
    return k;
}

}  // namespace simplicial_fixtures

}  // namespace cubetopo
