#pragma once

// Induced cubical complexes of vertex sets: every face of [0,1]^d whose
// vertices all lie in the set.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cubetopo/bits.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/integer_matrix.hpp"
#include "cubetopo/solution_space.hpp"

namespace cubetopo {

/// Default cap on the total number of faces of a constructed complex.
inline constexpr std::size_t kMaxFaces = 5'000'000;

/// A face of the d-cube: coordinates in `free_mask` range over {0,1}, the
/// others are fixed to the bits of `base`.
struct Face {
    std::uint32_t free_mask = 0;
    std::uint32_t base = 0;

    int dimension() const noexcept { return popcount(free_mask); }
    std::uint64_t key() const noexcept { return std::uint64_t{free_mask} << 32 | base; }

    bool contains(Vertex v) const noexcept { return (v & ~free_mask) == base; }

    /// The facet obtained by fixing free coordinate `j` to `value`.
    Face fix(int j, bool value) const noexcept {
        const std::uint32_t bit = std::uint32_t{1} << j;
        return {free_mask & ~bit, value ? (base | bit) : base};
    }

    friend bool operator==(const Face&, const Face&) = default;
    friend bool operator<(const Face& a, const Face& b) noexcept { return a.key() < b.key(); }
};

class CubicalComplex {
public:
    explicit CubicalComplex(int dimension) : dimension_(dimension) { require_dimension(dimension); }

    int dimension() const noexcept { return dimension_; }

    /// Highest face dimension present, -1 for the empty complex.
    int top_dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
    bool empty() const noexcept { return faces_.empty(); }

    /// Faces of dimension `p`, sorted by (free_mask, base).
    std::span<const Face> faces(int p) const noexcept {
        if (p < 0 || p > top_dimension()) return {};
        return faces_[static_cast<std::size_t>(p)];
    }

    std::size_t face_count() const noexcept {
        std::size_t n = 0;
        for (const auto& level : faces_) n += level.size();
        return n;
    }

    /// Position of `f` within faces(f.dimension()), or -1 if absent.
    std::ptrdiff_t index_of(const Face& f) const noexcept {
        const auto level = faces(f.dimension());
        auto it = std::lower_bound(level.begin(), level.end(), f);
        return it != level.end() && *it == f ? it - level.begin() : -1;
    }
    bool contains(const Face& f) const noexcept { return index_of(f) >= 0; }

    /// Vertices of the complex (its 0-faces) as a vertex set.
    VertexSet vertex_set() const {
        VertexSet v(dimension_);
        for (const auto& f : faces(0)) v.insert(f.base);
        return v;
    }

    /// Closes `faces` under taking subfaces. Faces must lie in the d-cube.
    static CubicalComplex from_faces(int dimension, std::span<const Face> faces,
                                     std::size_t face_max = kMaxFaces) {
        CubicalComplex k(dimension);
        int top = -1;
        for (const auto& f : faces) {
            if ((f.free_mask | f.base) > low_mask(dimension) || (f.free_mask & f.base))
                throw PreconditionError("face outside the cube or with overlapping masks");
            top = std::max(top, f.dimension());
        }
        if (top < 0) return k;
        k.faces_.assign(static_cast<std::size_t>(top) + 1, {});
        for (const auto& f : faces) k.faces_[static_cast<std::size_t>(f.dimension())].push_back(f);
        std::size_t total = 0;
        for (int p = top; p >= 0; --p) {
            auto& level = k.faces_[static_cast<std::size_t>(p)];
            std::sort(level.begin(), level.end());
            level.erase(std::unique(level.begin(), level.end()), level.end());
            total += level.size();
            if (total > face_max)
                throw ResourceError("complex exceeds the face budget of " + std::to_string(face_max));
            if (p == 0) break;
            auto& below = k.faces_[static_cast<std::size_t>(p) - 1];
            for (const auto& f : level)
                for (std::uint32_t m = f.free_mask; m; m &= m - 1) {
                    const int j = std::countr_zero(m);
                    below.push_back(f.fix(j, false));
                    below.push_back(f.fix(j, true));
                }
        }
        return k;
    }

    /// Union of subcomplexes of the same cube.
    static CubicalComplex union_of(std::span<const CubicalComplex> parts,
                                   std::size_t face_max = kMaxFaces) {
        if (parts.empty()) throw PreconditionError("union of zero complexes");
        std::vector<Face> all;
        for (const auto& k : parts) {
            if (k.dimension() != parts[0].dimension())
                throw PreconditionError("union of complexes in different cubes");
            for (const auto& level : k.faces_) all.insert(all.end(), level.begin(), level.end());
        }
        return from_faces(parts[0].dimension(), all, face_max);
    }

private:
    friend CubicalComplex induce_complex(const VertexSet&, std::size_t);

    int dimension_;
    std::vector<std::vector<Face>> faces_;
};

/// Grows faces dimension by dimension: a p-face is present iff both of its
/// facets parallel to its highest free coordinate are present.
inline CubicalComplex induce_complex(const VertexSet& vertices, std::size_t face_max = kMaxFaces) {
    CubicalComplex k(vertices.dimension());
    const int d = vertices.dimension();
    std::vector<Face> level;
    for (Vertex v : vertices.members()) level.push_back({0, v});
    std::size_t total = level.size();
    if (total > face_max)
        throw ResourceError("complex exceeds the face budget of " + std::to_string(face_max));
    while (!level.empty()) {
        std::vector<Face> next;
        for (const auto& f : level) {
            const int start = f.free_mask ? 32 - std::countl_zero(f.free_mask) : 0;
            for (int j = start; j < d; ++j) {
                const std::uint32_t bit = std::uint32_t{1} << j;
                if (f.base & bit) continue;
                const Face partner{f.free_mask, f.base | bit};
                if (std::binary_search(level.begin(), level.end(), partner))
                    next.push_back({f.free_mask | bit, f.base});
            }
        }
        std::sort(next.begin(), next.end());
        total += next.size();
        if (total > face_max)
            throw ResourceError("complex exceeds the face budget of " + std::to_string(face_max));
        k.faces_.push_back(std::move(level));
        level = std::move(next);
    }
    return k;
}

/// Face counts per dimension; empty for the empty complex.
inline std::vector<std::size_t> f_vector(const CubicalComplex& k) {
    std::vector<std::size_t> f;
    for (int p = 0; p <= k.top_dimension(); ++p) f.push_back(k.faces(p).size());
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

/// Signed incidences of a p-face: with free coordinates j_1 < ... < j_p the
/// boundary is Σ_t (−1)^(t−1) (face with j_t = 1 − face with j_t = 0).
template <class Visit>
void for_each_facet(const Face& f, Visit&& visit) {
    int t = 0;
    for (std::uint32_t m = f.free_mask; m; m &= m - 1, ++t) {
        const int j = std::countr_zero(m);
        const int sign = (t % 2 == 0) ? 1 : -1;
        visit(f.fix(j, true), sign);
        visit(f.fix(j, false), -sign);
    }
}

/// Matrix of ∂_p from p-faces (columns) to (p−1)-faces (rows), both in the
/// complex's sorted order.
inline IntegerMatrix boundary_matrix(const CubicalComplex& k, int p) {
    if (p < 1 || p > k.top_dimension())
        throw PreconditionError("boundary dimension " + std::to_string(p) + " outside 1.." +
                                std::to_string(k.top_dimension()));
    const auto cols = k.faces(p);
    IntegerMatrix m(k.faces(p - 1).size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for_each_facet(cols[c], [&](const Face& g, int sign) {
            const auto r = k.index_of(g);
            if (r < 0) throw PreconditionError("complex is not closed under subfaces");
            m.add(static_cast<std::size_t>(r), c, sign);
        });
    return m;
}

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> label;  // per vertex in faces(0) order, labels 0..count-1
};

/// Connected components of the 1-skeleton.
inline Components skeleton_components(const CubicalComplex& k) {
    const auto vertices = k.faces(0);
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : k.faces(1)) {
        const auto a = find(static_cast<std::size_t>(k.index_of(e.fix(std::countr_zero(e.free_mask), false))));
        const auto b = find(static_cast<std::size_t>(k.index_of(e.fix(std::countr_zero(e.free_mask), true))));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    Components out;
    out.label.assign(vertices.size(), 0);
    std::vector<std::size_t> id(vertices.size(), SIZE_MAX);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const auto r = find(v);
        if (id[r] == SIZE_MAX) id[r] = out.count++;
        out.label[v] = id[r];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dump format: `cube <d>` then `f <free_mask> <base>` per face, by dimension.
// ---------------------------------------------------------------------------

inline void write_complex(std::ostream& os, const CubicalComplex& k) {
    os << "cube " << k.dimension() << '\n';
    for (int p = 0; p <= k.top_dimension(); ++p)
        for (const auto& f : k.faces(p))
            os << "f " << to_bitstring(f.free_mask, k.dimension()) << ' '
               << to_bitstring(f.base, k.dimension()) << '\n';
}

inline std::string emit_complex(const CubicalComplex& k) {
    std::ostringstream os;
    write_complex(os, k);
    return os.str();
}

}  // namespace cubetopo
