#pragma once

// Unreduced homology of cubical and simplicial complexes over Z, Q and GF(2).

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cubetopo/cubical.hpp"
#include "cubetopo/integer_matrix.hpp"
#include "cubetopo/simplicial.hpp"

namespace cubetopo {

enum class Coefficients { Integers, Rationals, Mod2 };

inline std::string_view coefficients_tag(Coefficients c) {
    switch (c) {
        case Coefficients::Integers: return "Z";
        case Coefficients::Rationals: return "Q";
        case Coefficients::Mod2: return "Z2";
    }
    return "?";
}

struct HomologyProfile {
    Coefficients coeffs = Coefficients::Integers;
    std::vector<std::size_t> betti;
    std::vector<std::vector<BigInt>> torsion;  // empty lists for field coefficients

    std::size_t length() const noexcept { return betti.size(); }

    /// H_p vanishes: no free part and no torsion.
    bool trivial(std::size_t p) const noexcept {
        return p >= betti.size() || (betti[p] == 0 && torsion[p].empty());
    }
    bool trivial_from(std::size_t p) const noexcept {
        for (std::size_t q = p; q < betti.size(); ++q)
            if (!trivial(q)) return false;
        return true;
    }

    long long euler_characteristic() const noexcept {
        long long chi = 0;
        for (std::size_t p = 0; p < betti.size(); ++p)
            chi += (p % 2 ? -1 : 1) * static_cast<long long>(betti[p]);
        return chi;
    }

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Cell counts and boundary maps; boundaries[p] maps p-cells to (p-1)-cells
/// (boundaries[0] is unused).
struct ChainComplex {
    std::vector<std::size_t> cells;
    std::vector<IntegerMatrix> boundaries;
};

inline HomologyProfile chain_homology(const ChainComplex& c, Coefficients coeffs) {
    HomologyProfile h;
    h.coeffs = coeffs;
    const std::size_t n = c.cells.size();
    if (n == 0) return h;
    // rank[p] = rank of ∂_p; rank[0] = rank[n] = 0.
    std::vector<std::size_t> rank(n + 1, 0);
    std::vector<std::vector<BigInt>> factors(n + 1);
    for (std::size_t p = 1; p < n; ++p) {
        if (coeffs == Coefficients::Mod2) {
            rank[p] = gf2_rank(c.boundaries[p]);
        } else {
            const auto sf = smith_normal_form(c.boundaries[p]);
            rank[p] = sf.rank;
            if (coeffs == Coefficients::Integers) factors[p] = sf.torsion();
        }
    }
    h.betti.resize(n);
    h.torsion.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        h.betti[p] = c.cells[p] - rank[p] - rank[p + 1];
        h.torsion[p] = std::move(factors[p + 1]);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Cubical
// ---------------------------------------------------------------------------

/// Cells that survive a maximal sequence of elementary collapses, per dimension.
/// A collapse removes a free face together with its unique coface; the
/// survivors form a subcomplex with the same homology.
inline std::vector<std::vector<char>> collapse_survivors(const CubicalComplex& k) {
    const int top = k.top_dimension();
    std::vector<std::vector<char>> alive(static_cast<std::size_t>(top + 1));
    if (top < 0) return alive;
    for (int p = 0; p <= top; ++p) alive[static_cast<std::size_t>(p)].assign(k.faces(p).size(), 1);
    if (top == 0) return alive;

    // facets[p][2p*i + s] is the index of the s-th facet of p-face i.
    std::vector<std::vector<std::uint32_t>> facets(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<std::uint32_t>> coface_start(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<std::uint32_t>> cofaces(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<std::uint32_t>> live_cofaces(static_cast<std::size_t>(top + 1));
    for (int p = 1; p <= top; ++p) {
        const auto level = k.faces(p);
        auto& fs = facets[static_cast<std::size_t>(p)];
        fs.reserve(level.size() * 2 * static_cast<std::size_t>(p));
        for (const auto& f : level)
            for_each_facet(f, [&](const Face& g, int) {
                fs.push_back(static_cast<std::uint32_t>(k.index_of(g)));
            });
        const auto below = k.faces(p - 1).size();
        auto& start = coface_start[static_cast<std::size_t>(p - 1)];
        auto& count = live_cofaces[static_cast<std::size_t>(p - 1)];
        start.assign(below + 1, 0);
        count.assign(below, 0);
        for (auto g : fs) ++count[g];
        for (std::size_t i = 0; i < below; ++i) start[i + 1] = start[i] + count[i];
        auto& adj = cofaces[static_cast<std::size_t>(p - 1)];
        adj.resize(fs.size());
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        const std::size_t per = 2 * static_cast<std::size_t>(p);
        for (std::size_t i = 0; i < fs.size(); ++i) adj[fill[fs[i]]++] = static_cast<std::uint32_t>(i / per);
    }

    std::vector<std::pair<int, std::uint32_t>> stack;
    for (int p = 0; p < top; ++p)
        for (std::uint32_t i = 0; i < live_cofaces[static_cast<std::size_t>(p)].size(); ++i)
            if (live_cofaces[static_cast<std::size_t>(p)][i] == 1) stack.push_back({p, i});

    auto release_facets = [&](int p, std::uint32_t cell, std::uint32_t skip, bool has_skip) {
        if (p == 0) return;
        const std::size_t per = 2 * static_cast<std::size_t>(p);
        const auto& fs = facets[static_cast<std::size_t>(p)];
        for (std::size_t s = 0; s < per; ++s) {
            const auto g = fs[cell * per + s];
            if (has_skip && g == skip) continue;
            auto& cnt = live_cofaces[static_cast<std::size_t>(p - 1)][g];
            --cnt;
            if (cnt == 1 && alive[static_cast<std::size_t>(p - 1)][g]) stack.push_back({p - 1, g});
        }
    };

    while (!stack.empty()) {
        auto [p, free_face] = stack.back();
        stack.pop_back();
        const auto ps = static_cast<std::size_t>(p);
        if (!alive[ps][free_face] || live_cofaces[ps][free_face] != 1) continue;
        std::uint32_t owner = UINT32_MAX;
        const auto& start = coface_start[ps];
        for (auto i = start[free_face]; i < start[free_face + 1]; ++i)
            if (alive[ps + 1][cofaces[ps][i]]) {
                owner = cofaces[ps][i];
                break;
            }
        alive[ps][free_face] = 0;
        alive[ps + 1][owner] = 0;
        live_cofaces[ps][free_face] = 0;
        release_facets(p + 1, owner, free_face, true);
        release_facets(p, free_face, 0, false);
    }
    return alive;
}

struct HomologyOptions {
    /// Shrink the complex by elementary collapses before building matrices.
    bool collapse = true;
};

inline ChainComplex cubical_chain_complex(const CubicalComplex& k, HomologyOptions opts = {}) {
    ChainComplex c;
    const int top = k.top_dimension();
    if (top < 0) return c;
    std::vector<std::vector<char>> alive;
    if (opts.collapse) {
        alive = collapse_survivors(k);
    } else {
        for (int p = 0; p <= top; ++p) alive.emplace_back(k.faces(p).size(), 1);
    }
    // Reindex survivors densely.
    std::vector<std::vector<std::uint32_t>> index(alive.size());
    for (std::size_t p = 0; p < alive.size(); ++p) {
        index[p].assign(alive[p].size(), UINT32_MAX);
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < alive[p].size(); ++i)
            if (alive[p][i]) index[p][i] = next++;
        c.cells.push_back(next);
    }
    c.boundaries.resize(alive.size());
    for (int p = 1; p <= top; ++p) {
        const auto ps = static_cast<std::size_t>(p);
        IntegerMatrix m(c.cells[ps - 1], c.cells[ps]);
        const auto level = k.faces(p);
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (!alive[ps][i]) continue;
            for_each_facet(level[i], [&](const Face& g, int sign) {
                const auto r = index[ps - 1][static_cast<std::size_t>(k.index_of(g))];
                m.add(r, index[ps][i], sign);
            });
        }
        c.boundaries[ps] = std::move(m);
    }
    return c;
}

/// Homology of the complex; the profile has top_dimension()+1 entries and is
/// empty for the empty complex.
inline HomologyProfile homology(const CubicalComplex& k, Coefficients coeffs,
                                HomologyOptions opts = {}) {
    return chain_homology(cubical_chain_complex(k, opts), coeffs);
}

// ---------------------------------------------------------------------------
// Simplicial
// ---------------------------------------------------------------------------

inline ChainComplex simplicial_chain_complex(const SimplicialComplex& s) {
    const auto levels = s.simplices();
    ChainComplex c;
    for (const auto& level : levels) c.cells.push_back(level.size());
    c.boundaries.resize(levels.size());
    for (std::size_t p = 1; p < levels.size(); ++p) {
        IntegerMatrix m(levels[p - 1].size(), levels[p].size());
        for (std::size_t j = 0; j < levels[p].size(); ++j) {
            const auto simplex = levels[p][j];
            int i = 0;
            for (auto rest = simplex; rest; rest &= rest - 1, ++i) {
                const auto face = simplex & ~(rest & (~rest + 1));
                const auto& below = levels[p - 1];
                const auto r = static_cast<std::size_t>(
                    std::lower_bound(below.begin(), below.end(), face) - below.begin());
                m.add(r, j, i % 2 == 0 ? 1 : -1);
            }
        }
        c.boundaries[p] = std::move(m);
    }
    return c;
}

inline HomologyProfile simplicial_homology(const SimplicialComplex& s, Coefficients coeffs) {
    return chain_homology(simplicial_chain_complex(s), coeffs);
}

}  // namespace cubetopo
