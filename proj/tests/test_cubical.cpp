#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace cubetopo;

namespace {

VertexSet hexagon() { return enumerate_solutions(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")); }

VertexSet random_set(std::mt19937& gen, int d, int percent) {
    VertexSet v(d);
    for (Vertex u = 0; u < (Vertex{1} << d); ++u)
        if (static_cast<int>(gen() % 100) < percent) v.insert(u);
    return v;
}

std::size_t binomial(int n, int k) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

}  // namespace

TEST(Induce, Hexagon) {
    const auto k = induce_complex(hexagon());
    EXPECT_EQ(f_vector(k), (std::vector<std::size_t>{6, 6}));
    EXPECT_EQ(k.top_dimension(), 1);
}

TEST(Induce, FullCubeCounts) {
    for (int d = 1; d <= 8; ++d) {
        const auto f = f_vector(induce_complex(VertexSet::full(d)));
        ASSERT_EQ(f.size(), static_cast<std::size_t>(d + 1));
        for (int p = 0; p <= d; ++p)
            EXPECT_EQ(f[static_cast<std::size_t>(p)], binomial(d, p) << (d - p)) << d << " " << p;
    }
    EXPECT_EQ(f_vector(induce_complex(VertexSet::full(3))), (std::vector<std::size_t>{8, 12, 6, 1}));
}

TEST(Induce, AntipodalPairAndEmpty) {
    const auto k = induce_complex(VertexSet(2, {0b00, 0b11}));
    EXPECT_EQ(f_vector(k), std::vector<std::size_t>{2});
    EXPECT_EQ(skeleton_components(k).count, 2u);
    const auto e = induce_complex(VertexSet(3));
    EXPECT_TRUE(f_vector(e).empty());
    EXPECT_EQ(e.top_dimension(), -1);
    EXPECT_EQ(skeleton_components(e).count, 0u);
}

TEST(Induce, MatchesExhaustiveFaceScan) {
    std::mt19937 gen(1);
    for (int trial = 0; trial < 150; ++trial) {
        const int d = 1 + trial % 7;
        const auto v = random_set(gen, d, 20 + static_cast<int>(gen() % 75));
        EXPECT_EQ(f_vector(induce_complex(v)), oracle::f_vector(oracle::members(v), d));
    }
}

TEST(Induce, ClosedUnderSubfacesAndMaximal) {
    std::mt19937 gen(2);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + trial % 6;
        const auto v = random_set(gen, d, 30 + static_cast<int>(gen() % 60));
        const auto k = induce_complex(v);
        for (int p = 1; p <= k.top_dimension(); ++p)
            for (const auto& f : k.faces(p))
                for_each_facet(f, [&](const Face& g, int) { EXPECT_TRUE(k.contains(g)); });
        // Any face of the cube not stored has a vertex outside V.
        for (std::uint32_t free = 0; free <= low_mask(d); ++free)
            for (std::uint32_t base = 0; base <= low_mask(d); ++base) {
                if (free & base) continue;
                const Face f{free, base};
                if (k.contains(f)) continue;
                bool outside = false;
                for (std::uint32_t s = free;; s = (s - 1) & free) {
                    if (!v.contains(base | s)) outside = true;
                    if (s == 0) break;
                }
                EXPECT_TRUE(outside);
            }
        EXPECT_EQ(k.vertex_set(), v);
    }
}

TEST(Induce, FaceBudget) {
    EXPECT_THROW(induce_complex(VertexSet::full(6), 100), ResourceError);
    EXPECT_NO_THROW(induce_complex(VertexSet::full(6), 729));
    EXPECT_THROW(induce_complex(VertexSet::full(6), 728), ResourceError);
}

TEST(Boundary, IntervalSigns) {
    const auto k = induce_complex(VertexSet::full(1));
    const auto m = boundary_matrix(k, 1);
    ASSERT_EQ(m.rows(), 2u);
    ASSERT_EQ(m.cols(), 1u);
    EXPECT_EQ(m.at(0, 0), -1);
    EXPECT_EQ(m.at(1, 0), 1);
}

TEST(Boundary, SquareComposesToZero) {
    const auto k = induce_complex(VertexSet::full(2));
    EXPECT_TRUE((boundary_matrix(k, 1) * boundary_matrix(k, 2)).is_zero());
}

TEST(Boundary, HexagonRank) {
    const auto m = boundary_matrix(induce_complex(hexagon()), 1);
    EXPECT_EQ(m.rows(), 6u);
    EXPECT_EQ(m.cols(), 6u);
    EXPECT_EQ(oracle::rank_mod(m, 1000003), 5u);
    EXPECT_EQ(smith_normal_form(m).rank, 5u);
}

TEST(Boundary, BoundaryOfBoundaryVanishes) {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 80; ++trial) {
        const int d = 2 + trial % 6;
        const auto k = induce_complex(random_set(gen, d, 50 + static_cast<int>(gen() % 50)));
        for (int p = 2; p <= k.top_dimension(); ++p)
            EXPECT_TRUE((boundary_matrix(k, p - 1) * boundary_matrix(k, p)).is_zero());
    }
    EXPECT_THROW(boundary_matrix(induce_complex(hexagon()), 2), PreconditionError);
    EXPECT_THROW(boundary_matrix(induce_complex(hexagon()), 0), PreconditionError);
}

TEST(Components, MatchBettiZero) {
    EXPECT_EQ(skeleton_components(induce_complex(hexagon())).count, 1u);
    std::mt19937 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 8;
        const auto k = induce_complex(random_set(gen, d, static_cast<int>(gen() % 70)));
        const auto h = homology(k, Coefficients::Integers);
        EXPECT_EQ(skeleton_components(k).count, h.length() ? h.betti[0] : 0);
    }
}

TEST(FromFaces, ClosureAndUnion) {
    const Face square{0b011, 0b000};
    const auto k = CubicalComplex::from_faces(3, std::vector<Face>{square});
    EXPECT_EQ(f_vector(k), (std::vector<std::size_t>{4, 4, 1}));
    const Face edge{0b100, 0b011};
    const auto e = CubicalComplex::from_faces(3, std::vector<Face>{edge});
    const std::vector<CubicalComplex> parts{k, e};
    const auto u = CubicalComplex::union_of(parts);
    EXPECT_EQ(f_vector(u), (std::vector<std::size_t>{5, 5, 1}));
    EXPECT_THROW(CubicalComplex::from_faces(2, std::vector<Face>{Face{0b100, 0}}), PreconditionError);
    EXPECT_THROW(CubicalComplex::from_faces(2, std::vector<Face>{Face{0b01, 0b01}}), PreconditionError);
}

TEST(Dump, Format) {
    const auto text = emit_complex(induce_complex(VertexSet(2, {0b00, 0b01})));
    EXPECT_EQ(text, "cube 2\nf 00 00\nf 00 10\nf 10 00\n");
}
