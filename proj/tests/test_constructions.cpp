#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace cubetopo;

namespace {

bool same_clause_sets(const std::vector<Clause>& a, const std::vector<Clause>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& c : a)
        if (std::none_of(b.begin(), b.end(), [&](const Clause& d) { return d.same_literals(c); })) return false;
    return true;
}

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(SimplicialToVertexSet, Examples) {
    const auto edge = simplicial_to_vertexset({2, {0b11}});
    EXPECT_EQ(edge, VertexSet(2, {0b01, 0b10, 0b11}));
    EXPECT_EQ(f_vector(induce_complex(edge)), (std::vector<std::size_t>{3, 2}));

    const auto circle = simplicial_to_vertexset(simplicial_fixtures::triangle_boundary());
    EXPECT_EQ(circle, VertexSet(3, {0b001, 0b010, 0b100, 0b011, 0b110, 0b101}));
    EXPECT_EQ(homology(induce_complex(circle), Coefficients::Integers).betti, (std::vector<std::size_t>{1, 1}));

    EXPECT_EQ(simplicial_to_vertexset({1, {0b1}}), VertexSet(1, {0b1}));
    EXPECT_THROW(simplicial_to_vertexset({21, {1}}), ResourceError);
}

TEST(VertexSetToCnf, Examples) {
    const auto hex = enumerate_solutions(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"));
    const auto f = vertexset_to_cnf(hex);
    EXPECT_TRUE(same_clause_sets(f.clauses, {Clause{pos(0), pos(1), pos(2)}, Clause{neg(0), neg(1), neg(2)}}));

    const auto e = vertexset_to_cnf(VertexSet(1));
    EXPECT_TRUE(same_clause_sets(e.clauses, {Clause{pos(0)}, Clause{neg(0)}}));
    EXPECT_TRUE(vertexset_to_cnf(VertexSet::full(1)).clauses.empty());
}

TEST(VertexSetToCnf, RoundTripsRandomSets) {
    std::mt19937 gen(1);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 7;
        VertexSet v(d);
        for (Vertex u = 0; u < (Vertex{1} << d); ++u)
            if (gen() % 2) v.insert(u);
        EXPECT_EQ(enumerate_solutions(vertexset_to_cnf(v)), v);
    }
}

TEST(To3Sat, FourClauseChain) {
    const auto r = to_3sat(make_cnf(4, {Clause{pos(0), pos(1), pos(2), pos(3)}}));
    EXPECT_EQ(r.formula.dimension, 5);
    EXPECT_EQ(r.projection_dims, std::vector<int>{4});
    ASSERT_EQ(r.formula.clauses.size(), 2u);
    EXPECT_EQ(r.formula.clauses[0], (Clause{pos(0), pos(1), pos(4)}));
    EXPECT_EQ(r.formula.clauses[1], (Clause{neg(4), pos(2), pos(3)}));
}

TEST(To3Sat, ShortClausesUntouched) {
    const auto f = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    const auto r = to_3sat(f);
    EXPECT_EQ(r.formula.clauses, f.clauses);
    EXPECT_TRUE(r.projection_dims.empty());
    EXPECT_EQ(r.variable_map, (std::vector<int>{0, 1, 2}));
}

TEST(To3Sat, SixLiteralClause) {
    const auto f = parse_dimacs("p cnf 6 1\n1 -2 3 4 -5 6 0\n");
    const auto r = to_3sat(f);
    EXPECT_EQ(r.projection_dims.size(), 3u);
    EXPECT_EQ(r.formula.clauses.size(), 4u);
    EXPECT_LE(clause_shape(r.formula).max_length, 3);
    EXPECT_EQ(project(enumerate_solutions(r.formula), r.projection_dims), enumerate_solutions(f));
}

TEST(To3Sat, RejectsEmptyClause) {
    EXPECT_THROW(to_3sat(parse_dimacs("p cnf 2 1\n0\n")), PreconditionError);
}

TEST(ToKpn322, Rewrites) {
    const auto p = to_kpn322(make_cnf(3, {Clause{pos(0), pos(1), pos(2)}}));
    ASSERT_EQ(p.formula.clauses.size(), 2u);
    EXPECT_EQ(p.formula.clauses[0], (Clause{pos(0), pos(1), neg(3)}));
    EXPECT_EQ(p.formula.clauses[1], (Clause{pos(3), pos(2)}));
    EXPECT_EQ(p.projection_dims, std::vector<int>{3});

    const auto n = to_kpn322(make_cnf(3, {Clause{neg(0), neg(1), neg(2)}}));
    EXPECT_EQ(n.formula.clauses[0], (Clause{neg(0), neg(1), pos(3)}));
    EXPECT_EQ(n.formula.clauses[1], (Clause{neg(3), neg(2)}));

    const auto m = to_kpn322(make_cnf(3, {Clause{pos(0), pos(1), neg(2)}}));
    EXPECT_EQ(m.formula.clauses, (std::vector<Clause>{Clause{pos(0), pos(1), neg(2)}}));
    EXPECT_TRUE(m.projection_dims.empty());
    EXPECT_EQ(m.formula.dimension, 3);

    EXPECT_THROW(to_kpn322(make_cnf(4, {Clause{pos(0), pos(1), pos(2), pos(3)}})), PreconditionError);
}

TEST(Reductions, ProjectionAndHomologyOnRandomCnf) {
    std::mt19937 gen(2);
    for (int trial = 0; trial < 60; ++trial) {
        Formula f;
        f.dimension = 3 + trial % 5;
        const int n = 1 + static_cast<int>(gen() % 3);
        for (int i = 0; i < n; ++i) {
            std::vector<Literal> lits;
            const int len = 1 + static_cast<int>(gen() % static_cast<unsigned>(std::min(f.dimension, 5)));
            std::vector<int> vars(static_cast<std::size_t>(f.dimension));
            std::iota(vars.begin(), vars.end(), 0);
            std::shuffle(vars.begin(), vars.end(), gen);
            for (int j = 0; j < len; ++j) lits.push_back({vars[static_cast<std::size_t>(j)], gen() % 2 == 0});
            f.clauses.emplace_back(std::move(lits));
        }
        EXPECT_FALSE(reduction_failure(f).has_value()) << describe(f);
    }
}

TEST(ProjectClausal, TwoSatExample) {
    const auto f = make_cnf(3, {Clause{pos(0), pos(2)}, Clause{pos(1), neg(2)}});
    const auto g = project_clausal(f, 2, ClauseClass::TwoSat);
    EXPECT_EQ(g.dimension, 2);
    EXPECT_TRUE(same_clause_sets(g.clauses, {Clause{pos(0), pos(1)}}));
    EXPECT_EQ(enumerate_solutions(g), project(enumerate_solutions(f), {2}));
}

TEST(ProjectClausal, HornExample) {
    const auto f = make_cnf(3, {Clause{neg(0), pos(2)}, Clause{neg(2), pos(1)}, Clause{neg(1), neg(0)}});
    const auto g = project_clausal(f, 2, ClauseClass::Horn);
    EXPECT_TRUE(same_clause_sets(g.clauses, {Clause{neg(0), pos(1)}, Clause{neg(1), neg(0)}}));
    EXPECT_TRUE(in_class(g, ClauseClass::Horn));
    EXPECT_EQ(enumerate_solutions(g), project(enumerate_solutions(f), {2}));
}

TEST(ProjectClausal, AbsentVariableOnlyDropsTheDimension) {
    const auto f = make_cnf(4, {Clause{neg(0), pos(3)}, Clause{pos(1)}});
    const auto g = project_clausal(f, 2, ClauseClass::Horn);
    EXPECT_EQ(g.dimension, 3);
    EXPECT_TRUE(same_clause_sets(g.clauses, {Clause{neg(0), pos(2)}, Clause{pos(1)}}));
}

TEST(ProjectClausal, UnitClausesGiveEmptyResolvent) {
    const auto f = make_cnf(2, {Clause{pos(1)}, Clause{neg(1)}});
    const auto g = project_clausal(f, 1, ClauseClass::TwoSat);
    EXPECT_TRUE(enumerate_solutions(g).empty());
    const auto h = project_clausal(make_cnf(2, {Clause{pos(1)}, Clause{neg(1), pos(0)}}), 1, ClauseClass::TwoSat);
    EXPECT_EQ(enumerate_solutions(h), VertexSet(1, {1}));
}

TEST(ProjectClausal, Preconditions) {
    EXPECT_THROW(project_clausal(make_cnf(2, {Clause{pos(0), pos(1)}}), 1, ClauseClass::Horn), PreconditionError);
    EXPECT_THROW(project_clausal(make_cnf(2, {Clause{pos(0), neg(0)}}), 1, ClauseClass::TwoSat), PreconditionError);
    EXPECT_THROW(project_clausal(make_cnf(1, {}), 0, ClauseClass::TwoSat), PreconditionError);
    EXPECT_THROW(project_clausal(make_cnf(2, {}), 2, ClauseClass::TwoSat), PreconditionError);
    const std::vector<int> twice{1, 1};
    EXPECT_THROW(project_clausal(make_cnf(3, {}), twice, ClauseClass::TwoSat), PreconditionError);
}

TEST(ProjectClausal, RandomSubsetsMatchBruteForce) {
    for (Flavor flavor : {Flavor::TwoSat, Flavor::Horn, Flavor::DualHorn}) {
        GeneratorParams p;
        p.flavor = flavor;
        p.min_dimension = 2;
        p.max_dimension = 7;
        p.max_constraints = 10;
        for (std::size_t t = 0; t < 80; ++t) {
            TrialRng rng(99, t);
            const auto f = random_formula(rng, p);
            const auto dims = rng.distinct(rng.uniform(0, f.dimension - 1), f.dimension);
            const auto g = project_clausal(f, dims, *clause_class_of(flavor));
            std::vector<std::vector<int>> raw;
            for (const auto& c : f.clauses) {
                raw.emplace_back();
                for (const auto& l : c.literals()) raw.back().push_back(l.positive ? l.var + 1 : -(l.var + 1));
            }
            EXPECT_EQ(oracle::members(enumerate_solutions(g)),
                      oracle::project(oracle::solutions(f.dimension, raw), f.dimension, as_set(dims)));
            EXPECT_TRUE(in_class(g, *clause_class_of(flavor)));
        }
    }
}

TEST(ProjectAffine, Examples) {
    const AffineSystem a{3, {{0b101, true}, {0b110, false}}};
    const auto b = project_affine(a, 2);
    EXPECT_EQ(b.dimension, 2);
    ASSERT_EQ(b.equations.size(), 1u);
    EXPECT_EQ(b.equations[0], (AffineEquation{0b011, true}));

    const AffineSystem c{3, {{0b011, true}}};
    const auto d = project_affine(c, 2);
    EXPECT_EQ(d.equations, c.equations);
    EXPECT_EQ(d.dimension, 2);

    const AffineSystem e{2, {{0b01, false}, {0b01, true}}};
    const auto f = project_affine(e, 0);
    EXPECT_TRUE(f.inconsistent_marker());
    EXPECT_TRUE(enumerate_solutions(f).empty());
}

TEST(ProjectAffine, RandomSubsetsMatchBruteForceAndStayAffine) {
    GeneratorParams p;
    p.flavor = Flavor::Affine;
    p.min_dimension = 2;
    p.max_dimension = 9;
    for (std::size_t t = 0; t < 100; ++t) {
        TrialRng rng(5, t);
        const auto a = random_affine_system(rng, p);
        const auto dims = rng.distinct(rng.uniform(0, a.dimension - 1), a.dimension);
        EXPECT_FALSE(affine_projection_failure(a, dims).has_value()) << describe(a);
    }
}
