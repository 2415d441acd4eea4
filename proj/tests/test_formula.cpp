#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace cubetopo;

namespace {

const char* kHexagon = "c two clauses\np cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n";

std::vector<Relation> nae_file() { return parse_relations("rel NAE 3\n001 010 011 100 101 110\n"); }

}  // namespace

TEST(Dimacs, ParsesHexagonFormula) {
    const auto f = parse_dimacs(kHexagon);
    EXPECT_EQ(f.dimension, 3);
    ASSERT_EQ(f.clauses.size(), 2u);
    EXPECT_EQ(f.clauses[0], (Clause{pos(0), pos(1), pos(2)}));
    EXPECT_EQ(f.clauses[1], (Clause{neg(0), neg(1), neg(2)}));
    EXPECT_EQ(oracle::members(enumerate_solutions(f)),
              oracle::solutions(3, {{1, 2, 3}, {-1, -2, -3}}));
}

TEST(Dimacs, EmptyConjunction) {
    const auto f = parse_dimacs("p cnf 1 0\n");
    EXPECT_EQ(f.dimension, 1);
    EXPECT_TRUE(f.clauses.empty());
    EXPECT_EQ(enumerate_solutions(f).size(), 2u);
}

TEST(Dimacs, TautologyKeptUntilNormalized) {
    const auto f = parse_dimacs("p cnf 2 1\n1 -1 0\n");
    ASSERT_EQ(f.clauses.size(), 1u);
    EXPECT_TRUE(f.clauses[0].is_tautology());
    EXPECT_EQ(enumerate_solutions(f).size(), 4u);
    EXPECT_TRUE(normalize(f).clauses.empty());
}

TEST(Dimacs, MultiLineClausesAndTerminator) {
    const auto f = parse_dimacs("p cnf 3 2\n1\n2 0 -3\n0\n%\n0\n");
    ASSERT_EQ(f.clauses.size(), 2u);
    EXPECT_EQ(f.clauses[0].size(), 2u);
    EXPECT_EQ(f.clauses[1].size(), 1u);
}

TEST(Dimacs, DuplicateLiteralsCollapse) {
    const auto f = parse_dimacs("p cnf 2 1\n1 1 2 0\n");
    EXPECT_EQ(f.clauses[0].size(), 2u);
}

TEST(Dimacs, Errors) {
    EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
    try {
        parse_dimacs("p cnf 2 1\n\n1 3 0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Dimacs, EmptyClauseMakesUnsatisfiable) {
    const auto f = parse_dimacs("p cnf 2 1\n0\n");
    ASSERT_EQ(f.clauses.size(), 1u);
    EXPECT_TRUE(f.clauses[0].empty());
    EXPECT_TRUE(enumerate_solutions(f).empty());
}

TEST(Dimacs, RoundTripOnNormalizedFormulas) {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        Formula f;
        f.dimension = 1 + static_cast<int>(gen() % 8);
        const int n = static_cast<int>(gen() % 10);
        for (int i = 0; i < n; ++i) {
            std::vector<Literal> lits;
            const int len = static_cast<int>(gen() % 5);
            for (int j = 0; j < len; ++j)
                lits.push_back({static_cast<int>(gen() % static_cast<unsigned>(f.dimension)), gen() % 2 == 0});
            f.clauses.emplace_back(std::move(lits));
        }
        const auto g = normalize(f);
        const auto back = parse_dimacs(emit_dimacs(g));
        EXPECT_EQ(back.dimension, g.dimension);
        EXPECT_EQ(back.clauses, g.clauses);
    }
}

TEST(Csp, NaeMatchesHexagonFormula) {
    const auto rels = nae_file();
    const auto f = parse_csp("dim 3\nNAE v1 v2 v3\n", rels);
    EXPECT_EQ(enumerate_solutions(f), enumerate_solutions(parse_dimacs(kHexagon)));
}

TEST(Csp, RepeatedVariable) {
    const auto f = parse_csp("dim 2\nNAE v1 v2 v2\n", nae_file());
    EXPECT_EQ(oracle::members(enumerate_solutions(f)), (std::set<Vertex>{0b01, 0b10}));
}

TEST(Csp, ConstantArgument) {
    const auto f = parse_csp("dim 2\nNAE v1 v2 T\n", nae_file());
    EXPECT_TRUE(f.uses_constants());
    EXPECT_EQ(oracle::members(enumerate_solutions(f)), (std::set<Vertex>{0b00, 0b01, 0b10}));
    EXPECT_THROW(parse_csp("dim 2\nNAE v1 v2 T\n", nae_file(), false), ParseError);
}

TEST(Csp, Errors) {
    const auto rels = nae_file();
    EXPECT_THROW(parse_csp("NAE v1 v2 v3\n", rels), ParseError);
    EXPECT_THROW(parse_csp("dim 3\nFOO v1 v2 v3\n", rels), ParseError);
    EXPECT_THROW(parse_csp("dim 3\nNAE v1 v2\n", rels), ParseError);
    EXPECT_THROW(parse_csp("dim 3\nNAE v1 v2 v4\n", rels), ParseError);
    EXPECT_THROW(parse_csp("dim 3\nNAE v1 v2 x3\n", rels), ParseError);
    EXPECT_THROW(parse_csp("", rels), ParseError);
}

TEST(Csp, WriteRoundTrip) {
    const auto rels = nae_file();
    const auto f = parse_csp("dim 4\nNAE v1 v2 v3\nNAE v4 F v1\n", rels);
    const auto g = parse_csp(emit_csp(f), rels);
    EXPECT_EQ(g.constraints, f.constraints);
    EXPECT_EQ(g.dimension, 4);
}

TEST(Csp, CnfEncodedTableMatchesDimacs) {
    std::mt19937 gen(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + static_cast<int>(gen() % 4);
        std::vector<std::uint32_t> t;
        for (std::uint32_t u = 0; u < (1u << k); ++u)
            if (gen() % 2) t.push_back(u);
        const std::vector<Relation> rels{Relation(k, t, "R")};
        const int d = k + static_cast<int>(gen() % 3);
        std::string csp = "dim " + std::to_string(d) + "\n";
        for (int c = 0; c < 3; ++c) {
            csp += "R";
            for (int j = 0; j < k; ++j) csp += " v" + std::to_string(1 + gen() % static_cast<unsigned>(d));
            csp += "\n";
        }
        const auto f = parse_csp(csp, rels);
        const auto as_cnf = parse_dimacs(emit_dimacs(constraints_to_cnf(f)));
        EXPECT_EQ(enumerate_solutions(f), enumerate_solutions(as_cnf)) << csp;
    }
}

TEST(Formula, ConstantsInConstraintsSimplifyClauses) {
    const auto f = parse_csp("dim 2\nNAE v1 v2 T\nNAE v1 F v1\n", nae_file());
    const auto cnf = constraints_to_cnf(f);
    EXPECT_EQ(enumerate_solutions(cnf), enumerate_solutions(f));
    for (const auto& c : cnf.clauses) EXPECT_LE(c.size(), 2u);
}

TEST(ClauseShape, Examples) {
    const auto s = clause_shape(parse_dimacs(kHexagon));
    EXPECT_EQ(s.max_length, 3);
    EXPECT_EQ(s.max_positive, 3);
    EXPECT_EQ(s.max_negative, 3);

    // (x ∨ y ∨ ¬α) ∧ (α ∨ z) with x,y,z,α = 1,2,3,4
    const auto t = clause_shape(make_cnf(4, {Clause{pos(0), pos(1), neg(3)}, Clause{pos(3), pos(2)}}));
    EXPECT_EQ(t.max_length, 3);
    EXPECT_EQ(t.max_positive, 2);
    EXPECT_EQ(t.max_negative, 1);

    const auto e = clause_shape(make_cnf(2, {}));
    EXPECT_EQ(e.max_length, 0);
    EXPECT_EQ(e.max_positive, 0);
    EXPECT_EQ(e.max_negative, 0);

    Formula csp = parse_csp("dim 3\nNAE v1 v2 v3\n", nae_file());
    EXPECT_THROW(clause_shape(csp), PreconditionError);
}

TEST(ClauseClasses, SyntacticChecks) {
    EXPECT_TRUE(in_class(Clause{pos(0), neg(1)}, ClauseClass::TwoSat));
    EXPECT_FALSE(in_class(Clause{pos(0), neg(1), neg(2)}, ClauseClass::TwoSat));
    EXPECT_TRUE(in_class(Clause{pos(0), neg(1), neg(2)}, ClauseClass::Horn));
    EXPECT_FALSE(in_class(Clause{pos(0), pos(1)}, ClauseClass::Horn));
    EXPECT_TRUE(in_class(Clause{pos(0), pos(1), neg(2)}, ClauseClass::DualHorn));
    EXPECT_FALSE(in_class(Clause{neg(0), neg(1)}, ClauseClass::DualHorn));
    EXPECT_TRUE(in_class(Clause{}, ClauseClass::Horn));
}

TEST(Affine, NormalizeAndFormula) {
    AffineSystem a{3, {{0b011, true}, {0b011, true}, {0, false}, {0, true}, {0, true}}};
    const auto n = normalize(a);
    ASSERT_EQ(n.equations.size(), 2u);
    EXPECT_TRUE(n.inconsistent_marker());
    EXPECT_TRUE(enumerate_solutions(n).empty());
    EXPECT_TRUE(enumerate_solutions(to_formula(n)).empty());

    const AffineSystem b{3, {{0b101, true}, {0b110, false}}};
    const auto sb = enumerate_solutions(b);
    EXPECT_EQ(sb, enumerate_solutions(to_formula(b)));
    for (Vertex v : sb.members()) {
        EXPECT_EQ(((v & 1) ^ (v >> 2 & 1)), 1u);
        EXPECT_EQ(((v >> 1 & 1) ^ (v >> 2 & 1)), 0u);
    }
    EXPECT_EQ(sb.size(), 2u);
}

TEST(Formula, ValidateCatchesRanges) {
    EXPECT_THROW(make_cnf(2, {Clause{pos(2)}}), PreconditionError);
    Formula f;
    f.dimension = 2;
    f.clauses.push_back(Clause{pos(2)});
    EXPECT_THROW(f.validate(), PreconditionError);
    Formula g;
    g.dimension = 0;
    EXPECT_THROW(g.validate(), PreconditionError);
}
