#pragma once

// Explicit constructions on solution spaces: realizing simplicial complexes as
// induced cubical complexes, vertex sets as CNF, the clause-splitting chain
// into 3-CNF, the (3,2,2) rewrite, and projection for the tractable classes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "cubetopo/bits.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/formula.hpp"
#include "cubetopo/relations.hpp"
#include "cubetopo/simplicial.hpp"
#include "cubetopo/solution_space.hpp"

namespace cubetopo {

/// Maps vertex i to the unit vector e_i and each simplex f to the nonzero
/// 0/1 vectors supported inside f.
inline VertexSet simplicial_to_vertexset(const SimplicialComplex& k, int cap = kMaxDimension) {
    k.validate();
    require_dimension(k.vertex_count, std::min(cap, kMaxDimension));
    VertexSet out(k.vertex_count);
    for (auto facet : k.facets)
        for (std::uint32_t sub = facet; sub; sub = (sub - 1) & facet) out.insert(sub);
    return out;
}

/// Canonical CNF: one full-width clause per excluded vertex, falsified by it alone.
inline Formula vertexset_to_cnf(const VertexSet& v) {
    Formula f;
    f.dimension = v.dimension();
    for (Vertex u = 0; u < v.universe(); ++u) {
        if (v.contains(u)) continue;
        std::vector<Literal> lits;
        for (int i = 0; i < v.dimension(); ++i) lits.push_back({i, !(u >> i & 1u)});
        f.clauses.emplace_back(std::move(lits));
    }
    return f;
}

namespace detail {
/// Instantiates `clause`-shaped literals where some arguments may be constants:
/// a literal made true by a constant satisfies the clause (returns false),
/// a literal made false is dropped.
inline bool instantiate(const std::vector<std::pair<std::size_t, bool>>& pattern,
                        std::span<const Arg> args, std::vector<Literal>& out) {
    out.clear();
    for (auto [pos, positive] : pattern) {
        const Arg& a = args[pos];
        if (a.is_constant) {
            if ((a.value == 1) == positive) return false;
            continue;
        }
        out.push_back({a.value, positive});
    }
    return true;
}
}  // namespace detail

/// Rewrites every relation constraint as the canonical CNF of its relation,
/// simplifying constants (clauses with a true constant vanish, false
/// constants are deleted) and dropping clauses made tautological by
/// repeated variables.
inline Formula constraints_to_cnf(const Formula& f) {
    f.validate();
    Formula out;
    out.dimension = f.dimension;
    out.clauses = f.clauses;
    std::vector<std::pair<std::size_t, bool>> pattern;
    std::vector<Literal> lits;
    for (const auto& c : f.constraints) {
        const Relation& r = f.relations[c.relation_id];
        for (std::uint32_t u = 0; u <= low_mask(r.arity()); ++u) {
            if (r.contains(u)) continue;
            pattern.clear();
            for (int j = 0; j < r.arity(); ++j)
                pattern.push_back({static_cast<std::size_t>(j), !(u >> j & 1u)});
            if (!detail::instantiate(pattern, c.args, lits)) continue;
            Clause clause(lits);
            if (clause.is_tautology()) continue;
            out.clauses.push_back(std::move(clause));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CNF synthesis for tractable relations
// ---------------------------------------------------------------------------

namespace detail {
inline void push_unique(std::vector<Clause>& clauses, Clause c) {
    for (const auto& e : clauses)
        if (e.same_literals(c)) return;
    clauses.push_back(std::move(c));
}
}  // namespace detail

/// Horn CNF of a min-closed relation. For each non-member u the members above
/// u have a meet m ≠ u; the clause (∨_{u_i=1} ¬x_i ∨ x_j) with m_j = 1, u_j = 0
/// excludes u and keeps every member.
inline Formula horn_cnf(const Relation& r) {
    Formula f;
    f.dimension = r.arity();
    const std::uint32_t all = low_mask(r.arity());
    for (std::uint32_t u = 0; u <= all; ++u) {
        if (r.contains(u)) continue;
        bool any = false;
        std::uint32_t meet = all;
        for (auto t : r.tuples())
            if ((t & u) == u) {
                meet &= t;
                any = true;
            }
        std::vector<Literal> lits;
        for (int i = 0; i < r.arity(); ++i)
            if (u >> i & 1u) lits.push_back(neg(i));
        if (any) {
            const std::uint32_t extra = meet & ~u;
            if (extra == 0) throw PreconditionError("relation is not closed under AND");
            lits.push_back(pos(std::countr_zero(extra)));
        }
        detail::push_unique(f.clauses, Clause(std::move(lits)));
    }
    return f;
}

inline Formula dual_horn_cnf(const Relation& r) {
    Formula f;
    try {
        f = horn_cnf(complement(r));
    } catch (const PreconditionError&) {
        throw PreconditionError("relation is not closed under OR");
    }
    for (auto& c : f.clauses) {
        auto lits = c.literals();
        for (auto& l : lits) l.positive = !l.positive;
        c = Clause(std::move(lits));
    }
    return f;
}

/// All clauses of at most two literals satisfied by every member. Its
/// solution set equals the relation exactly when the relation is bijunctive.
inline Formula bijunctive_cnf(const Relation& r) {
    Formula f;
    f.dimension = r.arity();
    const int k = r.arity();
    auto keeps_all = [&](const Clause& c) {
        return std::all_of(r.tuples().begin(), r.tuples().end(),
                           [&](std::uint32_t t) { return c.satisfied_by(t); });
    };
    if (r.empty()) {
        f.clauses.emplace_back();
        return f;
    }
    for (int i = 0; i < k; ++i)
        for (bool si : {true, false}) {
            Clause unit{Literal{i, si}};
            if (keeps_all(unit)) f.clauses.push_back(unit);
            for (int j = i + 1; j < k; ++j)
                for (bool sj : {true, false}) {
                    Clause c{Literal{i, si}, Literal{j, sj}};
                    if (keeps_all(c)) f.clauses.push_back(c);
                }
        }
    return f;
}

// ---------------------------------------------------------------------------
// Reductions with auxiliary variables
// ---------------------------------------------------------------------------

struct ReductionResult {
    Formula formula;
    std::vector<int> projection_dims;  // auxiliary variables, 0-based
    std::vector<int> variable_map;     // original variable i -> variable_map[i]
};

/// Splits every clause of length k ≥ 4 into the chain
/// (z1∨z2∨y1)(¬y1∨z3∨y2)…(¬y_{k−3}∨z_{k−1}∨z_k). Auxiliaries are numbered
/// after all original variables, in clause order.
inline ReductionResult to_3sat(const Formula& f) {
    if (!f.is_cnf()) throw PreconditionError("to_3sat requires a CNF formula");
    f.validate();
    ReductionResult out;
    out.formula.dimension = f.dimension;
    out.variable_map.resize(static_cast<std::size_t>(f.dimension));
    std::iota(out.variable_map.begin(), out.variable_map.end(), 0);
    int next = f.dimension;
    for (const auto& c : f.clauses) {
        if (c.empty())
            throw PreconditionError("to_3sat cannot split the empty clause");
        if (c.size() <= 3) {
            out.formula.clauses.push_back(c);
            continue;
        }
        const auto& z = c.literals();
        const std::size_t k = z.size();
        const int first_aux = next;
        next += static_cast<int>(k) - 3;
        for (int y = first_aux; y < next; ++y) out.projection_dims.push_back(y);
        out.formula.clauses.push_back(Clause{z[0], z[1], pos(first_aux)});
        for (std::size_t i = 1; i + 3 < k; ++i) {
            const int y = first_aux + static_cast<int>(i);
            out.formula.clauses.push_back(Clause{neg(y - 1), z[i + 1], pos(y)});
        }
        out.formula.clauses.push_back(Clause{neg(next - 1), z[k - 2], z[k - 1]});
    }
    out.formula.dimension = next;
    return out;
}

/// Rewrites a 3-CNF so that no clause has more than two positive or two
/// negative literals: (x∨y∨z) becomes (x∨y∨¬α)(α∨z) and (¬x∨¬y∨¬z) becomes
/// (¬x∨¬y∨α)(¬α∨¬z) with a fresh α per rewritten clause.
inline ReductionResult to_kpn322(const Formula& f) {
    if (!f.is_cnf()) throw PreconditionError("to_kpn322 requires a CNF formula");
    f.validate();
    for (const auto& c : f.clauses)
        if (c.size() > 3) throw PreconditionError("to_kpn322 requires a 3-CNF formula");
    ReductionResult out;
    out.variable_map.resize(static_cast<std::size_t>(f.dimension));
    std::iota(out.variable_map.begin(), out.variable_map.end(), 0);
    int next = f.dimension;
    for (const auto& c : f.clauses) {
        const auto& l = c.literals();
        const bool uniform = c.size() == 3 && (c.positives() == 3 || c.negatives() == 3);
        if (!uniform) {
            out.formula.clauses.push_back(c);
            continue;
        }
        const bool positive = l[0].positive;
        const int alpha = next++;
        out.projection_dims.push_back(alpha);
        out.formula.clauses.push_back(Clause{l[0], l[1], Literal{alpha, !positive}});
        out.formula.clauses.push_back(Clause{Literal{alpha, positive}, l[2]});
    }
    out.formula.dimension = next;
    return out;
}

// ---------------------------------------------------------------------------
// Projection closure
// ---------------------------------------------------------------------------

namespace detail {
inline Clause without_variable(const Clause& c, int var) {
    std::vector<Literal> lits;
    for (const auto& l : c.literals())
        if (l.var != var) lits.push_back(l);
    return Clause(std::move(lits));
}

inline Clause shift_above(const Clause& c, int removed) {
    std::vector<Literal> lits = c.literals();
    for (auto& l : lits)
        if (l.var > removed) --l.var;
    return Clause(std::move(lits));
}
}  // namespace detail

/// Eliminates one variable from a 2-SAT / Horn / dual-Horn formula: keeps the
/// clauses without it and adds every resolvent α∨β of a clause containing x
/// with one containing ¬x. The result has dimension d−1 and stays in `cls`.
inline Formula project_clausal(const Formula& f, int var, ClauseClass cls) {
    if (!f.is_cnf()) throw PreconditionError("project_clausal requires a CNF formula");
    f.validate();
    if (var < 0 || var >= f.dimension)
        throw PreconditionError("projection variable " + std::to_string(var + 1) + " out of range");
    if (f.dimension == 1) throw PreconditionError("cannot project away the only dimension");
    for (const auto& c : f.clauses) {
        if (c.is_tautology())
            throw PreconditionError("project_clausal requires a normalized formula (tautology found)");
        if (!in_class(c, cls))
            throw PreconditionError("clause outside the " + std::string(clause_class_name(cls)) +
                                    " class");
    }
    std::vector<Clause> keep, with_pos, with_neg;
    for (const auto& c : f.clauses) {
        auto it = std::find_if(c.literals().begin(), c.literals().end(),
                               [var](const Literal& l) { return l.var == var; });
        if (it == c.literals().end())
            keep.push_back(c);
        else
            (it->positive ? with_pos : with_neg).push_back(detail::without_variable(c, var));
    }
    Formula out;
    out.dimension = f.dimension - 1;
    auto add = [&](const Clause& c) {
        if (c.is_tautology()) return;
        detail::push_unique(out.clauses, detail::shift_above(c, var));
    };
    for (const auto& c : keep) add(c);
    for (const auto& a : with_pos)
        for (const auto& b : with_neg) {
            std::vector<Literal> lits = a.literals();
            lits.insert(lits.end(), b.literals().begin(), b.literals().end());
            add(Clause(std::move(lits)));
        }
    return out;
}

/// Iterated single-variable elimination; `vars` are 0-based indices of `f`.
inline Formula project_clausal(const Formula& f, std::span<const int> vars, ClauseClass cls) {
    std::vector<int> order(vars.begin(), vars.end());
    std::sort(order.begin(), order.end(), std::greater<>());
    if (std::adjacent_find(order.begin(), order.end()) != order.end())
        throw PreconditionError("duplicate projection variable");
    Formula cur = f;
    for (int v : order) cur = project_clausal(cur, v, cls);
    return cur;
}

/// Gaussian elimination of one variable: a pivot equation containing it is
/// added to every other equation containing it, then dropped.
inline AffineSystem project_affine(const AffineSystem& a, int var) {
    if (var < 0 || var >= a.dimension)
        throw PreconditionError("projection variable " + std::to_string(var + 1) + " out of range");
    if (a.dimension == 1) throw PreconditionError("cannot project away the only dimension");
    const std::uint32_t bit = std::uint32_t{1} << var;
    std::vector<AffineEquation> eqs = a.equations;
    auto pivot = std::find_if(eqs.begin(), eqs.end(),
                              [bit](const AffineEquation& e) { return e.support & bit; });
    if (pivot != eqs.end()) {
        const AffineEquation p = *pivot;
        eqs.erase(pivot);
        for (auto& e : eqs)
            if (e.support & bit) {
                e.support ^= p.support;
                e.rhs = e.rhs != p.rhs;
            }
    }
    AffineSystem out;
    out.dimension = a.dimension - 1;
    for (const auto& e : eqs)
        out.equations.push_back({compress_bits(e.support, bit, a.dimension), e.rhs});
    return normalize(std::move(out));
}

inline AffineSystem project_affine(const AffineSystem& a, std::span<const int> vars) {
    std::vector<int> order(vars.begin(), vars.end());
    std::sort(order.begin(), order.end(), std::greater<>());
    if (std::adjacent_find(order.begin(), order.end()) != order.end())
        throw PreconditionError("duplicate projection variable");
    AffineSystem cur = a;
    for (int v : order) cur = project_affine(cur, v);
    return cur;
}

}  // namespace cubetopo
