#pragma once

// Seeded random instance generators and the property checks run against them.
// Every trial draws from its own generator seeded by (seed, trial index), so
// a report is reproducible bit for bit and independent of execution order.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/constructions.hpp"
#include "cubetopo/cubical.hpp"
#include "cubetopo/formula.hpp"
#include "cubetopo/homology.hpp"
#include "cubetopo/relations.hpp"
#include "cubetopo/solution_space.hpp"

namespace cubetopo {

enum class Flavor { TwoSat, Horn, DualHorn, Affine, Cnf, OneInThree };

inline std::string_view flavor_name(Flavor f) {
    switch (f) {
        case Flavor::TwoSat: return "two_sat";
        case Flavor::Horn: return "horn";
        case Flavor::DualHorn: return "dual_horn";
        case Flavor::Affine: return "affine";
        case Flavor::Cnf: return "cnf";
        case Flavor::OneInThree: return "one_in_three";
    }
    return "?";
}

inline std::optional<Flavor> parse_flavor(std::string_view s) {
    for (Flavor f : {Flavor::TwoSat, Flavor::Horn, Flavor::DualHorn, Flavor::Affine, Flavor::Cnf,
                     Flavor::OneInThree})
        if (flavor_name(f) == s) return f;
    return std::nullopt;
}

inline std::optional<ClauseClass> clause_class_of(Flavor f) {
    switch (f) {
        case Flavor::TwoSat: return ClauseClass::TwoSat;
        case Flavor::Horn: return ClauseClass::Horn;
        case Flavor::DualHorn: return ClauseClass::DualHorn;
        default: return std::nullopt;
    }
}

struct GeneratorParams {
    int min_dimension = 1;
    int max_dimension = 10;
    int min_constraints = 1;
    int max_constraints = 25;
    /// Longest generated clause (cnf(k) flavor; Horn and dual-Horn clauses too).
    int max_clause_length = 3;
    Flavor flavor = Flavor::TwoSat;
    std::uint64_t seed = 1;
    std::size_t trials = 100;

    void validate() const {
        if (min_dimension < 1 || min_dimension > max_dimension)
            throw PreconditionError("dimension range must satisfy 1 <= min <= max");
        if (max_dimension > kMaxDimension)
            throw ResourceError("generator dimension " + std::to_string(max_dimension) +
                                " exceeds the cap of " + std::to_string(kMaxDimension));
        if (min_constraints < 0 || min_constraints > max_constraints)
            throw PreconditionError("constraint range must satisfy 0 <= min <= max");
        if (max_clause_length < 1) throw PreconditionError("clause length must be at least 1");
    }
};

/// mt19937_64 with a portable bounded draw (standard distributions are not
/// specified bit-exactly across library implementations).
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
        engine_.seed(seq);
    }

    /// Uniform integer in [lo, hi].
    int uniform(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    bool coin() { return engine_() >> 63; }

    /// `k` distinct values from [0, n), in draw order.
    std::vector<int> distinct(int k, int n) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i)
            std::swap(pool[static_cast<std::size_t>(i)],
                      pool[static_cast<std::size_t>(uniform(i, n - 1))]);
        pool.resize(static_cast<std::size_t>(k));
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

/// A clause of the requested class over distinct variables (never tautological).
inline Clause random_clause(TrialRng& rng, int dimension, Flavor flavor, int max_length) {
    int longest = std::min(max_length, dimension);
    if (flavor == Flavor::TwoSat) longest = std::min(longest, 2);
    const int len = rng.uniform(1, longest);
    const auto vars = rng.distinct(len, dimension);
    std::vector<Literal> lits;
    for (int v : vars) lits.push_back({v, rng.coin()});
    if (flavor == Flavor::Horn || flavor == Flavor::DualHorn) {
        const bool majority_sign = flavor == Flavor::DualHorn;
        const int special = rng.uniform(-1, len - 1);  // -1: no exceptional literal
        for (int i = 0; i < len; ++i) lits[static_cast<std::size_t>(i)].positive = (i == special) != majority_sign;
    }
    return Clause(std::move(lits));
}

inline AffineSystem random_affine_system(TrialRng& rng, const GeneratorParams& p) {
    AffineSystem a;
    a.dimension = rng.uniform(p.min_dimension, p.max_dimension);
    const int equations = rng.uniform(0, a.dimension);
    for (int e = 0; e < equations; ++e) {
        const int width = rng.uniform(1, std::min(a.dimension, 4));
        std::uint32_t support = 0;
        for (int v : rng.distinct(width, a.dimension)) support |= std::uint32_t{1} << v;
        a.equations.push_back({support, rng.coin()});
    }
    return a;
}

inline AffineSystem random_affine_system(const GeneratorParams& p, std::size_t trial = 0) {
    p.validate();
    TrialRng rng(p.seed, trial);
    return random_affine_system(rng, p);
}

/// Random instance of the requested flavor. Affine instances come out as
/// parity-relation CSPs; use random_affine_system for the equation form.
inline Formula random_formula(TrialRng& rng, const GeneratorParams& p) {
    if (p.flavor == Flavor::Affine) return to_formula(random_affine_system(rng, p));
    Formula f;
    const int min_dim = p.flavor == Flavor::OneInThree ? std::max(3, p.min_dimension) : p.min_dimension;
    f.dimension = rng.uniform(min_dim, std::max(min_dim, p.max_dimension));
    const int n = rng.uniform(p.min_constraints, p.max_constraints);
    if (p.flavor == Flavor::OneInThree) {
        f.relations.push_back(relations::one_in_three());
        for (int i = 0; i < n; ++i) {
            Constraint c{0, {}};
            for (int v : rng.distinct(3, f.dimension)) c.args.push_back(Arg::variable(v));
            f.constraints.push_back(std::move(c));
        }
        return f;
    }
    const int max_len = p.flavor == Flavor::TwoSat ? 2 : p.max_clause_length;
    for (int i = 0; i < n; ++i) f.clauses.push_back(random_clause(rng, f.dimension, p.flavor, max_len));
    return f;
}

inline Formula random_formula(const GeneratorParams& p, std::size_t trial = 0) {
    p.validate();
    TrialRng rng(p.seed, trial);
    return random_formula(rng, p);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Failure {
    std::size_t trial = 0;
    std::string instance;
    std::string expected;
    std::string observed;
};

struct CheckReport {
    std::string check;
    std::size_t trials = 0;
    std::vector<Failure> failures;
    std::uint64_t seed = 0;
    double ms = 0;

    bool passed() const noexcept { return failures.empty(); }
};

inline std::string describe(const HomologyProfile& h) {
    std::ostringstream os;
    os << "betti=[";
    for (std::size_t p = 0; p < h.betti.size(); ++p) os << (p ? "," : "") << h.betti[p];
    os << "] torsion=[";
    for (std::size_t p = 0; p < h.torsion.size(); ++p) {
        os << (p ? ",[" : "[");
        for (std::size_t i = 0; i < h.torsion[p].size(); ++i) os << (i ? "," : "") << h.torsion[p][i];
        os << "]";
    }
    os << "]";
    return os.str();
}

inline std::string describe(const VertexSet& v) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (Vertex u : v.members()) {
        os << (first ? "" : ",") << to_bitstring(u, v.dimension());
        first = false;
    }
    os << "}";
    return os.str();
}

inline std::string describe(const Formula& f) {
    std::ostringstream os;
    if (!f.constraints.empty()) {
        for (const auto& r : f.relations) write_relation(os, r);
        Formula relations_only = f;
        relations_only.clauses.clear();
        write_csp(os, relations_only);
        if (!f.clauses.empty()) os << "# plus " << f.clauses.size() << " clauses\n";
    } else {
        write_dimacs(os, f);
    }
    return os.str();
}

inline std::string describe(const AffineSystem& a) {
    std::ostringstream os;
    os << "affine " << a.dimension << '\n';
    for (const auto& e : a.equations) {
        bool first = true;
        for (int i = 0; i < a.dimension; ++i)
            if (e.support >> i & 1u) {
                os << (first ? "x" : " + x") << i + 1;
                first = false;
            }
        os << (first ? "0" : "") << " = " << e.rhs << '\n';
    }
    return os.str();
}

namespace detail {

template <class Trial>
CheckReport run_trials(std::string name, const GeneratorParams& p, Trial&& trial) {
    p.validate();
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    report.check = std::move(name);
    report.seed = p.seed;
    report.trials = p.trials;
    for (std::size_t t = 0; t < p.trials; ++t) {
        TrialRng rng(p.seed, t);
        if (auto failure = trial(rng)) {
            failure->trial = t;
            report.failures.push_back(std::move(*failure));
        }
    }
    report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline HomologyProfile integer_homology(const VertexSet& v) {
    return homology(induce_complex(v), Coefficients::Integers);
}

}  // namespace detail

/// Degreewise comparison where degrees beyond a profile's length count as trivial.
inline bool same_homology(const HomologyProfile& a, const HomologyProfile& b) {
    const std::size_t n = std::max(a.length(), b.length());
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t ba = p < a.length() ? a.betti[p] : 0;
        const std::size_t bb = p < b.length() ? b.betti[p] : 0;
        static const std::vector<BigInt> none;
        const auto& ta = p < a.length() ? a.torsion[p] : none;
        const auto& tb = p < b.length() ? b.torsion[p] : none;
        if (ba != bb || ta != tb) return false;
    }
    return true;
}

/// Integer H_p of the induced solution complex vanishes for all p >= 1.
inline std::optional<Failure> tractable_homology_failure(const Formula& f) {
    const auto h = detail::integer_homology(enumerate_solutions(f));
    if (h.trivial_from(1)) return std::nullopt;
    return Failure{0, describe(f), "H_p = 0 for all p >= 1", describe(h)};
}

inline CheckReport check_tractable_homology(const GeneratorParams& p) {
    if (!clause_class_of(p.flavor))
        throw PreconditionError("tractable-homology needs flavor two_sat, horn or dual_horn");
    return detail::run_trials("tractable-homology", p, [&](TrialRng& rng) {
        return tractable_homology_failure(random_formula(rng, p));
    });
}

/// After dropping unconstrained variables the solution complex has no edges
/// and one component per solution. When no variable is constrained at all the
/// retained one-dimensional cube must be contractible instead.
inline std::optional<Failure> affine_structure_failure(const AffineSystem& a) {
    const auto dropped = drop_unconstrained(to_formula(a));
    const auto solutions = enumerate_solutions(dropped.formula);
    const auto k = induce_complex(solutions);
    const auto h = homology(k, Coefficients::Integers);
    const auto f = f_vector(k);
    const std::size_t edges = f.size() > 1 ? f[1] : 0;
    const auto used = dropped.formula.occurring();
    const bool unconstrained = std::none_of(used.begin(), used.end(), [](bool b) { return b; });
    if (unconstrained) {
        if (solutions.empty() || (h.betti[0] == 1 && h.trivial_from(1))) return std::nullopt;
        return Failure{0, describe(a), "contractible (unconstrained)", describe(h)};
    }
    const std::size_t b0 = h.length() ? h.betti[0] : 0;
    if (edges == 0 && b0 == solutions.size()) return std::nullopt;
    return Failure{0, describe(a),
                   "f1 = 0 and betti0 = " + std::to_string(solutions.size()),
                   "f1 = " + std::to_string(edges) + ", betti0 = " + std::to_string(b0)};
}

inline CheckReport check_affine_structure(const GeneratorParams& p) {
    if (p.flavor != Flavor::Affine) throw PreconditionError("affine-structure needs flavor affine");
    return detail::run_trials("affine-structure", p, [&](TrialRng& rng) {
        return affine_structure_failure(random_affine_system(rng, p));
    });
}

/// Union of the wedges ⟨D(C_i)⟩ of single clauses, as a union of subcomplexes.
inline CubicalComplex wedge_union(int dimension, std::span<const Clause> clauses) {
    std::vector<CubicalComplex> wedges;
    for (const auto& c : clauses)
        wedges.push_back(induce_complex(enumerate_solutions(make_cnf(dimension, {c}))));
    return CubicalComplex::union_of(wedges);
}

inline std::optional<Failure> wedge_union_failure(int dimension, std::span<const Clause> clauses) {
    const auto h = homology(wedge_union(dimension, clauses), Coefficients::Integers);
    if (h.trivial_from(clauses.size())) return std::nullopt;
    return Failure{0, describe(make_cnf(dimension, {clauses.begin(), clauses.end()})),
                   "H_p = 0 for all p >= " + std::to_string(clauses.size()), describe(h)};
}

inline CheckReport check_wedge_union(const GeneratorParams& p, int wedges) {
    if (!clause_class_of(p.flavor))
        throw PreconditionError("wedge-union needs flavor two_sat, horn or dual_horn");
    if (wedges < 1 || wedges > 4) throw PreconditionError("wedge count must be in 1..4");
    if (p.max_dimension > 8) throw ResourceError("wedge-union is limited to dimension 8");
    return detail::run_trials("wedge-union-" + std::to_string(wedges), p, [&](TrialRng& rng) {
        const int d = rng.uniform(p.min_dimension, p.max_dimension);
        std::vector<Clause> clauses;
        for (int i = 0; i < wedges; ++i)
            clauses.push_back(random_clause(rng, d, p.flavor, p.max_clause_length));
        return wedge_union_failure(d, clauses);
    });
}

/// Every instance over all-0-valid (or all-1-valid) relations contains the
/// all-zeros (all-ones) assignment.
inline CheckReport check_trivially_valid(const GeneratorParams& p, std::span<const Relation> rels,
                                         bool one_valid = false) {
    if (rels.empty()) throw PreconditionError("trivially-valid needs at least one relation");
    for (const auto& r : rels) {
        const auto flags = relation_properties(r);
        if (!(one_valid ? flags.one_valid : flags.zero_valid))
            throw PreconditionError("relation '" + r.name() + "' is not " +
                                    (one_valid ? "1-valid" : "0-valid"));
    }
    return detail::run_trials(one_valid ? "trivially-valid-1" : "trivially-valid-0", p,
                              [&](TrialRng& rng) -> std::optional<Failure> {
        Formula f;
        f.relations.assign(rels.begin(), rels.end());
        f.dimension = rng.uniform(p.min_dimension, p.max_dimension);
        const int n = rng.uniform(std::max(1, p.min_constraints), std::max(1, p.max_constraints));
        for (int i = 0; i < n; ++i) {
            Constraint c{static_cast<std::size_t>(rng.uniform(0, static_cast<int>(rels.size()) - 1)), {}};
            for (int j = 0; j < f.relations[c.relation_id].arity(); ++j)
                c.args.push_back(Arg::variable(rng.uniform(0, f.dimension - 1)));
            f.constraints.push_back(std::move(c));
        }
        const auto v = enumerate_solutions(f);
        const Vertex corner = one_valid ? low_mask(f.dimension) : 0;
        if (v.contains(corner)) return std::nullopt;
        return Failure{0, describe(f), "contains " + to_bitstring(corner, f.dimension), describe(v)};
    });
}

/// Each connected component of the solution complex spans exactly one face of the cube.
inline std::optional<Failure> one_in_three_failure(const Formula& f) {
    const auto dropped = drop_unconstrained(f);
    const auto k = induce_complex(enumerate_solutions(dropped.formula));
    const auto comps = skeleton_components(k);
    const auto vertices = k.faces(0);
    std::vector<std::uint32_t> meet(comps.count, ~std::uint32_t{0}), join(comps.count, 0);
    std::vector<std::size_t> size(comps.count, 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        meet[comps.label[i]] &= vertices[i].base;
        join[comps.label[i]] |= vertices[i].base;
        ++size[comps.label[i]];
    }
    for (std::size_t c = 0; c < comps.count; ++c) {
        const auto span = std::size_t{1} << popcount(meet[c] ^ join[c]);
        if (size[c] != span)
            return Failure{0, describe(f), "every component is a single face",
                           "component with " + std::to_string(size[c]) + " vertices spans a " +
                               std::to_string(popcount(meet[c] ^ join[c])) + "-face"};
    }
    const auto h = homology(k, Coefficients::Integers);
    if (!h.trivial_from(1))
        return Failure{0, describe(f), "H_p = 0 for all p >= 1", describe(h)};
    return std::nullopt;
}

inline CheckReport check_one_in_three_structure(const GeneratorParams& p) {
    if (p.flavor != Flavor::OneInThree)
        throw PreconditionError("one-in-three needs flavor one_in_three");
    return detail::run_trials("one-in-three", p, [&](TrialRng& rng) {
        return one_in_three_failure(random_formula(rng, p));
    });
}

/// Constructive projection agrees with brute-force projection and stays in class.
inline std::optional<Failure> clausal_projection_failure(const Formula& f, std::span<const int> dims,
                                                         ClauseClass cls) {
    const Formula projected = project_clausal(f, dims, cls);
    const auto expected = project(enumerate_solutions(f), dims);
    const auto observed = enumerate_solutions(projected);
    std::string where = describe(f) + "project:";
    for (int d : dims) where += " " + std::to_string(d + 1);
    if (!(expected == observed)) return Failure{0, where, describe(expected), describe(observed)};
    if (!in_class(projected, cls))
        return Failure{0, where, "output in class " + std::string(clause_class_name(cls)),
                       describe(projected)};
    return std::nullopt;
}

inline std::optional<Failure> affine_projection_failure(const AffineSystem& a, std::span<const int> dims) {
    const AffineSystem projected = project_affine(a, dims);
    const auto expected = project(enumerate_solutions(a), dims);
    const auto observed = enumerate_solutions(projected);
    std::string where = describe(a) + "project:";
    for (int d : dims) where += " " + std::to_string(d + 1);
    if (!(expected == observed)) return Failure{0, where, describe(expected), describe(observed)};
    const Relation as_relation(observed.dimension(), observed.members());
    if (!relation_properties(as_relation).affine)
        return Failure{0, where, "projected set closed under xor of triples", describe(observed)};
    return std::nullopt;
}

inline CheckReport check_projection_constructions(const GeneratorParams& p) {
    const auto cls = clause_class_of(p.flavor);
    if (!cls && p.flavor != Flavor::Affine)
        throw PreconditionError("projection needs flavor two_sat, horn, dual_horn or affine");
    return detail::run_trials("projection-" + std::string(flavor_name(p.flavor)), p,
                              [&](TrialRng& rng) -> std::optional<Failure> {
        GeneratorParams q = p;
        q.min_dimension = std::max(2, p.min_dimension);
        q.max_dimension = std::max(q.min_dimension, p.max_dimension);
        if (p.flavor == Flavor::Affine) {
            const auto a = random_affine_system(rng, q);
            const auto dims = rng.distinct(rng.uniform(0, a.dimension - 1), a.dimension);
            return affine_projection_failure(a, dims);
        }
        const auto f = random_formula(rng, q);
        const auto dims = rng.distinct(rng.uniform(0, f.dimension - 1), f.dimension);
        return clausal_projection_failure(f, dims, *cls);
    });
}

/// The 3-CNF chain and the (3,2,2) rewrite project back onto the original
/// solutions exactly, and their solution complexes have the same homology.
inline std::optional<Failure> reduction_failure(const Formula& f) {
    const auto original = enumerate_solutions(f);
    const auto three = to_3sat(f);
    const auto kpn = to_kpn322(three.formula);
    std::vector<int> all_aux = three.projection_dims;
    all_aux.insert(all_aux.end(), kpn.projection_dims.begin(), kpn.projection_dims.end());

    const auto three_solutions = enumerate_solutions(three.formula);
    const auto kpn_solutions = enumerate_solutions(kpn.formula);
    const std::string where = describe(f);
    auto projected = [](const VertexSet& v, const std::vector<int>& dims) {
        return dims.empty() ? v : project(v, dims);
    };
    if (!(projected(three_solutions, three.projection_dims) == original))
        return Failure{0, where, "3-CNF projection = " + describe(original),
                       describe(projected(three_solutions, three.projection_dims))};
    if (!(projected(kpn_solutions, all_aux) == original))
        return Failure{0, where, "(3,2,2) projection = " + describe(original),
                       describe(projected(kpn_solutions, all_aux))};
    const auto shape = clause_shape(kpn.formula);
    if (shape.max_length > 3 || shape.max_positive > 2 || shape.max_negative > 2)
        return Failure{0, where, "clause shape <= (3,2,2)", describe(kpn.formula)};

    const auto h0 = detail::integer_homology(original);
    const auto h3 = detail::integer_homology(three_solutions);
    if (!same_homology(h0, h3))
        return Failure{0, where, "3-CNF homology " + describe(h0), describe(h3)};
    const auto hk = detail::integer_homology(kpn_solutions);
    if (!same_homology(h0, hk))
        return Failure{0, where, "(3,2,2) homology " + describe(h0), describe(hk)};
    return std::nullopt;
}

/// Random CNF with clauses up to max_clause_length, redrawn until both
/// reductions fit in `max_total_dimension` variables.
inline Formula random_reducible_cnf(TrialRng& rng, const GeneratorParams& p, int max_total_dimension) {
    for (;;) {
        Formula f;
        f.dimension = rng.uniform(p.min_dimension, p.max_dimension);
        const int n = rng.uniform(std::max(1, p.min_constraints), std::max(1, p.max_constraints));
        for (int i = 0; i < n; ++i)
            f.clauses.push_back(random_clause(rng, f.dimension, Flavor::Cnf, p.max_clause_length));
        const auto three = to_3sat(f);
        if (to_kpn322(three.formula).formula.dimension <= max_total_dimension) return f;
    }
}

inline CheckReport check_reductions(const GeneratorParams& p, int max_total_dimension = 14) {
    if (p.flavor != Flavor::Cnf) throw PreconditionError("reductions needs flavor cnf");
    if (max_total_dimension > kMaxDimension || max_total_dimension < p.max_dimension)
        throw PreconditionError("total dimension cap must lie in [max_dimension, " +
                                std::to_string(kMaxDimension) + "]");
    return detail::run_trials("reductions", p, [&](TrialRng& rng) {
        return reduction_failure(random_reducible_cnf(rng, p, max_total_dimension));
    });
}

}  // namespace cubetopo
