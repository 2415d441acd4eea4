#pragma once

// CSP instances: conjunctions of relation applications (optionally with the
// constants 0/1) and CNF clauses, plus GF(2) affine systems.
// Variables are 0-indexed here and 1-indexed in every text format.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/bits.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/relations.hpp"
#include "cubetopo/text.hpp"

namespace cubetopo {

struct Literal {
    int var = 0;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(int var) { return {var, true}; }
inline Literal neg(int var) { return {var, false}; }

class Clause {
public:
    Clause() = default;

    /// Drops repeated literals, keeping first occurrences in order.
    Clause(std::vector<Literal> literals) {
        for (const auto& l : literals)
            if (std::find(literals_.begin(), literals_.end(), l) == literals_.end())
                literals_.push_back(l);
    }
    Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}

    const std::vector<Literal>& literals() const noexcept { return literals_; }
    std::size_t size() const noexcept { return literals_.size(); }
    bool empty() const noexcept { return literals_.empty(); }

    int positives() const noexcept {
        return static_cast<int>(std::count_if(literals_.begin(), literals_.end(),
                                              [](const Literal& l) { return l.positive; }));
    }
    int negatives() const noexcept { return static_cast<int>(size()) - positives(); }

    bool mentions(int var) const noexcept {
        return std::any_of(literals_.begin(), literals_.end(),
                           [var](const Literal& l) { return l.var == var; });
    }

    /// Contains both x and ¬x for some variable.
    bool is_tautology() const noexcept {
        for (std::size_t i = 0; i < literals_.size(); ++i)
            for (std::size_t j = i + 1; j < literals_.size(); ++j)
                if (literals_[i].var == literals_[j].var) return true;
        return false;
    }

    /// Satisfied at `v` (bit i = value of variable i); requires variables < 32.
    bool satisfied_by(Vertex v) const noexcept {
        for (const auto& l : literals_)
            if (((v >> l.var) & 1u) == static_cast<Vertex>(l.positive)) return true;
        return false;
    }

    /// Same literal set, order ignored.
    bool same_literals(const Clause& other) const {
        auto a = literals_, b = other.literals_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    friend bool operator==(const Clause&, const Clause&) = default;

private:
    std::vector<Literal> literals_;
};

/// Constraint argument: a variable index or one of the constants 0/1.
struct Arg {
    int value = 0;
    bool is_constant = false;

    static Arg variable(int var) { return {var, false}; }
    static Arg constant(bool bit) { return {bit ? 1 : 0, true}; }

    friend bool operator==(const Arg&, const Arg&) = default;
};

struct Constraint {
    std::size_t relation_id = 0;
    std::vector<Arg> args;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A boolean CSP instance on `dimension` variables. CNF formulas are the case
/// without relation constraints; both kinds may coexist and are conjoined.
struct Formula {
    int dimension = 1;
    std::vector<Relation> relations;
    std::vector<Constraint> constraints;
    std::vector<Clause> clauses;

    bool is_cnf() const noexcept { return constraints.empty(); }
    bool uses_constants() const {
        for (const auto& c : constraints)
            for (const auto& a : c.args)
                if (a.is_constant) return true;
        return false;
    }

    /// Throws PreconditionError when an index or arity is inconsistent.
    void validate() const {
        if (dimension < 1) throw PreconditionError("formula dimension must be at least 1");
        for (const auto& c : clauses)
            for (const auto& l : c.literals())
                if (l.var < 0 || l.var >= dimension)
                    throw PreconditionError("clause variable " + std::to_string(l.var + 1) +
                                            " out of range 1.." + std::to_string(dimension));
        for (const auto& c : constraints) {
            if (c.relation_id >= relations.size())
                throw PreconditionError("constraint references unknown relation");
            if (static_cast<int>(c.args.size()) != relations[c.relation_id].arity())
                throw PreconditionError("constraint arity mismatch for relation '" +
                                        relations[c.relation_id].name() + "'");
            for (const auto& a : c.args)
                if (!a.is_constant && (a.value < 0 || a.value >= dimension))
                    throw PreconditionError("constraint variable out of range");
        }
    }

    bool constraint_satisfied(const Constraint& c, Vertex v) const noexcept {
        std::uint32_t tuple = 0;
        for (std::size_t j = 0; j < c.args.size(); ++j) {
            const Arg& a = c.args[j];
            const std::uint32_t bit =
                a.is_constant ? static_cast<std::uint32_t>(a.value) : (v >> a.value & 1u);
            tuple |= bit << j;
        }
        return relations[c.relation_id].contains(tuple);
    }

    bool satisfied_by(Vertex v) const noexcept {
        for (const auto& c : clauses)
            if (!c.satisfied_by(v)) return false;
        for (const auto& c : constraints)
            if (!constraint_satisfied(c, v)) return false;
        return true;
    }

    /// Variables occurring in at least one clause or constraint.
    std::vector<bool> occurring() const {
        std::vector<bool> used(static_cast<std::size_t>(dimension), false);
        for (const auto& c : clauses)
            for (const auto& l : c.literals()) used[static_cast<std::size_t>(l.var)] = true;
        for (const auto& c : constraints)
            for (const auto& a : c.args)
                if (!a.is_constant) used[static_cast<std::size_t>(a.value)] = true;
        return used;
    }
};

inline Formula make_cnf(int dimension, std::vector<Clause> clauses) {
    Formula f;
    f.dimension = dimension;
    f.clauses = std::move(clauses);
    f.validate();
    return f;
}

/// Removes tautological clauses; everything else is kept as is.
inline Formula normalize(Formula f) {
    std::erase_if(f.clauses, [](const Clause& c) { return c.is_tautology(); });
    return f;
}

// ---------------------------------------------------------------------------
// Clause classes
// ---------------------------------------------------------------------------

enum class ClauseClass { TwoSat, Horn, DualHorn };

inline std::string_view clause_class_name(ClauseClass c) {
    switch (c) {
        case ClauseClass::TwoSat: return "two_sat";
        case ClauseClass::Horn: return "horn";
        case ClauseClass::DualHorn: return "dual_horn";
    }
    return "?";
}

inline bool in_class(const Clause& c, ClauseClass cls) noexcept {
    switch (cls) {
        case ClauseClass::TwoSat: return c.size() <= 2;
        case ClauseClass::Horn: return c.positives() <= 1;
        case ClauseClass::DualHorn: return c.negatives() <= 1;
    }
    return false;
}

inline bool in_class(const Formula& f, ClauseClass cls) {
    return f.is_cnf() && std::all_of(f.clauses.begin(), f.clauses.end(),
                                     [cls](const Clause& c) { return in_class(c, cls); });
}

struct ClauseShape {
    int max_length = 0;
    int max_positive = 0;
    int max_negative = 0;

    friend bool operator==(const ClauseShape&, const ClauseShape&) = default;
};

/// Maxima over clauses of total / positive / negative literal counts.
inline ClauseShape clause_shape(const Formula& f) {
    if (!f.is_cnf()) throw PreconditionError("clause_shape requires a CNF formula");
    ClauseShape s;
    for (const auto& c : f.clauses) {
        s.max_length = std::max(s.max_length, static_cast<int>(c.size()));
        s.max_positive = std::max(s.max_positive, c.positives());
        s.max_negative = std::max(s.max_negative, c.negatives());
    }
    return s;
}

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

inline Formula parse_dimacs(std::string_view input) {
    Formula f;
    bool have_header = false;
    long long declared_clauses = 0;
    std::vector<Literal> current;
    bool open_clause = false;
    std::size_t last_line = 0;
    for (const auto& line : text::tokenize(input, '\0')) {
        if (line.tokens.empty()) continue;
        last_line = line.number;
        const auto first = line.tokens[0];
        if (first[0] == 'c') continue;
        if (first == "%") break;
        if (first == "p") {
            if (have_header) throw ParseError(line.number, "duplicate 'p' header");
            if (line.tokens.size() != 4 || line.tokens[1] != "cnf")
                throw ParseError(line.number, "expected 'p cnf <variables> <clauses>'");
            const long long d = text::parse_int(line.tokens[2], line.number);
            declared_clauses = text::parse_int(line.tokens[3], line.number);
            if (d < 1) throw ParseError(line.number, "variable count must be at least 1");
            if (declared_clauses < 0) throw ParseError(line.number, "negative clause count");
            f.dimension = static_cast<int>(d);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(line.number, "clause before 'p cnf' header");
        for (auto tok : line.tokens) {
            const long long lit = text::parse_int(tok, line.number);
            if (lit == 0) {
                f.clauses.emplace_back(std::move(current));
                current.clear();
                open_clause = false;
                continue;
            }
            const long long var = lit < 0 ? -lit : lit;
            if (var > f.dimension)
                throw ParseError(line.number, "variable " + std::to_string(var) +
                                                  " out of range 1.." + std::to_string(f.dimension));
            current.push_back({static_cast<int>(var - 1), lit > 0});
            open_clause = true;
        }
    }
    if (!have_header) throw ParseError(0, "missing 'p cnf' header");
    if (open_clause) throw ParseError(last_line, "unterminated clause (missing trailing 0)");
    if (static_cast<long long>(f.clauses.size()) != declared_clauses)
        throw ParseError(0, "header declares " + std::to_string(declared_clauses) +
                                " clauses but " + std::to_string(f.clauses.size()) + " were read");
    return f;
}

inline void write_dimacs(std::ostream& os, const Formula& f) {
    if (!f.is_cnf()) throw PreconditionError("DIMACS output requires a CNF formula");
    os << "p cnf " << f.dimension << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (const auto& l : c.literals()) os << (l.positive ? "" : "-") << l.var + 1 << ' ';
        os << "0\n";
    }
}

inline std::string emit_dimacs(const Formula& f) {
    std::ostringstream os;
    write_dimacs(os, f);
    return os.str();
}

// ---------------------------------------------------------------------------
// CSP text format: `dim <d>` then `<relname> <arg>...` with args v<i>, T, F.
// ---------------------------------------------------------------------------

inline Formula parse_csp(std::string_view input, std::span<const Relation> relations,
                         bool allow_constants = true) {
    Formula f;
    f.relations.assign(relations.begin(), relations.end());
    bool have_dim = false;
    for (const auto& line : text::tokenize(input, '#')) {
        if (line.tokens.empty()) continue;
        if (line.tokens[0] == "dim") {
            if (have_dim) throw ParseError(line.number, "duplicate 'dim' header");
            if (line.tokens.size() != 2) throw ParseError(line.number, "expected 'dim <d>'");
            const long long d = text::parse_int(line.tokens[1], line.number);
            if (d < 1) throw ParseError(line.number, "dimension must be at least 1");
            f.dimension = static_cast<int>(d);
            have_dim = true;
            continue;
        }
        if (!have_dim) throw ParseError(line.number, "constraint before 'dim' header");
        const auto name = line.tokens[0];
        auto it = std::find_if(f.relations.begin(), f.relations.end(),
                               [&](const Relation& r) { return r.name() == name; });
        if (it == f.relations.end())
            throw ParseError(line.number, "unknown relation '" + std::string(name) + "'");
        Constraint c;
        c.relation_id = static_cast<std::size_t>(it - f.relations.begin());
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const auto tok = line.tokens[i];
            if (tok == "T" || tok == "F") {
                if (!allow_constants)
                    throw ParseError(line.number, "constant '" + std::string(tok) +
                                                      "' used but constants are disabled");
                c.args.push_back(Arg::constant(tok == "T"));
            } else if (tok.size() > 1 && tok[0] == 'v') {
                const long long v = text::parse_int(tok.substr(1), line.number);
                if (v < 1 || v > f.dimension)
                    throw ParseError(line.number, "variable " + std::string(tok) +
                                                      " out of range v1..v" +
                                                      std::to_string(f.dimension));
                c.args.push_back(Arg::variable(static_cast<int>(v - 1)));
            } else {
                throw ParseError(line.number, "bad argument '" + std::string(tok) +
                                                  "' (expected v<i>, T or F)");
            }
        }
        if (static_cast<int>(c.args.size()) != it->arity())
            throw ParseError(line.number, "relation '" + std::string(name) + "' has arity " +
                                              std::to_string(it->arity()) + " but got " +
                                              std::to_string(c.args.size()) + " arguments");
        f.constraints.push_back(std::move(c));
    }
    if (!have_dim) throw ParseError(0, "missing 'dim' header");
    return f;
}

inline void write_csp(std::ostream& os, const Formula& f) {
    if (!f.clauses.empty()) throw PreconditionError("CSP text output cannot carry CNF clauses");
    os << "dim " << f.dimension << '\n';
    for (const auto& c : f.constraints) {
        os << f.relations[c.relation_id].name();
        for (const auto& a : c.args) {
            if (a.is_constant)
                os << (a.value ? " T" : " F");
            else
                os << " v" << a.value + 1;
        }
        os << '\n';
    }
}

inline std::string emit_csp(const Formula& f) {
    std::ostringstream os;
    write_csp(os, f);
    return os.str();
}

// ---------------------------------------------------------------------------
// Affine systems over GF(2)
// ---------------------------------------------------------------------------

struct AffineEquation {
    std::uint32_t support = 0;  // bit i set: x_i occurs
    bool rhs = false;

    bool satisfied_by(Vertex v) const noexcept {
        return (popcount(v & support) & 1) == static_cast<int>(rhs);
    }
    friend bool operator==(const AffineEquation&, const AffineEquation&) = default;
};

struct AffineSystem {
    int dimension = 1;
    std::vector<AffineEquation> equations;

    bool satisfied_by(Vertex v) const noexcept {
        return std::all_of(equations.begin(), equations.end(),
                           [v](const AffineEquation& e) { return e.satisfied_by(v); });
    }
    bool inconsistent_marker() const noexcept {
        return std::any_of(equations.begin(), equations.end(),
                           [](const AffineEquation& e) { return e.support == 0 && e.rhs; });
    }
};

/// Drops trivial `0 = 0` rows and collapses repeated `0 = 1` rows into one.
inline AffineSystem normalize(AffineSystem a) {
    bool contradiction = false;
    std::vector<AffineEquation> kept;
    for (const auto& e : a.equations) {
        if (e.support == 0) {
            contradiction = contradiction || e.rhs;
            continue;
        }
        if (std::find(kept.begin(), kept.end(), e) == kept.end()) kept.push_back(e);
    }
    if (contradiction) kept.push_back({0, true});
    a.equations = std::move(kept);
    return a;
}

/// Expresses the system as a CSP over parity relations (one per distinct
/// arity/right-hand side). A `0 = 1` row becomes the empty clause.
inline Formula to_formula(const AffineSystem& a) {
    Formula f;
    f.dimension = a.dimension;
    for (const auto& e : a.equations) {
        if (e.support == 0) {
            if (e.rhs) f.clauses.emplace_back();
            continue;
        }
        const int k = popcount(e.support);
        const Relation rel = relations::parity(k, e.rhs);
        std::size_t id = 0;
        while (id < f.relations.size() && !(f.relations[id] == rel)) ++id;
        if (id == f.relations.size()) f.relations.push_back(rel);
        Constraint c{id, {}};
        for (int i = 0; i < a.dimension; ++i)
            if (e.support >> i & 1u) c.args.push_back(Arg::variable(i));
        f.constraints.push_back(std::move(c));
    }
    return f;
}

}  // namespace cubetopo
