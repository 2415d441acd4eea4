#pragma once

// Logical relations R ⊆ {0,1}^k as dense truth tables, their six tractability
// flags, and classification of relation sets into tractable / NP-complete.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/bits.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/text.hpp"

namespace cubetopo {

/// Largest arity accepted for a relation table.
inline constexpr int kMaxArity = kMaxDimension;

class Relation {
public:
    /// Builds a relation of arity `arity` from tuple codes (bit j = argument j).
    /// Duplicates are collapsed.
    Relation(int arity, std::span<const std::uint32_t> tuples, std::string name = {})
        : arity_(arity), name_(std::move(name)) {
        if (arity < 1 || arity > kMaxArity)
            throw PreconditionError("relation arity must be in [1, " + std::to_string(kMaxArity) +
                                    "], got " + std::to_string(arity));
        table_.assign((std::size_t{1} << arity) / 64 + 1, 0);
        for (std::uint32_t t : tuples) {
            if (t > low_mask(arity))
                throw PreconditionError("tuple " + std::to_string(t) + " exceeds arity " +
                                        std::to_string(arity));
            table_[t >> 6] |= std::uint64_t{1} << (t & 63);
        }
        for (std::uint32_t t = 0; t <= low_mask(arity); ++t)
            if (contains(t)) tuples_.push_back(t);
    }

    Relation(int arity, std::initializer_list<std::uint32_t> tuples, std::string name = {})
        : Relation(arity, std::span<const std::uint32_t>(tuples.begin(), tuples.size()),
                   std::move(name)) {}

    int arity() const noexcept { return arity_; }
    const std::string& name() const noexcept { return name_; }
    bool empty() const noexcept { return tuples_.empty(); }
    std::size_t size() const noexcept { return tuples_.size(); }

    /// Member tuples in ascending code order.
    const std::vector<std::uint32_t>& tuples() const noexcept { return tuples_; }

    bool contains(std::uint32_t tuple) const noexcept {
        return tuple <= low_mask(arity_) && (table_[tuple >> 6] >> (tuple & 63) & 1u);
    }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
    }

private:
    int arity_;
    std::string name_;
    std::vector<std::uint64_t> table_;
    std::vector<std::uint32_t> tuples_;
};

/// Flips every bit of every tuple.
inline Relation complement(const Relation& r) {
    std::vector<std::uint32_t> out;
    out.reserve(r.size());
    for (auto t : r.tuples()) out.push_back(~t & low_mask(r.arity()));
    return Relation(r.arity(), out, r.name().empty() ? r.name() : r.name() + "'");
}

/// Applies `perm` to the coordinates: argument i of the result is argument perm[i] of `r`.
inline Relation permute(const Relation& r, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != r.arity())
        throw PreconditionError("permutation size does not match relation arity");
    std::vector<std::uint32_t> out;
    for (auto t : r.tuples()) {
        std::uint32_t u = 0;
        for (int i = 0; i < r.arity(); ++i) u |= (t >> perm[static_cast<std::size_t>(i)] & 1u) << i;
        out.push_back(u);
    }
    return Relation(r.arity(), out, r.name());
}

// ---------------------------------------------------------------------------
// Schaefer conditions
// ---------------------------------------------------------------------------

enum class Condition { ZeroValid = 1, OneValid, Horn, DualHorn, Bijunctive, Affine };

inline constexpr std::array<Condition, 6> kAllConditions = {
    Condition::ZeroValid, Condition::OneValid,   Condition::Horn,
    Condition::DualHorn,  Condition::Bijunctive, Condition::Affine};

inline std::string_view condition_name(Condition c) {
    switch (c) {
        case Condition::ZeroValid: return "zero_valid";
        case Condition::OneValid: return "one_valid";
        case Condition::Horn: return "horn";
        case Condition::DualHorn: return "dual_horn";
        case Condition::Bijunctive: return "bijunctive";
        case Condition::Affine: return "affine";
    }
    return "?";
}

struct PropertyFlags {
    bool zero_valid = false;
    bool one_valid = false;
    bool horn = false;
    bool dual_horn = false;
    bool bijunctive = false;
    bool affine = false;

    bool holds(Condition c) const noexcept {
        switch (c) {
            case Condition::ZeroValid: return zero_valid;
            case Condition::OneValid: return one_valid;
            case Condition::Horn: return horn;
            case Condition::DualHorn: return dual_horn;
            case Condition::Bijunctive: return bijunctive;
            case Condition::Affine: return affine;
        }
        return false;
    }

    friend bool operator==(const PropertyFlags&, const PropertyFlags&) = default;
};

namespace detail {

template <class Op>
bool closed_under_pairs(const Relation& r, Op op) {
    const auto& t = r.tuples();
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!r.contains(op(t[i], t[j]))) return false;
    return true;
}

// Majority is symmetric and maj(a,a,b) = a, so distinct ordered triples suffice.
inline bool closed_under_majority(const Relation& r) {
    const auto& t = r.tuples();
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            const std::uint32_t ab = t[i] & t[j];
            const std::uint32_t aob = t[i] | t[j];
            for (std::size_t l = j + 1; l < t.size(); ++l)
                if (!r.contains(ab | (aob & t[l]))) return false;
        }
    return true;
}

// Closure under a^b^c for all triples is equivalent to: |R| is a power of two
// and R ⊕ t0 is closed under pairwise xor for one fixed t0 ∈ R.
inline bool closed_under_xor_triples(const Relation& r) {
    const auto& t = r.tuples();
    if (t.empty()) return true;
    if (!std::has_single_bit(t.size())) return false;
    const std::uint32_t t0 = t.front();
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!r.contains(t[i] ^ t[j] ^ t0)) return false;
    return true;
}

}  // namespace detail

inline PropertyFlags relation_properties(const Relation& r) {
    PropertyFlags f;
    f.zero_valid = r.contains(0);
    f.one_valid = r.contains(low_mask(r.arity()));
    f.horn = detail::closed_under_pairs(r, [](auto a, auto b) { return a & b; });
    f.dual_horn = detail::closed_under_pairs(r, [](auto a, auto b) { return a | b; });
    f.bijunctive = detail::closed_under_majority(r);
    f.affine = detail::closed_under_xor_triples(r);
    return f;
}

struct SchaeferVerdict {
    bool tractable = false;
    std::optional<Condition> witness;
    std::vector<PropertyFlags> per_relation_flags;
    bool with_constants = false;

    /// Every condition that holds for all relations (restricted to 3..6 with constants).
    std::vector<Condition> conditions() const {
        std::vector<Condition> out;
        for (Condition c : kAllConditions) {
            if (with_constants && (c == Condition::ZeroValid || c == Condition::OneValid)) continue;
            if (std::all_of(per_relation_flags.begin(), per_relation_flags.end(),
                            [c](const PropertyFlags& f) { return f.holds(c); }))
                out.push_back(c);
        }
        return out;
    }
};

/// Tractable iff one condition holds for every relation; the witness is the
/// lowest-numbered such condition. With constants only Horn, dual-Horn,
/// bijunctive and affine count.
inline SchaeferVerdict schaefer_classify(std::span<const Relation> relations, bool with_constants) {
    if (relations.empty()) throw PreconditionError("schaefer_classify needs a nonempty relation set");
    SchaeferVerdict v;
    v.with_constants = with_constants;
    for (const auto& r : relations) v.per_relation_flags.push_back(relation_properties(r));
    auto holding = v.conditions();
    v.tractable = !holding.empty();
    if (v.tractable) v.witness = holding.front();
    return v;
}

// ---------------------------------------------------------------------------
// Relation file format
// ---------------------------------------------------------------------------

/// Parses every `rel <name> <arity>` block of a relation file.
inline std::vector<Relation> parse_relations(std::string_view input) {
    std::vector<Relation> out;
    struct Pending {
        std::string name;
        int arity;
        std::vector<std::uint32_t> tuples;
    };
    std::optional<Pending> cur;
    auto flush = [&] {
        if (!cur) return;
        out.emplace_back(cur->arity, cur->tuples, cur->name);
        cur.reset();
    };
    for (const auto& line : text::tokenize(input, '#')) {
        if (line.tokens.empty()) {
            flush();
            continue;
        }
        if (line.tokens[0] == "rel") {
            flush();
            if (line.tokens.size() < 3)
                throw ParseError(line.number, "expected 'rel <name> <arity>'");
            const long long k = text::parse_int(line.tokens[2], line.number);
            if (k < 1 || k > kMaxArity)
                throw ParseError(line.number, "relation arity must be in [1, " +
                                                  std::to_string(kMaxArity) + "], got " +
                                                  std::string(line.tokens[2]));
            std::string name(line.tokens[1]);
            for (const auto& r : out)
                if (r.name() == name) throw ParseError(line.number, "duplicate relation '" + name + "'");
            cur = Pending{std::move(name), static_cast<int>(k), {}};
            for (std::size_t i = 3; i < line.tokens.size(); ++i) {
                if (line.tokens[i].size() != static_cast<std::size_t>(k))
                    throw ParseError(line.number, "tuple '" + std::string(line.tokens[i]) +
                                                      "' does not have arity " + std::to_string(k));
                cur->tuples.push_back(from_bitstring(line.tokens[i], line.number));
            }
            continue;
        }
        if (!cur) throw ParseError(line.number, "tuple outside of a 'rel' block");
        for (auto tok : line.tokens) {
            if (tok.size() != static_cast<std::size_t>(cur->arity))
                throw ParseError(line.number, "tuple '" + std::string(tok) +
                                                  "' does not have arity " +
                                                  std::to_string(cur->arity));
            cur->tuples.push_back(from_bitstring(tok, line.number));
        }
    }
    flush();
    return out;
}

/// Parses a text holding exactly one relation block.
inline Relation parse_relation(std::string_view input) {
    auto all = parse_relations(input);
    if (all.size() != 1)
        throw ParseError(0, "expected exactly one relation block, found " + std::to_string(all.size()));
    return std::move(all.front());
}

inline void write_relation(std::ostream& os, const Relation& r) {
    os << "rel " << (r.name().empty() ? "R" : r.name()) << ' ' << r.arity() << '\n';
    for (std::size_t i = 0; i < r.tuples().size(); ++i)
        os << (i ? " " : "") << to_bitstring(r.tuples()[i], r.arity());
    os << "\n\n";
}

// Named relations used throughout the tests and the CLI.
namespace relations {

inline Relation not_all_equal3() { return Relation(3, {0b100, 0b010, 0b110, 0b001, 0b101, 0b011}, "NAE"); }
inline Relation one_in_three() { return Relation(3, {0b001, 0b010, 0b100}, "ONE_IN_THREE"); }
inline Relation xor2() { return Relation(2, {0b10, 0b01}, "XOR2"); }

/// Parity relation x_1 ⊕ ... ⊕ x_k = rhs.
inline Relation parity(int k, bool rhs) {
    std::vector<std::uint32_t> t;
    for (std::uint32_t v = 0; v <= low_mask(k); ++v)
        if ((popcount(v) & 1) == static_cast<int>(rhs)) t.push_back(v);
    return Relation(k, t, (rhs ? "XOR" : "XNOR") + std::to_string(k));
}

}  // namespace relations

}  // namespace cubetopo
