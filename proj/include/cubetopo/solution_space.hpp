#pragma once

// Discrete solution spaces: subsets of {0,1}^d stored as dense bitsets.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/bits.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/formula.hpp"
#include "cubetopo/text.hpp"

namespace cubetopo {

inline void require_dimension(int d, int cap = kMaxDimension) {
    if (d < 1) throw PreconditionError("dimension must be at least 1");
    if (d > cap)
        throw ResourceError("dimension " + std::to_string(d) + " exceeds the cap of " +
                            std::to_string(cap) + " variables");
}

class VertexSet {
public:
    explicit VertexSet(int dimension) : dimension_(dimension) {
        require_dimension(dimension);
        bits_.assign(((std::size_t{1} << dimension) + 63) / 64, 0);
    }

    VertexSet(int dimension, std::span<const Vertex> members) : VertexSet(dimension) {
        for (Vertex v : members) insert(v);
    }
    VertexSet(int dimension, std::initializer_list<Vertex> members)
        : VertexSet(dimension, std::span<const Vertex>(members.begin(), members.size())) {}

    static VertexSet full(int dimension) {
        VertexSet s(dimension);
        for (Vertex v = 0; v <= low_mask(dimension); ++v) s.insert(v);
        return s;
    }

    int dimension() const noexcept { return dimension_; }
    Vertex universe() const noexcept { return Vertex{1} << dimension_; }

    bool contains(Vertex v) const noexcept {
        return v < universe() && (bits_[v >> 6] >> (v & 63) & 1u);
    }

    void insert(Vertex v) {
        if (v >= universe())
            throw PreconditionError("vertex " + std::to_string(v) + " outside {0,1}^" +
                                    std::to_string(dimension_));
        bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(Vertex v) noexcept {
        if (v < universe()) bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const noexcept {
        return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
    }

    /// Members in ascending vertex order.
    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(size());
        for (std::size_t w = 0; w < bits_.size(); ++w)
            for (auto word = bits_[w]; word; word &= word - 1)
                out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
        return out;
    }

    bool subset_of(const VertexSet& other) const {
        if (dimension_ != other.dimension_) return false;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~other.bits_[i]) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& other) {
        if (dimension_ != other.dimension_) throw PreconditionError("dimension mismatch in union");
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& other) {
        if (dimension_ != other.dimension_)
            throw PreconditionError("dimension mismatch in intersection");
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
        return *this;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    int dimension_;
    std::vector<std::uint64_t> bits_;
};

template <class Predicate>
VertexSet enumerate_where(int dimension, Predicate&& pred) {
    require_dimension(dimension);
    VertexSet out(dimension);
    for (Vertex v = 0; v <= low_mask(dimension); ++v)
        if (pred(v)) out.insert(v);
    return out;
}

/// Exhaustive enumeration of the satisfying assignments; `cap` may lower D_MAX.
inline VertexSet enumerate_solutions(const Formula& f, int cap = kMaxDimension) {
    require_dimension(f.dimension, std::min(cap, kMaxDimension));
    f.validate();
    return enumerate_where(f.dimension, [&](Vertex v) { return f.satisfied_by(v); });
}

inline VertexSet enumerate_solutions(const AffineSystem& a, int cap = kMaxDimension) {
    require_dimension(a.dimension, std::min(cap, kMaxDimension));
    return enumerate_where(a.dimension, [&](Vertex v) { return a.satisfied_by(v); });
}

/// Deletes the coordinates in `dims` (0-based). Projecting away every
/// coordinate is rejected since the result would have dimension 0.
inline VertexSet project(const VertexSet& set, std::span<const int> dims) {
    std::uint32_t removed = 0;
    for (int d : dims) {
        if (d < 0 || d >= set.dimension())
            throw PreconditionError("projection dimension " + std::to_string(d + 1) +
                                    " out of range 1.." + std::to_string(set.dimension()));
        removed |= std::uint32_t{1} << d;
    }
    const int out_dim = set.dimension() - popcount(removed);
    if (out_dim < 1) throw PreconditionError("projection would remove every dimension");
    VertexSet out(out_dim);
    for (Vertex v : set.members()) out.insert(compress_bits(v, removed, set.dimension()));
    return out;
}

inline VertexSet project(const VertexSet& set, std::initializer_list<int> dims) {
    return project(set, std::span<const int>(dims.begin(), dims.size()));
}

struct DroppedFormula {
    Formula formula;
    std::vector<int> dropped;  // 0-based indices in the input formula
};

/// Removes variables that occur in no clause or constraint and renumbers the
/// rest. At least one variable is always retained.
inline DroppedFormula drop_unconstrained(const Formula& f) {
    f.validate();
    const auto used = f.occurring();
    std::vector<int> remap(static_cast<std::size_t>(f.dimension), -1);
    DroppedFormula out{f, {}};
    int next = 0;
    for (int i = 0; i < f.dimension; ++i) {
        if (used[static_cast<std::size_t>(i)])
            remap[static_cast<std::size_t>(i)] = next++;
        else
            out.dropped.push_back(i);
    }
    if (next == 0) {
        // Keep the first variable so the cube stays at least one-dimensional.
        remap[0] = next++;
        out.dropped.erase(out.dropped.begin());
    }
    out.formula.dimension = next;
    for (auto& c : out.formula.clauses) {
        std::vector<Literal> lits = c.literals();
        for (auto& l : lits) l.var = remap[static_cast<std::size_t>(l.var)];
        c = Clause(std::move(lits));
    }
    for (auto& c : out.formula.constraints)
        for (auto& a : c.args)
            if (!a.is_constant) a.value = remap[static_cast<std::size_t>(a.value)];
    return out;
}

// ---------------------------------------------------------------------------
// `vset <d>` then one d-bit string per line, ascending.
// ---------------------------------------------------------------------------

inline void write_vertex_set(std::ostream& os, const VertexSet& s) {
    os << "vset " << s.dimension() << '\n';
    for (Vertex v : s.members()) os << to_bitstring(v, s.dimension()) << '\n';
}

inline std::string emit_vertex_set(const VertexSet& s) {
    std::ostringstream os;
    write_vertex_set(os, s);
    return os.str();
}

inline VertexSet parse_vertex_set(std::string_view input) {
    std::optional<VertexSet> out;
    for (const auto& line : text::tokenize(input, '#')) {
        if (line.tokens.empty()) continue;
        if (!out) {
            if (line.tokens.size() != 2 || line.tokens[0] != "vset")
                throw ParseError(line.number, "expected 'vset <d>' header");
            const long long d = text::parse_int(line.tokens[1], line.number);
            if (d < 1) throw ParseError(line.number, "dimension must be at least 1");
            require_dimension(static_cast<int>(d));
            out.emplace(static_cast<int>(d));
            continue;
        }
        for (auto tok : line.tokens) {
            if (tok.size() != static_cast<std::size_t>(out->dimension()))
                throw ParseError(line.number, "vertex '" + std::string(tok) + "' is not " +
                                                  std::to_string(out->dimension()) + " bits");
            out->insert(from_bitstring(tok, line.number));
        }
    }
    if (!out) throw ParseError(0, "missing 'vset' header");
    return std::move(*out);
}

}  // namespace cubetopo
