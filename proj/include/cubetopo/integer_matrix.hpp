#pragma once

// Sparse exact integer matrices, Smith normal form and GF(2) rank.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <queue>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubetopo/error.hpp"

namespace cubetopo {

using BigInt = boost::multiprecision::cpp_int;

/// Column-major sparse matrix with arbitrary-precision entries. Each column
/// keeps its nonzero entries sorted by row.
class IntegerMatrix {
public:
    struct Entry {
        std::size_t row;
        BigInt value;
    };
    using Column = std::vector<Entry>;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    /// Row-major dense literal, mostly for tests.
    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        IntegerMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw PreconditionError("ragged matrix literal");
            std::size_t j = 0;
            for (long long v : row) m.add(i, j++, v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const Column& column(std::size_t c) const { return columns_.at(c); }

    BigInt at(std::size_t r, std::size_t c) const {
        const auto& col = columns_.at(c);
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::size_t row) { return e.row < row; });
        return it != col.end() && it->row == r ? it->value : BigInt(0);
    }

    void add(std::size_t r, std::size_t c, const BigInt& v) {
        if (r >= rows_ || c >= columns_.size()) throw PreconditionError("matrix index out of range");
        if (v == 0) return;
        auto& col = columns_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::size_t row) { return e.row < row; });
        if (it != col.end() && it->row == r) {
            it->value += v;
            if (it->value == 0) col.erase(it);
        } else {
            col.insert(it, Entry{r, v});
        }
    }

    std::size_t nonzeros() const noexcept {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }
    bool is_zero() const noexcept { return nonzeros() == 0; }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        if (a.cols() != b.rows()) throw PreconditionError("matrix product shape mismatch");
        IntegerMatrix out(a.rows(), b.cols());
        std::vector<BigInt> acc(a.rows());
        std::vector<std::size_t> touched;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            touched.clear();
            for (const auto& eb : b.columns_[j])
                for (const auto& ea : a.columns_[eb.row]) {
                    if (acc[ea.row] == 0) touched.push_back(ea.row);
                    acc[ea.row] += ea.value * eb.value;
                }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (auto r : touched) {
                if (acc[r] != 0) out.columns_[j].push_back(Entry{r, acc[r]});
                acc[r] = 0;
            }
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

struct SmithForm {
    /// min(rows, cols) invariant factors d1 | d2 | ..., zeros last.
    std::vector<BigInt> diagonal;
    std::size_t rank = 0;

    /// Invariant factors greater than one.
    std::vector<BigInt> torsion() const {
        std::vector<BigInt> out;
        for (const auto& d : diagonal)
            if (d > 1) out.push_back(d);
        return out;
    }
};

namespace detail {

// Eliminates unit pivots directly in sparse form. Each elimination contributes
// an invariant factor 1 and removes one row and one column. Returns the
// number of unit pivots; `col_alive` / `row_alive` mark what is left.
inline std::size_t eliminate_unit_pivots(std::vector<IntegerMatrix::Column>& cols,
                                         std::size_t rows, std::vector<char>& col_alive,
                                         std::vector<char>& row_alive) {
    using Entry = IntegerMatrix::Entry;
    const std::size_t n = cols.size();
    std::vector<std::vector<std::size_t>> row_cols(rows);  // may hold stale column ids
    std::vector<std::size_t> row_count(rows, 0);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& e : cols[c]) {
            row_cols[e.row].push_back(c);
            ++row_count[e.row];
        }

    using Item = std::pair<std::size_t, std::size_t>;  // (nnz, column)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::size_t c = 0; c < n; ++c) queue.push({cols[c].size(), c});

    std::size_t units = 0;
    std::vector<std::size_t> targets;
    IntegerMatrix::Column scratch;
    while (!queue.empty()) {
        auto [nnz, c] = queue.top();
        queue.pop();
        if (!col_alive[c] || nnz != cols[c].size()) continue;
        if (cols[c].empty()) continue;
        // Cheapest unit entry of this column, judged by its row population.
        const Entry* pivot = nullptr;
        for (const auto& e : cols[c])
            if ((e.value == 1 || e.value == -1) &&
                (!pivot || row_count[e.row] < row_count[pivot->row]))
                pivot = &e;
        if (!pivot) continue;  // re-queued whenever the column changes
        const std::size_t r = pivot->row;
        const bool negative = pivot->value < 0;

        targets.clear();
        for (std::size_t other : row_cols[r]) {
            if (other == c || !col_alive[other]) continue;
            targets.push_back(other);
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        const IntegerMatrix::Column pivot_col = cols[c];
        for (std::size_t other : targets) {
            auto& oc = cols[other];
            auto it = std::lower_bound(oc.begin(), oc.end(), r,
                                       [](const Entry& e, std::size_t row) { return e.row < row; });
            if (it == oc.end() || it->row != r) continue;
            BigInt factor = it->value;
            if (negative) factor = -factor;
            // oc -= factor * pivot_col, merged by row.
            scratch.clear();
            auto a = oc.begin();
            auto b = pivot_col.begin();
            while (a != oc.end() || b != pivot_col.end()) {
                if (b == pivot_col.end() || (a != oc.end() && a->row < b->row)) {
                    scratch.push_back(std::move(*a));
                    ++a;
                } else if (a == oc.end() || b->row < a->row) {
                    scratch.push_back(Entry{b->row, -factor * b->value});
                    row_cols[b->row].push_back(other);
                    ++row_count[b->row];
                    ++b;
                } else {
                    BigInt v = a->value - factor * b->value;
                    if (v != 0)
                        scratch.push_back(Entry{a->row, std::move(v)});
                    else
                        --row_count[a->row];
                    ++a;
                    ++b;
                }
            }
            oc.swap(scratch);
            queue.push({oc.size(), other});
        }
        for (const auto& e : cols[c]) --row_count[e.row];
        col_alive[c] = 0;
        row_alive[r] = 0;
        cols[c].clear();
        ++units;
    }
    return units;
}

// Classic dense Smith normal form with smallest-absolute-value pivoting.
// Returns the nonzero invariant factors in divisibility order.
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> out;
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        std::swap(a[t], a[pi]);
        for (auto& row : a) std::swap(row[t], row[pj]);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j)
                    if (a[t][j] != 0) a[i][j] -= q * a[t][j];
                dirty = dirty || a[i][t] != 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i)
                    if (a[i][t] != 0) a[i][j] -= q * a[i][t];
                dirty = dirty || a[t][j] != 0;
            }
            if (dirty) {
                // A nonzero remainder is smaller than the pivot: promote it.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) { bi = t; bj = j; }
                std::swap(a[t], a[bi]);
                for (auto& row : a) std::swap(row[t], row[bj]);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
        }
        out.push_back(abs(a[t][t]));
    }
    return out;
}

}  // namespace detail

/// Invariant factors of `m`, computed exactly. Unit pivots are eliminated in
/// sparse form first; the remaining block goes through dense pivoting.
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
    std::vector<IntegerMatrix::Column> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) cols[c] = m.column(c);
    std::vector<char> col_alive(m.cols(), 1), row_alive(m.rows(), 1);
    const std::size_t units = detail::eliminate_unit_pivots(cols, m.rows(), col_alive, row_alive);

    std::vector<std::size_t> rest_rows, rest_cols;
    std::vector<std::size_t> row_pos(m.rows(), 0);
    std::vector<char> row_used(m.rows(), 0);
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (col_alive[c] && !cols[c].empty()) {
            rest_cols.push_back(c);
            for (const auto& e : cols[c]) row_used[e.row] = 1;
        }
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (row_used[r]) {
            row_pos[r] = rest_rows.size();
            rest_rows.push_back(r);
        }
    std::vector<std::vector<BigInt>> block(rest_rows.size(),
                                           std::vector<BigInt>(rest_cols.size()));
    for (std::size_t j = 0; j < rest_cols.size(); ++j)
        for (const auto& e : cols[rest_cols[j]]) block[row_pos[e.row]][j] = e.value;

    SmithForm sf;
    sf.diagonal.assign(units, BigInt(1));
    for (auto& d : detail::dense_smith(std::move(block))) sf.diagonal.push_back(std::move(d));
    sf.rank = sf.diagonal.size();
    sf.diagonal.resize(std::min(m.rows(), m.cols()), BigInt(0));
    return sf;
}

/// Rank over GF(2) by column reduction on packed bit columns.
inline std::size_t gf2_rank(const IntegerMatrix& m) {
    const std::size_t words = (m.rows() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> pivots(m.rows());
    std::vector<std::uint64_t> col(words);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::fill(col.begin(), col.end(), 0);
        bool any = false;
        for (const auto& e : m.column(c))
            if (boost::multiprecision::bit_test(abs(e.value), 0)) {
                col[e.row / 64] |= std::uint64_t{1} << (e.row % 64);
                any = true;
            }
        while (any) {
            std::size_t w = words;
            while (w > 0 && col[w - 1] == 0) --w;
            if (w == 0) break;
            const std::size_t low = (w - 1) * 64 + 63 - static_cast<std::size_t>(std::countl_zero(col[w - 1]));
            if (pivots[low].empty()) {
                pivots[low] = col;
                ++rank;
                break;
            }
            for (std::size_t i = 0; i < w; ++i) col[i] ^= pivots[low][i];
        }
    }
    return rank;
}

}  // namespace cubetopo
