#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace gf {

/// Sparse matrix over Q. Only nonzero entries are stored; indices are
/// bounds-checked on mutation.
class RationalMatrix {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzero_count() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    const std::map<Key, Rational>& entries() const { return entries_; }

    Rational at(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rational& value) {
        check_index(r, c);
        if (gf::is_zero(value))
            entries_.erase({r, c});
        else
            entries_[{r, c}] = value;
    }

    void add_at(std::size_t r, std::size_t c, const Rational& value) {
        check_index(r, c);
        if (gf::is_zero(value)) return;
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            entries_.emplace(Key{r, c}, value);
        } else {
            it->second += value;
            if (gf::is_zero(it->second)) entries_.erase(it);
        }
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (const auto& [k, v] : entries_) t.entries_[{k.second, k.first}] = v;
        return t;
    }

    RationalMatrix operator*(const RationalMatrix& other) const {
        if (cols_ != other.rows_)
            throw ShapeMismatchError("matrix product: " + std::to_string(cols_) +
                                     " columns against " + std::to_string(other.rows_) + " rows");
        // rows of *this as sparse vectors
        std::vector<std::vector<std::pair<std::size_t, Rational>>> lhs_rows(rows_);
        for (const auto& [k, v] : entries_) lhs_rows[k.first].emplace_back(k.second, v);
        std::vector<std::vector<std::pair<std::size_t, Rational>>> rhs_rows(other.rows_);
        for (const auto& [k, v] : other.entries_) rhs_rows[k.first].emplace_back(k.second, v);

        RationalMatrix out(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::map<std::size_t, Rational> acc;
            for (const auto& [mid, a] : lhs_rows[r])
                for (const auto& [c, b] : rhs_rows[mid]) {
                    Rational& slot = acc[c];
                    slot += a * b;
                }
            for (auto& [c, v] : acc)
                if (!gf::is_zero(v)) out.entries_[{r, c}] = std::move(v);
        }
        return out;
    }

    bool operator==(const RationalMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    /// Exact rank over Q; pivoted sparse elimination with Markowitz-style
    /// pivot selection to limit fill-in.
    std::size_t rank() const;

    /// Basis of {x : Mx = 0}, each vector sparse over column indices.
    std::vector<SparseVec> kernel_basis() const;

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw ShapeMismatchError("matrix index (" + std::to_string(r) + "," +
                                     std::to_string(c) + ") out of " + std::to_string(rows_) +
                                     "x" + std::to_string(cols_));
    }

    std::size_t rows_, cols_;
    std::map<Key, Rational> entries_;
};

namespace detail {

/// Row-major sparse elimination workspace.
struct EliminationRows {
    std::vector<std::map<std::size_t, Rational>> rows;
    std::vector<std::size_t> col_count;

    explicit EliminationRows(const RationalMatrix& m)
        : rows(m.rows()), col_count(m.cols(), 0) {
        for (const auto& [k, v] : m.entries()) {
            rows[k.first][k.second] = v;
            ++col_count[k.second];
        }
    }
};

} // namespace detail

inline std::size_t RationalMatrix::rank() const {
    detail::EliminationRows workspace(*this);
    auto& rows = workspace.rows;
    auto& col_count = workspace.col_count;
    std::vector<bool> row_done(rows.size(), false);
    std::vector<bool> col_done(cols_, false);
    std::size_t rank = 0;

    for (;;) {
        // Markowitz pivot: minimize (row_nnz - 1) * (col_nnz - 1)
        std::size_t best_r = 0, best_c = 0;
        unsigned long long best_cost = std::numeric_limits<unsigned long long>::max();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (row_done[r] || rows[r].empty()) continue;
            const unsigned long long rw = rows[r].size() - 1;
            for (const auto& [c, v] : rows[r]) {
                (void)v;
                if (col_done[c]) continue;
                const unsigned long long cost = rw * (col_count[c] - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = r;
                    best_c = c;
                    if (cost == 0) break;
                }
            }
            if (best_cost == 0) break;
        }
        if (best_cost == std::numeric_limits<unsigned long long>::max()) break;

        ++rank;
        row_done[best_r] = true;
        col_done[best_c] = true;
        const Rational pivot = rows[best_r].at(best_c);

        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == best_r || row_done[r]) continue;
            auto hit = rows[r].find(best_c);
            if (hit == rows[r].end()) continue;
            Rational factor = hit->second / pivot;
            for (const auto& [c, v] : rows[best_r]) {
                if (c == best_c) continue;
                auto it = rows[r].find(c);
                if (it == rows[r].end()) {
                    Rational nv = -factor * v;
                    if (!gf::is_zero(nv)) {
                        rows[r].emplace(c, std::move(nv));
                        ++col_count[c];
                    }
                } else {
                    it->second -= factor * v;
                    if (gf::is_zero(it->second)) {
                        rows[r].erase(it);
                        --col_count[c];
                    }
                }
            }
            rows[r].erase(best_c);
            --col_count[best_c];
        }
        // pivot row stays, but its entries no longer matter for counting
        for (const auto& [c, v] : rows[best_r]) {
            (void)v;
            if (c != best_c) --col_count[c];
        }
    }
    return rank;
}

inline std::vector<SparseVec> RationalMatrix::kernel_basis() const {
    // Gauss-Jordan with recorded pivot columns; free columns yield the basis.
    std::vector<std::map<std::size_t, Rational>> rows;
    rows.reserve(rows_);
    {
        detail::EliminationRows workspace(*this);
        for (auto& r : workspace.rows)
            if (!r.empty()) rows.push_back(std::move(r));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    std::vector<bool> col_is_pivot(cols_, false);
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols_ && next_row < rows.size(); ++c) {
        std::size_t pr = rows.size();
        for (std::size_t r = next_row; r < rows.size(); ++r) {
            auto it = rows[r].find(c);
            if (it != rows[r].end()) {
                if (pr == rows.size() || rows[r].size() < rows[pr].size()) pr = r;
            }
        }
        if (pr == rows.size()) continue;
        std::swap(rows[next_row], rows[pr]);
        // normalize
        Rational inv = 1 / rows[next_row].at(c);
        for (auto& [cc, v] : rows[next_row]) v *= inv;
        // eliminate everywhere else
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next_row) continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end()) continue;
            Rational factor = it->second;
            for (const auto& [cc, v] : rows[next_row]) {
                auto jt = rows[r].find(cc);
                if (jt == rows[r].end()) {
                    Rational nv = -factor * v;
                    if (!gf::is_zero(nv)) rows[r].emplace(cc, std::move(nv));
                } else {
                    jt->second -= factor * v;
                    if (gf::is_zero(jt->second)) rows[r].erase(jt);
                }
            }
        }
        pivots.emplace_back(next_row, c);
        col_is_pivot[c] = true;
        ++next_row;
    }

    std::vector<SparseVec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (col_is_pivot[f]) continue;
        SparseVec x;
        x[static_cast<int>(f)] = 1;
        for (const auto& [r, p] : pivots) {
            auto it = rows[r].find(f);
            if (it != rows[r].end()) x[static_cast<int>(p)] = -it->second;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Rank of the row span of a set of sparse vectors over the index range [0, dim).
inline std::size_t span_dim(const std::vector<SparseVec>& vectors, std::size_t dim) {
    RationalMatrix m(vectors.size(), dim);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (const auto& [c, v] : vectors[r]) m.set(r, static_cast<std::size_t>(c), v);
    return m.rank();
}

/// True iff v lies in the span of the given vectors.
inline bool in_span(const std::vector<SparseVec>& vectors, const SparseVec& v, std::size_t dim) {
    std::size_t base = span_dim(vectors, dim);
    auto extended = vectors;
    extended.push_back(v);
    return span_dim(extended, dim) == base;
}

/// Outcome of solving A x = b exactly, with a Farkas-style witness when the
/// system is infeasible: a row combination y with yA = 0 and y.b != 0.
struct LinearSolveResult {
    bool feasible = false;
    SparseVec solution;                              // one solution if feasible
    std::vector<std::pair<std::size_t, Rational>> certificate_rows; // (equation, multiplier)
    Rational contradiction;                          // y.b for the certificate
};

inline LinearSolveResult solve_with_certificate(const RationalMatrix& a,
                                                const std::vector<Rational>& b) {
    if (b.size() != a.rows())
        throw ShapeMismatchError("solve: rhs size mismatch");
    const std::size_t nrows = a.rows();
    const std::size_t ncols = a.cols();

    // augmented rows [A | b], with a witness block tracking row operations
    std::vector<std::map<std::size_t, Rational>> rows(nrows);
    std::vector<std::map<std::size_t, Rational>> witness(nrows);
    for (const auto& [k, v] : a.entries()) rows[k.first][k.second] = v;
    std::vector<Rational> rhs = b;
    for (std::size_t r = 0; r < nrows; ++r) witness[r][r] = 1;

    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::vector<bool> row_used(nrows, false);
    for (std::size_t c = 0; c < ncols; ++c) {
        std::size_t pr = nrows;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (row_used[r]) continue;
            if (rows[r].count(c)) {
                if (pr == nrows || rows[r].size() < rows[pr].size()) pr = r;
            }
        }
        if (pr == nrows) continue;
        row_used[pr] = true;
        pivots.emplace_back(pr, c);
        const Rational pivot = rows[pr].at(c);
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == pr) continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end()) continue;
            Rational factor = it->second / pivot;
            for (const auto& [cc, v] : rows[pr]) {
                auto jt = rows[r].find(cc);
                if (jt == rows[r].end()) {
                    Rational nv = -factor * v;
                    if (!gf::is_zero(nv)) rows[r].emplace(cc, std::move(nv));
                } else {
                    jt->second -= factor * v;
                    if (gf::is_zero(jt->second)) rows[r].erase(jt);
                }
            }
            rhs[r] -= factor * rhs[pr];
            for (const auto& [wc, wv] : witness[pr]) {
                auto jt = witness[r].find(wc);
                if (jt == witness[r].end()) {
                    Rational nv = -factor * wv;
                    if (!gf::is_zero(nv)) witness[r].emplace(wc, std::move(nv));
                } else {
                    jt->second -= factor * wv;
                    if (gf::is_zero(jt->second)) witness[r].erase(jt);
                }
            }
        }
    }

    LinearSolveResult out;
    for (std::size_t r = 0; r < nrows; ++r) {
        if (rows[r].empty() && !is_zero(rhs[r])) {
            out.feasible = false;
            out.contradiction = rhs[r];
            for (const auto& [wc, wv] : witness[r]) out.certificate_rows.emplace_back(wc, wv);
            return out;
        }
    }
    out.feasible = true;
    for (const auto& [r, c] : pivots) {
        Rational value = rhs[r] / rows[r].at(c);
        if (!is_zero(value)) out.solution[static_cast<int>(c)] = value;
    }
    return out;
}

} // namespace gf
