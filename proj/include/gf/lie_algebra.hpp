#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace gf {

struct BasisElement {
    std::string label;
    int weight = 0;
};

/// A pair (u, v) with u < v whose bracket contains a given basis element,
/// together with the coefficient; the reverse index used by cochain ops.
struct BracketProducer {
    int u, v;
    Rational coeff;
};

/// Finite-dimensional graded Lie algebra given by structure constants.
/// Brackets are stored for pairs (i, j) with i < j; antisymmetry is by
/// construction. Pairs may be marked as undefined (trigonometric mode
/// overflow), in which case bracket() throws.
class GradedLieAlgebra {
public:
    using BracketTable = std::map<std::pair<int, int>, SparseVec>;

    GradedLieAlgebra(std::vector<BasisElement> basis, BracketTable brackets,
                     std::optional<int> truncation = std::nullopt,
                     std::set<std::pair<int, int>> undefined_pairs = {})
        : basis_(std::move(basis)),
          brackets_(std::move(brackets)),
          truncation_(truncation),
          undefined_pairs_(std::move(undefined_pairs)) {
        const int n = static_cast<int>(basis_.size());
        producers_.resize(basis_.size());
        for (const auto& [pair, combo] : brackets_) {
            const auto [i, j] = pair;
            if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
                throw ShapeMismatchError("bracket table: bad pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            const int w = basis_[i].weight + basis_[j].weight;
            for (const auto& [m, c] : combo) {
                if (m < 0 || m >= n)
                    throw ShapeMismatchError("bracket table: target index out of range");
                if (basis_[m].weight != w)
                    throw ShapeMismatchError("bracket weight additivity violated at [" +
                                             basis_[i].label + ", " + basis_[j].label + "]");
                producers_[m].push_back({i, j, c});
            }
        }
    }

    std::size_t dim() const { return basis_.size(); }
    int weight(int i) const { return basis_.at(i).weight; }
    const std::string& label(int i) const { return basis_.at(i).label; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::optional<int> truncation() const { return truncation_; }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].label == label) return static_cast<int>(i);
        throw InvalidInputError("no basis element labelled '" + label + "'");
    }

    /// [e_i, e_j] as a sparse combination; throws ModeOverflowError on pairs
    /// whose bracket is not representable within the mode bound.
    SparseVec bracket(int i, int j) const {
        if (i == j) return {};
        const bool flip = i > j;
        const auto key = flip ? std::make_pair(j, i) : std::make_pair(i, j);
        if (undefined_pairs_.count(key))
            throw ModeOverflowError("bracket [" + basis_.at(key.first).label + ", " +
                                    basis_.at(key.second).label + "] exceeds the mode bound");
        auto it = brackets_.find(key);
        if (it == brackets_.end()) return {};
        return flip ? scaled(it->second, Rational(-1)) : it->second;
    }

    /// Bilinear extension of the bracket to sparse combinations.
    SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) add_scaled(out, bracket(i, j), Rational(a * b));
        return out;
    }

    /// All pairs u < v with [e_u, e_v] containing e_m.
    const std::vector<BracketProducer>& producers(int m) const { return producers_.at(m); }

    /// The largest basis weight actually present.
    int max_weight() const {
        int w = basis_.empty() ? 0 : basis_[0].weight;
        for (const auto& b : basis_) w = std::max(w, b.weight);
        return w;
    }

private:
    std::vector<BasisElement> basis_;
    BracketTable brackets_;
    std::optional<int> truncation_;
    std::set<std::pair<int, int>> undefined_pairs_;
    std::vector<std::vector<BracketProducer>> producers_;
};

namespace detail {

using Multiindex = std::vector<unsigned>;

inline unsigned multiindex_degree(const Multiindex& a) {
    return std::accumulate(a.begin(), a.end(), 0u);
}

inline void enumerate_multiindices(unsigned n, unsigned degree, Multiindex& current,
                                   std::vector<Multiindex>& out) {
    if (current.size() == n) {
        if (degree == 0) out.push_back(current);
        return;
    }
    for (unsigned d = 0; d <= degree; ++d) {
        current.push_back(d);
        enumerate_multiindices(n, degree - d, current, out);
        current.pop_back();
    }
}

inline std::string monomial_label(const Multiindex& alpha, int direction) {
    std::string s;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        for (unsigned e = 0; e < alpha[v]; ++e) {
            s += "x" + std::to_string(v + 1);
        }
    }
    if (s.empty()) s = "1";
    return s + " d" + std::to_string(direction + 1);
}

} // namespace detail

/// Formal vector fields in n variables, truncated to weights <= max_weight
/// (nilpotent quotient: bracket terms of higher weight are projected away).
/// Basis: x^alpha d_i with |alpha| <= max_weight + 1, in graded-lex order on
/// alpha, then by direction index.
class WnAlgebra {
public:
    WnAlgebra(int n, int max_weight) : n_(n), max_weight_(max_weight) {
        if (n < 1) throw InvalidInputError("W_n needs n >= 1");
        if (max_weight < -1) throw InvalidInputError("W_n truncation must be >= -1");

        std::vector<BasisElement> basis;
        for (int deg = 0; deg <= max_weight + 1; ++deg) {
            std::vector<detail::Multiindex> alphas;
            detail::Multiindex scratch;
            detail::enumerate_multiindices(static_cast<unsigned>(n), static_cast<unsigned>(deg),
                                           scratch, alphas);
            std::sort(alphas.begin(), alphas.end());
            for (const auto& alpha : alphas)
                for (int dir = 0; dir < n; ++dir) {
                    index_.emplace(std::make_pair(alpha, dir), static_cast<int>(basis.size()));
                    monomials_.emplace_back(alpha, dir);
                    basis.push_back({detail::monomial_label(alpha, dir), deg - 1});
                }
        }

        GradedLieAlgebra::BracketTable table;
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            for (std::size_t j = i + 1; j < monomials_.size(); ++j) {
                SparseVec combo = monomial_bracket(monomials_[i], monomials_[j]);
                if (!combo.empty())
                    table.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(j)),
                                  std::move(combo));
            }
        algebra_.emplace(std::move(basis), std::move(table), max_weight);
    }

    const GradedLieAlgebra& algebra() const { return *algebra_; }
    int n() const { return n_; }

    int index(const detail::Multiindex& alpha, int direction) const {
        auto it = index_.find({alpha, direction});
        if (it == index_.end())
            throw TruncationInsufficientError("monomial beyond truncation of W_" +
                                              std::to_string(n_));
        return it->second;
    }

    /// Index of d_i (weight -1 generators).
    int partial(int i) const { return index(detail::Multiindex(n_, 0), i); }

    /// Index of x_i d_j (the gl_n copy inside W_n).
    int euler_candidate(int i, int j) const {
        detail::Multiindex alpha(n_, 0);
        alpha[i] = 1;
        return index(alpha, j);
    }

    /// The Euler vector field sum_i x_i d_i as a sparse combination.
    SparseVec euler_element() const {
        SparseVec e;
        for (int i = 0; i < n_; ++i) add_to(e, euler_candidate(i, i), 1);
        return e;
    }

private:
    // [x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i,
    // projected onto weights <= max_weight_.
    SparseVec monomial_bracket(const std::pair<detail::Multiindex, int>& lhs,
                               const std::pair<detail::Multiindex, int>& rhs) const {
        const auto& [a, i] = lhs;
        const auto& [b, j] = rhs;
        SparseVec out;
        const int weight = static_cast<int>(detail::multiindex_degree(a)) +
                           static_cast<int>(detail::multiindex_degree(b)) - 2;
        if (weight > max_weight_) return out;
        if (b[i] > 0) {
            detail::Multiindex m = a;
            for (std::size_t v = 0; v < m.size(); ++v) m[v] += b[v];
            m[i] -= 1;
            add_to(out, index(m, j), static_cast<long>(b[i]));
        }
        if (a[j] > 0) {
            detail::Multiindex m = a;
            for (std::size_t v = 0; v < m.size(); ++v) m[v] += b[v];
            m[j] -= 1;
            add_to(out, index(m, i), -static_cast<long>(a[j]));
        }
        return out;
    }

    int n_;
    int max_weight_;
    std::vector<std::pair<detail::Multiindex, int>> monomials_;
    std::map<std::pair<detail::Multiindex, int>, int> index_;
    std::optional<GradedLieAlgebra> algebra_;
};

inline WnAlgebra build_wn(int n, int max_weight) { return WnAlgebra(n, max_weight); }

/// gl_n as structure constants: basis E_ij, [E_ij, E_kl] = d_jk E_il - d_li E_kj.
inline GradedLieAlgebra build_gln(int n) {
    if (n < 1) throw InvalidInputError("gl_n needs n >= 1");
    std::vector<BasisElement> basis;
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), 0});

    GradedLieAlgebra::BracketTable table;
    for (int a = 0; a < n * n; ++a)
        for (int b = a + 1; b < n * n; ++b) {
            const int i = a / n, j = a % n, k = b / n, l = b % n;
            SparseVec combo;
            if (j == k) add_to(combo, idx(i, l), 1);
            if (l == i) add_to(combo, idx(k, j), -1);
            if (!combo.empty()) table.emplace(std::make_pair(a, b), std::move(combo));
        }
    return GradedLieAlgebra(std::move(basis), std::move(table));
}

/// Verifies [E, x] = k x for the Euler element of a W_n algebra and returns k.
inline int euler_weight(const WnAlgebra& wn, int basis_index) {
    const auto& g = wn.algebra();
    const int stored = g.weight(basis_index);
    SparseVec x;
    x[basis_index] = 1;
    SparseVec bracket = g.bracket(wn.euler_element(), x);
    SparseVec expected = scaled(x, Rational(stored));
    // The eigenvalue law can only be read off below the truncation edge;
    // at the edge the bracket is projected away.
    if (stored <= *g.truncation() && bracket != expected)
        throw Error("Euler eigenvalue mismatch at " + g.label(basis_index));
    return stored;
}

/// Jacobiator [x,[y,z]] - [[x,y],z] - [y,[x,z]] under the stored brackets.
inline SparseVec jacobiator(const GradedLieAlgebra& g, int x, int y, int z) {
    SparseVec ex, ey, ez;
    ex[x] = 1;
    ey[y] = 1;
    ez[z] = 1;
    SparseVec out = g.bracket(ex, g.bracket(ey, ez));
    add_scaled(out, g.bracket(g.bracket(ex, ey), ez), Rational(-1));
    add_scaled(out, g.bracket(ey, g.bracket(ex, ez)), Rational(-1));
    return out;
}

} // namespace gf
