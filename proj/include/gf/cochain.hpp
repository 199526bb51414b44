#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "lie_algebra.hpp"
#include "rational.hpp"

namespace gf {

/// Exterior monomial in the dual basis: strictly increasing indices of
/// algebra basis elements. The empty monomial is the degree-0 scalar.
using DualMonomial = std::vector<int>;

/// Sparse cochain: a rational combination of dual-basis exterior monomials
/// of one fixed degree, optionally carrying its weight r. With the
/// determinant convention e_S*(e_{t_1},...,e_{t_k}) = sign of the sorting
/// permutation, a weight-r cochain is supported on argument tuples whose
/// weights sum to r (and then E . c = -r c).
struct Cochain {
    int degree = 0;
    std::optional<int> weight;
    std::map<DualMonomial, Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }

    void add(DualMonomial monomial, const Rational& c) {
        if (gf::is_zero(c)) return;
        auto it = coeffs.find(monomial);
        if (it == coeffs.end()) {
            coeffs.emplace(std::move(monomial), c);
        } else {
            it->second += c;
            if (gf::is_zero(it->second)) coeffs.erase(it);
        }
    }

    /// Adds c times the monomial given by an unsorted index list, with the
    /// sorting sign; repeated indices contribute nothing.
    void add_unsorted(DualMonomial monomial, const Rational& c) {
        int sign = sort_with_sign(monomial);
        if (sign == 0) return;
        add(std::move(monomial), Rational(sign * c));
    }

    static Cochain scalar(const Rational& c) {
        Cochain out;
        out.degree = 0;
        out.weight = 0;
        out.add({}, c);
        return out;
    }

    static Cochain dual_basis(const GradedLieAlgebra& g, DualMonomial monomial) {
        Cochain out;
        out.degree = static_cast<int>(monomial.size());
        int w = 0;
        for (int i : monomial) w += g.weight(i);
        out.weight = w;
        out.add(std::move(monomial), 1);
        return out;
    }
};

inline int monomial_weight(const GradedLieAlgebra& g, const DualMonomial& m) {
    int w = 0;
    for (int i : m) w += g.weight(i);
    return w;
}

namespace detail {

inline int max_element_weight(const GradedLieAlgebra& g, const Cochain& c) {
    int w = -1;
    for (const auto& [mono, v] : c.coeffs) {
        (void)v;
        for (int i : mono) w = std::max(w, g.weight(i));
    }
    return w;
}

inline void require_truncation(const GradedLieAlgebra& g, int needed, const char* op) {
    if (!g.truncation()) return;
    if (*g.truncation() < needed)
        throw TruncationInsufficientError(std::string(op) + " needs truncation >= " +
                                          std::to_string(needed) + ", algebra has " +
                                          std::to_string(*g.truncation()));
}

} // namespace detail

/// Chevalley-Eilenberg differential with trivial coefficients, with the sign
/// convention dc(X_1,...,X_{k+1}) = sum_{i<j} (-1)^{i+j-1} c([X_i,X_j], ..., ^i, ..., ^j, ...).
inline Cochain ce_differential(const GradedLieAlgebra& g, const Cochain& c) {
    // producers of an element of weight w involve partners up to weight w + 1
    detail::require_truncation(g, detail::max_element_weight(g, c) + 1, "ce_differential");
    Cochain out;
    out.degree = c.degree + 1;
    out.weight = c.weight;
    if (c.degree == 0) return out; // no bracket terms on scalars

    // coefficient of e_T* is sum over m in S, (u,v) producing m of
    // (-1)^{a+b-1} c^m_{uv} (-1)^{slot of m}; the (-1)^{a+b-1} factor equals
    // the sign of sorting (S minus m) ++ (u, v) into T
    for (const auto& [mono, coeff] : c.coeffs) {
        for (std::size_t slot = 0; slot < mono.size(); ++slot) {
            const int m = mono[slot];
            const int insertion_sign = (slot % 2 == 0) ? 1 : -1;
            for (const auto& prod : g.producers(m)) {
                DualMonomial target;
                target.reserve(mono.size() + 1);
                bool clash = false;
                for (std::size_t t = 0; t < mono.size(); ++t) {
                    if (t == slot) continue;
                    if (mono[t] == prod.u || mono[t] == prod.v) {
                        clash = true;
                        break;
                    }
                    target.push_back(mono[t]);
                }
                if (clash) continue;
                target.push_back(prod.u);
                target.push_back(prod.v);
                int sign = sort_with_sign(target);
                if (sign == 0) continue;
                out.add(std::move(target), Rational(coeff * prod.coeff * sign * insertion_sign));
            }
        }
    }
    return out;
}

/// Natural action (Y . c)(X_1,...,X_k) = -sum_i c(X_1,...,[Y,X_i],...,X_k)
/// for a basis element Y; weight shifts by -weight(Y).
inline Cochain lie_action(const GradedLieAlgebra& g, int y, const Cochain& c) {
    // slots of weight w are fed by elements of weight w - weight(y)
    detail::require_truncation(g, detail::max_element_weight(g, c) - g.weight(y), "lie_action");
    Cochain out;
    out.degree = c.degree;
    if (c.weight) out.weight = *c.weight - g.weight(y);
    if (c.degree == 0) return out;

    // reverse adjoint index: for each m, the u with [Y, e_u] containing e_m
    std::vector<std::vector<std::pair<int, Rational>>> into(g.dim());
    for (std::size_t u = 0; u < g.dim(); ++u)
        for (const auto& [m, kappa] : g.bracket(y, static_cast<int>(u)))
            into[static_cast<std::size_t>(m)].emplace_back(static_cast<int>(u), kappa);

    for (const auto& [mono, coeff] : c.coeffs) {
        for (std::size_t slot = 0; slot < mono.size(); ++slot) {
            for (const auto& [u, kappa] : into[static_cast<std::size_t>(mono[slot])]) {
                DualMonomial target = mono;
                target[slot] = u;
                out.add_unsorted(std::move(target), Rational(-coeff * kappa));
            }
        }
    }
    return out;
}

/// Linear extension of lie_action to sparse combinations Y.
inline Cochain lie_action(const GradedLieAlgebra& g, const SparseVec& y, const Cochain& c) {
    Cochain out;
    out.degree = c.degree;
    bool first = true;
    for (const auto& [i, a] : y) {
        Cochain term = lie_action(g, i, c);
        if (first) {
            out.weight = term.weight;
            first = false;
        } else if (out.weight != term.weight) {
            out.weight.reset(); // inhomogeneous Y
        }
        for (auto& [mono, v] : term.coeffs) out.add(mono, Rational(v * a));
    }
    return out;
}

/// Interior product (Y -| c)(X_1,...,X_{k-1}) = c(Y, X_1,...,X_{k-1}).
inline Cochain interior_product(const GradedLieAlgebra& g, const SparseVec& y, const Cochain& c) {
    Cochain out;
    out.degree = c.degree > 0 ? c.degree - 1 : 0;
    if (c.degree == 0) {
        out.weight = c.weight;
        return out;
    }
    bool homogeneous = true;
    std::optional<int> yw;
    for (const auto& [i, a] : y) {
        (void)a;
        if (!yw)
            yw = g.weight(i);
        else if (*yw != g.weight(i))
            homogeneous = false;
    }
    if (c.weight && yw && homogeneous) out.weight = *c.weight - *yw;

    for (const auto& [i, a] : y) {
        for (const auto& [mono, coeff] : c.coeffs) {
            auto it = std::find(mono.begin(), mono.end(), i);
            if (it == mono.end()) continue;
            const auto pos = static_cast<std::size_t>(it - mono.begin());
            DualMonomial rest;
            rest.reserve(mono.size() - 1);
            for (std::size_t t = 0; t < mono.size(); ++t)
                if (t != pos) rest.push_back(mono[t]);
            const int sign = (pos % 2 == 0) ? 1 : -1;
            out.add(std::move(rest), Rational(sign * a * coeff));
        }
    }
    return out;
}

inline Cochain interior_product(const GradedLieAlgebra& g, int y, const Cochain& c) {
    SparseVec v;
    v[y] = 1;
    return interior_product(g, v, c);
}

/// Wedge product; degrees and weights add. With the determinant convention
/// the wedge of dual monomials is the signed sorted union.
inline Cochain wedge(const Cochain& c1, const Cochain& c2) {
    Cochain out;
    out.degree = c1.degree + c2.degree;
    if (c1.weight && c2.weight) out.weight = *c1.weight + *c2.weight;
    for (const auto& [m1, a] : c1.coeffs)
        for (const auto& [m2, b] : c2.coeffs) {
            DualMonomial joined = m1;
            joined.insert(joined.end(), m2.begin(), m2.end());
            out.add_unsorted(std::move(joined), Rational(a * b));
        }
    return out;
}

/// All k-element dual monomials of total weight r over the algebra basis.
/// Basis indices are assumed sorted by weight (true for all builders here).
inline std::vector<DualMonomial> weight_basis(const GradedLieAlgebra& g, int k, int r) {
    std::vector<DualMonomial> out;
    if (k < 0) return out;
    if (k == 0) {
        if (r == 0) out.push_back({});
        return out;
    }
    if (r < -k) return out; // every element has weight >= -1
    const int n = static_cast<int>(g.dim());
    DualMonomial current;

    // DFS with weight pruning; basis assumed sorted ascending by weight
    std::function<void(int, int, int)> dfs = [&](int start, int slots, int target) {
        if (slots == 0) {
            if (target == 0) out.push_back(current);
            return;
        }
        for (int i = start; i <= n - slots; ++i) {
            const int w = g.weight(i);
            // remaining slots-1 elements each have weight >= -1
            if (target - w < -(slots - 1)) continue;
            // elements are weight-sorted: if even the largest tail cannot
            // reach the target, stop early
            int max_tail = 0;
            for (int t = 0; t < slots - 1; ++t) max_tail += g.weight(n - 1 - t);
            if (target - w > max_tail) continue;
            current.push_back(i);
            dfs(i + 1, slots - 1, target - w);
            current.pop_back();
        }
    };
    dfs(0, k, r);
    return out;
}

/// weight_basis over W_n with the minimal sufficient truncation computed
/// automatically.
inline std::vector<DualMonomial> wn_weight_basis(int n, int k, int r) {
    const int trunc = std::max(1, r + k);
    WnAlgebra wn = build_wn(n, trunc);
    return weight_basis(wn.algebra(), k, r);
}

} // namespace gf
