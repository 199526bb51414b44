#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "cochain.hpp"
#include "complex_slice.hpp"
#include "error.hpp"
#include "lie_algebra.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace gf {

namespace detail {

/// Basis of C^k (all k-monomials) or C^k_{(r)} (weight-restricted).
inline std::vector<DualMonomial> degree_basis(const GradedLieAlgebra& g, int k,
                                              std::optional<int> weight) {
    if (weight) return weight_basis(g, k, *weight);
    std::vector<DualMonomial> out;
    DualMonomial current;
    const int n = static_cast<int>(g.dim());
    std::function<void(int, int)> dfs = [&](int start, int slots) {
        if (slots == 0) {
            out.push_back(current);
            return;
        }
        for (int i = start; i <= n - slots; ++i) {
            current.push_back(i);
            dfs(i + 1, slots - 1);
            current.pop_back();
        }
    };
    if (k >= 0) dfs(0, k);
    return out;
}

inline RationalMatrix differential_matrix(const GradedLieAlgebra& g,
                                          const std::vector<DualMonomial>& source,
                                          const std::vector<DualMonomial>& target,
                                          std::optional<int> weight) {
    std::map<DualMonomial, std::size_t> target_index;
    for (std::size_t i = 0; i < target.size(); ++i) target_index.emplace(target[i], i);

    RationalMatrix d(target.size(), source.size());
    for (std::size_t col = 0; col < source.size(); ++col) {
        Cochain c;
        c.degree = static_cast<int>(source[col].size());
        c.weight = weight;
        c.add(source[col], 1);
        Cochain dc = ce_differential(g, c);
        for (const auto& [mono, v] : dc.coeffs) {
            auto it = target_index.find(mono);
            if (it == target_index.end())
                throw TruncationInsufficientError(
                    "differential produced a monomial outside the enumerated basis");
            d.add_at(it->second, col, v);
        }
    }
    return d;
}

} // namespace detail

/// The (degree <= kmax+1) window of the Chevalley-Eilenberg complex of g with
/// trivial coefficients, restricted to one weight when given.
inline ComplexSlice assemble_complex(const GradedLieAlgebra& g, int kmax,
                                     std::optional<int> weight = std::nullopt) {
    if (kmax < 0) throw InvalidInputError("assemble_complex: kmax must be >= 0");
    if (weight && g.truncation() && *g.truncation() < *weight + kmax)
        throw TruncationInsufficientError(
            "complex through degree " + std::to_string(kmax) + " at weight " +
            std::to_string(*weight) + " needs truncation >= " + std::to_string(*weight + kmax));

    std::vector<std::vector<DualMonomial>> bases;
    for (int k = 0; k <= kmax + 1; ++k) bases.push_back(detail::degree_basis(g, k, weight));

    std::vector<std::size_t> spaces;
    for (const auto& b : bases) spaces.push_back(b.size());
    std::vector<RationalMatrix> maps;
    for (int k = 0; k <= kmax; ++k)
        maps.push_back(detail::differential_matrix(g, bases[k], bases[k + 1], weight));
    return ComplexSlice(std::move(spaces), std::move(maps));
}

/// Brute-force cohomology dimensions of g (trivial coefficients) for degrees
/// 0..kmax, restricted to one weight when given.
inline BettiTable cohomology(const GradedLieAlgebra& g, int kmax,
                             std::optional<int> weight = std::nullopt, bool parallel = false) {
    ComplexSlice slice = assemble_complex(g, kmax, weight);
    BettiTable all = slice.cohomology_dims(parallel);
    BettiTable out;
    for (int k = 0; k <= kmax; ++k) out.set(k, all.at(k));
    return out;
}

/// Weight-r cohomology of W_n for degrees 0..kmax; the sufficient truncation
/// is computed automatically, never user-supplied.
inline BettiTable wn_weight_cohomology(int n, int r, int kmax, bool parallel = false) {
    const int trunc = std::max(1, r + kmax);
    WnAlgebra wn = build_wn(n, trunc);
    return cohomology(wn.algebra(), kmax, r, parallel);
}

/// Finite-dimensional module over a structure-constant algebra: one action
/// matrix per algebra basis element. The homomorphism law
/// rho([x,y]) = rho(x) rho(y) - rho(y) rho(x) is checked on construction.
class CoefficientModule {
public:
    CoefficientModule(const GradedLieAlgebra& g, std::size_t dimension,
                      std::vector<RationalMatrix> action)
        : dimension_(dimension), action_(std::move(action)) {
        if (action_.size() != g.dim())
            throw ShapeMismatchError("coefficient module: one action matrix per basis element");
        for (const auto& m : action_)
            if (m.rows() != dimension_ || m.cols() != dimension_)
                throw ShapeMismatchError("coefficient module: action matrix shape");
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = i + 1; j < g.dim(); ++j) {
                RationalMatrix expected(dimension_, dimension_);
                for (const auto& [m, c] : g.bracket(static_cast<int>(i), static_cast<int>(j)))
                    for (const auto& [k, v] : action_[static_cast<std::size_t>(m)].entries())
                        expected.add_at(k.first, k.second, Rational(c * v));
                RationalMatrix commutator = action_[i] * action_[j];
                {
                    RationalMatrix ji = action_[j] * action_[i];
                    for (const auto& [k, v] : ji.entries()) commutator.add_at(k.first, k.second, -v);
                }
                if (!(commutator == expected))
                    throw ShapeMismatchError("coefficient module: action is not a homomorphism at (" +
                                             g.label(static_cast<int>(i)) + ", " +
                                             g.label(static_cast<int>(j)) + ")");
            }
    }

    std::size_t dimension() const { return dimension_; }
    const RationalMatrix& action(std::size_t i) const { return action_.at(i); }

private:
    std::size_t dimension_;
    std::vector<RationalMatrix> action_;
};

namespace detail {

/// Module-valued differential in the standard convention
///   dc = sum_i (-1)^{i-1} rho(X_i) c(...^i...) + sum_{i<j} (-1)^{i+j} c([X_i,X_j],...),
/// assembled on the basis (monomial, module coordinate).
inline RationalMatrix module_differential_matrix(const GradedLieAlgebra& g,
                                                 const CoefficientModule& module,
                                                 const std::vector<DualMonomial>& source,
                                                 const std::vector<DualMonomial>& target) {
    const std::size_t adim = module.dimension();
    std::map<DualMonomial, std::size_t> target_index;
    for (std::size_t i = 0; i < target.size(); ++i) target_index.emplace(target[i], i);

    RationalMatrix d(target.size() * adim, source.size() * adim);
    for (std::size_t col_m = 0; col_m < source.size(); ++col_m) {
        const DualMonomial& mono = source[col_m];

        // bracket part: the standard sign is the negative of the
        // trivial-coefficient convention used by ce_differential
        Cochain c;
        c.degree = static_cast<int>(mono.size());
        c.add(mono, 1);
        Cochain dc = ce_differential(g, c);
        for (const auto& [tmono, v] : dc.coeffs) {
            auto it = target_index.find(tmono);
            if (it == target_index.end())
                throw TruncationInsufficientError("module differential left the basis");
            for (std::size_t t = 0; t < adim; ++t)
                d.add_at(it->second * adim + t, col_m * adim + t, -v);
        }

        // action part: insert u, sign (-1)^{position of u in target, 0-based}
        for (std::size_t u = 0; u < g.dim(); ++u) {
            if (std::find(mono.begin(), mono.end(), static_cast<int>(u)) != mono.end()) continue;
            DualMonomial tmono = mono;
            tmono.push_back(static_cast<int>(u));
            std::sort(tmono.begin(), tmono.end());
            const auto pos = static_cast<std::size_t>(
                std::lower_bound(tmono.begin(), tmono.end(), static_cast<int>(u)) - tmono.begin());
            const int sign = (pos % 2 == 0) ? 1 : -1;
            auto it = target_index.find(tmono);
            if (it == target_index.end())
                throw TruncationInsufficientError("module differential left the basis");
            for (const auto& [k, v] : module.action(u).entries())
                d.add_at(it->second * adim + k.first, col_m * adim + k.second,
                         Rational(sign * v));
        }
    }
    return d;
}

} // namespace detail

/// Cohomology of g with values in a finite-dimensional module, degrees 0..kmax.
inline BettiTable cohomology(const GradedLieAlgebra& g, const CoefficientModule& module, int kmax,
                             bool parallel = false) {
    if (kmax < 0) throw InvalidInputError("cohomology: kmax must be >= 0");
    std::vector<std::vector<DualMonomial>> bases;
    for (int k = 0; k <= kmax + 1; ++k) bases.push_back(detail::degree_basis(g, k, std::nullopt));

    std::vector<std::size_t> spaces;
    for (const auto& b : bases) spaces.push_back(b.size() * module.dimension());
    std::vector<RationalMatrix> maps;
    for (int k = 0; k <= kmax; ++k)
        maps.push_back(detail::module_differential_matrix(g, module, bases[k], bases[k + 1]));
    ComplexSlice slice(std::move(spaces), std::move(maps));
    BettiTable all = slice.cohomology_dims(parallel);
    BettiTable out;
    for (int k = 0; k <= kmax; ++k) out.set(k, all.at(k));
    return out;
}

/// The gl_n-module of weight-0 exterior p-monomials over the nonzero-weight
/// part of W_n, with action matrices indexed by the gl_n basis E_ij.
struct HochschildSerreModule {
    std::vector<DualMonomial> basis; // monomials over W_n indices, weights != 0
    GradedLieAlgebra gl;
    CoefficientModule module;
};

inline HochschildSerreModule hs_weight0_module(int n, int p) {
    const int trunc = std::max(1, p);
    WnAlgebra wn = build_wn(n, trunc);
    const GradedLieAlgebra& w = wn.algebra();

    // weight-0 p-monomials avoiding the weight-0 generators
    std::vector<DualMonomial> all = weight_basis(w, p, 0);
    std::vector<DualMonomial> basis;
    for (auto& mono : all) {
        bool pure = true;
        for (int i : mono)
            if (w.weight(i) == 0) {
                pure = false;
                break;
            }
        if (pure) basis.push_back(std::move(mono));
    }
    std::map<DualMonomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    GradedLieAlgebra gl = build_gln(n);
    std::vector<RationalMatrix> action;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int y = wn.euler_candidate(i, j); // x_i d_j inside W_n
            RationalMatrix rho(basis.size(), basis.size());
            for (std::size_t col = 0; col < basis.size(); ++col) {
                Cochain c;
                c.degree = p;
                c.add(basis[col], 1);
                Cochain yc = lie_action(w, y, c);
                for (const auto& [mono, v] : yc.coeffs) {
                    auto it = index.find(mono);
                    if (it == index.end())
                        throw TruncationInsufficientError("HS module action left the basis");
                    rho.add_at(it->second, col, v);
                }
            }
            action.push_back(std::move(rho));
        }
    CoefficientModule module(gl, basis.size(), std::move(action));
    return {std::move(basis), std::move(gl), std::move(module)};
}

/// dim H^q(gl_n ; weight-0 part of Lambda^p (W_n / gl_n)^*), the first-page
/// entry of the Hochschild-Serre spectral sequence at weight 0.
inline std::size_t hs_e1_weight0(int n, int p, int q) {
    if (n < 1 || p < 0 || q < 0) throw InvalidInputError("hs_e1_weight0: bad parameters");
    HochschildSerreModule hs = hs_weight0_module(n, p);
    if (hs.module.dimension() == 0) return 0;
    BettiTable table = cohomology(hs.gl, hs.module, q);
    return static_cast<std::size_t>(table.at(q));
}

} // namespace gf
