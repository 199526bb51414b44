#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace gf {

/// A bijection of {1..r}, stored 0-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
                throw InvalidInputError("permutation images are not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(int r) {
        std::vector<int> img(r);
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    /// Single cycle (0 1 2 ... r-1) in S_r.
    static Permutation full_cycle(int r) {
        std::vector<int> img(r);
        for (int i = 0; i < r; ++i) img[i] = (i + 1) % r;
        return Permutation(std::move(img));
    }

    static Permutation transposition(int r, int a, int b) {
        auto p = identity(r);
        std::swap(p.images_[a], p.images_[b]);
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_.at(i); }
    const std::vector<int>& images() const { return images_; }

    Permutation compose(const Permutation& other) const { // (*this) after other
        if (size() != other.size()) throw InvalidInputError("composing permutations of different size");
        std::vector<int> img(images_.size());
        for (int i = 0; i < size(); ++i) img[i] = images_[other(i)];
        return Permutation(std::move(img));
    }

    Permutation inverse() const {
        std::vector<int> img(images_.size());
        for (int i = 0; i < size(); ++i) img[images_[i]] = i;
        return Permutation(std::move(img));
    }

    int sign() const {
        std::vector<bool> seen(images_.size(), false);
        int sign = 1;
        for (int i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = images_[j]) {
                seen[j] = true;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        return sign;
    }

    bool operator==(const Permutation& other) const { return images_ == other.images_; }
    bool operator<(const Permutation& other) const { return images_ < other.images_; }

private:
    std::vector<int> images_;
};

/// Cycle type as a partition of r, parts sorted descending.
inline std::vector<int> cycle_type(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> parts;
    for (int i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p(j)) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

inline std::vector<Permutation> all_permutations(int r) {
    std::vector<int> img(r);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

/// Partitions of r, each sorted descending.
inline std::vector<std::vector<int>> partitions_of(int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int, int)> dfs = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            dfs(remaining - part, part);
            current.pop_back();
        }
    };
    dfs(r, r);
    return out;
}

// ---------------------------------------------------------------------------
// gl_n tensor modules built programmatically from factor lists
// ---------------------------------------------------------------------------

/// One tensor factor of a gl_n module: the defining rep V, its dual, or an
/// exterior power of the weight-graded pieces g_{-1}, g_{+1} of W_n (optionally
/// dualized).
struct ModuleFactor {
    enum class Base { V, VDual, GMinus1, GPlus1 };
    Base base = Base::V;
    int exterior_power = 1; // applies to the g_j factors
    bool dual = false;      // dualize the whole factor

    static ModuleFactor v() { return {Base::V, 1, false}; }
    static ModuleFactor v_dual() { return {Base::VDual, 1, false}; }
    static ModuleFactor lambda_g(int j, int power, bool dualize = false) {
        if (j == -1) return {Base::GMinus1, power, dualize};
        if (j == 1) return {Base::GPlus1, power, dualize};
        throw InvalidInputError("lambda_g supports j in {-1, +1}");
    }
};

namespace detail {

struct FactorData {
    std::size_t dim = 0;
    std::vector<RationalMatrix> action; // indexed by E_ab, a*n+b
};

/// Quadratic monomials x_j x_k (j <= k) indexing the polynomial part of g_1.
struct QuadMonomial {
    int j, k; // j <= k
};

inline FactorData base_factor(int n, ModuleFactor::Base base) {
    FactorData f;
    const int nn = n * n;
    if (base == ModuleFactor::Base::V || base == ModuleFactor::Base::VDual) {
        f.dim = static_cast<std::size_t>(n);
        f.action.assign(nn, RationalMatrix(f.dim, f.dim));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                RationalMatrix& m = f.action[a * n + b];
                if (base == ModuleFactor::Base::V) {
                    m.set(a, b, 1); // E_ab e_c = delta_bc e_a
                } else {
                    m.set(b, a, -1); // E_ab e*_c = -delta_ac e*_b
                }
            }
        return f;
    }
    if (base == ModuleFactor::Base::GMinus1) {
        // adjoint action on span{d_c}: [E_ab, d_c] = -delta_ac d_b
        f.dim = static_cast<std::size_t>(n);
        f.action.assign(nn, RationalMatrix(f.dim, f.dim));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) f.action[a * n + b].set(b, a, -1);
        return f;
    }
    // g_1: basis x_j x_k d_l (j <= k), adjoint action
    std::vector<std::pair<QuadMonomial, int>> basis;
    std::map<std::pair<std::pair<int, int>, int>, std::size_t> index;
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                index.emplace(std::make_pair(std::make_pair(j, k), l), basis.size());
                basis.push_back({{j, k}, l});
            }
    f.dim = basis.size();
    f.action.assign(nn, RationalMatrix(f.dim, f.dim));
    auto add_target = [&](RationalMatrix& m, int j, int k, int l, std::size_t col,
                          const Rational& c) {
        if (j > k) std::swap(j, k);
        m.add_at(index.at({{j, k}, l}), col, c);
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalMatrix& m = f.action[a * n + b];
            for (std::size_t col = 0; col < basis.size(); ++col) {
                const auto& [q, l] = basis[col];
                // [x_a d_b, q d_l] = x_a (dq/dx_b) d_l - delta_la q d_b
                if (q.j == b) add_target(m, a, q.k, l, col, 1);
                if (q.k == b) add_target(m, q.j, a, l, col, 1);
                if (l == a) add_target(m, q.j, q.k, b, col, -1);
            }
        }
    return f;
}

inline FactorData exterior_power(const FactorData& f, int p) {
    if (p == 1) return f;
    // basis: sorted index subsets
    std::vector<std::vector<int>> subsets;
    std::vector<int> current;
    std::function<void(int, int)> dfs = [&](int start, int slots) {
        if (slots == 0) {
            subsets.push_back(current);
            return;
        }
        for (int i = start; i <= static_cast<int>(f.dim) - slots; ++i) {
            current.push_back(i);
            dfs(i + 1, slots - 1);
            current.pop_back();
        }
    };
    if (p >= 0 && p <= static_cast<int>(f.dim)) dfs(0, p);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < subsets.size(); ++i) index.emplace(subsets[i], i);

    FactorData out;
    out.dim = subsets.size();
    out.action.assign(f.action.size(), RationalMatrix(out.dim, out.dim));
    for (std::size_t e = 0; e < f.action.size(); ++e) {
        // rows of the base action
        std::vector<std::vector<std::pair<int, Rational>>> cols(f.dim);
        for (const auto& [k, v] : f.action[e].entries())
            cols[k.second].emplace_back(static_cast<int>(k.first), v);
        for (std::size_t col = 0; col < subsets.size(); ++col) {
            const auto& s = subsets[col];
            for (std::size_t slot = 0; slot < s.size(); ++slot)
                for (const auto& [target, v] : cols[static_cast<std::size_t>(s[slot])]) {
                    std::vector<int> t = s;
                    t[slot] = target;
                    int sign = sort_with_sign(t);
                    if (sign == 0) continue;
                    out.action[e].add_at(index.at(t), col, Rational(sign * v));
                }
        }
    }
    return out;
}

inline FactorData dualize(const FactorData& f) {
    FactorData out;
    out.dim = f.dim;
    out.action.reserve(f.action.size());
    for (const auto& m : f.action) {
        RationalMatrix d(f.dim, f.dim);
        for (const auto& [k, v] : m.entries()) d.set(k.second, k.first, -v);
        out.action.push_back(std::move(d));
    }
    return out;
}

inline FactorData tensor(const FactorData& a, const FactorData& b) {
    FactorData out;
    out.dim = a.dim * b.dim;
    out.action.assign(a.action.size(), RationalMatrix(out.dim, out.dim));
    for (std::size_t e = 0; e < a.action.size(); ++e) {
        for (const auto& [k, v] : a.action[e].entries())
            for (std::size_t t = 0; t < b.dim; ++t)
                out.action[e].add_at(k.first * b.dim + t, k.second * b.dim + t, v);
        for (const auto& [k, v] : b.action[e].entries())
            for (std::size_t s = 0; s < a.dim; ++s)
                out.action[e].add_at(s * b.dim + k.first, s * b.dim + k.second, v);
    }
    return out;
}

} // namespace detail

/// Explicit gl_n action matrices for a tensor module given as a factor list.
inline detail::FactorData build_gl_module(int n, const std::vector<ModuleFactor>& factors) {
    if (n < 1) throw InvalidInputError("build_gl_module: n >= 1");
    detail::FactorData acc;
    acc.dim = 1;
    acc.action.assign(static_cast<std::size_t>(n) * n, RationalMatrix(1, 1));
    for (const auto& factor : factors) {
        detail::FactorData f = detail::base_factor(n, factor.base);
        if (factor.base == ModuleFactor::Base::GMinus1 || factor.base == ModuleFactor::Base::GPlus1)
            f = detail::exterior_power(f, factor.exterior_power);
        if (factor.dual) f = detail::dualize(f);
        acc = detail::tensor(acc, f);
    }
    return acc;
}

/// Dimension of the joint kernel of all rho(E_ab): brute-force gl_n invariants.
inline std::size_t invariant_dim(int n, const std::vector<ModuleFactor>& factors) {
    detail::FactorData module = build_gl_module(n, factors);
    if (module.dim == 0) return 0;
    RationalMatrix stacked(module.action.size() * module.dim, module.dim);
    for (std::size_t e = 0; e < module.action.size(); ++e)
        for (const auto& [k, v] : module.action[e].entries())
            stacked.set(e * module.dim + k.first, k.second, v);
    return module.dim - stacked.rank();
}

// ---------------------------------------------------------------------------
// The explicit invariant tensors Psi_sigma
// ---------------------------------------------------------------------------

/// Element of (Lambda^r g_{-1})^* (x) (Lambda^r g_1)^*, stored by coefficients
/// on pairs of sorted basis subsets. Basis of g_{-1}: d_1..d_n. Basis of g_1:
/// x_j x_k d_l with j <= k, enumerated as in build_gl_module.
struct InvariantTensor {
    int n = 0;
    int r = 0;
    std::map<std::pair<std::vector<int>, std::vector<int>>, Rational> coefficients;

    bool is_zero() const { return coefficients.empty(); }

    void add(const std::vector<int>& a, const std::vector<int>& b, const Rational& c) {
        if (gf::is_zero(c)) return;
        auto key = std::make_pair(a, b);
        auto it = coefficients.find(key);
        if (it == coefficients.end()) {
            coefficients.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (gf::is_zero(it->second)) coefficients.erase(it);
        }
    }
};

namespace detail {

inline std::vector<QuadMonomial> g1_polynomials(int n) {
    // polynomial part and direction of the g_1 basis, in build_gl_module order
    std::vector<QuadMonomial> quads;
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) quads.push_back({j, k});
    return quads;
}

struct G1Basis {
    std::vector<std::pair<QuadMonomial, int>> elements; // (x_j x_k, d_l)
};

inline G1Basis g1_basis(int n) {
    G1Basis b;
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            for (int l = 0; l < n; ++l) b.elements.push_back({{j, k}, l});
    return b;
}

/// Hessian pairing d^2 q / dx_u dx_v for a quadratic monomial q = x_j x_k.
inline int hessian(const QuadMonomial& q, int u, int v) {
    if (q.j == q.k) return (u == q.j && v == q.j) ? 2 : 0;
    if ((u == q.j && v == q.k) || (u == q.k && v == q.j)) return 1;
    return 0;
}

} // namespace detail

/// Psi_sigma for sigma in S_r: plain-sum (skew-)symmetrized contraction
/// tensor; identically zero exactly when r > n. Invariance under the gl_n
/// action is asserted on construction.
inline InvariantTensor psi_tensor(int n, const Permutation& sigma) {
    const int r = sigma.size();
    if (r < 1) throw InvalidInputError("psi_tensor: r >= 1");
    InvariantTensor out;
    out.n = n;
    out.r = r;
    if (r > n) return out; // Lambda^r of an n-dim space vanishes

    detail::G1Basis g1 = detail::g1_basis(n);
    std::vector<std::vector<int>> asets; // r-subsets of {0..n-1}
    {
        std::vector<int> cur;
        std::function<void(int, int)> dfs = [&](int start, int slots) {
            if (slots == 0) {
                asets.push_back(cur);
                return;
            }
            for (int i = start; i <= n - slots; ++i) {
                cur.push_back(i);
                dfs(i + 1, slots - 1);
                cur.pop_back();
            }
        };
        dfs(0, r);
    }
    std::vector<std::vector<int>> bsets;
    {
        std::vector<int> cur;
        const int g1dim = static_cast<int>(g1.elements.size());
        std::function<void(int, int)> dfs = [&](int start, int slots) {
            if (slots == 0) {
                bsets.push_back(cur);
                return;
            }
            for (int i = start; i <= g1dim - slots; ++i) {
                cur.push_back(i);
                dfs(i + 1, slots - 1);
                cur.pop_back();
            }
        };
        dfs(0, r);
    }

    const std::vector<Permutation> perms = all_permutations(r);
    for (const auto& aset : asets)
        for (const auto& bset : bsets) {
            Rational total = 0;
            for (const auto& pi : perms)
                for (const auto& rho : perms) {
                    long value = 1;
                    for (int s = 0; s < r && value != 0; ++s) {
                        const auto& w = g1.elements[static_cast<std::size_t>(bset[rho(s)])];
                        const auto& w_sigma =
                            g1.elements[static_cast<std::size_t>(bset[rho(sigma(s))])];
                        value *= detail::hessian(w.first, aset[pi(s)], w_sigma.second);
                    }
                    if (value != 0) total += Rational(pi.sign() * rho.sign() * value);
                }
            out.add(aset, bset, total);
        }

    // invariance: the coefficient vector lies in the kernel of every E_ab
    // acting on Lambda^r g_{-1}^* (x) Lambda^r g_1^*
    if (!out.is_zero()) {
        std::vector<ModuleFactor> factors = {ModuleFactor::lambda_g(-1, r, true),
                                             ModuleFactor::lambda_g(1, r, true)};
        detail::FactorData module = build_gl_module(n, factors);
        // index bookkeeping mirrors the subset enumeration order above
        std::map<std::vector<int>, std::size_t> aindex, bindex;
        for (std::size_t i = 0; i < asets.size(); ++i) aindex.emplace(asets[i], i);
        for (std::size_t i = 0; i < bsets.size(); ++i) bindex.emplace(bsets[i], i);
        std::vector<Rational> vec(module.dim, Rational(0));
        for (const auto& [key, c] : out.coefficients)
            vec[aindex.at(key.first) * bsets.size() + bindex.at(key.second)] = c;
        for (const auto& m : module.action) {
            std::vector<Rational> image(module.dim, Rational(0));
            for (const auto& [k, v] : m.entries()) image[k.first] += v * vec[k.second];
            for (const auto& entry : image)
                if (!gf::is_zero(entry))
                    throw Error("psi_tensor: constructed tensor is not gl-invariant");
        }
    }
    return out;
}

/// Wedge in Lambda^. g_{-1}^* (x) Lambda^. g_1^* with the graded cross sign.
inline InvariantTensor wedge(const InvariantTensor& t1, const InvariantTensor& t2) {
    InvariantTensor out;
    out.n = t1.n;
    out.r = t1.r + t2.r;
    const int cross = ((t1.r * t2.r) % 2 == 0) ? 1 : -1; // |B1| * |A2| Koszul sign
    for (const auto& [k1, c1] : t1.coefficients)
        for (const auto& [k2, c2] : t2.coefficients) {
            std::vector<int> a = k1.first;
            a.insert(a.end(), k2.first.begin(), k2.first.end());
            std::vector<int> b = k1.second;
            b.insert(b.end(), k2.second.begin(), k2.second.end());
            const int sa = sort_with_sign(a);
            if (sa == 0) continue;
            const int sb = sort_with_sign(b);
            if (sb == 0) continue;
            out.add(a, b, Rational(cross * sa * sb * c1 * c2));
        }
    return out;
}

/// Block composition: sigma acting on {1..r}, tau shifted to {r+1..r+l}.
inline Permutation block_compose(const Permutation& sigma, const Permutation& tau) {
    std::vector<int> img(static_cast<std::size_t>(sigma.size() + tau.size()));
    for (int i = 0; i < sigma.size(); ++i) img[static_cast<std::size_t>(i)] = sigma(i);
    for (int i = 0; i < tau.size(); ++i)
        img[static_cast<std::size_t>(sigma.size() + i)] = sigma.size() + tau(i);
    return Permutation(std::move(img));
}

/// Checks Psi_sigma ^ Psi_tau = lambda Psi_{sigma tau} for a scalar lambda
/// depending only on (r, l); returns the scalar alongside the verdict.
struct ProductCheck {
    bool holds = false;
    bool both_zero = false;
    Rational scale; // lambda with lhs = lambda * rhs
};

inline ProductCheck check_product_scaled(int n, const Permutation& sigma, const Permutation& tau) {
    ProductCheck out;
    InvariantTensor lhs = wedge(psi_tensor(n, sigma), psi_tensor(n, tau));
    InvariantTensor rhs = psi_tensor(n, block_compose(sigma, tau));
    if (lhs.is_zero() && rhs.is_zero()) {
        out.holds = true;
        out.both_zero = true;
        return out;
    }
    if (lhs.is_zero() || rhs.is_zero()) return out;
    // lambda from the first common coefficient, then verify proportionality
    const auto& [key, value] = *rhs.coefficients.begin();
    auto it = lhs.coefficients.find(key);
    if (it == lhs.coefficients.end()) return out;
    out.scale = it->second / value;
    InvariantTensor scaled_rhs;
    for (const auto& [k, c] : rhs.coefficients) scaled_rhs.add(k.first, k.second, Rational(c * out.scale));
    out.holds = (lhs.coefficients == scaled_rhs.coefficients);
    return out;
}

/// Product law up to the single global scalar for (r, l).
inline bool check_product(int n, const Permutation& sigma, const Permutation& tau) {
    return check_product_scaled(n, sigma, tau).holds;
}

} // namespace gf
