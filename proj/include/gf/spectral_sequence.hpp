#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace gf {

/// Monomial phi_I Psi^m in the multiplicative model of the W_n spectral
/// sequence: I a subset of the odd generators phi_1, phi_3, ..., phi_{2n-1}
/// (bit t stands for phi_{2t+1}), m an exponent vector on Psi_2, ..., Psi_{2n}
/// (entry t is the exponent of Psi_{2(t+1)}). Monomials of Psi-weight > 2n
/// lie in the truncation ideal and are dropped.
struct SSMonomial {
    unsigned phi_mask = 0;
    std::vector<unsigned> psi_exp;

    int p() const {
        int w = 0;
        for (std::size_t t = 0; t < psi_exp.size(); ++t)
            w += static_cast<int>(psi_exp[t]) * 2 * (static_cast<int>(t) + 1);
        return w;
    }
    int q() const {
        int d = 0;
        for (std::size_t t = 0; t < 8 * sizeof(unsigned); ++t)
            if (phi_mask & (1u << t)) d += 2 * static_cast<int>(t) + 1;
        return d;
    }
    int total_degree() const { return p() + q(); }

    bool operator<(const SSMonomial& other) const {
        return std::tie(phi_mask, psi_exp) < std::tie(other.phi_mask, other.psi_exp);
    }
    bool operator==(const SSMonomial& other) const {
        return phi_mask == other.phi_mask && psi_exp == other.psi_exp;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t t = 0; t < 8 * sizeof(unsigned); ++t)
            if (phi_mask & (1u << t)) s += "phi" + std::to_string(2 * t + 1) + " ";
        for (std::size_t t = 0; t < psi_exp.size(); ++t)
            for (unsigned e = 0; e < psi_exp[t]; ++e) s += "Psi" + std::to_string(2 * (t + 1)) + " ";
        if (s.empty()) return "1";
        s.pop_back();
        return s;
    }
};

/// One page of the spectral sequence: for each bidegree, explicit cycle
/// representatives as rational combinations of SSMonomials (global indices).
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, std::vector<SparseVec>> blocks;

    std::size_t dim(int p, int q) const {
        auto it = blocks.find({p, q});
        return it == blocks.end() ? 0 : it->second.size();
    }
    std::map<std::pair<int, int>, std::size_t> dims() const {
        std::map<std::pair<int, int>, std::size_t> out;
        for (const auto& [key, reps] : blocks)
            if (!reps.empty()) out.emplace(key, reps.size());
        return out;
    }
};

struct SpectralResult {
    int n = 0;
    std::vector<SSMonomial> monomials;
    std::vector<SpectralPage> pages; // pages r = 2 .. 2n+2
    SpectralPage e_infinity;         // the stable page
    BettiTable betti;
};

namespace detail {

/// Enumerates all monomials with Psi-weight <= 2n over the generators of the
/// order-n model.
inline std::vector<SSMonomial> ss_monomials(int n) {
    std::vector<std::vector<unsigned>> psis;
    std::vector<unsigned> current(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> dfs = [&](int t, int budget) {
        if (t == n) {
            psis.push_back(current);
            return;
        }
        const int step = 2 * (t + 1);
        for (int e = 0; e * step <= budget; ++e) {
            current[static_cast<std::size_t>(t)] = static_cast<unsigned>(e);
            dfs(t + 1, budget - e * step);
        }
        current[static_cast<std::size_t>(t)] = 0;
    };
    dfs(0, 2 * n);

    std::vector<SSMonomial> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        for (const auto& pe : psis) out.push_back({mask, pe});
    std::sort(out.begin(), out.end());
    return out;
}

/// The full derivation D with D phi_i = Psi_{i+1}, D Psi = 0, Koszul signs by
/// total degree; columns/rows indexed by the global monomial list.
inline std::vector<SparseVec> ss_differential(int n, const std::vector<SSMonomial>& monomials) {
    std::map<SSMonomial, int> index;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        index.emplace(monomials[i], static_cast<int>(i));

    std::vector<SparseVec> d(monomials.size());
    for (std::size_t col = 0; col < monomials.size(); ++col) {
        const SSMonomial& mono = monomials[col];
        int sign = 1;
        for (int t = 0; t < n; ++t) {
            if (!(mono.phi_mask & (1u << t))) continue;
            SSMonomial target = mono;
            target.phi_mask &= ~(1u << t);
            target.psi_exp[static_cast<std::size_t>(t)] += 1;
            auto it = index.find(target);
            if (it != index.end()) // otherwise the term lies in the truncation ideal
                add_to(d[col], it->second, sign);
            sign = -sign; // each passed phi factor is odd
        }
    }
    return d;
}

struct Grading {
    std::vector<int> p, q;
};

} // namespace detail

/// Counts of E_2 basis monomials by bidegree.
inline std::map<std::pair<int, int>, std::size_t> e2_basis(int n) {
    if (n < 1) throw InvalidInputError("e2_basis: n >= 1");
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& m : detail::ss_monomials(n)) ++out[{m.p(), m.q()}];
    return out;
}

/// Runs the spectral sequence by exact linear algebra on the filtered model:
/// Z_r^{p,q} = {x in F^p, deg p+q : D x in F^{p+r}}, page blocks the standard
/// subquotients, representatives maintained in monomial coordinates.
inline SpectralResult run_spectral_sequence(int n) {
    if (n < 1) throw InvalidInputError("run_spectral_sequence: n >= 1");
    SpectralResult result;
    result.n = n;
    result.monomials = detail::ss_monomials(n);
    const auto& monomials = result.monomials;
    const std::vector<SparseVec> d = detail::ss_differential(n, monomials);
    const std::size_t dim = monomials.size();

    std::vector<int> mp(dim), mq(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        mp[i] = monomials[i].p();
        mq[i] = monomials[i].q();
    }
    const int pmax = 2 * n;
    const int qmax = n * n;

    // basis indices of F^p intersected with total degree k
    auto filtered_degree = [&](int p, int k) {
        std::vector<int> out;
        for (std::size_t i = 0; i < dim; ++i)
            if (mp[i] >= p && mp[i] + mq[i] == k) out.push_back(static_cast<int>(i));
        return out;
    };

    // basis of Z_r^{p,q} as sparse vectors in global coordinates
    auto z_space = [&](int r, int p, int q) -> std::vector<SparseVec> {
        const int k = p + q;
        std::vector<int> cols = filtered_degree(p, k);
        if (cols.empty()) return {};
        // rows: monomials of degree k+1 with p' < p + r
        std::vector<int> rows;
        for (std::size_t i = 0; i < dim; ++i)
            if (mp[i] + mq[i] == k + 1 && mp[i] < p + r) rows.push_back(static_cast<int>(i));
        std::map<int, std::size_t> row_index;
        for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);

        RationalMatrix m(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [target, v] : d[static_cast<std::size_t>(cols[c])]) {
                auto it = row_index.find(target);
                if (it != row_index.end()) m.add_at(it->second, c, v);
            }
        std::vector<SparseVec> basis;
        for (const auto& ker : m.kernel_basis()) {
            SparseVec global;
            for (const auto& [local, v] : ker) add_to(global, cols[static_cast<std::size_t>(local)], v);
            basis.push_back(std::move(global));
        }
        return basis;
    };

    auto apply_d = [&](const SparseVec& x) {
        SparseVec out;
        for (const auto& [i, v] : x) add_scaled(out, d[static_cast<std::size_t>(i)], v);
        return out;
    };

    auto page_blocks = [&](int r) {
        SpectralPage page;
        page.r = r;
        for (int p = 0; p <= pmax; ++p)
            for (int q = 0; q <= qmax; ++q) {
                std::vector<SparseVec> z = z_space(r, p, q);
                if (z.empty()) continue;
                std::vector<SparseVec> boundary = z_space(r - 1, p + 1, q - 1);
                for (const auto& x : z_space(r - 1, p - r + 1, q + r - 2)) {
                    SparseVec dx = apply_d(x);
                    if (!dx.empty()) boundary.push_back(std::move(dx));
                }
                // representatives: extend a basis of the boundary span to Z_r
                std::vector<SparseVec> span = boundary;
                std::size_t rank = span_dim(span, dim);
                std::vector<SparseVec> reps;
                for (const auto& zvec : z) {
                    span.push_back(zvec);
                    std::size_t next = span_dim(span, dim);
                    if (next > rank) {
                        rank = next;
                        reps.push_back(zvec);
                    } else {
                        span.pop_back();
                    }
                }
                if (!reps.empty()) page.blocks[{p, q}] = std::move(reps);
            }
        return page;
    };

    for (int r = 2; r <= 2 * n + 2; ++r) result.pages.push_back(page_blocks(r));
    result.e_infinity = result.pages[result.pages.size() - 2]; // page 2n+1
    result.e_infinity.r = 2 * n + 1;

    for (const auto& [key, reps] : result.e_infinity.blocks) {
        const int total = key.first + key.second;
        result.betti.set(total, result.betti.at(total) + static_cast<std::int64_t>(reps.size()));
    }
    if (result.betti.dims.count(0) == 0) result.betti.set(0, 0);
    return result;
}

/// Betti table of W_n via the spectral sequence.
inline BettiTable wn_betti(int n) { return run_spectral_sequence(n).betti; }

/// Betti numbers as coefficients of a polynomial in one formal variable.
inline std::vector<std::int64_t> poincare_polynomial(int n) {
    if (n < 1) throw InvalidInputError("poincare_polynomial: n >= 1");
    BettiTable betti = wn_betti(n);
    int top = 0;
    for (const auto& [k, v] : betti.dims)
        if (v != 0) top = std::max(top, k);
    std::vector<std::int64_t> out(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& [k, v] : betti.dims)
        if (k >= 0 && k <= top) out[static_cast<std::size_t>(k)] = v;
    return out;
}

/// Product of two representative vectors in the monomial algebra (wedge of
/// phi parts with Koszul signs, Psi exponents add, truncation ideal kills
/// Psi-weight > 2n). Used to certify that positive-degree survivors multiply
/// to zero.
inline SparseVec ss_product(int n, const std::vector<SSMonomial>& monomials, const SparseVec& a,
                            const SparseVec& b) {
    std::map<SSMonomial, int> index;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        index.emplace(monomials[i], static_cast<int>(i));
    SparseVec out;
    for (const auto& [ia, va] : a)
        for (const auto& [ib, vb] : b) {
            const SSMonomial& x = monomials[static_cast<std::size_t>(ia)];
            const SSMonomial& y = monomials[static_cast<std::size_t>(ib)];
            if (x.phi_mask & y.phi_mask) continue; // phi_i ^ phi_i = 0
            // Koszul sign from interleaving the odd phi factors
            int sign = 1;
            for (int t = 0; t < n; ++t) {
                if (!(y.phi_mask & (1u << t))) continue;
                unsigned higher = x.phi_mask >> (t + 1);
                int crossings = 0;
                while (higher) {
                    crossings += static_cast<int>(higher & 1u);
                    higher >>= 1;
                }
                if (crossings % 2 == 1) sign = -sign;
            }
            SSMonomial prod;
            prod.phi_mask = x.phi_mask | y.phi_mask;
            prod.psi_exp = x.psi_exp;
            for (std::size_t t = 0; t < prod.psi_exp.size(); ++t) prod.psi_exp[t] += y.psi_exp[t];
            auto it = index.find(prod);
            if (it == index.end()) continue; // truncation ideal
            add_to(out, it->second, Rational(sign * va * vb));
        }
    return out;
}

} // namespace gf
