#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cochain.hpp"
#include "cohomology.hpp"
#include "error.hpp"
#include "lie_algebra.hpp"
#include "matrix.hpp"

namespace gf {

/// Per-degree report on the exact sequence
///   0 -> C^k_{(0)} (x) L^n g_{-1} -> ... -> C^k_{(n)} -> C^k_{(n)} / dC^k_{(n-1)} -> 0
/// with connecting maps c (x) w |-> sum_j (-1)^j (d_{i_j} . c) (x) (w minus i_j).
struct KoszulSlotReport {
    int degree = 0;    // cochain degree k
    int position = 0;  // 0..n for the tensor slots, n+1 for the quotient
    std::size_t dim = 0;
    std::size_t image_rank = 0;  // rank of the incoming map
    std::size_t kernel_dim = 0;  // kernel of the outgoing map (or of the projection)
    bool exact = false;
};

struct KoszulReport {
    int n = 0;
    int kmax = 0;
    bool exact = true;          // every interior slot
    bool subcomplex_ok = true;  // d(dC_{(r)}) inside dC_{(r)} via d-equivariance of the action
    bool quotient_surjective = true;
    std::vector<KoszulSlotReport> slots;

    void require_exact() const {
        if (exact && subcomplex_ok) return;
        for (const auto& s : slots)
            if (!s.exact)
                throw ExactnessError("Koszul sequence fails at degree " +
                                     std::to_string(s.degree) + ", slot " +
                                     std::to_string(s.position));
        throw ExactnessError("dC subcomplex property failed");
    }
};

namespace detail {

/// Subsets of {0..n-1} of a given size, sorted.
inline std::vector<std::vector<int>> index_subsets(int n, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
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
    if (size >= 0 && size <= n) dfs(0, size);
    return out;
}

} // namespace detail

inline KoszulReport koszul_check(int n, int kmax) {
    if (n < 1 || n > 2) throw InvalidInputError("koszul_check: desk scale covers n in {1, 2}");
    if (kmax < 1) throw InvalidInputError("koszul_check: kmax must be >= 1");

    const int trunc = n + kmax + 1;
    WnAlgebra wn = build_wn(n, trunc);
    const GradedLieAlgebra& g = wn.algebra();
    std::vector<int> partials;
    for (int i = 0; i < n; ++i) partials.push_back(wn.partial(i));

    KoszulReport report;
    report.n = n;
    report.kmax = kmax;

    for (int k = 1; k <= kmax; ++k) {
        // weight-slice bases and the tensor spaces V_r = C^k_{(r)} (x) L^{n-r} g_{-1}
        std::vector<std::vector<DualMonomial>> cbasis(n + 1);
        for (int r = 0; r <= n; ++r) cbasis[r] = weight_basis(g, k, r);
        std::vector<std::vector<std::vector<int>>> ext(n + 1);
        for (int r = 0; r <= n; ++r) ext[r] = detail::index_subsets(n, n - r);

        std::vector<std::size_t> vdim(n + 1);
        for (int r = 0; r <= n; ++r) vdim[r] = cbasis[r].size() * ext[r].size();

        // connecting maps M_r : V_r -> V_{r+1}
        std::vector<RationalMatrix> maps;
        for (int r = 0; r < n; ++r) {
            std::map<DualMonomial, std::size_t> target_cindex;
            for (std::size_t i = 0; i < cbasis[r + 1].size(); ++i)
                target_cindex.emplace(cbasis[r + 1][i], i);
            std::map<std::vector<int>, std::size_t> target_eindex;
            for (std::size_t i = 0; i < ext[r + 1].size(); ++i)
                target_eindex.emplace(ext[r + 1][i], i);

            RationalMatrix m(vdim[r + 1], vdim[r]);
            for (std::size_t ci = 0; ci < cbasis[r].size(); ++ci) {
                Cochain c;
                c.degree = k;
                c.weight = r;
                c.add(cbasis[r][ci], 1);
                // action of each d_i on the slice basis element
                std::vector<Cochain> moved(n);
                for (int i = 0; i < n; ++i) moved[i] = lie_action(g, partials[i], c);
                for (std::size_t ei = 0; ei < ext[r].size(); ++ei) {
                    const auto& subset = ext[r][ei];
                    for (std::size_t j = 0; j < subset.size(); ++j) {
                        const int sign = (j % 2 == 0) ? -1 : 1; // (-1)^j with j 1-based
                        std::vector<int> rest;
                        for (std::size_t t = 0; t < subset.size(); ++t)
                            if (t != j) rest.push_back(subset[t]);
                        const std::size_t ecol = target_eindex.at(rest);
                        for (const auto& [mono, v] : moved[subset[j]].coeffs) {
                            const std::size_t crow = target_cindex.at(mono);
                            m.add_at(crow * ext[r + 1].size() + ecol,
                                     ci * ext[r].size() + ei, Rational(sign * v));
                        }
                    }
                }
            }
            maps.push_back(std::move(m));
        }

        std::vector<std::size_t> ranks;
        for (const auto& m : maps) ranks.push_back(m.rank());

        // exactness at the tensor slots
        for (int r = 0; r <= n; ++r) {
            KoszulSlotReport slot;
            slot.degree = k;
            slot.position = r;
            slot.dim = vdim[r];
            slot.image_rank = (r == 0) ? 0 : ranks[r - 1];
            if (r < n) {
                slot.kernel_dim = vdim[r] - ranks[r];
            } else {
                // kernel of the quotient projection = span{d_i . c}, which is
                // exactly the image of M_{n-1}; record its dimension
                slot.kernel_dim = (n == 0) ? 0 : ranks[n - 1];
            }
            slot.exact = (slot.kernel_dim == slot.image_rank);
            if (!slot.exact) report.exact = false;
            report.slots.push_back(slot);
        }
        // the final quotient map is surjective by construction
        KoszulSlotReport q;
        q.degree = k;
        q.position = n + 1;
        q.dim = cbasis[n].size() - (n == 0 ? 0 : ranks[n - 1]);
        q.image_rank = q.dim;
        q.kernel_dim = 0;
        q.exact = true;
        report.slots.push_back(q);

        // dC^k_{(r)} is a subcomplex of C^{k+1}_{(r+1)}: the differential
        // commutes with the g_{-1} action, checked exactly
        if (k < kmax) {
            for (int r = 0; r < n; ++r) {
                for (const auto& mono : cbasis[r]) {
                    Cochain c;
                    c.degree = k;
                    c.weight = r;
                    c.add(mono, 1);
                    Cochain dc = ce_differential(g, c);
                    for (int i = 0; i < n; ++i) {
                        Cochain lhs = ce_differential(g, lie_action(g, partials[i], c));
                        Cochain rhs = lie_action(g, partials[i], dc);
                        if (!(lhs.coeffs == rhs.coeffs)) report.subcomplex_ok = false;
                    }
                }
            }
        }
    }
    return report;
}

} // namespace gf
