#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "error.hpp"
#include "invariants.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "spectral_sequence.hpp"
#include "trig.hpp"

namespace gf {

/// Cyclic ordering of {1..k}, canonicalized to start at 1; these label the
/// connected components of the configuration space of k points on the circle.
using CyclicOrder = std::vector<int>;

inline std::vector<CyclicOrder> conf_components(int k) {
    if (k < 1) throw InvalidInputError("conf_components: k >= 1");
    std::vector<int> tail(static_cast<std::size_t>(k - 1));
    std::iota(tail.begin(), tail.end(), 2);
    std::vector<CyclicOrder> out;
    do {
        CyclicOrder c;
        c.push_back(1);
        c.insert(c.end(), tail.begin(), tail.end());
        out.push_back(std::move(c));
    } while (std::next_permutation(tail.begin(), tail.end()));
    std::sort(out.begin(), out.end());
    return out;
}

/// Rotates a cyclic tuple so that 1 comes first.
inline CyclicOrder canonicalize_cycle(const CyclicOrder& c) {
    auto it = std::find(c.begin(), c.end(), 1);
    CyclicOrder out(it, c.end());
    out.insert(out.end(), c.begin(), it);
    return out;
}

/// Relabeling action of a permutation (1-based images) on a cyclic order.
inline CyclicOrder apply_permutation(const Permutation& sigma, const CyclicOrder& c) {
    CyclicOrder moved;
    moved.reserve(c.size());
    for (int label : c) moved.push_back(sigma(label - 1) + 1);
    return canonicalize_cycle(moved);
}

/// H_r((S^1)^k, fat diagonal): (k-1)! in degrees k and k-1, zero elsewhere.
/// For k = 1 the pair is (S^1, empty): unreduced H_1 = 1, H_0 = 1.
inline std::map<int, std::int64_t> relative_homology_dims(int k) {
    if (k < 1) throw InvalidInputError("relative_homology_dims: k >= 1");
    std::map<int, std::int64_t> out;
    if (k == 1) {
        out[1] = 1;
        out[0] = 0; // reduced in degree 0 per the assembly convention
        return out;
    }
    std::int64_t f = 1;
    for (int i = 2; i < k; ++i) f *= i;
    out[k] = f;
    out[k - 1] = f;
    return out;
}

/// Invariant dimension of the S_k representation carried by the E_2 block in
/// relative degree k or k-1, computed by Burnside averaging. The character
/// couples the permutation of cyclic orders, the orientation twist of the
/// coordinate permutation, and the Koszul sign of permuting k odd classes;
/// the two sign factors cancel, leaving the plain fixed-point count.
inline std::int64_t sigma_invariant_dim(int k, int degree) {
    if (k < 2) throw InvalidInputError("sigma_invariant_dim: k >= 2");
    if (degree != k && degree != k - 1)
        throw InvalidInputError("sigma_invariant_dim: degree must be k or k-1");
    const std::vector<CyclicOrder> components = conf_components(k);
    const std::vector<Permutation> group = all_permutations(k);

    std::int64_t total = 0;
    for (const auto& sigma : group) {
        std::int64_t fixed = 0;
        for (const auto& c : components)
            if (apply_permutation(sigma, c) == c) ++fixed;
        const int orientation = sigma.sign(); // action on the product orientation
        const int koszul = sigma.sign();      // permuting k odd W_1 classes
        total += fixed * orientation * koszul;
    }
    std::int64_t order = 1;
    for (int i = 2; i <= k; ++i) order *= i;
    if (total % order != 0) throw Error("sigma_invariant_dim: Burnside sum not integral");
    return total / order;
}

/// E_2 grid of the diagonal spectral sequence: finitely supported entries at
/// p <= 0, q >= 1 (the convergent is the reduced complex).
struct E2Grid {
    std::map<std::pair<int, int>, std::int64_t> entries;

    std::int64_t at(int p, int q) const {
        auto it = entries.find({p, q});
        return it == entries.end() ? 0 : it->second;
    }
    void add(int p, int q, std::int64_t dim) {
        if (dim == 0) return;
        if (p > 0 || q < 1) throw InvalidInputError("E2Grid entries live at p <= 0, q >= 1");
        entries[{p, q}] += dim;
    }
};

/// Assembles the k-diagonal E_2 grid for the circle from the W_1 Betti table
/// (only q_i = 3 contributes) and the relative/invariant dimensions above.
inline E2Grid assemble_e2_s1(int k) {
    if (k < 1) throw InvalidInputError("assemble_e2_s1: k >= 1");
    BettiTable w1 = wn_betti(1);
    std::vector<std::pair<int, std::int64_t>> support; // positive-degree classes
    for (const auto& [deg, dim] : w1.dims)
        if (deg >= 1 && dim != 0) support.emplace_back(deg, dim);

    E2Grid grid;
    for (int r = 1; r <= k; ++r) {
        // tensor degree of r positive-degree classes; for W_1 only (3,...,3)
        for (const auto& [deg, dim] : support) {
            std::int64_t tensor_dim = 1;
            for (int t = 0; t < r; ++t) tensor_dim *= dim;
            const int q = r * deg;
            if (r == 1) {
                // H_{-p}(S^1) (x) H^q(W_1), unreduced homology of the circle
                grid.add(0, q, tensor_dim);
                grid.add(-1, q, tensor_dim);
            } else {
                const auto rel = relative_homology_dims(r);
                if (rel.count(r) != 0 && rel.at(r) > 0)
                    grid.add(-r, q, sigma_invariant_dim(r, r) * tensor_dim);
                if (rel.count(r - 1) != 0 && rel.at(r - 1) > 0)
                    grid.add(-(r - 1), q, sigma_invariant_dim(r, r - 1) * tensor_dim);
            }
        }
    }
    return grid;
}

/// Result of the collapse test: either the diagonal Betti table, or the list
/// of bidegree pairs a differential could connect.
struct DiagonalBettiResult {
    bool collapsed = false;
    BettiTable betti;
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> possible_differentials;
};

/// Checks mechanically that no differential d_r (bidegree (r, 1-r), r >= 2)
/// connects two nonzero entries; if so sums the diagonals, otherwise reports.
inline DiagonalBettiResult diagonal_betti_s1(int k) {
    E2Grid grid = assemble_e2_s1(k);
    DiagonalBettiResult out;
    for (const auto& [key, dim] : grid.entries) {
        if (dim == 0) continue;
        for (int r = 2; r <= 2 * k + 3; ++r) {
            const int tp = key.first + r, tq = key.second - r + 1;
            if (grid.at(tp, tq) != 0)
                out.possible_differentials.push_back({key, {tp, tq}});
        }
    }
    if (!out.possible_differentials.empty()) return out;
    out.collapsed = true;
    for (const auto& [key, dim] : grid.entries)
        if (dim != 0)
            out.betti.set(key.first + key.second, out.betti.at(key.first + key.second) + dim);
    return out;
}

/// Stabilized Gelfand-Fuks Betti numbers of the circle: degree q read from
/// the (q+1)-diagonal table; degree 0 is the unreduced constants.
inline BettiTable stabilized_circle_betti(int qmax) {
    if (qmax < 0) throw InvalidInputError("stabilized_circle_betti: qmax >= 0");
    BettiTable out;
    out.set(0, 1);
    for (int q = 1; q <= qmax; ++q) {
        DiagonalBettiResult res = diagonal_betti_s1(q + 1);
        if (!res.collapsed) throw Error("diagonal spectral sequence did not collapse");
        out.set(q, res.betti.at(q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The explicit cocycles
// ---------------------------------------------------------------------------

/// c2(f d, g d) = integral over the circle of (f' g'' - f'' g') d phi,
/// returned as the rational multiple of pi.
inline Rational c2(const TrigVectorField& f, const TrigVectorField& g) {
    TrigVectorField f1 = f.derivative();
    TrigVectorField g1 = g.derivative();
    return Rational(circle_pairing_pi(f1, g1.derivative()) -
                    circle_pairing_pi(f1.derivative(), g1));
}

/// c3(f d, g d, h d) = det of the 2-jets at the marked point x0, given in
/// units of pi/2 so the jets stay rational.
inline Rational c3(const TrigVectorField& f, const TrigVectorField& g, const TrigVectorField& h,
                   int x0_half_pi = 0) {
    std::vector<std::vector<Rational>> jets(3, std::vector<Rational>(3));
    const TrigVectorField* fields[3] = {&f, &g, &h};
    for (int col = 0; col < 3; ++col) {
        TrigVectorField current = *fields[col];
        for (int row = 0; row < 3; ++row) {
            jets[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                current.value_at_half_pi(x0_half_pi);
            current = current.derivative();
        }
    }
    Rational det = 0;
    det += jets[0][0] * (jets[1][1] * jets[2][2] - jets[1][2] * jets[2][1]);
    det -= jets[0][1] * (jets[1][0] * jets[2][2] - jets[1][2] * jets[2][0]);
    det += jets[0][2] * (jets[1][0] * jets[2][1] - jets[1][1] * jets[2][0]);
    return det;
}

namespace detail {

/// Chevalley-Eilenberg cocycle residual of a 2-form on a triple of fields:
/// dc(X1,X2,X3) = c([X1,X2],X3) - c([X1,X3],X2) + c([X2,X3],X1).
template <typename TwoForm>
Rational cocycle_residual_2(const TwoForm& c, const TrigVectorField& x1, const TrigVectorField& x2,
                            const TrigVectorField& x3, int mode_bound) {
    Rational out = 0;
    out += c(trig_bracket(x1, x2, mode_bound), x3);
    out -= c(trig_bracket(x1, x3, mode_bound), x2);
    out += c(trig_bracket(x2, x3, mode_bound), x1);
    return out;
}

/// dc(X1..X4) = sum_{i<j} (-1)^{i+j-1} c([Xi,Xj], rest...).
template <typename ThreeForm>
Rational cocycle_residual_3(const ThreeForm& c, const std::vector<TrigVectorField>& x,
                            int mode_bound) {
    Rational out = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<const TrigVectorField*> rest;
            for (int t = 0; t < 4; ++t)
                if (t != i && t != j) rest.push_back(&x[static_cast<std::size_t>(t)]);
            const int sign = ((i + j + 1) % 2 == 0) ? 1 : -1; // (-1)^{i+j-1}, 1-based
            TrigVectorField bracket =
                trig_bracket(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)], mode_bound);
            out += Rational(sign) * c(bracket, *rest[0], *rest[1]);
        }
    return out;
}

inline std::vector<TrigVectorField> trig_basis_fields(int max_mode) {
    std::vector<TrigVectorField> out;
    out.push_back(TrigVectorField::constant());
    for (int m = 1; m <= max_mode; ++m) {
        out.push_back(TrigVectorField::cosine(m));
        out.push_back(TrigVectorField::sine(m));
    }
    return out;
}

} // namespace detail

enum class CircleCocycle { c2, c3 };

/// Exact verification that a 2-form is an alternating cocycle: skew-symmetry
/// on all basis pairs and the cocycle identity on all basis triples with
/// modes <= mode_bound / 2 (so every bracket stays within the mode bound).
template <typename TwoForm>
bool verify_two_cocycle(const TwoForm& form, int mode_bound) {
    if (mode_bound < 2) throw InvalidInputError("verify_cocycle: mode bound >= 2");
    const auto fields = detail::trig_basis_fields(mode_bound / 2);
    const int nf = static_cast<int>(fields.size());
    for (int i = 0; i < nf; ++i) {
        if (!is_zero(form(fields[i], fields[i]))) return false;
        for (int j = i + 1; j < nf; ++j)
            if (!is_zero(Rational(form(fields[i], fields[j]) + form(fields[j], fields[i]))))
                return false;
    }
    for (int i = 0; i < nf; ++i)
        for (int j = i + 1; j < nf; ++j)
            for (int k = j + 1; k < nf; ++k)
                if (!is_zero(detail::cocycle_residual_2(form, fields[i], fields[j], fields[k],
                                                        mode_bound)))
                    return false;
    return true;
}

template <typename ThreeForm>
bool verify_three_cocycle(const ThreeForm& form, int mode_bound) {
    if (mode_bound < 2) throw InvalidInputError("verify_cocycle: mode bound >= 2");
    const auto fields = detail::trig_basis_fields(mode_bound / 2);
    const int nf = static_cast<int>(fields.size());
    // alternation: vanishing on repeated arguments and skew under swaps
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) {
            if (!is_zero(form(fields[i], fields[i], fields[j]))) return false;
            if (!is_zero(form(fields[i], fields[j], fields[i]))) return false;
            if (!is_zero(form(fields[j], fields[i], fields[i]))) return false;
        }
    for (int i = 0; i < nf; ++i)
        for (int j = i + 1; j < nf; ++j)
            for (int k = j + 1; k < nf; ++k) {
                if (!is_zero(Rational(form(fields[i], fields[j], fields[k]) +
                                      form(fields[j], fields[i], fields[k]))))
                    return false;
                for (int l = k + 1; l < nf; ++l) {
                    std::vector<TrigVectorField> tuple = {fields[i], fields[j], fields[k],
                                                          fields[l]};
                    if (!is_zero(detail::cocycle_residual_3(form, tuple, mode_bound)))
                        return false;
                }
            }
    return true;
}

inline bool verify_cocycle(CircleCocycle which, int mode_bound) {
    if (which == CircleCocycle::c2) {
        auto form = [](const TrigVectorField& a, const TrigVectorField& b) { return c2(a, b); };
        return verify_two_cocycle(form, mode_bound);
    }
    auto form = [](const TrigVectorField& a, const TrigVectorField& b, const TrigVectorField& c) {
        return c3(a, b, c, 0);
    };
    return verify_three_cocycle(form, mode_bound);
}

/// Outcome of the coboundary feasibility test for a 2-cochain: either a
/// functional mu with c(x, y) = mu([x, y]) on all in-range basis pairs, or an
/// explicit infeasibility certificate (a rational combination of equations
/// summing to 0 = contradiction).
struct CoboundaryOutcome {
    bool feasible = false;
    SparseVec mu; // by basis mode index, in pi units
    std::vector<std::pair<std::pair<int, int>, Rational>> certificate; // (pair, multiplier)
    Rational contradiction;
};

namespace detail {

template <typename TwoForm>
CoboundaryOutcome coboundary_system(const TwoForm& form, int mode_bound) {
    const int dim = 2 * mode_bound + 1; // unknowns mu(mode)
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const int mi = trig_mode::frequency(i), mj = trig_mode::frequency(j);
            if (mi + mj <= mode_bound) pairs.emplace_back(i, j);
        }

    RationalMatrix a(pairs.size(), static_cast<std::size_t>(dim));
    std::vector<Rational> b;
    b.reserve(pairs.size());
    for (std::size_t row = 0; row < pairs.size(); ++row) {
        const auto& [i, j] = pairs[row];
        TrigVectorField bracket =
            trig_bracket(TrigVectorField::basis(i), TrigVectorField::basis(j), mode_bound);
        for (const auto& [mode, v] : bracket.coefficients())
            a.add_at(row, static_cast<std::size_t>(mode), v);
        b.push_back(form(TrigVectorField::basis(i), TrigVectorField::basis(j)));
    }

    LinearSolveResult solved = solve_with_certificate(a, b);
    CoboundaryOutcome out;
    out.feasible = solved.feasible;
    if (solved.feasible) {
        out.mu = solved.solution;
    } else {
        out.contradiction = solved.contradiction;
        for (const auto& [row, mult] : solved.certificate_rows)
            out.certificate.emplace_back(pairs[row], mult);
    }
    return out;
}

} // namespace detail

/// Feasibility of c2 = d(mu) over modes <= mode_bound; infeasible, with an
/// explicit certificate, because c2 grows cubically in the mode while any
/// coboundary is linear.
inline CoboundaryOutcome coboundary_test_c2(int mode_bound) {
    if (mode_bound < 4) throw InvalidInputError("coboundary_test: mode bound >= 4");
    auto form = [](const TrigVectorField& x, const TrigVectorField& y) { return c2(x, y); };
    return detail::coboundary_system(form, mode_bound);
}

/// Control: the same system with the right-hand side replaced by an actual
/// coboundary d(nu) is feasible by construction.
inline CoboundaryOutcome coboundary_control(int mode_bound, const SparseVec& nu) {
    auto form = [&nu, mode_bound](const TrigVectorField& x, const TrigVectorField& y) {
        TrigVectorField bracket = trig_bracket(x, y, mode_bound);
        Rational v = 0;
        for (const auto& [mode, c] : bracket.coefficients()) {
            auto it = nu.find(mode);
            if (it != nu.end()) v += c * it->second;
        }
        return v;
    };
    return detail::coboundary_system(form, mode_bound);
}

} // namespace gf
