#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lie_algebra.hpp"
#include "rational.hpp"

namespace gf {

/// Fourier mode encoding for trigonometric vector fields on the circle:
/// 0 is the constant field d_phi, 2m-1 is cos(m phi) d_phi, 2m is sin(m phi) d_phi.
namespace trig_mode {

inline int constant() { return 0; }
inline int cosine(int m) { return 2 * m - 1; }
inline int sine(int m) { return 2 * m; }
inline bool is_cosine(int mode) { return mode > 0 && mode % 2 == 1; }
inline bool is_sine(int mode) { return mode > 0 && mode % 2 == 0; }
inline int frequency(int mode) { return (mode + 1) / 2; }

inline std::string label(int mode) {
    if (mode == 0) return "d";
    const int m = frequency(mode);
    return (is_cosine(mode) ? "cos" : "sin") + std::to_string(m) + " d";
}

} // namespace trig_mode

/// Finitely supported trigonometric-polynomial vector field f(phi) d_phi.
class TrigVectorField {
public:
    TrigVectorField() = default;

    static TrigVectorField constant(const Rational& c = 1) {
        TrigVectorField f;
        f.set(trig_mode::constant(), c);
        return f;
    }
    static TrigVectorField cosine(int m, const Rational& c = 1) {
        TrigVectorField f;
        f.set(trig_mode::cosine(m), c);
        return f;
    }
    static TrigVectorField sine(int m, const Rational& c = 1) {
        TrigVectorField f;
        f.set(trig_mode::sine(m), c);
        return f;
    }
    static TrigVectorField basis(int mode, const Rational& c = 1) {
        TrigVectorField f;
        f.set(mode, c);
        return f;
    }

    const std::map<int, Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void set(int mode, const Rational& c) {
        if (is_zero_coeff(c))
            coeffs_.erase(mode);
        else
            coeffs_[mode] = c;
    }

    void add(int mode, const Rational& c) {
        if (is_zero_coeff(c)) return;
        auto it = coeffs_.find(mode);
        if (it == coeffs_.end()) {
            coeffs_.emplace(mode, c);
        } else {
            it->second += c;
            if (is_zero_coeff(it->second)) coeffs_.erase(it);
        }
    }

    TrigVectorField& operator+=(const TrigVectorField& other) {
        for (const auto& [m, c] : other.coeffs_) add(m, c);
        return *this;
    }

    TrigVectorField operator*(const Rational& s) const {
        TrigVectorField out;
        for (const auto& [m, c] : coeffs_) out.add(m, Rational(c * s));
        return out;
    }

    int max_mode() const {
        int n = 0;
        for (const auto& [m, c] : coeffs_) {
            (void)c;
            n = std::max(n, trig_mode::frequency(m));
        }
        return n;
    }

    /// d/dphi.
    TrigVectorField derivative() const {
        TrigVectorField out;
        for (const auto& [mode, c] : coeffs_) {
            if (mode == 0) continue;
            const int m = trig_mode::frequency(mode);
            if (trig_mode::is_cosine(mode))
                out.add(trig_mode::sine(m), Rational(-m * c));
            else
                out.add(trig_mode::cosine(m), Rational(m * c));
        }
        return out;
    }

    /// Value of the coefficient function at phi = half_pi_units * pi/2.
    /// Jets of trig polynomials at these points are exact rationals.
    Rational value_at_half_pi(int half_pi_units) const {
        Rational v = 0;
        for (const auto& [mode, c] : coeffs_) {
            if (mode == 0) {
                v += c;
                continue;
            }
            const int m = trig_mode::frequency(mode);
            int phase = (m * half_pi_units) % 4;
            if (phase < 0) phase += 4;
            if (trig_mode::is_cosine(mode)) {
                if (phase == 0) v += c;
                if (phase == 2) v -= c;
            } else {
                if (phase == 1) v += c;
                if (phase == 3) v -= c;
            }
        }
        return v;
    }

private:
    static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
    std::map<int, Rational> coeffs_;
};

/// Integral over the circle of the product of two coefficient functions,
/// in units of pi (so the exact value is the returned rational times pi).
inline Rational circle_pairing_pi(const TrigVectorField& u, const TrigVectorField& v) {
    Rational out = 0;
    for (const auto& [mode, a] : u.coefficients()) {
        auto it = v.coefficients().find(mode);
        if (it == v.coefficients().end()) continue;
        out += (mode == 0 ? Rational(2 * a * it->second) : Rational(a * it->second));
    }
    return out;
}

namespace detail {

// Appends c * trig(mode) where a signed frequency is normalized through
// sin(-m) = -sin(m), cos(-m) = cos(m), sin(0) = 0, cos(0) = 1.
inline void add_signed_mode(TrigVectorField& out, bool sine, int freq, const Rational& c) {
    if (freq == 0) {
        if (!sine) out.add(trig_mode::constant(), c);
        return;
    }
    int f = freq;
    Rational v = c;
    if (f < 0) {
        f = -f;
        if (sine) v = -v;
    }
    out.add(sine ? trig_mode::sine(f) : trig_mode::cosine(f), v);
}

} // namespace detail

/// [f d, g d] = (f g' - f' g) d on basis modes, via product-to-sum identities.
inline TrigVectorField trig_basis_bracket(int mode_a, int mode_b) {
    using namespace trig_mode;
    TrigVectorField out;
    if (mode_a == mode_b) return out;
    if (mode_a == 0 || mode_b == 0) {
        // [d, cos(m) d] = -m sin(m) d,  [d, sin(m) d] = m cos(m) d
        const bool flipped = (mode_b == 0);
        const int mode = flipped ? mode_a : mode_b;
        const int m = frequency(mode);
        Rational s = flipped ? Rational(-1) : Rational(1);
        if (is_cosine(mode))
            out.add(sine(m), Rational(-m * s));
        else
            out.add(cosine(m), Rational(m * s));
        return out;
    }
    const int a = frequency(mode_a), b = frequency(mode_b);
    const Rational half(1, 2);
    if (is_cosine(mode_a) && is_cosine(mode_b)) {
        detail::add_signed_mode(out, true, a + b, Rational((a - b) * half));
        detail::add_signed_mode(out, true, a - b, Rational((a + b) * half));
    } else if (is_cosine(mode_a) && is_sine(mode_b)) {
        detail::add_signed_mode(out, false, a - b, Rational((a + b) * half));
        detail::add_signed_mode(out, false, a + b, Rational((b - a) * half));
    } else if (is_sine(mode_a) && is_cosine(mode_b)) {
        detail::add_signed_mode(out, false, a - b, Rational(-(a + b) * half));
        detail::add_signed_mode(out, false, a + b, Rational((b - a) * half));
    } else {
        detail::add_signed_mode(out, true, a + b, Rational((b - a) * half));
        detail::add_signed_mode(out, true, a - b, Rational((a + b) * half));
    }
    return out;
}

/// Bracket of trig fields; throws ModeOverflowError if a resulting mode
/// exceeds the bound.
inline TrigVectorField trig_bracket(const TrigVectorField& f, const TrigVectorField& g,
                                    int mode_bound) {
    TrigVectorField out;
    for (const auto& [ma, ca] : f.coefficients())
        for (const auto& [mb, cb] : g.coefficients()) {
            TrigVectorField term = trig_basis_bracket(ma, mb);
            if (term.max_mode() > mode_bound)
                throw ModeOverflowError("bracket of modes " + std::to_string(ma) + ", " +
                                        std::to_string(mb) + " exceeds mode bound " +
                                        std::to_string(mode_bound));
            out += term * Rational(ca * cb);
        }
    return out;
}

/// Trigonometric-polynomial vector fields on the circle with Fourier modes
/// <= mode_bound, as structure constants. Brackets that would leave the mode
/// range are marked undefined and throw ModeOverflowError; callers needing
/// closure restrict arguments to modes <= mode_bound / 2.
inline GradedLieAlgebra build_trig(int mode_bound) {
    if (mode_bound < 1) throw InvalidInputError("trig algebra needs mode bound >= 1");
    const int dim = 2 * mode_bound + 1;
    std::vector<BasisElement> basis;
    for (int mode = 0; mode < dim; ++mode) basis.push_back({trig_mode::label(mode), 0});

    GradedLieAlgebra::BracketTable table;
    std::set<std::pair<int, int>> undefined;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            TrigVectorField combo = trig_basis_bracket(i, j);
            if (combo.max_mode() > mode_bound) {
                undefined.insert({i, j});
                continue;
            }
            SparseVec sv;
            for (const auto& [mode, c] : combo.coefficients()) add_to(sv, mode, c);
            if (!sv.empty()) table.emplace(std::make_pair(i, j), std::move(sv));
        }
    return GradedLieAlgebra(std::move(basis), std::move(table), std::nullopt, std::move(undefined));
}

} // namespace gf
