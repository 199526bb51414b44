#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gf {

/// Exact rational scalar. Everything in the engine is computed over Q;
/// there is no floating point anywhere.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Sparse vector over an indexed basis; zero entries are never stored.
using SparseVec = std::map<int, Rational>;

inline void add_to(SparseVec& v, int index, const Rational& coeff) {
    if (is_zero(coeff)) return;
    auto it = v.find(index);
    if (it == v.end()) {
        v.emplace(index, coeff);
    } else {
        it->second += coeff;
        if (is_zero(it->second)) v.erase(it);
    }
}

inline void add_scaled(SparseVec& v, const SparseVec& w, const Rational& scale) {
    if (is_zero(scale)) return;
    for (const auto& [i, c] : w) add_to(v, i, Rational(c * scale));
}

inline SparseVec scaled(const SparseVec& v, const Rational& scale) {
    SparseVec out;
    add_scaled(out, v, scale);
    return out;
}

/// Sorts indices ascending and returns the sign of the permutation,
/// or 0 if two indices coincide.
inline int sort_with_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        int x = idx[i];
        std::size_t j = i;
        while (j > 0 && idx[j - 1] > x) {
            idx[j] = idx[j - 1];
            --j;
            sign = -sign;
        }
        idx[j] = x;
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

} // namespace gf
