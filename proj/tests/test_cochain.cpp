#include <catch2/catch.hpp>

#include <gf/cochain.hpp>
#include <gf/lie_algebra.hpp>

#include "test_util.hpp"

using gf::build_wn;
using gf::Cochain;
using gf::DualMonomial;
using gf::Rational;
using gf::SparseVec;

namespace {

Cochain basis_cochain(const gf::GradedLieAlgebra& g, std::initializer_list<int> indices) {
    return Cochain::dual_basis(g, DualMonomial(indices));
}

Cochain random_weighted_cochain(gftest::Lcg& rng, const gf::GradedLieAlgebra& g, int k, int r) {
    auto basis = gf::weight_basis(g, k, r);
    Cochain c;
    c.degree = k;
    c.weight = r;
    for (const auto& mono : basis)
        if (rng.range(0, 2) == 0) c.add(mono, rng.rational());
    return c;
}

} // namespace

TEST_CASE("weight_basis enumerations") {
    // n=1, k=1, r=0: only the dual of x d
    CHECK(gf::wn_weight_basis(1, 1, 0).size() == 1);
    // r < -k is empty
    CHECK(gf::wn_weight_basis(1, 2, -3).empty());
    CHECK(gf::wn_weight_basis(2, 3, -4).empty());
    // n=1, k=2, r=0: exactly the (-1, 1) pair
    auto b = gf::wn_weight_basis(1, 2, 0);
    REQUIRE(b.size() == 1);
    auto wn = build_wn(1, 2);
    CHECK(gf::monomial_weight(wn.algebra(), b[0]) == 0);
}

TEST_CASE("differential of a 0-cochain vanishes") {
    auto wn = build_wn(1, 3);
    Cochain scalar = Cochain::scalar(5);
    Cochain d = gf::ce_differential(wn.algebra(), scalar);
    CHECK(d.is_zero());
    CHECK(d.degree == 1);
}

TEST_CASE("differential of the dual of x d in W_1") {
    auto wn = build_wn(1, 2);
    const auto& g = wn.algebra();
    Cochain c = basis_cochain(g, {g.index_of("x1 d1")});
    Cochain dc = gf::ce_differential(g, c);
    // d((x d)*) hits (d)* ^ (x^2 d)* with coefficient +-2 and nothing else
    REQUIRE(dc.coeffs.size() == 1);
    DualMonomial expected = {g.index_of("1 d1"), g.index_of("x1x1 d1")};
    REQUIRE(dc.coeffs.count(expected) == 1);
    CHECK(abs(dc.coeffs.at(expected)) == 2);
    // pinned sign under this convention
    CHECK(dc.coeffs.at(expected) == 2);
}

TEST_CASE("d . d = 0 on every weight-0 basis cochain of W_1 up to degree 6") {
    auto wn = build_wn(1, 8);
    const auto& g = wn.algebra();
    for (int k = 0; k <= 6; ++k)
        for (const auto& mono : gf::weight_basis(g, k, 0)) {
            Cochain c;
            c.degree = k;
            c.weight = 0;
            c.add(mono, 1);
            CHECK(gf::ce_differential(g, gf::ce_differential(g, c)).is_zero());
        }
}

TEST_CASE("differential preserves weight") {
    auto wn = build_wn(2, 5);
    const auto& g = wn.algebra();
    gftest::Lcg rng(31);
    for (int r = -1; r <= 2; ++r)
        for (int k = 1; k <= 3; ++k) {
            Cochain c = random_weighted_cochain(rng, g, k, r);
            Cochain dc = gf::ce_differential(g, c);
            REQUIRE(dc.weight.has_value());
            CHECK(*dc.weight == r);
            for (const auto& [mono, v] : dc.coeffs) {
                (void)v;
                CHECK(gf::monomial_weight(g, mono) == r);
            }
        }
}

TEST_CASE("lie_action basics") {
    auto wn = build_wn(1, 3);
    const auto& g = wn.algebra();
    const int d = g.index_of("1 d1");

    // Y . c = 0 on degree-0 cochains
    CHECK(gf::lie_action(g, d, Cochain::scalar(3)).is_zero());

    // d . (d)* = -(x d)*  (the bracket [d, x d] = d feeds the slot)
    Cochain dual_d = basis_cochain(g, {d});
    Cochain moved = gf::lie_action(g, d, dual_d);
    REQUIRE(moved.coeffs.size() == 1);
    DualMonomial xd = {g.index_of("x1 d1")};
    REQUIRE(moved.coeffs.count(xd) == 1);
    CHECK(moved.coeffs.at(xd) == -1);
    CHECK(moved.weight.has_value());
    CHECK(*moved.weight == 0); // -1 - (-1)
}

TEST_CASE("E . c = -r c on weighted cochains") {
    auto wn = build_wn(2, 4);
    const auto& g = wn.algebra();
    SparseVec euler = wn.euler_element();
    gftest::Lcg rng(77);
    for (int r = -1; r <= 3; ++r)
        for (int k = 1; k <= 3; ++k) {
            Cochain c = random_weighted_cochain(rng, g, k, r);
            Cochain ec = gf::lie_action(g, euler, c);
            Cochain expected = c;
            for (auto& [mono, v] : expected.coeffs) v *= Rational(-r);
            if (r == 0) {
                CHECK(ec.is_zero());
            } else {
                CHECK(ec.coeffs == expected.coeffs);
            }
        }
}

TEST_CASE("interior product duality and nilpotence") {
    auto wn = build_wn(1, 3);
    const auto& g = wn.algebra();
    const int xd = g.index_of("x1 d1");

    // Y -| Y* = 1
    Cochain dual = basis_cochain(g, {xd});
    Cochain paired = gf::interior_product(g, xd, dual);
    REQUIRE(paired.degree == 0);
    REQUIRE(paired.coeffs.size() == 1);
    CHECK(paired.coeffs.at({}) == 1);

    // Y -| (Y -| c) = 0
    gftest::Lcg rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Cochain c = random_weighted_cochain(rng, g, 3, trial % 3);
        Cochain twice = gf::interior_product(g, xd, gf::interior_product(g, xd, c));
        CHECK(twice.is_zero());
    }
}

TEST_CASE("homotopy identity d(Y -| c) + Y -| dc = -(Y . c)") {
    auto wn = build_wn(2, 5);
    const auto& g = wn.algebra();
    gftest::Lcg rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = rng.range(1, 3);
        const int r = rng.range(-1, 2);
        const int y = rng.range(0, static_cast<int>(g.dim()) - 1);
        Cochain c = random_weighted_cochain(rng, g, k, r);
        SparseVec yv;
        yv[y] = 1;
        Cochain lhs = gf::ce_differential(g, gf::interior_product(g, yv, c));
        Cochain rhs_part = gf::interior_product(g, yv, gf::ce_differential(g, c));
        for (const auto& [mono, v] : rhs_part.coeffs) lhs.add(mono, v);
        Cochain action = gf::lie_action(g, y, c);
        for (const auto& [mono, v] : action.coeffs) lhs.add(mono, v);
        CHECK(lhs.coeffs.empty());
    }
}

TEST_CASE("wedge product algebra") {
    auto wn = build_wn(1, 4);
    const auto& g = wn.algebra();
    gftest::Lcg rng(13);

    // unit
    Cochain one = Cochain::scalar(1);
    Cochain c = random_weighted_cochain(rng, g, 2, 0);
    CHECK(gf::wedge(one, c).coeffs == c.coeffs);

    // odd-degree square is zero
    for (int trial = 0; trial < 5; ++trial) {
        Cochain odd = random_weighted_cochain(rng, g, 1, rng.range(-1, 2));
        CHECK(gf::wedge(odd, odd).is_zero());
    }

    // degrees and weights add
    Cochain a = random_weighted_cochain(rng, g, 1, 0);
    Cochain b = random_weighted_cochain(rng, g, 2, 1);
    Cochain ab = gf::wedge(a, b);
    CHECK(ab.degree == 3);
    REQUIRE(ab.weight.has_value());
    CHECK(*ab.weight == 1);

    // graded commutativity: deg 1 against deg 2 commutes on the nose
    Cochain ba = gf::wedge(b, a);
    CHECK(ab.coeffs == ba.coeffs);
}

TEST_CASE("Leibniz rule for the differential over the wedge") {
    auto wn = build_wn(2, 6);
    const auto& g = wn.algebra();
    gftest::Lcg rng(21);
    for (int trial = 0; trial < 15; ++trial) {
        const int ka = rng.range(1, 2), kb = rng.range(1, 2);
        Cochain a = random_weighted_cochain(rng, g, ka, rng.range(0, 1));
        Cochain b = random_weighted_cochain(rng, g, kb, rng.range(0, 1));
        Cochain lhs = gf::ce_differential(g, gf::wedge(a, b));
        Cochain rhs = gf::wedge(gf::ce_differential(g, a), b);
        Cochain db = gf::ce_differential(g, b);
        Cochain adb = gf::wedge(a, db);
        const int sign = (ka % 2 == 0) ? 1 : -1;
        for (const auto& [mono, v] : adb.coeffs) rhs.add(mono, Rational(sign * v));
        CHECK(lhs.coeffs == rhs.coeffs);
    }
}

TEST_CASE("truncation guard rejects underspecified algebras") {
    auto wn = build_wn(1, 2);
    const auto& g = wn.algebra();
    Cochain c;
    c.degree = 2;
    c.weight = 1;
    auto basis = gf::weight_basis(g, 2, 1);
    REQUIRE_FALSE(basis.empty());
    c.add(basis.front(), 1);
    CHECK_THROWS_AS(gf::ce_differential(g, c), gf::TruncationInsufficientError);
}
