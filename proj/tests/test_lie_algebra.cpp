#include <catch2/catch.hpp>

#include <gf/lie_algebra.hpp>
#include <gf/trig.hpp>

using gf::build_gln;
using gf::build_trig;
using gf::build_wn;
using gf::GradedLieAlgebra;
using gf::Rational;
using gf::SparseVec;

namespace {

SparseVec unit(int i) {
    SparseVec v;
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("W_n bracket formula on generators") {
    auto wn = build_wn(1, 4);
    const auto& g = wn.algebra();

    const int d = g.index_of("1 d1");
    const int xd = g.index_of("x1 d1");
    const int x2d = g.index_of("x1x1 d1");

    // [d, x d] = d
    CHECK(g.bracket(d, xd) == unit(d));
    // [x d, x^2 d] = x^2 d
    CHECK(g.bracket(xd, x2d) == unit(x2d));
    // [d, x^2 d] = 2 x d
    SparseVec expected;
    expected[xd] = 2;
    CHECK(g.bracket(d, x2d) == expected);
}

TEST_CASE("W_2 graded pieces have the right dimensions") {
    auto wn = build_wn(2, 3);
    const auto& g = wn.algebra();
    std::map<int, int> by_weight;
    for (std::size_t i = 0; i < g.dim(); ++i) ++by_weight[g.weight(static_cast<int>(i))];
    CHECK(by_weight[-1] == 2);
    CHECK(by_weight[0] == 4);
    CHECK(by_weight[1] == 6); // n C(n+k, n-1) at k = 1
    CHECK(by_weight[2] == 8);
}

TEST_CASE("bracket weight additivity and antisymmetry") {
    auto wn = build_wn(2, 3);
    const auto& g = wn.algebra();
    const int n = static_cast<int>(g.dim());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec b = g.bracket(i, j);
            for (const auto& [m, c] : b) {
                (void)c;
                CHECK(g.weight(m) == g.weight(i) + g.weight(j));
            }
            SparseVec neg = gf::scaled(g.bracket(j, i), Rational(-1));
            CHECK(b == neg);
        }
}

TEST_CASE("Jacobi identity holds whenever all pairwise brackets stay within truncation") {
    const int trunc = 3;
    auto wn = build_wn(2, trunc);
    const auto& g = wn.algebra();
    const int n = static_cast<int>(g.dim());
    int checked = 0;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z) {
                const int wx = g.weight(x), wy = g.weight(y), wz = g.weight(z);
                if (wx + wy > trunc || wx + wz > trunc || wy + wz > trunc) continue;
                CHECK(gf::jacobiator(g, x, y, z).empty());
                ++checked;
            }
    CHECK(checked > 100);
}

TEST_CASE("Euler weights match the grading") {
    auto wn = build_wn(2, 3);
    const auto& g = wn.algebra();
    CHECK(gf::euler_weight(wn, g.index_of("1 d1")) == -1);
    CHECK(gf::euler_weight(wn, g.index_of("1 d2")) == -1);
    CHECK(gf::euler_weight(wn, g.index_of("x1 d2")) == 0);
    CHECK(gf::euler_weight(wn, g.index_of("x1x1 d1")) == 1);
    for (std::size_t i = 0; i < g.dim(); ++i)
        CHECK(gf::euler_weight(wn, static_cast<int>(i)) == g.weight(static_cast<int>(i)));
}

TEST_CASE("gl_n structure constants") {
    auto gl1 = build_gln(1);
    CHECK(gl1.dim() == 1);
    CHECK(gl1.bracket(0, 0).empty()); // abelian

    auto gl2 = build_gln(2);
    CHECK(gl2.dim() == 4);
    const int e12 = gl2.index_of("E12");
    const int e21 = gl2.index_of("E21");
    SparseVec expected;
    expected[gl2.index_of("E11")] = 1;
    expected[gl2.index_of("E22")] = -1;
    CHECK(gl2.bracket(e12, e21) == expected);

    // matrix algebra is associative, so Jacobi holds on all triples
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z) CHECK(gf::jacobiator(gl2, x, y, z).empty());
}

TEST_CASE("gl_n inside W_n matches build_gln") {
    auto wn = build_wn(2, 2);
    const auto& g = wn.algebra();
    auto gl = build_gln(2);
    // map E_ij -> x_i d_j and compare brackets
    std::vector<int> embed(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) embed[static_cast<std::size_t>(i * 2 + j)] = wn.euler_candidate(i, j);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            SparseVec inside = g.bracket(embed[static_cast<std::size_t>(a)],
                                         embed[static_cast<std::size_t>(b)]);
            SparseVec outside = gl.bracket(a, b);
            SparseVec mapped;
            for (const auto& [m, c] : outside) gf::add_to(mapped, embed[static_cast<std::size_t>(m)], c);
            CHECK(inside == mapped);
        }
}

TEST_CASE("trigonometric bracket identities") {
    auto g = build_trig(6);
    const int d = 0;
    for (int m = 1; m <= 3; ++m) {
        const int cos_m = gf::trig_mode::cosine(m);
        const int sin_m = gf::trig_mode::sine(m);
        // [cos(m) d, sin(m) d] = m d
        SparseVec expected;
        expected[d] = m;
        CHECK(g.bracket(cos_m, sin_m) == expected);
        // [d, cos(m) d] = -m sin(m) d
        SparseVec e2;
        e2[sin_m] = -m;
        CHECK(g.bracket(d, cos_m) == e2);
        // [d, sin(m) d] = m cos(m) d
        SparseVec e3;
        e3[cos_m] = m;
        CHECK(g.bracket(d, sin_m) == e3);
    }
    // antisymmetry on the diagonal
    CHECK(g.bracket(d, d).empty());
}

TEST_CASE("trigonometric brackets overflow beyond the mode bound") {
    auto g = build_trig(4);
    const int cos3 = gf::trig_mode::cosine(3);
    const int sin2 = gf::trig_mode::sine(2);
    CHECK_THROWS_AS(g.bracket(cos3, sin2), gf::ModeOverflowError);
}

TEST_CASE("trig algebra satisfies Jacobi on mode-bounded triples") {
    const int bound = 9;
    auto g = build_trig(bound);
    // modes <= bound / 3 so that every nested bracket stays in range
    std::vector<int> small;
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (gf::trig_mode::frequency(static_cast<int>(i)) * 3 <= bound)
            small.push_back(static_cast<int>(i));
    for (int x : small)
        for (int y : small)
            for (int z : small) CHECK(gf::jacobiator(g, x, y, z).empty());
}
