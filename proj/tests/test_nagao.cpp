#include "qsymp/nagao.hpp"
#include "qsymp/rng.hpp"
#include "qsymp/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qsymp;

namespace {

PolyMat2 lower_uni(const Poly& p) {
    PolyMat2 m = pm_identity();
    m(1, 0) = p;
    return m;
}

PolyMat2 upper_uni(const Poly& p) {
    PolyMat2 m = pm_identity();
    m(0, 1) = p;
    return m;
}

Mat diag2(Scalar a, Scalar b) { return Mat{{a, Scalar(0)}, {Scalar(0), b}}; }

}  // namespace

TEST_CASE("b2_split", "[nagao]") {
    PolyMat2 m = pm_identity();
    m(0, 0) = Poly(Scalar(2));
    m(1, 1) = Poly(Scalar(3));
    m(1, 0) = Poly::z();
    auto [u, d] = b2_split(m);
    REQUIRE(u == Poly(std::vector<Scalar>{Scalar(0), Scalar(Rat(1, 2))}));
    REQUIRE(d[0] == Scalar(2));
    REQUIRE(d[1] == Scalar(3));
    // reassemble u then d
    PolyMat2 back = lower_uni(u) * pm_from_const(diag2(d[0], d[1]));
    REQUIRE(back == m);

    auto [u2, d2] = b2_split(pm_identity());
    REQUIRE(u2.is_zero());
    REQUIRE((d2[0] == Scalar(1) && d2[1] == Scalar(1)));

    Poly p(std::vector<Scalar>{Scalar(1), Scalar(2), Scalar(3)});
    auto [u3, d3] = b2_split(lower_uni(p));
    REQUIRE(u3 == p);
    REQUIRE((d3[0] == Scalar(1) && d3[1] == Scalar(1)));

    REQUIRE_THROWS_AS(b2_split(upper_uni(Poly::z())), math_error);
}

TEST_CASE("nagao_decompose on generators and the swap identity", "[nagao]") {
    // constant matrix: single C factor
    Mat c{{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(7)}};
    NagaoWord wc = nagao_decompose(pm_from_const(c));
    REQUIRE(wc.size() == 1);
    REQUIRE(wc[0].tag == NagaoFactor::Tag::C);
    REQUIRE(wc[0].cmat == c);

    // lower unitriangular: single B factor
    NagaoWord wb = nagao_decompose(lower_uni(Poly::z()));
    REQUIRE(wb.size() == 1);
    REQUIRE(wb[0].tag == NagaoFactor::Tag::B);

    // upper unitriangular factors through two swaps
    NagaoWord wu = nagao_decompose(upper_uni(Poly::z()));
    REQUIRE(wu.size() == 3);
    Mat swap{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    REQUIRE(wu[0].tag == NagaoFactor::Tag::C);
    REQUIRE(wu[0].cmat == swap);
    REQUIRE(wu[1].tag == NagaoFactor::Tag::B);
    REQUIRE(wu[1].bmat == lower_uni(Poly::z()));
    REQUIRE(wu[2].tag == NagaoFactor::Tag::C);
    REQUIRE(wu[2].cmat == swap);

    // non-unit determinant is rejected
    PolyMat2 bad = pm_identity();
    bad(0, 0) = Poly::z();
    REQUIRE_THROWS_AS(nagao_decompose(bad), math_error);
}

TEST_CASE("reassemble", "[nagao]") {
    REQUIRE(reassemble(NagaoWord{}) == pm_identity());
    NagaoFactor b = NagaoFactor::B(lower_uni(Poly::z()));
    REQUIRE(reassemble(NagaoWord{b}) == lower_uni(Poly::z()));
}

TEST_CASE("round trip with alternation on random products", "[nagao]") {
    SplitMix64 rng(61);
    for (int t = 0; t < 50; ++t) {
        PolyMat2 m = detail::rand_polymat2(rng, 8, 5);
        NagaoWord w = nagao_decompose(m);
        REQUIRE(reassemble(w) == m);
        REQUIRE(alternation_holds(w));
        for (const auto& f : w)
            if (f.tag == NagaoFactor::Tag::B) REQUIRE(pm_in_B2(f.bmat));
    }
}

TEST_CASE("j1 embeds the constants", "[nagao]") {
    REQUIRE(j1(Mat::identity(2)) == EndoA::identity());
    REQUIRE(j1(diag2(Scalar(5), Scalar(5))) == central_scaling(Scalar(5)));
    AffineData sw;
    sw.T = Mat{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    REQUIRE(j1(sw.T) == affine_endo(sw));
}

TEST_CASE("j2 embeds B2(K[z])", "[nagao]") {
    Poly p(std::vector<Scalar>{Scalar(2), Scalar(0), Scalar(1)});
    REQUIRE(j2(lower_uni(p)) == lambda_op(poly_times_loop(-p, true)));
    REQUIRE(j2(pm_from_const(diag2(Scalar(2), Scalar(3)))) ==
            j1(diag2(Scalar(2), Scalar(3))));

    // conjugation by a diagonal rescales the polynomial by beta/alpha
    Scalar alpha(2), beta(-3);
    EndoA lhs = compose(j2(pm_from_const(diag2(alpha, beta))),
                        compose(j2(lower_uni(p)), j2(pm_from_const(diag2(alpha.inverse(), beta.inverse())))));
    Poly scaled = Poly(beta / alpha) * p;
    REQUIRE(lhs == j2(lower_uni(scaled)));
}

TEST_CASE("j3 moves only a", "[nagao]") {
    REQUIRE(j3(Poly()) == EndoA::identity());
    // p = z^2: a -> a - 2a*
    EndoA e = j3(Poly(std::vector<Scalar>{Scalar(0), Scalar(0), Scalar(1)}));
    REQUIRE(e.img(Arrow::a) == NcPoly::arrow(Arrow::a) - Scalar(2) * NcPoly::arrow(Arrow::astar));
    REQUIRE(e.img(Arrow::x) == NcPoly::arrow(Arrow::x));
    // p = z: a -> a - e1
    EndoA e1 = j3(Poly::z());
    REQUIRE(e1.img(Arrow::a) == NcPoly::arrow(Arrow::a) - NcPoly::e(1));
    REQUIRE_THROWS_AS(j3(Poly(Scalar(1))), math_error);
}

TEST_CASE("k restricted to constants is j1 and is a morphism", "[nagao]") {
    SplitMix64 rng(62);
    for (int t = 0; t < 10; ++t) {
        Mat c = detail::rand_gl2(rng);
        REQUIRE(k_map(pm_from_const(c)) == j1(c));
    }
    for (int t = 0; t < 10; ++t) {
        PolyMat2 m1 = detail::rand_polymat2(rng, 4, 2);
        PolyMat2 m2 = detail::rand_polymat2(rng, 4, 2);
        REQUIRE(k_map(m1 * m2) == compose(k_map(m1), k_map(m2)));
    }
}

TEST_CASE("j1 and j2 agree on constant lower-triangular matrices", "[nagao]") {
    SplitMix64 rng(63);
    for (int t = 0; t < 25; ++t) {
        Mat b(2, 2);
        b(0, 0) = detail::rand_nonzero_scalar(rng);
        b(1, 1) = detail::rand_nonzero_scalar(rng);
        b(1, 0) = detail::rand_rat(rng, 4, 2);
        REQUIRE(j1(b) == j2(pm_from_const(b)));
    }
}

TEST_CASE("all embedding images are symplectic", "[nagao]") {
    SplitMix64 rng(64);
    for (int t = 0; t < 8; ++t) {
        REQUIRE(is_symplectic(j1(detail::rand_gl2(rng))));
        PolyMat2 b = pm_identity();
        b(1, 0) = detail::rand_poly(rng, 3);
        b(0, 0) = Poly(detail::rand_nonzero_scalar(rng));
        b(1, 1) = Poly(detail::rand_nonzero_scalar(rng));
        REQUIRE(is_symplectic(j2(b)));
        REQUIRE(is_symplectic(j3(detail::rand_poly(rng, 3, true))));
        REQUIRE(is_symplectic(k_map(detail::rand_polymat2(rng, 3, 2))));
        REQUIRE(is_symplectic(i_map(detail::rand_gamma(rng, 3))));
    }
}

TEST_CASE("i_map", "[nagao]") {
    Poly p(std::vector<Scalar>{Scalar(0), Scalar(2), Scalar(1)});
    GammaElem gp = GammaElem::make(p, pm_identity());
    REQUIRE(i_map(gp) == j3(p));

    SplitMix64 rng(65);
    PolyMat2 m = detail::rand_polymat2(rng, 3, 2);
    GammaElem gm = GammaElem::make(Poly(), m);
    auto lam = ptaut_equal(k_map(m), i_map(gm));
    REQUIRE(lam.has_value());

    for (int t = 0; t < 10; ++t) {
        GammaElem g1 = detail::rand_gamma(rng, 3), g2 = detail::rand_gamma(rng, 3);
        auto q = ptaut_equal(i_map(g1.mul(g2)), compose(i_map(g1), i_map(g2)));
        REQUIRE(q.has_value());
    }

    REQUIRE_THROWS_AS(GammaElem::make(Poly(Scalar(1)), pm_identity()), math_error);
}

TEST_CASE("gamma normalization is projective", "[nagao]") {
    PolyMat2 m = pm_identity();
    m(0, 1) = Poly::z();
    GammaElem g1 = GammaElem::make(Poly(), m);
    GammaElem g2 = GammaElem::make(Poly(), pm_scale(m, Scalar(Rat(3, 4))));
    REQUIRE(g1 == g2);
}
