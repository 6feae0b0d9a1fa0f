#include "qsymp/autos.hpp"
#include "qsymp/reps.hpp"
#include "qsymp/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qsymp;

namespace {

NcPoly A() { return NcPoly::arrow(Arrow::a); }
NcPoly As() { return NcPoly::arrow(Arrow::astar); }
NcPoly X() { return NcPoly::arrow(Arrow::x); }
NcPoly Xs() { return NcPoly::arrow(Arrow::xstar); }
NcPoly Y() { return NcPoly::arrow(Arrow::y); }
NcPoly Ys() { return NcPoly::arrow(Arrow::ystar); }

Necklace neck(std::initializer_list<Letter> w, Scalar c = Scalar(1)) {
    Necklace f(letter_in_alphabet(*w.begin(), Alphabet::unstarred) ? Alphabet::unstarred
                                                                   : Alphabet::starred);
    f.add_term(LWord(w), c);
    return f;
}

}  // namespace

TEST_CASE("lambda_tri on the zero element is the identity", "[autos]") {
    REQUIRE(lambda_tri(Necklace(Alphabet::unstarred)) == EndoA::identity());
    REQUIRE(lambda_op(Necklace(Alphabet::starred)) == EndoA::identity());
}

TEST_CASE("lambda_tri(aab) has the displayed images", "[autos]") {
    EndoA e = lambda_tri(neck({Letter::a, Letter::a, Letter::b}));
    REQUIRE(e.img(Arrow::a) == A());
    REQUIRE(e.img(Arrow::x) == X());
    REQUIRE(e.img(Arrow::y) == Y());
    // a* + axy + xya
    REQUIRE(e.img(Arrow::astar) ==
            As() + NcPoly(Path::word({Arrow::a, Arrow::x, Arrow::y})) +
                NcPoly(Path::word({Arrow::x, Arrow::y, Arrow::a})));
    // x* + yaa
    REQUIRE(e.img(Arrow::xstar) == Xs() + NcPoly(Path::word({Arrow::y, Arrow::a, Arrow::a})));
    // y* + aax
    REQUIRE(e.img(Arrow::ystar) == Ys() + NcPoly(Path::word({Arrow::a, Arrow::a, Arrow::x})));
}

TEST_CASE("lambda_tri(ab) has the displayed images", "[autos]") {
    EndoA e = lambda_tri(neck({Letter::a, Letter::b}));
    REQUIRE(e.img(Arrow::astar) == As() + NcPoly(Path::word({Arrow::x, Arrow::y})));
    REQUIRE(e.img(Arrow::xstar) == Xs() + NcPoly(Path::word({Arrow::y, Arrow::a})));
    REQUIRE(e.img(Arrow::ystar) == Ys() + NcPoly(Path::word({Arrow::a, Arrow::x})));
}

TEST_CASE("lambda_op(a*b*) and its negative", "[autos]") {
    EndoA e = lambda_op(neck({Letter::as, Letter::bs}));
    REQUIRE(e.img(Arrow::astar) == As());
    REQUIRE(e.img(Arrow::xstar) == Xs());
    REQUIRE(e.img(Arrow::ystar) == Ys());
    REQUIRE(e.img(Arrow::a) == A() + NcPoly(Path::word({Arrow::ystar, Arrow::xstar})));
    REQUIRE(e.img(Arrow::x) == X() + NcPoly(Path::word({Arrow::astar, Arrow::ystar})));
    REQUIRE(e.img(Arrow::y) == Y() + NcPoly(Path::word({Arrow::xstar, Arrow::astar})));

    // f = -a*b* flips every shift; the b*-derivative of a*b* is a*.
    EndoA m = lambda_op(neck({Letter::as, Letter::bs}, Scalar(-1)));
    REQUIRE(m.img(Arrow::a) == A() - NcPoly(Path::word({Arrow::ystar, Arrow::xstar})));
    REQUIRE(m.img(Arrow::x) == X() - NcPoly(Path::word({Arrow::astar, Arrow::ystar})));
    REQUIRE(m.img(Arrow::y) == Y() - NcPoly(Path::word({Arrow::xstar, Arrow::astar})));
    REQUIRE(compose(e, m) == EndoA::identity());
}

TEST_CASE("affine automorphisms", "[autos]") {
    AffineData id;
    REQUIRE(affine_endo(id) == EndoA::identity());

    // central scaling
    Scalar lam(Rat(3));
    EndoA z = central_scaling(lam);
    REQUIRE(z.img(Arrow::x) == lam * X());
    REQUIRE(z.img(Arrow::ystar) == lam * Ys());
    REQUIRE(z.img(Arrow::xstar) == lam.inverse() * Xs());
    REQUIRE(z.img(Arrow::y) == lam.inverse() * Y());
    REQUIRE(z.img(Arrow::a) == A());

    // swap T: x -> -y*, y* -> -x, x* -> y, y -> x*
    AffineData sw;
    sw.T = Mat{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    EndoA s = affine_endo(sw);
    REQUIRE(s.img(Arrow::x) == -Ys());
    REQUIRE(s.img(Arrow::ystar) == -X());
    REQUIRE(s.img(Arrow::xstar) == Y());
    REQUIRE(s.img(Arrow::y) == Xs());

    AffineData badT;
    badT.T = Mat{{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}};
    REQUIRE_THROWS_AS(affine_endo(badT), math_error);
    AffineData badS;
    badS.S = Mat{{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(1)}};
    REQUIRE_THROWS_AS(affine_endo(badS), math_error);
}

TEST_CASE("fourier transform images and powers", "[autos]") {
    EndoA F = fourier();
    REQUIRE(F.img(Arrow::a) == -As());
    REQUIRE(F.img(Arrow::astar) == A());
    REQUIRE(F.img(Arrow::x) == -Ys());
    REQUIRE(F.img(Arrow::xstar) == Y());
    REQUIRE(F.img(Arrow::y) == -Xs());
    REQUIRE(F.img(Arrow::ystar) == X());

    // F^2 multiplies every arrow by -1; F^4 = id.
    EndoA F2 = compose(F, F);
    for (int k = 0; k < kNumArrows; ++k) {
        Arrow r = static_cast<Arrow>(k);
        REQUIRE(F2.img(r) == -NcPoly::arrow(r));
    }
    REQUIRE(compose(F2, F2) == EndoA::identity());
    REQUIRE(compose(F, fourier_inverse()) == EndoA::identity());
}

TEST_CASE("composition: units, abelian triangular part, associativity", "[autos]") {
    Necklace f = neck({Letter::a, Letter::b});
    Necklace g = neck({Letter::a, Letter::a, Letter::b});
    EndoA lf = lambda_tri(f), lg = lambda_tri(g);
    REQUIRE(compose(EndoA::identity(), lf) == lf);
    REQUIRE(compose(lf, EndoA::identity()) == lf);
    REQUIRE(compose(lf, lg) == lambda_tri(f + g));
    REQUIRE(compose(lf, lg) == compose(lg, lf));

    SplitMix64 rng(31);
    for (int t = 0; t < 20; ++t) {
        TameWord uw = detail::rand_tame_word(rng, 1);
        EndoA u = uw.empty() ? EndoA::identity() : uw[0].endo();
        EndoA v = lambda_tri(detail::rand_necklace(rng, Alphabet::unstarred, 2, 3));
        EndoA w = lambda_op(detail::rand_necklace(rng, Alphabet::starred, 2, 3));
        REQUIRE(compose(compose(u, v), w) == compose(u, compose(v, w)));
        // centrality of the scalar subgroup
        EndoA z = central_scaling(Scalar(Rat(5, 3)));
        REQUIRE(compose(u, z) == compose(z, u));
    }
}

TEST_CASE("symplecticity detects the broken scaling", "[autos]") {
    REQUIRE(is_symplectic(EndoA::identity()));
    REQUIRE(is_symplectic(lambda_tri(neck({Letter::a, Letter::a, Letter::b}))));
    EndoA bad;
    bad.set_img(Arrow::a, Scalar(2) * A());
    REQUIRE_FALSE(is_symplectic(bad));

    SplitMix64 rng(32);
    for (int t = 0; t < 25; ++t) {
        REQUIRE(is_symplectic(lambda_tri(detail::rand_necklace(rng, Alphabet::unstarred, 4, 6))));
        REQUIRE(is_symplectic(lambda_op(detail::rand_necklace(rng, Alphabet::starred, 4, 6))));
        REQUIRE(is_symplectic(affine_endo(detail::rand_affine(rng))));
    }
}

TEST_CASE("op-triangular generators are Fourier conjugates", "[autos]") {
    SplitMix64 rng(33);
    for (int t = 0; t < 25; ++t) {
        Necklace f = detail::rand_necklace(rng, Alphabet::unstarred, 4, 5);
        EndoA lhs = lambda_op(mirror(f));
        EndoA rhs = compose(fourier_inverse(), compose(lambda_tri(-f), fourier()));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("ptaut equality extracts the central scaling", "[autos]") {
    EndoA phi = lambda_tri(neck({Letter::a, Letter::b}));
    auto same = ptaut_equal(phi, phi);
    REQUIRE((same && *same == Scalar(1)));

    auto lam = ptaut_equal(EndoA::identity(), central_scaling(Scalar(3)));
    REQUIRE((lam && *lam == Scalar(3)));

    auto mixed = ptaut_equal(compose(phi, central_scaling(Scalar(Rat(-2, 7)))), phi);
    REQUIRE((mixed && *mixed == Scalar(Rat(-7, 2))));

    REQUIRE_FALSE(ptaut_equal(lambda_tri(neck({Letter::a, Letter::b})),
                              lambda_tri(neck({Letter::a, Letter::a, Letter::b}))));
}

TEST_CASE("word inversion", "[autos]") {
    Necklace f = neck({Letter::a, Letter::b});
    TameWord w1{TameGen::tri(f)};
    TameWord inv1 = invert_word(w1);
    REQUIRE(inv1.size() == 1);
    REQUIRE(inv1[0].f == -f);

    TameWord w2{TameGen::tri(f), TameGen::aff(fourier_data())};
    TameWord inv2 = invert_word(w2);
    REQUIRE(inv2.size() == 2);
    REQUIRE(inv2[0].kind == TameGen::Kind::aff);
    REQUIRE(inv2[1].kind == TameGen::Kind::tri);
    REQUIRE(compose(compile(inv2), compile(w2)) == EndoA::identity());
    REQUIRE(compose(compile(w2), compile(inv2)) == EndoA::identity());

    SplitMix64 rng(34);
    for (int t = 0; t < 10; ++t) {
        TameWord w = detail::rand_tame_word(rng, 3);
        REQUIRE(compose(compile(invert_word(w)), compile(w)) == EndoA::identity());
    }
}
