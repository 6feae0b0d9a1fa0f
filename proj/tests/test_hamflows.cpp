#include "qsymp/hamflows.hpp"
#include "qsymp/rng.hpp"
#include "qsymp/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qsymp;

namespace {

Mat E(int r, int c) {
    Mat m(2, 2);
    m(r, c) = Scalar(1);
    return m;
}

Necklace neck(std::initializer_list<Letter> w, Scalar c = Scalar(1)) {
    Necklace f(letter_in_alphabet(*w.begin(), Alphabet::unstarred) ? Alphabet::unstarred
                                                                   : Alphabet::starred);
    f.add_term(LWord(w), c);
    return f;
}

}  // namespace

TEST_CASE("hamiltonian evaluation", "[hamflows]") {
    SplitMix64 rng(51);
    for (int n = 1; n <= 3; ++n) {
        RepPoint pt = random_fiber_point(n, Scalar(Rat(5, 3)), rng);
        // tr(vw) = n tau on the fiber
        REQUIRE(eval_ham(HamSpec::J(0, Mat::identity(2)), pt) == Scalar(n) * pt.tau);
    }
    RepPoint cm = cm_point(3, Scalar(1), {Scalar(0), Scalar(2), Scalar(5)},
                           {Scalar(1), Scalar(1), Scalar(1)});
    REQUIRE(eval_ham(HamSpec::H(neck({Letter::a})), cm) == Scalar(7));  // tr X = sum x_i
    REQUIRE(eval_ham(HamSpec::H(neck({Letter::b})), cm) == Scalar(0)); // w2 = 0 on the slice
}

TEST_CASE("bracket of J functions closes on the commutator", "[hamflows]") {
    SplitMix64 rng(52);
    for (int t = 0; t < 8; ++t) {
        RepPoint pt = random_fiber_point(1 + t % 3, Scalar(1), rng);
        Scalar lhs = poisson_bracket(HamSpec::J(1, E(0, 1)), HamSpec::J(1, E(1, 0)), pt);
        Scalar rhs = eval_ham(HamSpec::J(2, E(0, 0) - E(1, 1)), pt);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("image of H Poisson-commutes, and {tr X, tr Y} = n", "[hamflows]") {
    SplitMix64 rng(53);
    for (int t = 0; t < 10; ++t) {
        int n = 1 + t % 3;
        RepPoint pt = random_fiber_point(n, Scalar(1), rng);
        Necklace f1 = detail::rand_necklace(rng, Alphabet::unstarred, 3, 4);
        Necklace f2 = detail::rand_necklace(rng, Alphabet::unstarred, 3, 4);
        REQUIRE(poisson_bracket(HamSpec::H(f1), HamSpec::H(f2), pt).is_zero());
        Necklace g1 = detail::rand_necklace(rng, Alphabet::starred, 3, 4);
        Necklace g2 = detail::rand_necklace(rng, Alphabet::starred, 3, 4);
        REQUIRE(poisson_bracket(HamSpec::Hp(g1), HamSpec::Hp(g2), pt).is_zero());
        REQUIRE(poisson_bracket(HamSpec::H(neck({Letter::a})), HamSpec::Hp(neck({Letter::as})), pt) ==
                Scalar(n));
    }
}

TEST_CASE("necklace bracket oracle: dual-number bracket at random points", "[hamflows]") {
    // [a^2, a*^2] = 4 (aa*) is matched against the exact Poisson bracket of
    // H(a^2) and H'(a*^2), which also pins the bracket's sign convention.
    SplitMix64 rng(54);
    Necklace a2 = neck({Letter::a, Letter::a});
    Necklace as2 = neck({Letter::as, Letter::as});
    for (int t = 0; t < 20; ++t) {
        RepPoint pt = random_fiber_point(1 + t % 3, detail::rand_tau(rng), rng);
        VForm f = to_vform(pt);
        Scalar pb = poisson_bracket(HamSpec::H(a2), HamSpec::Hp(as2), pt);
        REQUIRE(pb == Scalar(4) * (f.X * f.Y).trace());
        BracketResult br = necklace_bracket(a2, as2);
        REQUIRE(pb == psi_eval(br.elem, f) + br.constant * Scalar(pt.n));
    }
}

TEST_CASE("loop-against-loop pairs carry the e11/e22 correction", "[hamflows]") {
    // {H(b), H'(b*)} equals tr(v e11 w) - tr(v e22 w), not a constant: the
    // composite loops are not canonically conjugate coordinates. This pins
    // the exact correction documented for the Lie-morphism cross-check.
    SplitMix64 rng(55);
    for (int t = 0; t < 10; ++t) {
        RepPoint pt = random_fiber_point(1 + t % 3, Scalar(1), rng);
        VForm f = to_vform(pt);
        Scalar pb = poisson_bracket(HamSpec::H(neck({Letter::b})), HamSpec::Hp(neck({Letter::bs})), pt);
        Mat r11 = f.v * E(0, 0) * f.w, r22 = f.v * E(1, 1) * f.w;
        REQUIRE(pb == r11.trace() - r22.trace());
    }
}

TEST_CASE("lie morphism cross-check on the loop-free family", "[hamflows]") {
    SplitMix64 rng(56);
    for (int t = 0; t < 25; ++t) {
        int n = 1 + t % 3;
        RepPoint pt = random_fiber_point(n, detail::rand_tau(rng), rng);
        Necklace f1{Alphabet::unstarred}, f2{Alphabet::starred};
        if (rng.coin()) {
            f1 = poly_of_letter(detail::rand_poly(rng, 4, true), false);
            f2 = detail::rand_necklace(rng, Alphabet::starred, 3, 5);
        } else {
            f1 = detail::rand_necklace(rng, Alphabet::unstarred, 3, 5);
            f2 = poly_of_letter(detail::rand_poly(rng, 4, true), true);
        }
        Scalar lhs = poisson_bracket(HamSpec::H(f1), HamSpec::Hp(f2), pt);
        BracketResult br = necklace_bracket(f1, f2);
        REQUIRE(lhs == psi_eval(br.elem, to_vform(pt)) + br.constant * Scalar(n));
    }
}

TEST_CASE("closed-form flows: special cases", "[hamflows]") {
    SplitMix64 rng(57);
    RepPoint pt = random_fiber_point(3, Scalar(1), rng);
    Scalar t(Rat(2, 5));

    // f = a^k: Y(t) = Y - t k X^{k-1}, all else fixed
    for (int k = 1; k <= 4; ++k) {
        RepPoint ft = flow_H(Necklace(Alphabet::unstarred, LWord(static_cast<size_t>(k), Letter::a)), t, pt);
        REQUIRE(ft.B == pt.B - t * (Scalar(k) * pt.A.pow(k - 1)));
        REQUIRE(ft.A == pt.A);
        REQUIRE(ft.X1 == pt.X1);
        REQUIRE(ft.X2 == pt.X2);
        REQUIRE(ft.Y1 == pt.Y1);
        REQUIRE(ft.Y2 == pt.Y2);
    }

    // f = b: v2 += t v1, w1 -= t w2, Y fixed
    RepPoint fb = flow_H(neck({Letter::b}), t, pt);
    VForm before = to_vform(pt), after = to_vform(fb);
    REQUIRE(after.Y == before.Y);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(after.v(i, 0) == before.v(i, 0));
        REQUIRE(after.v(i, 1) == before.v(i, 1) + t * before.v(i, 0));
        REQUIRE(after.w(0, i) == before.w(0, i) - t * before.w(1, i));
        REQUIRE(after.w(1, i) == before.w(1, i));
    }

    // t = 0 is the identity
    REQUIRE(flow_H(neck({Letter::a, Letter::b}), Scalar(0), pt) == pt);
    REQUIRE(flow_Hp(neck({Letter::as, Letter::bs}), Scalar(0), pt) == pt);

    // mirror: f = a*^2 moves X by -2tY
    RepPoint fs = flow_Hp(neck({Letter::as, Letter::as}), t, pt);
    REQUIRE(fs.A == pt.A - t * (Scalar(2) * pt.B));
    REQUIRE(fs.B == pt.B);
    REQUIRE(fs.X1 == pt.X1);
    REQUIRE(fs.X2 == pt.X2);
    REQUIRE(fs.Y1 == pt.Y1);
    REQUIRE(fs.Y2 == pt.Y2);
}

TEST_CASE("direct J(k, e21) integration cross-checks the conjugated flow", "[hamflows]") {
    // H'(a*^k b*) = J_{k,e21}; its equations of motion integrate to
    //   X(t) = X + t * sum_{i=1..k} Y^{k-i} (v.2 w.1) Y^{i-1},
    //   v.1(t) = v.1 + t Y^k v.2,   w.2(t) = w.2 - t w.1 Y^k,
    // with Y, v.2, w.1 constant. flow_Hp must reproduce this exactly.
    SplitMix64 rng(58);
    for (int k = 0; k <= 3; ++k) {
        RepPoint pt = random_fiber_point(2 + k % 2, Scalar(1), rng);
        Scalar t(Rat(3, 7));
        VForm f = to_vform(pt);
        int n = pt.n;
        Mat v1(n, 1), v2(n, 1), w1(1, n), w2(1, n);
        for (int i = 0; i < n; ++i) {
            v1(i, 0) = f.v(i, 0);
            v2(i, 0) = f.v(i, 1);
            w1(0, i) = f.w(0, i);
            w2(0, i) = f.w(1, i);
        }
        Mat dX(n, n);
        for (int i = 1; i <= k; ++i) dX += f.Y.pow(k - i) * (v2 * w1) * f.Y.pow(i - 1);
        VForm expect = f;
        expect.X = f.X + t * dX;
        Mat nv1 = v1 + t * (f.Y.pow(k) * v2);
        Mat nw2 = w2 - t * (w1 * f.Y.pow(k));
        for (int i = 0; i < n; ++i) {
            expect.v(i, 0) = nv1(i, 0);
            expect.w(1, i) = nw2(0, i);
        }
        LWord word(static_cast<size_t>(k), Letter::as);
        word.push_back(Letter::bs);
        RepPoint got = flow_Hp(Necklace(Alphabet::starred, word), t, pt);
        REQUIRE(got == from_vform(expect, pt.tau));
    }
}

TEST_CASE("flows form one-parameter groups and scale like the automorphisms", "[hamflows]") {
    SplitMix64 rng(59);
    for (int t = 0; t < 10; ++t) {
        int n = 1 + t % 3;
        RepPoint pt = random_fiber_point(n, Scalar(1), rng);
        Necklace f = detail::rand_necklace(rng, Alphabet::unstarred, 3, 5);
        Scalar s1(Rat(rng.range(-3, 3), 2)), s2(Rat(rng.range(-3, 3), 3));
        REQUIRE(flow_H(f, s1, flow_H(f, s2, pt)) == flow_H(f, s1 + s2, pt));
        REQUIRE(flow_H(f, s1, pt) == act_endo(lambda_tri(s1.is_zero() ? Necklace(Alphabet::unstarred)
                                                                      : (-s1) * f),
                                              pt));
        REQUIRE(in_fiber(flow_H(f, s1, pt)));
        Necklace g = detail::rand_necklace(rng, Alphabet::starred, 3, 5);
        REQUIRE(in_fiber(flow_Hp(g, s2, pt)));
    }
}

TEST_CASE("flow at unit time equals the automorphism action", "[hamflows]") {
    SplitMix64 rng(60);
    Necklace aab = neck({Letter::a, Letter::a, Letter::b});
    for (int n = 1; n <= 4; ++n) {
        RepPoint pt = random_fiber_point(n, Scalar(1), rng);
        REQUIRE(verify_flow_theorem(aab, pt));
        REQUIRE(verify_flow_theorem(neck({Letter::b}), pt));
        REQUIRE(verify_flow_theorem(neck({Letter::as, Letter::bs}), pt));
        REQUIRE(verify_flow_theorem(detail::rand_necklace(rng, Alphabet::unstarred, 4, 6), pt));
        REQUIRE(verify_flow_theorem(detail::rand_necklace(rng, Alphabet::starred, 4, 6), pt));
    }
}
