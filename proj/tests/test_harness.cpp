#include "qsymp/json_io.hpp"
#include "qsymp/normalize.hpp"
#include "qsymp/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qsymp;
using nlohmann::json;

namespace {

Poly linear(const Scalar& root) { return Poly::z() - Poly(root); }

RepPoint fiber_from_XY(const Mat& X, const Mat& Y, const Scalar& tau) {
    // v = tau I - [X, Y], w = I always satisfies [X,Y] + vw = tau I.
    int n = X.rows();
    VForm f{X, Y, Mat(n, 2), Mat(2, n)};
    if (n != 2) throw math_error("helper expects n = 2");
    Mat v = tau * Mat::identity(2) - (X * Y - Y * X);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            f.v(i, j) = v(i, j);
            f.w(i, j) = i == j ? Scalar(1) : Scalar(0);
        }
    return from_vform(f, tau);
}

}  // namespace

TEST_CASE("gaussian root search", "[harness]") {
    // splits with a complex root
    Poly f = linear(Scalar(1)) * linear(Scalar(2)) * linear(Scalar(Rat(1, 2), Rat(1, 2)));
    RootSearch rs = gaussian_roots(f);
    REQUIRE(rs.status == RootStatus::split);
    REQUIRE(rs.roots.size() == 3);

    // z^2 + 1 = (z - i)(z + i)
    RootSearch ri = gaussian_roots(Poly::z() * Poly::z() + Poly(Scalar(1)));
    REQUIRE(ri.status == RootStatus::split);
    REQUIRE(ri.roots.size() == 2);

    // z^2 - 2 does not split over Q(i)
    REQUIRE(gaussian_roots(Poly::z() * Poly::z() - Poly(Scalar(2))).status == RootStatus::not_split);

    // multiplicity
    RootSearch rm = gaussian_roots(linear(Scalar(1)) * linear(Scalar(1)) * linear(Scalar(3)));
    REQUIRE(rm.status == RootStatus::split);
    REQUIRE(rm.roots.size() == 3);

    // roots at zero are stripped first
    RootSearch rz = gaussian_roots(Poly::z() * Poly::z() * linear(Scalar(-4)));
    REQUIRE(rz.status == RootStatus::split);
    REQUIRE(rz.roots.size() == 3);

    // triangular fast path in eigenvalues
    Mat tri{{Scalar(1), Scalar(5)}, {Scalar(0), Scalar(7)}};
    RootSearch re = eigenvalues(tri);
    REQUIRE(re.status == RootStatus::split);
    REQUIRE((re.roots[0] == Scalar(1) && re.roots[1] == Scalar(7)));
}

TEST_CASE("normalize: already in the slice", "[harness]") {
    RepPoint cm = cm_point(3, Scalar(1), {Scalar(0), Scalar(1), Scalar(2)},
                           {Scalar(1), Scalar(0), Scalar(1)});
    NormalizeResult res = normalize_to_Mn(cm);
    REQUIRE(res.word.empty());
    REQUIRE(res.gl == Mat::identity(3));
    REQUIRE(res.result == cm);
}

TEST_CASE("normalize: scrambled witness family", "[harness]") {
    SplitMix64 rng(71);
    for (int t = 0; t < 8; ++t) {
        int n = 1 + t % 4;
        std::vector<Scalar> xs, ps;
        for (int i = 0; i < n; ++i) {
            xs.push_back(Scalar(Int(3 * i + t % 2)));
            ps.push_back(detail::rand_rat(rng, 4, 2));
        }
        RepPoint cm = cm_point(n, detail::rand_tau(rng), xs, ps);
        TameWord w;
        w.push_back(TameGen::tri(poly_times_loop(detail::rand_poly(rng, 2), false)));
        w.push_back(detail::random_column_mix(rng));
        w.push_back(TameGen::tri(poly_times_loop(detail::rand_poly(rng, 2), false)));
        RepPoint scrambled = act_word(w, cm);
        REQUIRE(in_fiber(scrambled));

        NormalizeResult res = normalize_to_Mn(scrambled, 5);
        REQUIRE(in_Mn(res.result));
        REQUIRE(in_fiber(res.result));
        // replay the certificate
        REQUIRE(act_word(res.word, gl_act(res.gl, scrambled)) == res.result);
    }
}

TEST_CASE("normalize: nilpotent X goes through the Fourier step", "[harness]") {
    Mat X{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
    Mat Y{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(2)}};
    RepPoint pt = fiber_from_XY(X, Y, Scalar(1));
    REQUIRE(in_fiber(pt));
    REQUIRE_FALSE(is_regss(pt.A));
    REQUIRE(is_regss(pt.B));

    NormalizeResult res = normalize_to_Mn(pt);
    REQUIRE_FALSE(res.word.empty());
    REQUIRE(res.word[0].kind == TameGen::Kind::aff);
    REQUIRE(in_Mn(res.result));
    REQUIRE(in_fiber(res.result));
}

TEST_CASE("normalize: error taxonomy", "[harness]") {
    // neither side regular semisimple
    Mat X{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
    RepPoint nrs = fiber_from_XY(X, Mat::identity(2), Scalar(1));
    REQUIRE_THROWS_AS(normalize_to_Mn(nrs), not_regular_semisimple);

    // regular semisimple but the spectrum lives outside Q(i)
    Mat Xs{{Scalar(0), Scalar(1)}, {Scalar(2), Scalar(0)}};
    RepPoint sns = fiber_from_XY(Xs, Mat(2, 2), Scalar(1));
    REQUIRE_THROWS_AS(normalize_to_Mn(sns), spectrum_not_split);

    // not in the fiber at all
    RepPoint off = fiber_from_XY(Mat::identity(2), Mat(2, 2), Scalar(1));
    off.tau = Scalar(2);
    REQUIRE_THROWS_AS(normalize_to_Mn(off), math_error);
}

TEST_CASE("run_suite is deterministic and validates names", "[harness]") {
    SuiteParams p;
    p.trials = 2;
    VerificationReport r1 = run_suite("flow_theorem", p);
    VerificationReport r2 = run_suite("flow_theorem", p);
    REQUIRE(io::to_json(r1).dump() == io::to_json(r2).dump());
    REQUIRE(r1.passed());
    REQUIRE(r1.trials == 2);
    REQUIRE_THROWS_AS(run_suite("no_such_suite", p), input_error);
    REQUIRE(suite_names().size() == 11);
}

TEST_CASE("json round trips", "[harness]") {
    SplitMix64 rng(72);

    for (int t = 0; t < 40; ++t) {
        Scalar s = detail::rand_scalar(rng);
        REQUIRE(io::scalar_from_json(io::to_json(s)) == s);
    }

    Poly p(std::vector<Scalar>{Scalar(Rat(1, 2)), Scalar(0), Scalar::i()});
    REQUIRE(io::poly_from_json(io::to_json(p)) == p);

    for (int t = 0; t < 10; ++t) {
        RepPoint pt = random_fiber_point(1 + t % 3, detail::rand_tau(rng), rng);
        REQUIRE(io::point_from_json(io::to_json(pt)) == pt);

        TameWord w = detail::rand_tame_word(rng, 3);
        TameWord back = io::tameword_from_json(io::to_json(w));
        REQUIRE(compile(back) == compile(w));

        PolyMat2 m = detail::rand_polymat2(rng, 4, 3);
        REQUIRE(io::polymat2_from_json(io::to_json(m)) == m);

        NagaoWord nw = nagao_decompose(m);
        REQUIRE(reassemble(io::nagaoword_from_json(io::to_json(nw))) == m);

        GammaElem g = detail::rand_gamma(rng, 3);
        REQUIRE(io::gamma_from_json(io::to_json(g)) == g);

        Necklace f = detail::rand_necklace(rng, Alphabet::unstarred, 3, 5);
        REQUIRE(io::necklace_from_json(io::to_json(f)) == f);

        EndoA e = lambda_tri(f);
        REQUIRE(io::endo_from_json(io::to_json(e)) == e);
    }

    HamSpec hj = HamSpec::J(2, Mat{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}});
    json jj = io::to_json(hj);
    HamSpec back = io::ham_from_json(jj);
    REQUIRE(back.kind == HamSpec::Kind::J);
    REQUIRE(back.k == 2);
    REQUIRE(back.alpha == hj.alpha);
}

TEST_CASE("json rejects malformed input", "[harness]") {
    REQUIRE_THROWS_AS(io::scalar_from_json(json(3)), input_error);
    REQUIRE_THROWS_AS(io::scalar_from_json(json("x+y")), input_error);
    REQUIRE_THROWS_AS(io::point_from_json(json::object()), input_error);
    REQUIRE_THROWS_AS(io::mat_from_json(json::array({json::array({"1"}), json::array({"1", "2"})})),
                      input_error);
    REQUIRE_THROWS_AS(io::ham_from_json(json{{"kind", "Q"}}), input_error);
    REQUIRE_THROWS_AS(io::parse_text("{oops", "test"), input_error);
    // point with inconsistent shapes
    json pt = io::to_json(cm_point(2, Scalar(1), {Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}));
    pt["X1"] = json::array({json::array({"1"})});
    REQUIRE_THROWS_AS(io::point_from_json(pt), input_error);
}
