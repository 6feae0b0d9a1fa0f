#pragma once

#include "qsymp/autos.hpp"
#include "qsymp/matrix.hpp"
#include "qsymp/pathalg.hpp"
#include "qsymp/poly.hpp"
#include "qsymp/rng.hpp"

#include <utility>
#include <vector>

namespace qsymp {

/// Representation point of the double quiver with dimension vector (n, 1):
/// a -> A, a* -> B (n x n), x -> X1, y* -> X2 (n x 1), y -> Y1, x* -> Y2 (1 x n).
/// tau records the moment fiber the point is meant to live on.
struct RepPoint {
    int n = 0;
    Scalar tau{1};
    Mat A, B;    // n x n
    Mat X1, X2;  // n x 1
    Mat Y1, Y2;  // 1 x n

    void check_shapes() const {
        auto bad = [&](const Mat& m, int r, int c) { return m.rows() != r || m.cols() != c; };
        if (n <= 0 || bad(A, n, n) || bad(B, n, n) || bad(X1, n, 1) || bad(X2, n, 1) ||
            bad(Y1, 1, n) || bad(Y2, 1, n))
            throw math_error("RepPoint: inconsistent shapes");
    }

    friend bool operator==(const RepPoint& p, const RepPoint& q) {
        return p.n == q.n && p.tau == q.tau && p.A == q.A && p.B == q.B && p.X1 == q.X1 &&
               p.X2 == q.X2 && p.Y1 == q.Y1 && p.Y2 == q.Y2;
    }
    friend bool operator!=(const RepPoint& p, const RepPoint& q) { return !(p == q); }
};

/// The (X, Y, v, w) picture: X = A, Y = B, v = [X1 | -X2], w = [Y2 ; Y1].
struct VForm {
    Mat X, Y;  // n x n
    Mat v;     // n x 2
    Mat w;     // 2 x n
};

inline VForm to_vform(const RepPoint& pt) {
    pt.check_shapes();
    VForm f;
    f.X = pt.A;
    f.Y = pt.B;
    f.v = Mat(pt.n, 2);
    f.w = Mat(2, pt.n);
    for (int i = 0; i < pt.n; ++i) {
        f.v(i, 0) = pt.X1(i, 0);
        f.v(i, 1) = -pt.X2(i, 0);
        f.w(0, i) = pt.Y2(0, i);
        f.w(1, i) = pt.Y1(0, i);
    }
    return f;
}

inline RepPoint from_vform(const VForm& f, Scalar tau) {
    int n = f.X.rows();
    if (f.Y.rows() != n || f.Y.cols() != n || f.v.rows() != n || f.v.cols() != 2 ||
        f.w.rows() != 2 || f.w.cols() != n)
        throw math_error("from_vform: inconsistent shapes");
    RepPoint pt;
    pt.n = n;
    pt.tau = std::move(tau);
    pt.A = f.X;
    pt.B = f.Y;
    pt.X1 = Mat(n, 1);
    pt.X2 = Mat(n, 1);
    pt.Y1 = Mat(1, n);
    pt.Y2 = Mat(1, n);
    for (int i = 0; i < n; ++i) {
        pt.X1(i, 0) = f.v(i, 0);
        pt.X2(i, 0) = -f.v(i, 1);
        pt.Y2(0, i) = f.w(0, i);
        pt.Y1(0, i) = f.w(1, i);
    }
    return pt;
}

/// mu(X,Y,v,w) = [X,Y] + vw.
inline Mat moment_mu(const VForm& f) { return f.X * f.Y - f.Y * f.X + f.v * f.w; }

/// nu = ([A,B] + X1 Y2 - X2 Y1, Y1 X2 - Y2 X1).
inline std::pair<Mat, Scalar> moment_nu(const RepPoint& pt) {
    pt.check_shapes();
    Mat first = pt.A * pt.B - pt.B * pt.A + pt.X1 * pt.Y2 - pt.X2 * pt.Y1;
    Mat second = pt.Y1 * pt.X2 - pt.Y2 * pt.X1;  // 1 x 1
    return {first, second(0, 0)};
}

inline bool in_fiber(const RepPoint& pt) {
    auto [first, second] = moment_nu(pt);
    Mat target = pt.tau * Mat::identity(pt.n);
    return first == target && second == Scalar(-Int(pt.n)) * pt.tau;
}

/// The Calogero-Moser slice: v_{.2} = 0 and w_{2.} = 0, i.e. X2 = 0, Y1 = 0.
inline bool in_Mn(const RepPoint& pt) { return pt.X2.is_zero() && pt.Y1.is_zero(); }

/// Evaluate an endpoint-homogeneous element at a point: each path maps to the
/// product of its arrow matrices in written order, e1 -> I_n, e2 -> (1).
inline Mat evaluate(const NcPoly& u, const RepPoint& pt) {
    pt.check_shapes();
    auto ends = u.homogeneous_endpoints();
    if (!ends && !u.is_zero()) throw math_error("evaluate: element is not endpoint-homogeneous");
    auto dim = [&](int vertex) { return vertex == 1 ? pt.n : 1; };
    int src = ends ? ends->first : 1, tgt = ends ? ends->second : 1;
    const Mat* rep[kNumArrows] = {&pt.A, &pt.B, &pt.X1, &pt.Y2, &pt.Y1, &pt.X2};
    Mat acc(dim(tgt), dim(src));
    for (const auto& [p, c] : u.terms()) {
        if (p.is_trivial()) {
            acc += c * Mat::identity(dim(p.source()));
            continue;
        }
        Mat prod = *rep[static_cast<int>(p.arrows().front())];
        for (size_t k = 1; k < p.arrows().size(); ++k)
            prod = prod * *rep[static_cast<int>(p.arrows()[k])];
        acc += c * prod;
    }
    return acc;
}

/// Right action of an endomorphism: evaluate each generator image at the
/// point. act_endo(compose(phi, psi), p) = act_endo(psi, act_endo(phi, p)).
inline RepPoint act_endo(const EndoA& phi, const RepPoint& pt) {
    RepPoint out;
    out.n = pt.n;
    out.tau = pt.tau;
    out.A = evaluate(phi.img(Arrow::a), pt);
    out.B = evaluate(phi.img(Arrow::astar), pt);
    out.X1 = evaluate(phi.img(Arrow::x), pt);
    out.X2 = evaluate(phi.img(Arrow::ystar), pt);
    out.Y1 = evaluate(phi.img(Arrow::y), pt);
    out.Y2 = evaluate(phi.img(Arrow::xstar), pt);
    return out;
}

inline RepPoint act_word(const TameWord& w, const RepPoint& pt) {
    RepPoint cur = pt;
    for (const auto& g : w) cur = act_endo(g.endo(), cur);
    return cur;
}

/// Basis change by g in GL_n: (gAg^-1, gBg^-1, gX1, gX2, Y1 g^-1, Y2 g^-1).
inline RepPoint gl_act(const Mat& g, const RepPoint& pt) {
    pt.check_shapes();
    if (g.rows() != pt.n || g.cols() != pt.n) throw math_error("gl_act: size mismatch");
    Mat gi = inverse(g);  // throws on singular g
    RepPoint out = pt;
    out.A = g * pt.A * gi;
    out.B = g * pt.B * gi;
    out.X1 = g * pt.X1;
    out.X2 = g * pt.X2;
    out.Y1 = pt.Y1 * gi;
    out.Y2 = pt.Y2 * gi;
    return out;
}

/// Calogero-Moser point: A = diag(x), B_ii = p_i, B_ij = -tau/(x_i - x_j),
/// X1 = ones, Y2 = tau * ones, X2 = 0, Y1 = 0. Lands in the moment fiber and
/// in M_n by construction (and that is re-checked here).
inline RepPoint cm_point(int n, const Scalar& tau, const std::vector<Scalar>& x,
                         const std::vector<Scalar>& p) {
    if (n <= 0 || static_cast<int>(x.size()) != n || static_cast<int>(p.size()) != n)
        throw math_error("cm_point: need n abscissae and n momenta");
    if (tau.is_zero()) throw math_error("cm_point: tau must be nonzero");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x[static_cast<size_t>(i)] == x[static_cast<size_t>(j)])
                throw math_error("cm_point: repeated abscissa");
    RepPoint pt;
    pt.n = n;
    pt.tau = tau;
    pt.A = Mat(n, n);
    pt.B = Mat(n, n);
    pt.X1 = Mat(n, 1);
    pt.X2 = Mat(n, 1);
    pt.Y1 = Mat(1, n);
    pt.Y2 = Mat(1, n);
    for (int i = 0; i < n; ++i) {
        pt.A(i, i) = x[static_cast<size_t>(i)];
        pt.B(i, i) = p[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j)
            if (j != i) pt.B(i, j) = -tau / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
        pt.X1(i, 0) = Scalar(1);
        pt.Y2(0, i) = tau;
    }
    if (!in_fiber(pt) || !in_Mn(pt)) throw math_error("cm_point: construction self-check failed");
    return pt;
}

/// Exact characteristic polynomial det(zI - M), by Faddeev-LeVerrier.
inline Poly charpoly(const Mat& m) {
    if (!m.is_square()) throw math_error("charpoly: non-square matrix");
    int n = m.rows();
    std::vector<Scalar> c(static_cast<size_t>(n) + 1, Scalar(0));
    c[static_cast<size_t>(n)] = Scalar(1);
    Mat acc = Mat::identity(n);
    for (int k = 1; k <= n; ++k) {
        acc = m * acc;
        Scalar ck = -(acc.trace() / Scalar(k));
        c[static_cast<size_t>(n - k)] = ck;
        acc += ck * Mat::identity(n);
    }
    return Poly(std::move(c));
}

/// Regular semisimple = squarefree characteristic polynomial.
inline bool is_regss(const Mat& m) { return poly_squarefree(charpoly(m)); }

namespace detail {

inline Scalar rand_rat(SplitMix64& rng, int max_num = 6, int max_den = 3) {
    Int num(rng.range(-max_num, max_num));
    Int den(rng.range(1, max_den));
    return Scalar(Rat(num, den));
}

inline Scalar rand_scalar(SplitMix64& rng, bool allow_imag = true) {
    Scalar s = rand_rat(rng);
    if (allow_imag && rng.range(0, 3) == 0) s += Scalar::i() * rand_rat(rng, 3, 2);
    return s;
}

inline Scalar rand_nonzero_scalar(SplitMix64& rng, bool allow_imag = true) {
    for (;;) {
        Scalar s = rand_scalar(rng, allow_imag);
        if (!s.is_zero()) return s;
    }
}

/// Random invertible n x n matrix built as (unit lower) * diag(nonzero) *
/// (unit upper); always invertible, entries stay small.
inline Mat rand_gl(SplitMix64& rng, int n) {
    Mat lower = Mat::identity(n), upper = Mat::identity(n), diag(n, n);
    for (int i = 0; i < n; ++i) {
        diag(i, i) = rand_nonzero_scalar(rng);
        for (int j = 0; j < i; ++j) lower(i, j) = rand_rat(rng, 2, 2);
        for (int j = i + 1; j < n; ++j) upper(i, j) = rand_rat(rng, 2, 2);
    }
    return lower * diag * upper;
}

inline Necklace rand_necklace(SplitMix64& rng, Alphabet alph, int max_terms, int max_len) {
    if (alph == Alphabet::four) throw math_error("rand_necklace: two-letter alphabets only");
    Letter la = alph == Alphabet::unstarred ? Letter::a : Letter::as;
    Letter lb = alph == Alphabet::unstarred ? Letter::b : Letter::bs;
    Necklace f(alph);
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        int len = static_cast<int>(rng.range(1, max_len));
        LWord w;
        for (int k = 0; k < len; ++k) w.push_back(rng.coin() ? la : lb);
        f.add_term(w, rand_nonzero_scalar(rng, false));
    }
    return f;
}

inline Mat rand_sl2(SplitMix64& rng) {
    // [[1,0],[c,1]] * [[1,b],[0,1]] * optional rotation by [[0,-1],[1,0]]
    Mat m{{Scalar(1), rand_rat(rng, 3, 2)}, {Scalar(0), Scalar(1)}};
    Mat l{{Scalar(1), Scalar(0)}, {rand_rat(rng, 3, 2), Scalar(1)}};
    Mat r = l * m;
    if (rng.coin()) r = r * Mat{{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}};
    return r;
}

inline Mat rand_gl2(SplitMix64& rng) {
    for (;;) {
        Mat m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = rand_rat(rng, 3, 2);
        if (!det(m).is_zero()) return m;
    }
}

inline AffineData rand_affine(SplitMix64& rng) {
    AffineData d;
    d.S = rand_sl2(rng);
    d.t = {rand_rat(rng, 2, 2), rand_rat(rng, 2, 2)};
    d.T = rand_gl2(rng);
    return d;
}

/// Random word in the tame generators; f-payloads kept small since composite
/// images grow quickly under substitution.
inline TameWord rand_tame_word(SplitMix64& rng, int max_len, int max_terms = 2, int max_word_len = 3) {
    TameWord w;
    int len = static_cast<int>(rng.range(0, max_len));
    for (int k = 0; k < len; ++k) {
        switch (rng.range(0, 2)) {
            case 0: w.push_back(TameGen::tri(rand_necklace(rng, Alphabet::unstarred, max_terms, max_word_len))); break;
            case 1: w.push_back(TameGen::optri(rand_necklace(rng, Alphabet::starred, max_terms, max_word_len))); break;
            default: w.push_back(TameGen::aff(rand_affine(rng))); break;
        }
    }
    return w;
}

}  // namespace detail

/// Deterministic scrambled fiber point: a Calogero-Moser point with random
/// data, pushed around by a random tame word and a random basis change. The
/// fiber condition is re-checked, not assumed.
inline RepPoint random_fiber_point(int n, const Scalar& tau, SplitMix64& rng) {
    if (n < 1) throw math_error("random_fiber_point: n >= 1");
    std::vector<Scalar> xs, ps;
    for (int i = 0; i < n; ++i) {
        for (;;) {
            Scalar cand = detail::rand_rat(rng, 8, 3);
            bool dup = false;
            for (const auto& x : xs) dup = dup || x == cand;
            if (!dup) {
                xs.push_back(cand);
                break;
            }
        }
        ps.push_back(detail::rand_rat(rng, 4, 3));
    }
    RepPoint pt = cm_point(n, tau, xs, ps);
    pt = act_word(detail::rand_tame_word(rng, 4), pt);
    pt = gl_act(detail::rand_gl(rng, n), pt);
    if (!in_fiber(pt)) throw math_error("random_fiber_point: fiber self-check failed");
    return pt;
}

}  // namespace qsymp
