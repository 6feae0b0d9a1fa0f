#pragma once

#include "qsymp/autos.hpp"
#include "qsymp/dual.hpp"
#include "qsymp/necklace.hpp"
#include "qsymp/reps.hpp"

#include <utility>

namespace qsymp {

/// A Gibbons-Hermsen Hamiltonian: J(k, alpha) = tr Y^k v alpha w, or the
/// necklace-word families H(f) (words in X and v e12 w) and H'(f) (words in
/// Y and v e21 w).
struct HamSpec {
    enum class Kind { J, H, Hp };
    Kind kind = Kind::J;
    int k = 0;                      // J
    Mat alpha = Mat::identity(2);   // J
    Necklace f{Alphabet::unstarred};  // H / Hp

    static HamSpec J(int k, Mat alpha) {
        if (k < 0) throw math_error("HamSpec: J needs k >= 0");
        if (alpha.rows() != 2 || alpha.cols() != 2) throw math_error("HamSpec: alpha must be 2x2");
        HamSpec h;
        h.kind = Kind::J;
        h.k = k;
        h.alpha = std::move(alpha);
        return h;
    }
    static HamSpec H(Necklace f) {
        if (f.alphabet() != Alphabet::unstarred) throw math_error("HamSpec: H takes words in {a,b}");
        HamSpec h;
        h.kind = Kind::H;
        h.f = std::move(f);
        return h;
    }
    static HamSpec Hp(Necklace f) {
        if (f.alphabet() != Alphabet::starred) throw math_error("HamSpec: Hp takes words in {a*,b*}");
        HamSpec h;
        h.kind = Kind::Hp;
        h.f = std::move(f);
        return h;
    }
};

namespace detail {

template <class R>
Matrix<R> e_matrix(int r, int c) {
    Matrix<R> m(2, 2);
    m(r, c) = R(Scalar(1));
    return m;
}

/// Trace evaluation over an arbitrary commutative ring; this is what makes
/// exact dual-number differentiation of the Hamiltonians a one-liner.
template <class R>
R eval_ham_ring(const HamSpec& h, const Matrix<R>& X, const Matrix<R>& Y, const Matrix<R>& v,
                const Matrix<R>& w) {
    int n = X.rows();
    if (h.kind == HamSpec::Kind::J) {
        Matrix<R> alpha(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) alpha(r, c) = R(h.alpha(r, c));
        return (Y.pow(h.k) * v * alpha * w).trace();
    }
    bool starred = h.kind == HamSpec::Kind::Hp;
    const Matrix<R>& base = starred ? Y : X;
    Matrix<R> loop = starred ? v * e_matrix<R>(1, 0) * w : v * e_matrix<R>(0, 1) * w;
    R total(Scalar(0));
    for (const auto& [word, coeff] : h.f.terms()) {
        Matrix<R> prod = Matrix<R>::identity(n);
        for (Letter l : word) {
            if (l == Letter::a || l == Letter::as)
                prod = prod * base;
            else
                prod = prod * loop;
        }
        total += R(coeff) * prod.trace();
    }
    return total;
}

inline Matrix<Dual> lift(const Mat& m) { return m.template map<Dual>(); }

}  // namespace detail

inline Scalar eval_ham(const HamSpec& h, const RepPoint& pt) {
    VForm f = to_vform(pt);
    return detail::eval_ham_ring<Scalar>(h, f.X, f.Y, f.v, f.w);
}

/// Exact partials of a Hamiltonian with respect to every phase-space entry,
/// one dual-number evaluation per coordinate.
struct HamGradient {
    Mat dX, dY;  // n x n
    Mat dv;      // n x 2
    Mat dw;      // 2 x n
};

inline HamGradient ham_gradient(const HamSpec& h, const VForm& f) {
    int n = f.X.rows();
    Matrix<Dual> X = detail::lift(f.X), Y = detail::lift(f.Y), v = detail::lift(f.v),
                 w = detail::lift(f.w);
    HamGradient g{Mat(n, n), Mat(n, n), Mat(n, 2), Mat(2, n)};
    auto probe = [&](Matrix<Dual>& m, int r, int c) {
        m(r, c).der = Scalar(1);
        Dual out = detail::eval_ham_ring<Dual>(h, X, Y, v, w);
        m(r, c).der = Scalar(0);
        return out.der;
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            g.dX(r, c) = probe(X, r, c);
            g.dY(r, c) = probe(Y, r, c);
        }
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < 2; ++s) {
            g.dv(r, s) = probe(v, r, s);
            g.dw(s, r) = probe(w, s, r);
        }
    return g;
}

/// Canonical Poisson bracket of two Hamiltonians evaluated at a point. The
/// orientation of the two canonical blocks is pinned by two exact tests:
/// {tr X, tr Y} = n and {J(m,alpha), J(l,beta)} = J(m+l, [alpha,beta]).
inline Scalar bracket_from_gradients(const HamGradient& g1, const HamGradient& g2) {
    Scalar acc(0);
    int n = g1.dX.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            acc += g1.dX(i, j) * g2.dY(j, i) - g1.dY(j, i) * g2.dX(i, j);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 2; ++s)
            acc += g1.dw(s, i) * g2.dv(i, s) - g1.dv(i, s) * g2.dw(s, i);
    return acc;
}

inline Scalar poisson_bracket(const HamSpec& h1, const HamSpec& h2, const RepPoint& pt) {
    VForm f = to_vform(pt);
    return bracket_from_gradients(ham_gradient(h1, f), ham_gradient(h2, f));
}

/// Closed-form flow of H(f): X, v_{.1}, w_{2.} are constants of motion, and
/// Y, v_{.2}, w_{1.} move linearly in t. For each occurrence of a letter in a
/// cyclic word the shift is the product of the remaining letters read
/// cyclically from just after the occurrence, with a -> X and b -> v_{.1} w_{2.}.
inline RepPoint flow_H(const Necklace& f, const Scalar& t, const RepPoint& pt) {
    if (f.alphabet() != Alphabet::unstarred) throw math_error("flow_H: f must live over {a,b}");
    VForm vf = to_vform(pt);
    int n = pt.n;
    Mat v1(n, 1), w2(1, n);
    for (int i = 0; i < n; ++i) {
        v1(i, 0) = vf.v(i, 0);
        w2(0, i) = vf.w(1, i);
    }
    Mat P0 = v1 * w2;
    Mat dY(n, n), S(n, n);
    for (const auto& [word, coeff] : f.terms()) {
        size_t len = word.size();
        for (size_t p = 0; p < len; ++p) {
            Mat prod = Mat::identity(n);
            for (size_t k = 1; k < len; ++k) {
                Letter l = word[(p + k) % len];
                prod = prod * (l == Letter::a ? vf.X : P0);
            }
            if (word[p] == Letter::a)
                dY += coeff * prod;
            else
                S += coeff * prod;
        }
    }
    vf.Y -= t * dY;
    Mat dv2 = t * (S * v1), dw1 = t * (w2 * S);
    for (int i = 0; i < n; ++i) {
        vf.v(i, 1) += dv2(i, 0);
        vf.w(0, i) -= dw1(0, i);
    }
    return from_vform(vf, pt.tau);
}

/// Flow of H'(f), routed through the Fourier conjugation
/// Lambda'(g) = F^{-1} o Lambda(-mirror g) o F; the direct J_{k,e21} flow is
/// cross-checked against this in the test suite.
inline RepPoint flow_Hp(const Necklace& f, const Scalar& t, const RepPoint& pt) {
    if (f.alphabet() != Alphabet::starred) throw math_error("flow_Hp: f must live over {a*,b*}");
    RepPoint q = act_endo(fourier_inverse(), pt);
    q = flow_H(-mirror(f), t, q);
    return act_endo(fourier(), q);
}

/// The central identity: the unit-time flow of H(f) (resp. H'(f)) equals the
/// action of Lambda(-f) (resp. Lambda'(-f)).
inline bool verify_flow_theorem(const Necklace& f, const RepPoint& pt) {
    switch (f.alphabet()) {
        case Alphabet::unstarred: return flow_H(f, Scalar(1), pt) == act_endo(lambda_tri(-f), pt);
        case Alphabet::starred: return flow_Hp(f, Scalar(1), pt) == act_endo(lambda_op(-f), pt);
        default: throw math_error("verify_flow_theorem: two-letter alphabets only");
    }
}

/// Evaluate a four-letter necklace at (X, Y, v e12 w, v e21 w); the image of
/// the map sending cyclic words to invariant trace functions.
inline Scalar psi_eval(const Necklace& g, const VForm& f) {
    int n = f.X.rows();
    Mat P = f.v * detail::e_matrix<Scalar>(0, 1) * f.w;
    Mat Q = f.v * detail::e_matrix<Scalar>(1, 0) * f.w;
    Scalar total(0);
    for (const auto& [word, coeff] : g.terms()) {
        Mat prod = Mat::identity(n);
        for (Letter l : word) {
            switch (l) {
                case Letter::a: prod = prod * f.X; break;
                case Letter::as: prod = prod * f.Y; break;
                case Letter::b: prod = prod * P; break;
                case Letter::bs: prod = prod * Q; break;
            }
        }
        total += coeff * prod.trace();
    }
    return total;
}

}  // namespace qsymp
