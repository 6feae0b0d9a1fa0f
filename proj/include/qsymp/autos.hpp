#pragma once

#include "qsymp/matrix.hpp"
#include "qsymp/necklace.hpp"
#include "qsymp/pathalg.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace qsymp {

/// Algebra endomorphism of the path algebra, stored as the six generator
/// images. The induced map fixes e_1 and e_2 and extends multiplicatively;
/// every image must be endpoint-homogeneous with the endpoints of its arrow.
class EndoA {
  public:
    EndoA() {
        for (int k = 0; k < kNumArrows; ++k) img_[static_cast<size_t>(k)] = NcPoly::arrow(static_cast<Arrow>(k));
    }

    static EndoA identity() { return EndoA(); }

    const NcPoly& img(Arrow r) const { return img_[static_cast<size_t>(r)]; }

    void set_img(Arrow r, NcPoly u) {
        auto ends = u.homogeneous_endpoints();
        if (ends && (ends->first != arrow_source(r) || ends->second != arrow_target(r)))
            throw math_error(std::string("EndoA: image of ") + arrow_name(r) + " has wrong endpoints");
        if (!ends && !u.is_zero()) throw math_error("EndoA: image not endpoint-homogeneous");
        img_[static_cast<size_t>(r)] = std::move(u);
    }

    /// Multiplicative-linear extension applied to an arbitrary element.
    NcPoly apply(const NcPoly& u) const {
        NcPoly out;
        for (const auto& [p, c] : u.terms()) {
            if (p.is_trivial()) {
                out.add_term(p, c);
                continue;
            }
            NcPoly prod = img(p.arrows().front());
            for (size_t k = 1; k < p.arrows().size(); ++k) prod *= img(p.arrows()[k]);
            out += c * prod;
        }
        return out;
    }

    friend bool operator==(const EndoA& f, const EndoA& g) { return f.img_ == g.img_; }
    friend bool operator!=(const EndoA& f, const EndoA& g) { return !(f == g); }

  private:
    std::array<NcPoly, kNumArrows> img_;
};

/// Function-style composition: compose(phi, psi)(r) = phi^(psi(r)), i.e. the
/// automorphism psi followed by phi.
inline EndoA compose(const EndoA& phi, const EndoA& psi) {
    EndoA out;
    for (int k = 0; k < kNumArrows; ++k) {
        Arrow r = static_cast<Arrow>(k);
        out.set_img(r, phi.apply(psi.img(r)));
    }
    return out;
}

/// apply with a hard bound on intermediate term counts; nullopt on overflow.
/// Composites of tame generators can swell combinatorially, so randomized
/// suites sample from the budget-bounded family to stay deterministic and
/// fast.
inline std::optional<NcPoly> apply_capped(const EndoA& phi, const NcPoly& u, size_t cap) {
    NcPoly out;
    for (const auto& [p, c] : u.terms()) {
        if (p.is_trivial()) {
            out.add_term(p, c);
            continue;
        }
        NcPoly prod = phi.img(p.arrows().front());
        for (size_t k = 1; k < p.arrows().size(); ++k) {
            prod *= phi.img(p.arrows()[k]);
            if (prod.size() > cap) return std::nullopt;
        }
        out += c * prod;
        if (out.size() > cap) return std::nullopt;
    }
    return out;
}

inline std::optional<EndoA> compose_capped(const EndoA& phi, const EndoA& psi, size_t cap) {
    EndoA out;
    for (int k = 0; k < kNumArrows; ++k) {
        Arrow r = static_cast<Arrow>(k);
        auto img = apply_capped(phi, psi.img(r), cap);
        if (!img) return std::nullopt;
        out.set_img(r, std::move(*img));
    }
    return out;
}

/// Strictly triangular automorphism Lambda(f): fixes a, x, y; shifts the
/// starred arrows by necklace derivatives of f with b = xy substituted.
inline EndoA lambda_tri(const Necklace& f) {
    if (f.alphabet() != Alphabet::unstarred) throw math_error("lambda_tri: f must live over {a,b}");
    NcPoly da = substitute_loops(necklace_derive(f, Letter::a), false);
    NcPoly db = substitute_loops(necklace_derive(f, Letter::b), false);
    EndoA e;
    e.set_img(Arrow::astar, NcPoly::arrow(Arrow::astar) + da);
    e.set_img(Arrow::xstar, NcPoly::arrow(Arrow::xstar) + NcPoly::arrow(Arrow::y) * db);
    e.set_img(Arrow::ystar, NcPoly::arrow(Arrow::ystar) + db * NcPoly::arrow(Arrow::x));
    return e;
}

/// Strictly op-triangular automorphism Lambda'(f): fixes a*, x*, y*; shifts
/// the unstarred arrows, with b* = y*x* substituted.
inline EndoA lambda_op(const Necklace& f) {
    if (f.alphabet() != Alphabet::starred) throw math_error("lambda_op: f must live over {a*,b*}");
    NcPoly da = substitute_loops(necklace_derive(f, Letter::as), true);
    NcPoly db = substitute_loops(necklace_derive(f, Letter::bs), true);
    EndoA e;
    e.set_img(Arrow::a, NcPoly::arrow(Arrow::a) + da);
    e.set_img(Arrow::x, NcPoly::arrow(Arrow::x) + db * NcPoly::arrow(Arrow::ystar));
    e.set_img(Arrow::y, NcPoly::arrow(Arrow::y) + NcPoly::arrow(Arrow::xstar) * db);
    return e;
}

/// Data of an affine symplectic automorphism: S in SL_2 plus a translation t
/// acting on span(a, a*), and invertible T acting on span(x, x*, y, y*).
///
/// The T-action is normalized so that on representation points v -> v T and
/// w -> T^{-1} w; on symbols that reads
///   x  ->  T11 x - T21 y*         x* -> U11 x* + U12 y
///   y* -> -T12 x + T22 y*         y  -> U21 x* + U22 y      (U = T^{-1}).
/// This is the labeling under which T -> (I,T) is a group morphism for
/// function-style composition and matches the unipotent generators below.
struct AffineData {
    Mat S = Mat::identity(2);
    std::array<Scalar, 2> t{Scalar(0), Scalar(0)};
    Mat T = Mat::identity(2);

    void validate() const {
        if (S.rows() != 2 || S.cols() != 2 || T.rows() != 2 || T.cols() != 2)
            throw math_error("AffineData: matrices must be 2x2");
        if (det(S) != Scalar(1)) throw math_error("AffineData: det S must be 1");
        if (det(T).is_zero()) throw math_error("AffineData: T must be invertible");
    }

    AffineData inverse() const {
        AffineData r;
        r.S = qsymp::inverse(S);
        Mat tv(2, 1);
        tv(0, 0) = t[0];
        tv(1, 0) = t[1];
        Mat ti = r.S * tv;
        r.t = {-ti(0, 0), -ti(1, 0)};
        r.T = qsymp::inverse(T);
        return r;
    }

    friend bool operator==(const AffineData& a, const AffineData& b) {
        return a.S == b.S && a.t == b.t && a.T == b.T;
    }
};

inline AffineData central_scaling_data(const Scalar& lambda) {
    if (lambda.is_zero()) throw math_error("central scaling needs lambda != 0");
    AffineData d;
    d.T = Mat{{lambda, Scalar(0)}, {Scalar(0), lambda}};
    return d;
}

inline AffineData fourier_data() {
    AffineData d;
    d.S = Mat{{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}};
    d.T = Mat{{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}};
    return d;
}

inline EndoA affine_endo(const AffineData& d) {
    d.validate();
    Mat U = inverse(d.T);
    EndoA e;
    NcPoly a = NcPoly::arrow(Arrow::a), as = NcPoly::arrow(Arrow::astar);
    NcPoly x = NcPoly::arrow(Arrow::x), xs = NcPoly::arrow(Arrow::xstar);
    NcPoly y = NcPoly::arrow(Arrow::y), ys = NcPoly::arrow(Arrow::ystar);
    NcPoly e1 = NcPoly::e(1);
    e.set_img(Arrow::a, d.S(0, 0) * a + d.S(0, 1) * as + d.t[0] * e1);
    e.set_img(Arrow::astar, d.S(1, 0) * a + d.S(1, 1) * as + d.t[1] * e1);
    e.set_img(Arrow::x, d.T(0, 0) * x - d.T(1, 0) * ys);
    e.set_img(Arrow::ystar, -(d.T(0, 1)) * x + d.T(1, 1) * ys);
    e.set_img(Arrow::xstar, U(0, 0) * xs + U(0, 1) * y);
    e.set_img(Arrow::y, U(1, 0) * xs + U(1, 1) * y);
    return e;
}

/// The formal Fourier transform: (a, a*, x, x*, y, y*) -> (-a*, a, -y*, y, -x*, x).
inline EndoA fourier() { return affine_endo(fourier_data()); }
inline EndoA fourier_inverse() { return affine_endo(fourier_data().inverse()); }

/// Central scaling z_lambda: x, y* scale by lambda; x*, y by 1/lambda.
inline EndoA central_scaling(const Scalar& lambda) { return affine_endo(central_scaling_data(lambda)); }

/// phi(c) = c, exactly.
inline bool is_symplectic(const EndoA& phi) { return phi.apply(symplectic_c()) == symplectic_c(); }

namespace detail {
/// Candidate ratio psi_img = lambda * phi_img, or nullopt.
inline std::optional<Scalar> image_ratio(const NcPoly& phi_img, const NcPoly& psi_img) {
    if (phi_img.is_zero() && psi_img.is_zero()) return std::nullopt;  // no information
    if (phi_img.is_zero() || psi_img.is_zero()) return Scalar(0);     // impossible marker
    const auto& [p, c] = *phi_img.terms().begin();
    Scalar lambda = psi_img.coeff(p) / c;
    if (lambda.is_zero()) return Scalar(0);
    if (psi_img != lambda * phi_img) return Scalar(0);
    return lambda;
}
}  // namespace detail

/// Equality in PTAut: returns lambda with psi = phi o z_lambda (images of a,
/// a* equal; x, y* images scaled by lambda; x*, y by 1/lambda), or nullopt.
inline std::optional<Scalar> ptaut_equal(const EndoA& phi, const EndoA& psi) {
    if (phi.img(Arrow::a) != psi.img(Arrow::a) || phi.img(Arrow::astar) != psi.img(Arrow::astar))
        return std::nullopt;

    std::optional<Scalar> lambda;
    for (Arrow r : {Arrow::x, Arrow::ystar}) {
        auto ratio = detail::image_ratio(phi.img(r), psi.img(r));
        if (!ratio) continue;
        if (ratio->is_zero()) return std::nullopt;
        if (lambda && *lambda != *ratio) return std::nullopt;
        lambda = *ratio;
    }
    for (Arrow r : {Arrow::xstar, Arrow::y}) {
        auto ratio = detail::image_ratio(phi.img(r), psi.img(r));
        if (!ratio) continue;
        if (ratio->is_zero()) return std::nullopt;
        Scalar lam = ratio->inverse();
        if (lambda && *lambda != lam) return std::nullopt;
        lambda = lam;
    }
    if (!lambda) lambda = Scalar(1);  // all scaled images zero on both sides
    // Re-verify all six images against the candidate.
    Scalar lam = *lambda, inv = lam.inverse();
    if (psi.img(Arrow::x) != lam * phi.img(Arrow::x)) return std::nullopt;
    if (psi.img(Arrow::ystar) != lam * phi.img(Arrow::ystar)) return std::nullopt;
    if (psi.img(Arrow::xstar) != inv * phi.img(Arrow::xstar)) return std::nullopt;
    if (psi.img(Arrow::y) != inv * phi.img(Arrow::y)) return std::nullopt;
    return lam;
}

/// Generators of the tame symplectic group, as data.
struct TameGen {
    enum class Kind { tri, optri, aff };
    Kind kind = Kind::aff;
    Necklace f{Alphabet::unstarred};  // tri payload (or starred for optri)
    AffineData ad;

    static TameGen tri(Necklace f) {
        TameGen g;
        g.kind = Kind::tri;
        if (f.alphabet() != Alphabet::unstarred) throw math_error("TameGen::tri: wrong alphabet");
        g.f = std::move(f);
        return g;
    }
    static TameGen optri(Necklace f) {
        TameGen g;
        g.kind = Kind::optri;
        if (f.alphabet() != Alphabet::starred) throw math_error("TameGen::optri: wrong alphabet");
        g.f = std::move(f);
        return g;
    }
    static TameGen aff(AffineData d) {
        d.validate();
        TameGen g;
        g.kind = Kind::aff;
        g.ad = std::move(d);
        return g;
    }

    EndoA endo() const {
        switch (kind) {
            case Kind::tri: return lambda_tri(f);
            case Kind::optri: return lambda_op(f);
            case Kind::aff: return affine_endo(ad);
        }
        throw math_error("TameGen: bad kind");
    }

    TameGen inverse() const {
        TameGen g = *this;
        if (kind == Kind::aff)
            g.ad = ad.inverse();
        else
            g.f = -f;
        return g;
    }
};

using TameWord = std::vector<TameGen>;

/// Compiled endomorphism of a word (g_1, ..., g_m), namely g_1 o g_2 o ... o
/// g_m. Under the right action on points g_1 is applied first.
inline EndoA compile(const TameWord& w) {
    EndoA acc = EndoA::identity();
    for (size_t k = w.size(); k-- > 0;) acc = compose(w[k].endo(), acc);
    return acc;
}

inline std::optional<EndoA> compile_capped(const TameWord& w, size_t cap) {
    EndoA acc = EndoA::identity();
    for (size_t k = w.size(); k-- > 0;) {
        auto next = compose_capped(w[k].endo(), acc, cap);
        if (!next) return std::nullopt;
        acc = std::move(*next);
    }
    return acc;
}

inline TameWord invert_word(const TameWord& w) {
    TameWord out;
    out.reserve(w.size());
    for (size_t k = w.size(); k-- > 0;) out.push_back(w[k].inverse());
    return out;
}

}  // namespace qsymp
