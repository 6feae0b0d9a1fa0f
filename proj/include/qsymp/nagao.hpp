#pragma once

#include "qsymp/autos.hpp"
#include "qsymp/matrix.hpp"
#include "qsymp/necklace.hpp"
#include "qsymp/poly.hpp"

#include <utility>
#include <vector>

namespace qsymp {

using PolyMat2 = Matrix<Poly>;

inline PolyMat2 pm_identity() { return PolyMat2::identity(2); }

inline Poly pm_det(const PolyMat2& m) {
    if (m.rows() != 2 || m.cols() != 2) throw math_error("PolyMat2 must be 2x2");
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// GL_2(K[z]) membership: determinant is a nonzero constant.
inline void pm_validate(const PolyMat2& m) {
    Poly d = pm_det(m);
    if (d.is_zero() || !d.is_constant())
        throw math_error("PolyMat2: determinant must be a nonzero constant, got " + d.str());
}

inline PolyMat2 pm_from_const(const Mat& c) { return c.map<Poly>(); }

inline PolyMat2 pm_scale(const PolyMat2& m, const Scalar& s) {
    PolyMat2 r = m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = Poly(s) * r(i, j);
    return r;
}

inline bool pm_is_constant(const PolyMat2& m) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!m(i, j).is_constant()) return false;
    return true;
}

inline Mat pm_to_const(const PolyMat2& m) {
    Mat c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).constant_term();
    return c;
}

/// Lower triangular with nonzero constant diagonal, i.e. an element of
/// B_2(K[z]).
inline bool pm_in_B2(const PolyMat2& m) {
    return m(0, 1).is_zero() && m(0, 0).is_constant() && !m(0, 0).is_zero() &&
           m(1, 1).is_constant() && !m(1, 1).is_zero();
}

/// Unique splitting B = [[1,0],[u,1]] . diag(d1, d2) of an element of
/// B_2(K[z]).
inline std::pair<Poly, std::array<Scalar, 2>> b2_split(const PolyMat2& B) {
    if (B.rows() != 2 || B.cols() != 2 || !pm_in_B2(B))
        throw math_error("b2_split: input not in B2(K[z])");
    Scalar d1 = B(0, 0).constant_term(), d2 = B(1, 1).constant_term();
    Poly u = Poly(d1.inverse()) * B(1, 0);
    return {u, {d1, d2}};
}

/// One factor of an amalgamated word: a constant invertible matrix or an
/// element of B_2(K[z]).
struct NagaoFactor {
    enum class Tag { C, B };
    Tag tag = Tag::C;
    Mat cmat = Mat::identity(2);
    PolyMat2 bmat = pm_identity();

    static NagaoFactor C(Mat m) {
        if (m.rows() != 2 || m.cols() != 2 || det(m).is_zero())
            throw math_error("NagaoFactor: C factor must be invertible 2x2");
        NagaoFactor f;
        f.tag = Tag::C;
        f.cmat = std::move(m);
        return f;
    }
    static NagaoFactor B(PolyMat2 m) {
        if (m.rows() != 2 || m.cols() != 2 || !pm_in_B2(m))
            throw math_error("NagaoFactor: B factor must lie in B2(K[z])");
        NagaoFactor f;
        f.tag = Tag::B;
        f.bmat = std::move(m);
        return f;
    }

    PolyMat2 matrix() const { return tag == Tag::C ? pm_from_const(cmat) : bmat; }
    bool is_identity() const { return matrix() == pm_identity(); }
};

using NagaoWord = std::vector<NagaoFactor>;

inline PolyMat2 reassemble(const NagaoWord& w) {
    PolyMat2 acc = pm_identity();
    for (const auto& f : w) acc = acc * f.matrix();
    return acc;
}

inline bool alternation_holds(const NagaoWord& w) {
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k].tag == w[k + 1].tag) return false;
    return true;
}

namespace detail {

/// Merge adjacent same-tag factors and drop identity factors.
inline NagaoWord normalize_word(NagaoWord w) {
    for (bool changed = true; changed;) {
        changed = false;
        NagaoWord out;
        for (auto& f : w) {
            if (f.is_identity()) {
                changed = true;
                continue;
            }
            if (!out.empty() && out.back().tag == f.tag) {
                if (f.tag == NagaoFactor::Tag::C)
                    out.back() = NagaoFactor::C(out.back().cmat * f.cmat);
                else
                    out.back() = NagaoFactor::B(out.back().bmat * f.bmat);
                changed = true;
            } else {
                out.push_back(std::move(f));
            }
        }
        w = std::move(out);
    }
    return w;
}

}  // namespace detail

/// Factor M in GL_2(K[z]) into an alternating product of constant matrices
/// and elements of B_2(K[z]), by Euclidean reduction on the second column:
/// while the top-right entry is nonzero, either clear degrees with a row
/// operation (a B factor) or swap rows (a C factor). Round-tripping through
/// reassemble is exact by construction.
inline NagaoWord nagao_decompose(PolyMat2 m) {
    pm_validate(m);
    if (pm_is_constant(m)) return {NagaoFactor::C(pm_to_const(m))};
    Mat swap{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    NagaoWord peeled;
    int guard = 0;
    while (!m(0, 1).is_zero()) {
        if (++guard > 10000) throw math_error("nagao_decompose: reduction failed to terminate");
        const Poly& b = m(0, 1);
        const Poly& d = m(1, 1);
        if (d.is_zero() || d.degree() < b.degree()) {
            // Swap rows; the inverse swap joins the word.
            m = pm_from_const(swap) * m;
            peeled.push_back(NagaoFactor::C(swap));
        } else {
            Poly q = poly_divmod(d, b).first;
            // row2 -= q * row1  <=>  left-multiply by [[1,0],[-q,1]].
            PolyMat2 op = pm_identity();
            op(1, 0) = -q;
            m = op * m;
            PolyMat2 inv = pm_identity();
            inv(1, 0) = q;
            peeled.push_back(NagaoFactor::B(std::move(inv)));
        }
    }
    if (!pm_in_B2(m)) throw math_error("nagao_decompose: reduction left B2 (unit determinant?)");
    NagaoWord word = std::move(peeled);
    if (pm_is_constant(m))
        word.push_back(NagaoFactor::C(pm_to_const(m)));
    else
        word.push_back(NagaoFactor::B(std::move(m)));
    word = detail::normalize_word(std::move(word));
    if (word.empty()) word.push_back(NagaoFactor::C(Mat::identity(2)));
    return word;
}

/// Constant matrices act affinely on span(x, x*, y, y*) only.
inline EndoA j1(const Mat& T) {
    AffineData d;
    d.T = T;
    return affine_endo(d);
}

/// B_2(K[z]) embeds via the unique splitting: [[1,0],[u,1]] goes to
/// Lambda'(-u(a*) b*) and diag(d1,d2) to the affine pair (I, diag).
inline EndoA j2(const PolyMat2& B) {
    auto [u, d] = b2_split(B);
    Mat diag{{d[0], Scalar(0)}, {Scalar(0), d[1]}};
    return compose(lambda_op(poly_times_loop(-u, true)), j1(diag));
}

/// Scalar part of Gamma^alg: e^p acts as Lambda'(-p(a*)), moving only a.
inline EndoA j3(const Poly& p) {
    if (!p.constant_term().is_zero()) throw math_error("j3: p must have zero constant term");
    return lambda_op(poly_of_letter(-p, true));
}

/// The morphism GL_2(K[z]) -> TAut through a chosen factorization; the group
/// law k(M1 M2) = k(M1) o k(M2) is verified empirically by the suites.
inline EndoA k_map(const PolyMat2& m) {
    EndoA acc = EndoA::identity();
    for (const auto& f : nagao_decompose(m))
        acc = compose(acc, f.tag == NagaoFactor::Tag::C ? j1(f.cmat) : j2(f.bmat));
    return acc;
}

/// Element (e^p, M) of Gamma^alg_sc x PGL_2(K[z]). M is stored with the
/// first nonzero entry (row-major) made monic; semantic comparisons of the
/// images always go through ptaut_equal.
struct GammaElem {
    Poly p;
    PolyMat2 M = pm_identity();

    static GammaElem make(Poly p, PolyMat2 m) {
        if (!p.constant_term().is_zero()) throw math_error("GammaElem: p(0) must be 0");
        pm_validate(m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!m(i, j).is_zero()) {
                    Scalar lead = m(i, j).leading();
                    GammaElem g;
                    g.p = std::move(p);
                    g.M = pm_scale(m, lead.inverse());
                    return g;
                }
        throw math_error("GammaElem: zero matrix");
    }

    GammaElem mul(const GammaElem& o) const { return make(p + o.p, M * o.M); }

    friend bool operator==(const GammaElem& a, const GammaElem& b) { return a.p == b.p && a.M == b.M; }
};

/// i(e^p M) = j3(p) o k(M), a PTAut representative.
inline EndoA i_map(const GammaElem& g) { return compose(j3(g.p), k_map(g.M)); }

}  // namespace qsymp
