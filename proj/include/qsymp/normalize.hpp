#pragma once

#include "qsymp/autos.hpp"
#include "qsymp/poly.hpp"
#include "qsymp/reps.hpp"
#include "qsymp/rng.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace qsymp {

struct not_regular_semisimple : math_error {
    using math_error::math_error;
};
struct spectrum_not_split : math_error {
    using math_error::math_error;
};
struct normalization_failed : math_error {
    using math_error::math_error;
};

namespace detail {

struct GInt {
    Int re, im;
    Int norm() const { return re * re + im * im; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GInt conj() const { return {re, -im}; }
    friend GInt operator*(const GInt& a, const GInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

/// Exact quotient a/b in Z[i], or nullopt when b does not divide a.
inline std::optional<GInt> gint_divide(const GInt& a, const GInt& b) {
    Int n = b.norm();
    if (n.is_zero()) return std::nullopt;
    GInt t = a * b.conj();
    if (t.re % n != 0 || t.im % n != 0) return std::nullopt;
    return GInt{t.re / n, t.im / n};
}

/// Trial-division factorization; nullopt when a factor beyond the bound
/// survives (the candidate enumeration would be incomplete). The bound keeps
/// the not-split/inconclusive verdict cheap on scrambled data whose
/// coefficient norms explode; split spectra produced at desk scale factor
/// well inside it.
inline std::optional<std::vector<std::pair<Int, int>>> factor_int(Int n, int64_t bound = 20000) {
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> out;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p <= bound; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (n > Int(bound) * Int(bound)) return std::nullopt;  // might be composite
        out.emplace_back(n, 1);
    }
    return out;
}

/// Write prime p = a^2 + b^2 (exists iff p = 2 or p = 1 mod 4).
inline std::optional<GInt> two_squares(const Int& p) {
    for (Int a = 1; a * a * 2 <= p; ++a) {
        Int b2 = p - a * a;
        Int b = sqrt(b2);
        if (b * b == b2) return GInt{a, b};
    }
    if (p == 2) return GInt{1, 1};
    return std::nullopt;
}

/// Gaussian prime factorization of g (unit discarded); nullopt if out of
/// reach for the trial-division bound.
inline std::optional<std::vector<std::pair<GInt, int>>> factor_gint(const GInt& g) {
    std::vector<std::pair<GInt, int>> out;
    if (g.is_zero()) throw math_error("factor_gint: zero");
    auto rational = factor_int(g.norm());
    if (!rational) return std::nullopt;
    GInt rest = g;
    auto strip = [&](const GInt& pi) {
        int e = 0;
        for (;;) {
            auto q = gint_divide(rest, pi);
            if (!q) break;
            rest = *q;
            ++e;
        }
        if (e) out.emplace_back(pi, e);
    };
    for (const auto& [p, e] : *rational) {
        (void)e;
        if (p == 2) {
            strip(GInt{1, 1});
        } else if (p % 4 == 3) {
            strip(GInt{p, 0});
        } else {
            auto ab = two_squares(p);
            if (!ab) return std::nullopt;
            strip(*ab);
            strip(ab->conj());
        }
    }
    // What survives must be a unit.
    if (rest.norm() != 1) return std::nullopt;
    return out;
}

inline std::optional<std::vector<GInt>> gint_divisors(const GInt& g, size_t cap = 8192) {
    auto fac = factor_gint(g);
    if (!fac) return std::nullopt;
    std::vector<GInt> out{GInt{1, 0}};
    for (const auto& [pi, e] : *fac) {
        std::vector<GInt> next;
        for (const auto& d : out) {
            GInt cur = d;
            for (int k = 0; k <= e; ++k) {
                next.push_back(cur);
                if (k < e) cur = cur * pi;
            }
        }
        out = std::move(next);
        if (out.size() > cap) return std::nullopt;
    }
    return out;
}

}  // namespace detail

enum class RootStatus { split, not_split, inconclusive };

struct RootSearch {
    RootStatus status = RootStatus::inconclusive;
    std::vector<Scalar> roots;  // with multiplicity, only meaningful when split
};

/// All roots of f in Q(i), by the rational root theorem over the Gaussian
/// integers: candidates are ratios of divisors of the cleared trailing and
/// leading coefficients. Complete whenever the coefficient norms factor
/// within the trial-division bound; otherwise reports inconclusive.
inline RootSearch gaussian_roots(Poly f) {
    RootSearch out;
    if (f.is_zero()) throw math_error("gaussian_roots: zero polynomial");
    f = f.monic();
    while (!f.is_zero() && f.constant_term().is_zero() && f.degree() >= 1) {
        out.roots.push_back(Scalar(0));
        std::vector<Scalar> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = Poly(std::move(shifted));
    }
    if (f.degree() == 0) {
        out.status = RootStatus::split;
        return out;
    }

    Int den(1);
    for (const auto& c : f.coeffs()) den = lcm(lcm(den, denominator(c.re())), denominator(c.im()));
    // A split spectrum with roots of modest height has modest symmetric
    // functions; oversized coefficients mean the search cannot finish and the
    // verdict is inconclusive rather than a long stall.
    if (msb(den) > 96) return out;
    Scalar c0 = Scalar(Rat(den)) * f.constant_term();
    detail::GInt g0{numerator(c0.re()), numerator(c0.im())};
    if (msb(g0.norm()) > 192) return out;
    auto num_divs = detail::gint_divisors(g0);
    auto den_divs = detail::gint_divisors(detail::GInt{den, 0});
    if (!num_divs || !den_divs) return out;  // inconclusive
    if (num_divs->size() * den_divs->size() > 16384) return out;

    std::set<Scalar> candidates;
    const Scalar I = Scalar::i();
    for (const auto& u : *num_divs)
        for (const auto& w : *den_divs) {
            Scalar base = Scalar(Rat(u.re), Rat(u.im)) / Scalar(Rat(w.re), Rat(w.im));
            Scalar cand = base;
            for (int k = 0; k < 4; ++k) {
                candidates.insert(cand);
                cand *= I;
            }
        }

    for (const auto& lambda : candidates) {
        while (f.degree() >= 1 && f.eval(lambda).is_zero()) {
            out.roots.push_back(lambda);
            f = poly_divmod(f, Poly::z() - Poly(lambda)).first;
        }
        if (f.degree() == 0) break;
    }
    out.status = f.degree() == 0 ? RootStatus::split : RootStatus::not_split;
    return out;
}

/// Eigenvalues in Q(i) (triangular fast path, then the root search).
inline RootSearch eigenvalues(const Mat& m) {
    bool lower = true, upper = true;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i < j && !m(i, j).is_zero()) lower = false;
            if (i > j && !m(i, j).is_zero()) upper = false;
        }
    if (lower || upper) {
        RootSearch out;
        out.status = RootStatus::split;
        for (int i = 0; i < m.rows(); ++i) out.roots.push_back(m(i, i));
        return out;
    }
    return gaussian_roots(charpoly(m));
}

struct NormalizeResult {
    TameWord word;
    Mat gl;
    RepPoint result;
};

namespace detail {

inline Mat column(const Mat& m, int c) {
    Mat out(m.rows(), 1);
    for (int r = 0; r < m.rows(); ++r) out(r, 0) = m(r, c);
    return out;
}

/// Random shear mix (I, T) with T = [[1, t12],[t21, 1]], det != 0.
inline TameGen random_column_mix(SplitMix64& rng) {
    for (;;) {
        AffineData d;
        d.T = Mat{{Scalar(1), rand_rat(rng, 3, 2)}, {rand_rat(rng, 3, 2), Scalar(1)}};
        if (det(d.T).is_zero()) continue;
        return TameGen::aff(d);
    }
}

}  // namespace detail

/// Move a fiber point with X or Y regular semisimple (and split spectrum)
/// into the slice M_n = {v_{.2} = 0, w_{2.} = 0}, using only generators of
/// the subgroup generated by the Fourier transform, affine pairs (I,T),
/// triangular Lambda(-p(a)b) and op-triangular Lambda'(-q(a*)b*):
///   1. swap roles through F^{-1} when Y is the regular semisimple side;
///   2. diagonalize X by a basis change (the returned gl);
///   3. mix columns of v by a generic (I,T) until v_{.1} has no zero entry;
///   4. kill v_{.2} with Lambda(-p(a)b), p interpolated on the spectrum;
///   5. kill w_{2.} with Lambda'(-q(a*)b*), q solved from w2 = w1 q(Y);
///   6. retry behind a fresh random scramble when a linear system degenerates.
/// The postconditions are machine-checked before returning.
inline NormalizeResult normalize_to_Mn(const RepPoint& pt, uint64_t seed = 0) {
    pt.check_shapes();
    if (!in_fiber(pt)) throw math_error("normalize_to_Mn: point is not in the moment fiber");
    if (in_Mn(pt)) return {TameWord{}, Mat::identity(pt.n), pt};

    TameWord word;
    RepPoint cur = pt;

    RootSearch ex = eigenvalues(cur.A);
    bool x_ok = is_regss(cur.A) && ex.status == RootStatus::split;
    if (!x_ok) {
        RootSearch ey = eigenvalues(cur.B);
        bool y_ok = is_regss(cur.B) && ey.status == RootStatus::split;
        if (y_ok) {
            TameGen finv = TameGen::aff(fourier_data().inverse());
            word.push_back(finv);
            cur = act_endo(finv.endo(), cur);
            ex = eigenvalues(cur.A);
            if (!(is_regss(cur.A) && ex.status == RootStatus::split))
                throw normalization_failed("normalize_to_Mn: Fourier step did not expose a split side");
        } else if (ex.status == RootStatus::inconclusive || eigenvalues(cur.B).status == RootStatus::inconclusive) {
            throw normalization_failed("normalize_to_Mn: eigenvalue search inconclusive");
        } else if (is_regss(cur.A) || is_regss(cur.B)) {
            throw spectrum_not_split("normalize_to_Mn: eigenvalues lie outside Q(i)");
        } else {
            throw not_regular_semisimple("normalize_to_Mn: neither X nor Y is regular semisimple");
        }
    }

    // Diagonalize X exactly.
    int n = cur.n;
    Mat V(n, n);
    for (int j = 0; j < n; ++j) {
        Mat ker = kernel_basis(cur.A - ex.roots[static_cast<size_t>(j)] * Mat::identity(n));
        if (ker.cols() != 1) throw normalization_failed("normalize_to_Mn: eigenspace not one-dimensional");
        for (int i = 0; i < n; ++i) V(i, j) = ker(i, 0);
    }
    Mat gl = inverse(V);
    cur = gl_act(gl, cur);

    constexpr int kMaxAttempts = 8;
    SplitMix64 rng = SplitMix64::stream(seed ^ 0x716d5f6e6f726dull, 1);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RepPoint work = cur;
        TameWord suffix;
        auto push = [&](TameGen g) {
            work = act_endo(g.endo(), work);
            suffix.push_back(std::move(g));
        };

        if (attempt > 0) {
            // Fresh generic position: a small triangular scramble plus a
            // column mix; both fix the diagonal X.
            Poly sp;
            for (int k = 0; k <= 1 + attempt % 2; ++k)
                sp += Poly::monomial(detail::rand_rat(rng, 3, 2), k);
            if (!sp.is_zero()) push(TameGen::tri(poly_times_loop(sp, false)));
            push(detail::random_column_mix(rng));
        }

        // Step 3: v_{.1} must have no zero entry for the interpolation.
        VForm vf = to_vform(work);
        bool zero_v1 = false;
        for (int i = 0; i < n; ++i) zero_v1 = zero_v1 || vf.v(i, 0).is_zero();
        if (zero_v1) {
            push(detail::random_column_mix(rng));
            vf = to_vform(work);
            bool still = false;
            for (int i = 0; i < n; ++i) still = still || vf.v(i, 0).is_zero();
            if (still) continue;
        }

        // Step 4: Lambda(-p(a)b) with p(x_i) = -v_{i2}/v_{i1} clears v_{.2}.
        std::vector<std::pair<Scalar, Scalar>> nodes;
        for (int i = 0; i < n; ++i)
            nodes.emplace_back(work.A(i, i), -vf.v(i, 1) / vf.v(i, 0));
        Poly p = poly_interpolate(nodes);
        if (!p.is_zero()) push(TameGen::tri(poly_times_loop(-p, false)));
        vf = to_vform(work);
        for (int i = 0; i < n; ++i)
            if (!vf.v(i, 1).is_zero()) throw normalization_failed("normalize_to_Mn: v column failed to clear");

        // Step 5: w2 = w1 q(Y) is a linear system in the coefficients of q.
        Mat K(n, n);
        Mat w1(1, n), w2(1, n);
        for (int i = 0; i < n; ++i) {
            w1(0, i) = vf.w(0, i);
            w2(0, i) = vf.w(1, i);
        }
        Mat pw = w1;
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) K(i, k) = pw(0, i);
            pw = pw * vf.Y;
        }
        auto q = solve(K, w2.transpose());
        if (!q) continue;  // singular Krylov system: rescramble
        Poly qp;
        for (int k = 0; k < n; ++k) qp += Poly::monomial((*q)(k, 0), k);
        if (!qp.is_zero()) push(TameGen::optri(poly_times_loop(-qp, true)));

        if (!in_Mn(work) || !in_fiber(work)) continue;
        TameWord full = word;
        full.insert(full.end(), suffix.begin(), suffix.end());
        if (act_word(full, gl_act(gl, pt)) != work)
            throw normalization_failed("normalize_to_Mn: certificate replay failed");
        return {std::move(full), std::move(gl), std::move(work)};
    }
    throw normalization_failed("normalize_to_Mn: generic-position retries exhausted");
}

}  // namespace qsymp
