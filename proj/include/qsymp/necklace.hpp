#pragma once

#include "qsymp/pathalg.hpp"
#include "qsymp/poly.hpp"
#include "qsymp/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qsymp {

/// Letters of the loop alphabets. L2 lives on {a,b}, L2^op on {a*,b*}, and
/// necklace brackets land in the four-letter union.
enum class Letter : uint8_t { a = 0, b = 1, as = 2, bs = 3 };

inline const char* letter_name(Letter l) {
    static constexpr const char* names[4] = {"a", "b", "a*", "b*"};
    return names[static_cast<int>(l)];
}

inline std::optional<Letter> letter_from_name(std::string_view s) {
    for (int k = 0; k < 4; ++k)
        if (s == letter_name(static_cast<Letter>(k))) return static_cast<Letter>(k);
    return std::nullopt;
}

enum class Alphabet : uint8_t { unstarred, starred, four };

inline bool letter_in_alphabet(Letter l, Alphabet a) {
    switch (a) {
        case Alphabet::unstarred: return l == Letter::a || l == Letter::b;
        case Alphabet::starred: return l == Letter::as || l == Letter::bs;
        case Alphabet::four: return true;
    }
    return false;
}

inline const char* alphabet_name(Alphabet a) {
    switch (a) {
        case Alphabet::unstarred: return "ab";
        case Alphabet::starred: return "a*b*";
        case Alphabet::four: return "aba*b*";
    }
    return "";
}

using LWord = std::vector<Letter>;

inline std::string word_str(const LWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (Letter l : w) s += letter_name(l);
    return s;
}

/// Free noncommutative polynomial in plain (non-cyclic) words; the empty word
/// is the unit.
class FreeNc {
  public:
    explicit FreeNc(Alphabet alph = Alphabet::unstarred) : alph_(alph) {}
    FreeNc(Alphabet alph, const LWord& w, Scalar c = Scalar(1)) : alph_(alph) { add_term(w, c); }

    Alphabet alphabet() const { return alph_; }
    const std::map<LWord, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const LWord& w, const Scalar& c) {
        check_word(w);
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const FreeNc& u, const FreeNc& v) {
        return u.alph_ == v.alph_ && u.terms_ == v.terms_;
    }
    FreeNc operator-() const {
        FreeNc r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }
    friend FreeNc operator+(FreeNc u, const FreeNc& v) {
        for (const auto& [w, c] : v.terms_) u.add_term(w, c);
        return u;
    }
    friend FreeNc operator*(const Scalar& s, const FreeNc& u) {
        FreeNc r(u.alph_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : u.terms_) r.terms_[w] = s * c;
        return r;
    }
    /// Concatenation product. The result lives in the four-letter algebra when
    /// the alphabets differ.
    friend FreeNc operator*(const FreeNc& u, const FreeNc& v) {
        Alphabet alph = u.alph_ == v.alph_ ? u.alph_ : Alphabet::four;
        FreeNc r(alph);
        for (const auto& [w1, c1] : u.terms_)
            for (const auto& [w2, c2] : v.terms_) {
                LWord w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                r.add_term(w, c1 * c2);
            }
        return r;
    }

    std::string str() const;

  private:
    void check_word(const LWord& w) const {
        for (Letter l : w)
            if (!letter_in_alphabet(l, alph_)) throw math_error("FreeNc: letter outside alphabet");
    }
    Alphabet alph_;
    std::map<LWord, Scalar> terms_;
};

/// Lexicographically minimal rotation; canonical representative of a cyclic
/// word under the letter order a < b < a* < b*.
inline LWord canonical_rotation(const LWord& w) {
    if (w.size() <= 1) return w;
    LWord best = w;
    LWord rot = w;
    for (size_t k = 1; k < w.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

/// Element of the necklace space: cyclic words modulo constants. Stored words
/// are canonical rotations; the empty word is identically dropped.
class Necklace {
  public:
    explicit Necklace(Alphabet alph = Alphabet::unstarred) : alph_(alph) {}
    Necklace(Alphabet alph, const LWord& w, Scalar c = Scalar(1)) : alph_(alph) { add_term(w, c); }

    /// Cyclic projection of a plain polynomial; the constant term is dropped
    /// (returned separately by necklace_bracket where it matters).
    static Necklace project(const FreeNc& f) {
        Necklace r(f.alphabet());
        for (const auto& [w, c] : f.terms())
            if (!w.empty()) r.add_term(w, c);
        return r;
    }

    Alphabet alphabet() const { return alph_; }
    const std::map<LWord, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const LWord& w, const Scalar& c) {
        for (Letter l : w)
            if (!letter_in_alphabet(l, alph_)) throw math_error("Necklace: letter outside alphabet");
        if (w.empty() || c.is_zero()) return;
        LWord canon = canonical_rotation(w);
        auto [it, fresh] = terms_.try_emplace(std::move(canon), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const Necklace& u, const Necklace& v) {
        return u.alph_ == v.alph_ && u.terms_ == v.terms_;
    }
    friend bool operator!=(const Necklace& u, const Necklace& v) { return !(u == v); }

    Necklace operator-() const {
        Necklace r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }
    friend Necklace operator+(Necklace u, const Necklace& v) {
        if (u.alph_ != v.alph_) throw math_error("Necklace: alphabet mismatch in sum");
        for (const auto& [w, c] : v.terms_) u.add_term(w, c);
        return u;
    }
    friend Necklace operator*(const Scalar& s, const Necklace& u) {
        Necklace r(u.alph_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : u.terms_) r.terms_[w] = s * c;
        return r;
    }

    std::string str() const;

  private:
    Alphabet alph_;
    std::map<LWord, Scalar> terms_;
};

/// Necklace derivation d/d(letter): every occurrence of the letter is rotated
/// to the front of its cyclic word and deleted; the surviving plain words are
/// summed in the free algebra.
inline FreeNc necklace_derive(const Necklace& f, Letter letter) {
    if (!letter_in_alphabet(letter, f.alphabet()))
        throw math_error("necklace_derive: letter outside the element's alphabet");
    FreeNc out(f.alphabet());
    for (const auto& [w, c] : f.terms()) {
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k] != letter) continue;
            LWord rest;
            rest.reserve(w.size() - 1);
            rest.insert(rest.end(), w.begin() + static_cast<long>(k) + 1, w.end());
            rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(k));
            out.add_term(rest, c);
        }
    }
    return out;
}

/// Realize a two-letter free polynomial inside the path algebra: b becomes
/// the loop x.y (resp. b* becomes y*.x*), a/a* stay themselves, the empty
/// word becomes e_1. Every output term is a loop at vertex 1.
inline NcPoly substitute_loops(const FreeNc& g, bool starred) {
    if (g.alphabet() != (starred ? Alphabet::starred : Alphabet::unstarred))
        throw math_error("substitute_loops: alphabet mismatch");
    NcPoly out;
    for (const auto& [w, c] : g.terms()) {
        if (w.empty()) {
            out.add_term(Path::trivial(1), c);
            continue;
        }
        std::vector<Arrow> arrows;
        for (Letter l : w) {
            switch (l) {
                case Letter::a: arrows.push_back(Arrow::a); break;
                case Letter::as: arrows.push_back(Arrow::astar); break;
                case Letter::b:
                    arrows.push_back(Arrow::x);
                    arrows.push_back(Arrow::y);
                    break;
                case Letter::bs:
                    arrows.push_back(Arrow::ystar);
                    arrows.push_back(Arrow::xstar);
                    break;
            }
        }
        out.add_term(Path::word(std::move(arrows)), c);
    }
    return out;
}

struct BracketResult {
    Necklace elem{Alphabet::four};
    /// Coefficient of the empty necklace produced by the projection; reported
    /// instead of being silently normalized.
    Scalar constant{0};
};

/// Necklace bracket of f in letters {a,b} against g in {a*,b*}: the cyclic
/// projection of df/da . dg/da* + df/db . dg/db*. The sign is pinned by the
/// calibration identity {H(a^2), H'(a*^2)} = psi(4 aa*) checked in the flow
/// test suite.
inline BracketResult necklace_bracket(const Necklace& f, const Necklace& g) {
    if (f.alphabet() != Alphabet::unstarred || g.alphabet() != Alphabet::starred)
        throw math_error("necklace_bracket: expects f over {a,b} and g over {a*,b*}");
    FreeNc prod = necklace_derive(f, Letter::a) * necklace_derive(g, Letter::as) +
                  necklace_derive(f, Letter::b) * necklace_derive(g, Letter::bs);
    BracketResult r;
    r.elem = Necklace::project(prod);
    auto it = prod.terms().find(LWord{});
    r.constant = it == prod.terms().end() ? Scalar(0) : it->second;
    return r;
}

/// Rename a* -> a, b* -> b (or back); used to route the op-side flows through
/// the Fourier conjugation.
inline Necklace mirror(const Necklace& f) {
    Alphabet target;
    switch (f.alphabet()) {
        case Alphabet::unstarred: target = Alphabet::starred; break;
        case Alphabet::starred: target = Alphabet::unstarred; break;
        default: throw math_error("mirror: four-letter elements have no mirror");
    }
    Necklace out(target);
    for (const auto& [w, c] : f.terms()) {
        LWord m;
        m.reserve(w.size());
        for (Letter l : w) {
            switch (l) {
                case Letter::a: m.push_back(Letter::as); break;
                case Letter::b: m.push_back(Letter::bs); break;
                case Letter::as: m.push_back(Letter::a); break;
                case Letter::bs: m.push_back(Letter::b); break;
            }
        }
        out.add_term(m, c);
    }
    return out;
}

/// p(a) b as a necklace (or p(a*) b* on the starred side). Constant terms of
/// p contribute the bare loop word b.
inline Necklace poly_times_loop(const Poly& p, bool starred) {
    Necklace out(starred ? Alphabet::starred : Alphabet::unstarred);
    Letter la = starred ? Letter::as : Letter::a;
    Letter lb = starred ? Letter::bs : Letter::b;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        LWord w(static_cast<size_t>(k), la);
        w.push_back(lb);
        out.add_term(w, p.coeff(k));
    }
    return out;
}

/// p(a) (resp. p(a*)) as a necklace; requires p(0) = 0 since constants do not
/// live in the necklace space.
inline Necklace poly_of_letter(const Poly& p, bool starred) {
    if (!p.constant_term().is_zero())
        throw math_error("poly_of_letter: polynomial must have zero constant term");
    Necklace out(starred ? Alphabet::starred : Alphabet::unstarred);
    Letter la = starred ? Letter::as : Letter::a;
    for (int k = 1; k <= p.degree(); ++k)
        out.add_term(LWord(static_cast<size_t>(k), la), p.coeff(k));
    return out;
}

inline std::string FreeNc::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (!c.is_one()) s += "(" + c.str() + ")*";
        s += word_str(w);
    }
    return s;
}

inline std::string Necklace::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (!c.is_one()) s += "(" + c.str() + ")*";
        s += "(" + word_str(w) + ")";
    }
    return s;
}

}  // namespace qsymp
