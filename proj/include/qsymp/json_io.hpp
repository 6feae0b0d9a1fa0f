#pragma once

#include "qsymp/autos.hpp"
#include "qsymp/hamflows.hpp"
#include "qsymp/nagao.hpp"
#include "qsymp/necklace.hpp"
#include "qsymp/normalize.hpp"
#include "qsymp/pathalg.hpp"
#include "qsymp/reps.hpp"
#include "qsymp/suites.hpp"

#include <json.hpp>

#include <string>

// JSON wire formats. All numbers are exact strings ("a/b" or "a/b+c/d i"),
// never floats; matrices are arrays of row arrays; polynomials are ascending
// coefficient arrays.
namespace qsymp::io {

using nlohmann::json;

inline json to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from_json(const json& j) {
    if (!j.is_string()) throw input_error("scalar: expected a string, got " + j.dump());
    return Scalar::parse(j.get<std::string>());
}

inline json to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw input_error("polynomial: expected a coefficient array");
    std::vector<Scalar> cs;
    for (const auto& c : j) cs.push_back(scalar_from_json(c));
    return Poly(std::move(cs));
}

inline json to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const json& j, int rows = -1, int cols = -1) {
    if (!j.is_array() || j.empty()) throw input_error("matrix: expected a non-empty array of rows");
    int r = static_cast<int>(j.size());
    int c = -1;
    for (const auto& row : j) {
        if (!row.is_array()) throw input_error("matrix: rows must be arrays");
        if (c < 0)
            c = static_cast<int>(row.size());
        else if (c != static_cast<int>(row.size()))
            throw input_error("matrix: ragged rows");
    }
    if ((rows > 0 && r != rows) || (cols > 0 && c != cols))
        throw input_error("matrix: expected " + std::to_string(rows) + "x" + std::to_string(cols));
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    return m;
}

inline json to_json(const PolyMat2& m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline PolyMat2 polymat2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw input_error("polymat2: expected 2 rows");
    PolyMat2 m = pm_identity();
    for (int r = 0; r < 2; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != 2) throw input_error("polymat2: expected 2 columns");
        for (int c = 0; c < 2; ++c) m(r, c) = poly_from_json(row[static_cast<size_t>(c)]);
    }
    return m;
}

// --- path algebra -----------------------------------------------------------

inline json to_json(const NcPoly& u) {
    json terms = json::array();
    for (const auto& [p, c] : u.terms()) {
        json word = json::array();
        if (p.is_trivial())
            word.push_back(p.source() == 1 ? "e1" : "e2");
        else
            for (Arrow r : p.arrows()) word.push_back(arrow_name(r));
        terms.push_back(json{{"coeff", c.str()}, {"word", std::move(word)}});
    }
    return terms;
}

inline NcPoly ncpoly_from_json(const json& j) {
    if (!j.is_array()) throw input_error("ncpoly: expected an array of terms");
    NcPoly u;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coeff") || !term.contains("word"))
            throw input_error("ncpoly: each term needs 'coeff' and 'word'");
        Scalar c = scalar_from_json(term["coeff"]);
        const json& w = term["word"];
        if (!w.is_array() || w.empty()) throw input_error("ncpoly: word must be a non-empty array");
        std::string first = w[0].get<std::string>();
        if (first == "e1" || first == "e2") {
            if (w.size() != 1) throw input_error("ncpoly: trivial paths are singleton words");
            u.add_term(Path::trivial(first == "e1" ? 1 : 2), c);
            continue;
        }
        std::vector<Arrow> arrows;
        for (const auto& l : w) {
            auto r = arrow_from_name(l.get<std::string>());
            if (!r) throw input_error("ncpoly: unknown arrow '" + l.get<std::string>() + "'");
            arrows.push_back(*r);
        }
        u.add_term(Path::word(std::move(arrows)), c);
    }
    return u;
}

inline json to_json(const Necklace& f) {
    json terms = json::array();
    for (const auto& [w, c] : f.terms()) {
        json word = json::array();
        for (Letter l : w) word.push_back(letter_name(l));
        terms.push_back(json{{"coeff", c.str()}, {"word", std::move(word)}});
    }
    return json{{"alphabet", alphabet_name(f.alphabet())}, {"terms", std::move(terms)}};
}

inline Necklace necklace_from_json(const json& j) {
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("terms"))
        throw input_error("necklace: expected {alphabet, terms}");
    std::string a = j["alphabet"].get<std::string>();
    Alphabet alph;
    if (a == alphabet_name(Alphabet::unstarred))
        alph = Alphabet::unstarred;
    else if (a == alphabet_name(Alphabet::starred))
        alph = Alphabet::starred;
    else if (a == alphabet_name(Alphabet::four))
        alph = Alphabet::four;
    else
        throw input_error("necklace: unknown alphabet '" + a + "'");
    Necklace f(alph);
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("coeff") || !term.contains("word"))
            throw input_error("necklace: each term needs 'coeff' and 'word'");
        LWord w;
        for (const auto& l : term["word"]) {
            auto letter = letter_from_name(l.get<std::string>());
            if (!letter) throw input_error("necklace: unknown letter '" + l.get<std::string>() + "'");
            w.push_back(*letter);
        }
        f.add_term(w, scalar_from_json(term["coeff"]));
    }
    return f;
}

// --- automorphisms ----------------------------------------------------------

inline json to_json(const EndoA& e) {
    json out = json::object();
    for (int k = 0; k < kNumArrows; ++k) {
        Arrow r = static_cast<Arrow>(k);
        out[arrow_name(r)] = to_json(e.img(r));
    }
    return out;
}

inline EndoA endo_from_json(const json& j) {
    if (!j.is_object()) throw input_error("endo: expected an object with six generator images");
    EndoA e;
    for (int k = 0; k < kNumArrows; ++k) {
        Arrow r = static_cast<Arrow>(k);
        if (!j.contains(arrow_name(r))) throw input_error(std::string("endo: missing image of ") + arrow_name(r));
        e.set_img(r, ncpoly_from_json(j[arrow_name(r)]));
    }
    return e;
}

inline json to_json(const AffineData& d) {
    return json{{"S", to_json(d.S)}, {"t", json::array({d.t[0].str(), d.t[1].str()})}, {"T", to_json(d.T)}};
}

inline AffineData affine_from_json(const json& j) {
    if (!j.is_object() || !j.contains("S") || !j.contains("t") || !j.contains("T"))
        throw input_error("affine: expected {S, t, T}");
    AffineData d;
    d.S = mat_from_json(j["S"], 2, 2);
    d.T = mat_from_json(j["T"], 2, 2);
    const json& t = j["t"];
    if (!t.is_array() || t.size() != 2) throw input_error("affine: t must have two entries");
    d.t = {scalar_from_json(t[0]), scalar_from_json(t[1])};
    d.validate();
    return d;
}

inline json to_json(const TameGen& g) {
    switch (g.kind) {
        case TameGen::Kind::tri: return json{{"kind", "tri"}, {"f", to_json(g.f)}};
        case TameGen::Kind::optri: return json{{"kind", "optri"}, {"f", to_json(g.f)}};
        case TameGen::Kind::aff: {
            json out = to_json(g.ad);
            out["kind"] = "aff";
            return out;
        }
    }
    throw math_error("TameGen: bad kind");
}

inline TameGen tamegen_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw input_error("tame generator: missing 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "tri") return TameGen::tri(necklace_from_json(j.at("f")));
    if (kind == "optri") return TameGen::optri(necklace_from_json(j.at("f")));
    if (kind == "aff") return TameGen::aff(affine_from_json(j));
    throw input_error("tame generator: unknown kind '" + kind + "'");
}

inline json to_json(const TameWord& w) {
    json arr = json::array();
    for (const auto& g : w) arr.push_back(to_json(g));
    return arr;
}

inline TameWord tameword_from_json(const json& j) {
    if (!j.is_array()) throw input_error("tame word: expected an array of generators");
    TameWord w;
    for (const auto& g : j) w.push_back(tamegen_from_json(g));
    return w;
}

// --- representation points --------------------------------------------------

inline json to_json(const RepPoint& pt) {
    return json{{"n", pt.n},         {"tau", pt.tau.str()}, {"A", to_json(pt.A)},
                {"B", to_json(pt.B)}, {"X1", to_json(pt.X1)}, {"X2", to_json(pt.X2)},
                {"Y1", to_json(pt.Y1)}, {"Y2", to_json(pt.Y2)}};
}

inline RepPoint point_from_json(const json& j) {
    if (!j.is_object()) throw input_error("point: expected an object");
    for (const char* key : {"n", "tau", "A", "B", "X1", "X2", "Y1", "Y2"})
        if (!j.contains(key)) throw input_error(std::string("point: missing field '") + key + "'");
    RepPoint pt;
    if (!j["n"].is_number_integer()) throw input_error("point: n must be an integer");
    pt.n = j["n"].get<int>();
    if (pt.n <= 0) throw input_error("point: n must be positive");
    pt.tau = scalar_from_json(j["tau"]);
    pt.A = mat_from_json(j["A"], pt.n, pt.n);
    pt.B = mat_from_json(j["B"], pt.n, pt.n);
    pt.X1 = mat_from_json(j["X1"], pt.n, 1);
    pt.X2 = mat_from_json(j["X2"], pt.n, 1);
    pt.Y1 = mat_from_json(j["Y1"], 1, pt.n);
    pt.Y2 = mat_from_json(j["Y2"], 1, pt.n);
    return pt;
}

// --- Hamiltonians -----------------------------------------------------------

inline json to_json(const HamSpec& h) {
    switch (h.kind) {
        case HamSpec::Kind::J: return json{{"kind", "J"}, {"k", h.k}, {"alpha", to_json(h.alpha)}};
        case HamSpec::Kind::H: return json{{"kind", "H"}, {"f", to_json(h.f)}};
        case HamSpec::Kind::Hp: return json{{"kind", "Hp"}, {"f", to_json(h.f)}};
    }
    throw math_error("HamSpec: bad kind");
}

inline HamSpec ham_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw input_error("hamiltonian: missing 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "J") {
        if (!j.contains("k") || !j["k"].is_number_integer()) throw input_error("hamiltonian: J needs integer k");
        return HamSpec::J(j["k"].get<int>(), mat_from_json(j.at("alpha"), 2, 2));
    }
    if (kind == "H") return HamSpec::H(necklace_from_json(j.at("f")));
    if (kind == "Hp") return HamSpec::Hp(necklace_from_json(j.at("f")));
    throw input_error("hamiltonian: unknown kind '" + kind + "'");
}

// --- Nagao words and Gamma --------------------------------------------------

inline json to_json(const NagaoWord& w) {
    json arr = json::array();
    for (const auto& f : w) {
        if (f.tag == NagaoFactor::Tag::C)
            arr.push_back(json{{"kind", "C"}, {"M", to_json(f.cmat)}});
        else
            arr.push_back(json{{"kind", "B"}, {"M", to_json(f.bmat)}});
    }
    return arr;
}

inline NagaoWord nagaoword_from_json(const json& j) {
    if (!j.is_array()) throw input_error("nagao word: expected an array of factors");
    NagaoWord w;
    for (const auto& f : j) {
        if (!f.is_object() || !f.contains("kind") || !f.contains("M"))
            throw input_error("nagao word: each factor needs 'kind' and 'M'");
        std::string kind = f["kind"].get<std::string>();
        if (kind == "C")
            w.push_back(NagaoFactor::C(mat_from_json(f["M"], 2, 2)));
        else if (kind == "B")
            w.push_back(NagaoFactor::B(polymat2_from_json(f["M"])));
        else
            throw input_error("nagao word: unknown kind '" + kind + "'");
    }
    return w;
}

inline json to_json(const GammaElem& g) { return json{{"p", to_json(g.p)}, {"M", to_json(g.M)}}; }

inline GammaElem gamma_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("M"))
        throw input_error("gamma element: expected {p, M}");
    return GammaElem::make(poly_from_json(j["p"]), polymat2_from_json(j["M"]));
}

// --- reports ----------------------------------------------------------------

/// Elapsed time is deliberately not serialized: reports are byte-stable for a
/// fixed seed and flag set.
inline json to_json(const VerificationReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures)
        fails.push_back(json{{"trial", f.trial}, {"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
    return json{{"suite", r.suite}, {"trials", r.trials}, {"seed", r.seed}, {"failures", std::move(fails)}};
}

inline json to_json(const NormalizeResult& r) {
    return json{{"word", to_json(r.word)}, {"gl", to_json(r.gl)}, {"result", to_json(r.result)}};
}

inline json parse_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON in " + what);
    return j;
}

}  // namespace qsymp::io
