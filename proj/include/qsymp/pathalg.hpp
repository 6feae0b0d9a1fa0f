#pragma once

#include "qsymp/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsymp {

/// Arrows of the doubled two-vertex quiver: a loop a at vertex 1, arrows
/// x: 2->1 and y: 1->2, plus the reversed arrows a*, x*, y*.
enum class Arrow : uint8_t { a = 0, astar = 1, x = 2, xstar = 3, y = 4, ystar = 5 };

constexpr int kNumArrows = 6;

constexpr int arrow_source(Arrow r) {
    switch (r) {
        case Arrow::a:
        case Arrow::astar: return 1;
        case Arrow::x: return 2;
        case Arrow::xstar: return 1;
        case Arrow::y: return 1;
        case Arrow::ystar: return 2;
    }
    return 0;
}

constexpr int arrow_target(Arrow r) {
    switch (r) {
        case Arrow::a:
        case Arrow::astar: return 1;
        case Arrow::x: return 1;
        case Arrow::xstar: return 2;
        case Arrow::y: return 2;
        case Arrow::ystar: return 1;
    }
    return 0;
}

inline const char* arrow_name(Arrow r) {
    static constexpr const char* names[kNumArrows] = {"a", "a*", "x", "x*", "y", "y*"};
    return names[static_cast<int>(r)];
}

inline std::optional<Arrow> arrow_from_name(std::string_view s) {
    for (int k = 0; k < kNumArrows; ++k)
        if (s == arrow_name(static_cast<Arrow>(k))) return static_cast<Arrow>(k);
    return std::nullopt;
}

/// A path in the double quiver: either a trivial path e_1/e_2 or a composable
/// word r_1 r_2 ... r_k in function order (r_k is traversed first, so
/// source(path) = source(r_k) and target(path) = target(r_1)). Representing
/// matrices multiply in written order.
class Path {
  public:
    static Path trivial(int vertex) {
        if (vertex != 1 && vertex != 2) throw math_error("Path: vertex must be 1 or 2");
        Path p;
        p.vertex_ = static_cast<uint8_t>(vertex);
        return p;
    }
    static Path arrow(Arrow r) {
        Path p;
        p.arrows_.push_back(r);
        return p;
    }
    static Path word(std::vector<Arrow> arrows) {
        if (arrows.empty()) throw math_error("Path: empty word (use trivial)");
        Path p;
        p.arrows_ = std::move(arrows);
        for (size_t k = 0; k + 1 < p.arrows_.size(); ++k)
            if (arrow_source(p.arrows_[k]) != arrow_target(p.arrows_[k + 1]))
                throw math_error("Path: non-composable word");
        return p;
    }

    bool is_trivial() const { return arrows_.empty(); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    size_t length() const { return arrows_.size(); }

    int source() const { return is_trivial() ? vertex_ : arrow_source(arrows_.back()); }
    int target() const { return is_trivial() ? vertex_ : arrow_target(arrows_.front()); }

    friend bool operator==(const Path& p, const Path& q) {
        return p.vertex_ == q.vertex_ && p.arrows_ == q.arrows_;
    }
    friend bool operator<(const Path& p, const Path& q) {
        if (p.arrows_.size() != q.arrows_.size()) return p.arrows_.size() < q.arrows_.size();
        if (p.vertex_ != q.vertex_) return p.vertex_ < q.vertex_;
        return p.arrows_ < q.arrows_;
    }

    std::string str() const {
        if (is_trivial()) return vertex_ == 1 ? "e1" : "e2";
        std::string s;
        for (Arrow r : arrows_) s += arrow_name(r);
        return s;
    }

  private:
    uint8_t vertex_ = 0;  // only meaningful for trivial paths
    std::vector<Arrow> arrows_;
};

/// Concatenation p.q when source(p) = target(q); nullopt encodes the zero
/// product of non-composable paths. Trivial paths are one-sided units.
inline std::optional<Path> path_concat(const Path& p, const Path& q) {
    if (p.source() != q.target()) return std::nullopt;
    if (p.is_trivial()) return q;
    if (q.is_trivial()) return p;
    std::vector<Arrow> arrows = p.arrows();
    arrows.insert(arrows.end(), q.arrows().begin(), q.arrows().end());
    return Path::word(std::move(arrows));
}

/// Element of the path algebra: finite Scalar combination of paths, nonzero
/// coefficients only. std::map keys keep iteration deterministic.
class NcPoly {
  public:
    NcPoly() = default;
    NcPoly(const Path& p, Scalar c = Scalar(1)) {
        if (!c.is_zero()) terms_[p] = std::move(c);
    }

    static NcPoly zero() { return NcPoly(); }
    static NcPoly e(int vertex) { return NcPoly(Path::trivial(vertex)); }
    static NcPoly unit() { return e(1) + e(2); }
    static NcPoly arrow(Arrow r) { return NcPoly(Path::arrow(r)); }

    const std::map<Path, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Scalar coeff(const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Path& p, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const NcPoly& u, const NcPoly& v) { return u.terms_ == v.terms_; }
    friend bool operator!=(const NcPoly& u, const NcPoly& v) { return !(u == v); }

    NcPoly operator-() const {
        NcPoly r = *this;
        for (auto& [p, c] : r.terms_) c = -c;
        return r;
    }
    friend NcPoly operator+(NcPoly u, const NcPoly& v) {
        for (const auto& [p, c] : v.terms_) u.add_term(p, c);
        return u;
    }
    friend NcPoly operator-(NcPoly u, const NcPoly& v) {
        for (const auto& [p, c] : v.terms_) u.add_term(p, -c);
        return u;
    }
    friend NcPoly operator*(const Scalar& s, const NcPoly& u) {
        NcPoly r;
        if (s.is_zero()) return r;
        for (const auto& [p, c] : u.terms_) r.terms_[p] = s * c;
        return r;
    }
    friend NcPoly operator*(const NcPoly& u, const NcPoly& v) {
        NcPoly r;
        for (const auto& [p, cp] : u.terms_)
            for (const auto& [q, cq] : v.terms_)
                if (auto pq = path_concat(p, q)) r.add_term(*pq, cp * cq);
        return r;
    }
    NcPoly& operator+=(const NcPoly& v) { return *this = *this + v; }
    NcPoly& operator-=(const NcPoly& v) { return *this = *this - v; }
    NcPoly& operator*=(const NcPoly& v) { return *this = *this * v; }

    /// e_i . u . e_j : the terms with target i and source j.
    NcPoly corner(int target, int source) const {
        NcPoly r;
        for (const auto& [p, c] : terms_)
            if (p.target() == target && p.source() == source) r.terms_[p] = c;
        return r;
    }

    /// (source, target) shared by every term, or nullopt (zero counts as
    /// homogeneous of any endpoint, reported as nullopt).
    std::optional<std::pair<int, int>> homogeneous_endpoints() const {
        std::optional<std::pair<int, int>> out;
        for (const auto& [p, c] : terms_) {
            std::pair<int, int> st{p.source(), p.target()};
            if (!out)
                out = st;
            else if (*out != st)
                return std::nullopt;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [p, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (!c.is_one()) s += "(" + c.str() + ")*";
            s += p.str();
        }
        return s;
    }

  private:
    std::map<Path, Scalar> terms_;
};

/// The symplectic element c = [a,a*] + [x,x*] + [y,y*].
inline const NcPoly& symplectic_c() {
    static const NcPoly c = [] {
        NcPoly r;
        auto comm = [](Arrow u, Arrow v) {
            return NcPoly::arrow(u) * NcPoly::arrow(v) - NcPoly::arrow(v) * NcPoly::arrow(u);
        };
        r = comm(Arrow::a, Arrow::astar) + comm(Arrow::x, Arrow::xstar) + comm(Arrow::y, Arrow::ystar);
        return r;
    }();
    return c;
}

}  // namespace qsymp
