#pragma once

#include "qsymp/scalar.hpp"

#include <utility>
#include <vector>

namespace qsymp {

/// Univariate polynomial over Q(i), coefficients ascending, no trailing zeros.
/// The zero polynomial is the empty coefficient list (degree -1 by convention).
class Poly {
  public:
    Poly() = default;
    Poly(int c) : Poly(Scalar(c)) {}
    Poly(Scalar c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Scalar(1)); }
    /// c * z^k
    static Poly monomial(Scalar c, int k) {
        if (c.is_zero()) return Poly();
        std::vector<Scalar> v(static_cast<size_t>(k) + 1, Scalar(0));
        v.back() = std::move(c);
        return Poly(std::move(v));
    }
    static Poly z() { return monomial(Scalar(1), 1); }

    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Scalar coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar(0);
        return coeffs_[static_cast<size_t>(k)];
    }
    const Scalar& leading() const {
        if (is_zero()) throw math_error("Poly: leading coefficient of zero");
        return coeffs_.back();
    }
    Scalar constant_term() const { return coeff(0); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
        for (size_t p = 0; p < a.coeffs_.size(); ++p)
            for (size_t q = 0; q < b.coeffs_.size(); ++q) v[p + q] += a.coeffs_[p] * b.coeffs_[q];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Scalar& c, const Poly& p) { return Poly(c) * p; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Evaluation by Horner over any ring with S +,* and Scalar* mixed in.
    Scalar eval(const Scalar& x) const {
        Scalar acc(0);
        for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Scalar> v(coeffs_.size() - 1, Scalar(0));
        for (size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = Scalar(Int(k)) * coeffs_[k];
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        Poly r = *this;
        Scalar lc = leading();
        for (auto& c : r.coeffs_) c = c / lc;
        return r;
    }

    std::string str(const char* var = "z") const;

  private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<Scalar> coeffs_;
};

/// f = q*g + r with deg r < deg g.
inline std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw math_error("poly_divmod: division by zero polynomial");
    std::vector<Scalar> rem(f.coeffs());
    int dg = g.degree();
    Scalar lg = g.leading();
    std::vector<Scalar> quot;
    int df = f.degree();
    if (df >= dg) quot.assign(static_cast<size_t>(df - dg) + 1, Scalar(0));
    for (int k = df; k >= dg; --k) {
        Scalar c = rem[static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        Scalar q = c / lg;
        quot[static_cast<size_t>(k - dg)] = q;
        for (int j = 0; j <= dg; ++j) rem[static_cast<size_t>(k - dg + j)] -= q * g.coeff(j);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Monic gcd by the Euclidean algorithm.
inline Poly poly_gcd(Poly f, Poly g) {
    if (f.is_zero() && g.is_zero()) throw math_error("poly_gcd: both inputs zero");
    while (!g.is_zero()) {
        Poly r = poly_divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

inline bool poly_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    return poly_gcd(f, f.derivative()).is_constant();
}

/// Lagrange interpolation through nodes with pairwise distinct abscissae.
inline Poly poly_interpolate(const std::vector<std::pair<Scalar, Scalar>>& nodes) {
    for (size_t p = 0; p < nodes.size(); ++p)
        for (size_t q = p + 1; q < nodes.size(); ++q)
            if (nodes[p].first == nodes[q].first)
                throw math_error("poly_interpolate: repeated abscissa " + nodes[p].first.str());
    Poly acc;
    for (size_t p = 0; p < nodes.size(); ++p) {
        Poly basis = Poly::one();
        Scalar denom(1);
        for (size_t q = 0; q < nodes.size(); ++q) {
            if (q == p) continue;
            basis *= Poly::z() - Poly(nodes[q].first);
            denom *= nodes[p].first - nodes[q].first;
        }
        acc += (nodes[p].second / denom) * basis;
    }
    return acc;
}

inline std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string c = coeffs_[k].str();
        if (k == 0) {
            out += c;
            continue;
        }
        if (c == "1")
            ;
        else if (c == "-1")
            out += "-";
        else {
            bool simple = c.find('+') == std::string::npos && c.find(' ') == std::string::npos &&
                          c.find('-', 1) == std::string::npos;
            out += simple ? c : "(" + c + ")";
            out += "*";
        }
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace qsymp
