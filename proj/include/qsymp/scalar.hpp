#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsymp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Malformed external input (files, CLI arguments, JSON). CLI exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated mathematical precondition or failed exact check. CLI exit code 1.
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian rational: re + im*i with exact, always-reduced rational parts.
/// cpp_rational keeps gcd(num, den) = 1 and den > 0, so structural equality
/// is field equality.
class Scalar {
  public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    Scalar(Int v) : re_(std::move(v)) {}
    Scalar(Rat re) : re_(std::move(re)) {}
    Scalar(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_one() const { return im_.is_zero() && re_ == 1; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// re^2 + im^2 (the field norm down to Q).
    Rat norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw math_error("Scalar: division by zero");
        Rat n = o.norm();
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Total order for use as a map key (not a field order).
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    Scalar inverse() const {
        Scalar one(1);
        return one / *this;
    }

    /// Text form: "a/b", "c/d i" or "a/b+c/d i" with reduced integers.
    std::string str() const;
    static Scalar parse(std::string_view s);

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.str();
    }

  private:
    Rat re_{0};
    Rat im_{0};
};

namespace detail {

inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

// "12", "-3/4", "+2"; denominator must be a positive integer.
inline Rat parse_rat(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) throw input_error("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        if (den <= 0) throw input_error("rational denominator must be positive");
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw input_error("bad rational '" + std::string(s) + "': " + e.what());
    }
}

}  // namespace detail

inline std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (!re_.is_zero()) out += detail::rat_str(re_);
    if (!im_.is_zero()) {
        if (!re_.is_zero() && im_ > 0) out += "+";
        if (im_ == 1)
            out += "i";
        else if (im_ == -1)
            out += "-i";
        else {
            out += detail::rat_str(im_);
            out += " i";
        }
    }
    return out;
}

inline Scalar Scalar::parse(std::string_view s) {
    // Trim outer whitespace.
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw input_error("empty scalar");

    bool imaginary = false;
    if (s.back() == 'i') {
        imaginary = true;
        s.remove_suffix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    }
    if (!imaginary) return Scalar(detail::parse_rat(s));

    // Look for the split between real and imaginary parts: a sign that is
    // neither leading nor right after '/'.
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
            std::string_view re_part = s.substr(0, k);
            std::string_view im_part = s.substr(k);
            if (im_part == "+") return Scalar(detail::parse_rat(re_part), Rat(1));
            if (im_part == "-") return Scalar(detail::parse_rat(re_part), Rat(-1));
            return Scalar(detail::parse_rat(re_part), detail::parse_rat(im_part));
        }
    }
    // Pure imaginary: "i", "-i", "3/4 i".
    if (s.empty() || s == "+") return Scalar(Rat(0), Rat(1));
    if (s == "-") return Scalar(Rat(0), Rat(-1));
    return Scalar(Rat(0), detail::parse_rat(s));
}

}  // namespace qsymp
