#pragma once

#include "qsymp/scalar.hpp"

namespace qsymp {

/// Dual number a + b*eps with eps^2 = 0, over the Gaussian rationals.
/// Used to take exact partial derivatives of trace polynomials.
struct Dual {
    Scalar val;
    Scalar der;

    Dual() = default;
    Dual(int v) : val(v) {}
    Dual(Scalar v) : val(std::move(v)) {}
    Dual(Scalar v, Scalar d) : val(std::move(v)), der(std::move(d)) {}

    bool is_zero() const { return val.is_zero() && der.is_zero(); }

    Dual operator-() const { return Dual(-val, -der); }
    Dual& operator+=(const Dual& o) {
        val += o.val;
        der += o.der;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        val -= o.val;
        der -= o.der;
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        der = val * o.der + der * o.val;
        val *= o.val;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.der == b.der; }
    friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

}  // namespace qsymp
