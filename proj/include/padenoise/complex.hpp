#pragma once

#include "padenoise/numeric.hpp"

namespace padenoise {

/// Complex value over the variable-precision real type (no MPC dependency).
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(double r, double i = 0.0) : re(r), im(i) {}

    Complex operator-() const { return Complex(-re, -im); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re + b.re, a.im + b.im);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re - b.re, a.im - b.im);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Complex operator*(const Real& a, const Complex& b) {
        return Complex(a * b.re, a * b.im);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    friend Complex operator/(const Complex& a, const Real& b) {
        return Complex(a.re / b, a.im / b);
    }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    bool operator==(const Complex& o) const { return re == o.re && im == o.im; }
};

inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

inline Complex polar(const Real& r, const Real& theta) {
    return Complex(r * cos(theta), r * sin(theta));
}

/// Principal square root.
inline Complex sqrt(const Complex& z) {
    if (z.im == 0) {
        if (z.re >= 0) return Complex(sqrt(z.re), Real(0));
        return Complex(Real(0), sqrt(-z.re));
    }
    Real m = abs(z);
    Real u = sqrt((m + z.re) / 2);
    Real v = z.im / (2 * u);
    return Complex(u, v);
}

/// Principal logarithm.
inline Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

inline Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}

/// Principal power z^a for real exponent a.
inline Complex pow(const Complex& z, const Real& a) { return exp(a * log(z)); }

inline Complex pow_int(Complex z, long n) {
    Complex r(Real(1), Real(0));
    bool inv = n < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    while (m) {
        if (m & 1) r *= z;
        z *= z;
        m >>= 1;
    }
    return inv ? Complex(Real(1), Real(0)) / r : r;
}

}  // namespace padenoise
