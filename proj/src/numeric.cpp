#include "padenoise/numeric.hpp"

#include <cmath>
#include <iostream>

namespace padenoise {

namespace {

int max_digits(const Real& a, const Real& b) {
    unsigned pa = a.precision(), pb = b.precision();
    return static_cast<int>(pa > pb ? pa : pb);
}

}  // namespace

double Scalar::as_double() const {
    if (is_rational()) return static_cast<double>(std::get<Rational>(v_));
    return static_cast<double>(std::get<Real>(v_));
}

bool Scalar::is_zero() const {
    if (is_rational()) return std::get<Rational>(v_) == 0;
    return std::get<Real>(v_) == 0;
}

int Scalar::sign() const {
    if (is_rational()) {
        const Rational& q = std::get<Rational>(v_);
        return q == 0 ? 0 : (q > 0 ? 1 : -1);
    }
    const Real& r = std::get<Real>(v_);
    return r == 0 ? 0 : (r > 0 ? 1 : -1);
}

std::string Scalar::str(int digits) const {
    if (is_rational()) return std::get<Rational>(v_).str();
    return std::get<Real>(v_).str(digits);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) {
        Scalar s(Rational(std::get<Rational>(a.v_) + std::get<Rational>(b.v_)));
        s.exact_ = a.exact_ && b.exact_;
        return s;
    }
    int d = 0;
    if (a.is_real() && b.is_real()) d = max_digits(std::get<Real>(a.v_), std::get<Real>(b.v_));
    else d = static_cast<int>(a.is_real() ? std::get<Real>(a.v_).precision() : std::get<Real>(b.v_).precision());
    return Scalar(Real(a.real(d) + b.real(d), static_cast<unsigned>(d)));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) {
        Scalar s(Rational(std::get<Rational>(a.v_) * std::get<Rational>(b.v_)));
        s.exact_ = a.exact_ && b.exact_;
        return s;
    }
    int d = 0;
    if (a.is_real() && b.is_real()) d = max_digits(std::get<Real>(a.v_), std::get<Real>(b.v_));
    else d = static_cast<int>(a.is_real() ? std::get<Real>(a.v_).precision() : std::get<Real>(b.v_).precision());
    return Scalar(Real(a.real(d) * b.real(d), static_cast<unsigned>(d)));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw Error("Scalar: division by zero");
    if (a.is_rational() && b.is_rational()) {
        Scalar s(Rational(std::get<Rational>(a.v_) / std::get<Rational>(b.v_)));
        s.exact_ = a.exact_ && b.exact_;
        return s;
    }
    int d = 0;
    if (a.is_real() && b.is_real()) d = max_digits(std::get<Real>(a.v_), std::get<Real>(b.v_));
    else d = static_cast<int>(a.is_real() ? std::get<Real>(a.v_).precision() : std::get<Real>(b.v_).precision());
    return Scalar(Real(a.real(d) / b.real(d), static_cast<unsigned>(d)));
}

Scalar Scalar::operator-() const {
    if (is_rational()) {
        Scalar s(Rational(-std::get<Rational>(v_)));
        s.exact_ = exact_;
        return s;
    }
    return Scalar(Real(-std::get<Real>(v_)));
}

bool Scalar::operator==(const Scalar& o) const {
    if (is_rational() && o.is_rational()) return std::get<Rational>(v_) == std::get<Rational>(o.v_);
    int d = 50;
    return real(d) == o.real(d);
}

Rational pow10_rational(long e) {
    Integer p = 1;
    long a = e < 0 ? -e : e;
    Integer ten = 10;
    for (long i = 0; i < a; ++i) p *= ten;
    return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

namespace {

// floor(log10(|q|)) by exact comparison against powers of ten.
long decimal_exponent(const Rational& q) {
    Rational a = q < 0 ? Rational(-q) : q;
    // first estimate from numerator/denominator digit counts
    std::string ns = Integer(numerator(a)).str();
    std::string ds = Integer(denominator(a)).str();
    long e = static_cast<long>(ns.size()) - static_cast<long>(ds.size());
    // correct: want 10^e <= a < 10^(e+1)
    while (a < pow10_rational(e)) --e;
    while (a >= pow10_rational(e + 1)) ++e;
    return e;
}

Integer round_half_even(const Rational& x) {
    Integer n = numerator(x), d = denominator(x);
    Integer q, r;
    divide_qr(n, d, q, r);  // truncating division, r has sign of n
    if (r < 0) { q -= 1; r += d; }  // floor
    Rational frac(r, d);
    Rational half(1, 2);
    if (frac > half) return q + 1;
    if (frac < half) return q;
    return (q % 2 == 0) ? q : q + 1;  // tie: to even
}

}  // namespace

Rational truncate_digits(const Rational& q, int D) {
    if (D < 1) throw Error("truncate_digits: D must be >= 1");
    if (q == 0) return q;
    long e = decimal_exponent(q);
    long shift = D - 1 - e;
    Integer n = round_half_even(q * pow10_rational(shift));
    return Rational(n) * pow10_rational(-shift);
}

Real truncate_digits_real(const Real& x, int D) {
    if (D < 1) throw Error("truncate_digits: D must be >= 1");
    if (x == 0) return x;
    // floats are dyadic rationals; rounding the exact value keeps the decimal
    // significant-digit semantics and the idempotence contract
    unsigned prec = x.precision();
    Rational q = x.convert_to<Rational>();
    return Real(truncate_digits(q, D), prec);
}

Scalar truncate_digits(const Scalar& x, int D) {
    if (x.is_rational()) return Scalar::inexact(truncate_digits(x.rational(), D));
    return Scalar(truncate_digits_real(x.real(static_cast<int>(Real::default_precision())), D));
}

PrecisionContext required_precision_from_capacity(int N, int noise_digits, double capacity) {
    if (N < 1) throw Error("required_precision: N must be >= 1");
    if (!(capacity > 0.0) || capacity >= 1.0 || !std::isfinite(capacity))
        throw Error("capacity unavailable");
    double d = 2.0 * N * std::log10(1.0 / capacity) + noise_digits + 20;
    int digits = static_cast<int>(std::ceil(d));
    if (digits < 16) digits = 16;
    return PrecisionContext{digits, 10};
}

Integer integer_from_decimal(const std::string& s) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad integer '" + s + "'");
    size_t nz = t.find_first_not_of('0');  // gmp reads a leading 0 as octal
    t = nz == std::string::npos ? "0" : t.substr(nz);
    Integer v(t);
    return neg ? Integer(-v) : v;
}

Rational rational_from_decimal(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw Error("rational_from_decimal: empty string");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Integer n = integer_from_decimal(t.substr(0, slash));
        Integer d = integer_from_decimal(t.substr(slash + 1));
        if (d == 0) throw Error("rational_from_decimal: zero denominator");
        return Rational(n, d);
    }
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    auto dot = t.find('.');
    std::string digits = t;
    if (dot != std::string::npos) {
        digits = t.substr(0, dot) + t.substr(dot + 1);
        exp10 -= static_cast<long>(t.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw Error("rational_from_decimal: bad number '" + s + "'");
    Rational r = Rational(integer_from_decimal(digits)) * pow10_rational(exp10);
    return neg ? Rational(-r) : r;
}

void warn(const std::string& msg) { std::cerr << "[padenoise] warning: " << msg << "\n"; }

}  // namespace padenoise
