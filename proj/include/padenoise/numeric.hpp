#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace padenoise {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real     = boost::multiprecision::mpfr_float;  // variable precision

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Working precision for one computation: decimal_digits plus guard digits,
/// applied uniformly while a PrecisionScope is active.
struct PrecisionContext {
    int decimal_digits = 34;
    int guard_digits   = 10;

    int effective() const { return decimal_digits + guard_digits; }

    static PrecisionContext with_digits(int d, int guard = 10) {
        if (d < 16) d = 16;
        return PrecisionContext{d, guard};
    }
};

/// RAII guard that sets the MPFR default precision (in decimal digits) and
/// restores the previous value on exit. Values are never mutated in place;
/// each computation constructs its results under its own scope.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.effective()) {}
    explicit PrecisionScope(int digits10) : saved_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(digits10 < 16 ? 16 : digits10));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// One numeric value: either an exact rational or a high-precision real.
/// exact==true only for rationals produced by lossless arithmetic; a rational
/// *representation* with exact==false marks values that went through a lossy
/// step (digit truncation) or carry noise.
class Scalar {
public:
    Scalar() : v_(Rational(0)), exact_(true) {}
    Scalar(int n) : v_(Rational(n)), exact_(true) {}
    Scalar(long n) : v_(Rational(n)), exact_(true) {}
    Scalar(const Integer& n) : v_(Rational(n)), exact_(true) {}
    Scalar(const Rational& q) : v_(q), exact_(true) {}
    Scalar(const Real& r) : v_(r), exact_(false) {}

    static Scalar inexact(const Rational& q) {
        Scalar s(q);
        s.exact_ = false;
        return s;
    }

    bool exact() const { return exact_; }
    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_real() const { return std::holds_alternative<Real>(v_); }

    const Rational& rational() const {
        if (!is_rational()) throw Error("Scalar: not a rational value");
        return std::get<Rational>(v_);
    }

    /// Value as a Real at the current default precision.
    Real real() const {
        if (is_rational()) return Real(std::get<Rational>(v_));
        return Real(std::get<Real>(v_));
    }
    /// Value as a Real at an explicit precision.
    Real real(int digits10) const {
        if (is_rational()) return Real(std::get<Rational>(v_), static_cast<unsigned>(digits10));
        return Real(std::get<Real>(v_), static_cast<unsigned>(digits10));
    }

    double as_double() const;
    bool is_zero() const;
    int sign() const;
    std::string str(int digits = 0) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    bool operator==(const Scalar& o) const;

private:
    std::variant<Rational, Real> v_;
    bool exact_;
};

/// Round to D significant decimal digits, half to even. Result is inexact;
/// rationals stay rationals (n/10^k), reals stay reals.
Scalar truncate_digits(const Scalar& x, int D);
Rational truncate_digits(const Rational& q, int D);
Real truncate_digits_real(const Real& x, int D);

/// Decimal digits needed so the Padé linear solve at order N is not
/// precision-limited before the noise floor: 2N*log10(1/c) + noise_digits + 20.
PrecisionContext required_precision_from_capacity(int N, int noise_digits, double capacity);

/// Parse a decimal string ("1e-20", "-0.6272", "3/7") into an exact rational.
Rational rational_from_decimal(const std::string& s);

/// Base-10 integer parse that tolerates leading zeros (gmp reads them as octal).
Integer integer_from_decimal(const std::string& s);

Rational pow10_rational(long e);

void warn(const std::string& msg);

}  // namespace padenoise
