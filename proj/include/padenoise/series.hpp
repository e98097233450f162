#pragma once

#include "padenoise/noise.hpp"
#include "padenoise/numeric.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace padenoise {

enum class Provenance { model, painleve1, phi36, file, composed, noisy };

/// Truncated power series f0..fm.
struct TruncatedSeries {
    std::vector<Scalar> coeffs;
    std::string label;
    Provenance provenance = Provenance::model;
    NoiseMode noise = NoiseMode::none;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    bool all_exact() const;
    bool all_rational() const;
    TruncatedSeries prefix(int m) const;  // coefficients through order m
};

/// Coefficients of (1 + w^M)^alpha through order m, exact rationals.
/// alpha a non-negative integer means no branch point; warned, not rejected.
TruncatedSeries binomial_series(const Rational& alpha, int M, int m);

/// Borel transform of the Painleve I tritronquee expansion: coefficient of
/// w^(2n-1) is a_n/(2n-1)!, a_n from the quadratic recursion, through n_max.
TruncatedSeries painleve1_series(int n_max);

/// Raw recursion coefficients a_1..a_n_max (index 0 unused).
std::vector<Rational> painleve1_recursion(int n_max);

/// Borel transform built from integer-sequence data: coefficient of w^n is
/// 6 (-1)^n A_n / (12^n n!).
TruncatedSeries phi36_series(const std::map<long long, Integer>& A_values, int n_max);

/// Parse a b-file: lines of "index value", '#' comments allowed.
std::map<long long, Integer> parse_bfile(const std::string& path);

struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_) : Error(msg), line(line_) {}
};

struct SequenceGapError : Error {
    long long n;
    explicit SequenceGapError(long long n_)
        : Error("sequence gap at n=" + std::to_string(n_)), n(n_) {}
};

/// Apply noise per the spec: additive f_k + eps*r_k (coupled to realization
/// `index`), or significant-digit truncation.
std::pair<TruncatedSeries, NoiseRealization> add_noise(const TruncatedSeries& f,
                                                       const NoiseSpec& spec, int index = 0);

/// Truncated product through min order (exact when both factors exact).
std::vector<Scalar> convolve(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                             int out_order);

}  // namespace padenoise
