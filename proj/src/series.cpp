#include "padenoise/series.hpp"

#include <fstream>
#include <sstream>

namespace padenoise {

bool TruncatedSeries::all_exact() const {
    for (const auto& c : coeffs)
        if (!c.exact()) return false;
    return true;
}

bool TruncatedSeries::all_rational() const {
    for (const auto& c : coeffs)
        if (!c.is_rational()) return false;
    return true;
}

TruncatedSeries TruncatedSeries::prefix(int m) const {
    if (m > order()) throw Error("prefix: requested order exceeds series order");
    TruncatedSeries out = *this;
    out.coeffs.assign(coeffs.begin(), coeffs.begin() + m + 1);
    return out;
}

TruncatedSeries binomial_series(const Rational& alpha, int M, int m) {
    if (M < 1) throw Error("binomial_series: M must be >= 1");
    if (m < 0) throw Error("binomial_series: order must be >= 0");
    if (denominator(alpha) == 1 && alpha >= 0)
        warn("binomial_series: alpha is a non-negative integer; (1+w^M)^alpha has no branch point");
    TruncatedSeries f;
    f.provenance = Provenance::model;
    {
        std::ostringstream os;
        os << "(1+w" << (M == 1 ? "" : "^" + std::to_string(M)) << ")^(" << alpha << ")";
        f.label = os.str();
    }
    f.coeffs.assign(m + 1, Scalar(0));
    Rational b = 1;  // binomial(alpha, k)
    for (int k = 0; M * static_cast<long long>(k) <= m; ++k) {
        if (k > 0) b = b * (alpha - (k - 1)) / k;
        f.coeffs[static_cast<size_t>(M) * k] = Scalar(b);
    }
    return f;
}

std::vector<Rational> painleve1_recursion(int n_max) {
    if (n_max < 1) throw Error("painleve1_series: n_max must be >= 1");
    std::vector<Rational> a(n_max + 1);
    a[1] = Rational(4, 25);
    if (n_max >= 2) a[2] = Rational(-392, 625);
    for (int n = 3; n <= n_max; ++n) {
        Rational s = 0;
        for (int m = 2; m <= n - 2; ++m) s += a[m] * a[n - m];
        a[n] = Rational(-4) * (n - 1) * (n - 1) * a[n - 1] - s / 2;
    }
    return a;
}

TruncatedSeries painleve1_series(int n_max) {
    auto a = painleve1_recursion(n_max);
    TruncatedSeries f;
    f.provenance = Provenance::painleve1;
    f.label = "painleve1-borel";
    f.coeffs.assign(2 * n_max, Scalar(0));
    Integer fact = 1;  // (2n-1)!
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) fact *= Integer(2 * n - 2) * (2 * n - 1);
        f.coeffs[2 * n - 1] = Scalar(Rational(a[n]) / fact);
    }
    return f;
}

TruncatedSeries phi36_series(const std::map<long long, Integer>& A_values, int n_max) {
    if (n_max < 0) throw Error("phi36_series: n_max must be >= 0");
    if (A_values.empty()) throw Error("phi36_series: empty sequence");
    long long n0 = A_values.begin()->first;
    if (n0 > 0)
        warn("phi36_series: sequence starts at n=" + std::to_string(n0) +
             "; lower-order coefficients set to zero");
    TruncatedSeries f;
    f.provenance = Provenance::phi36;
    f.label = "phi3-6d-borel";
    f.coeffs.assign(n_max + 1, Scalar(0));
    Integer fact = 1, pow12 = 1;
    for (long long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            fact *= n;
            pow12 *= 12;
        }
        if (n < n0) continue;
        auto it = A_values.find(n);
        if (it == A_values.end()) throw SequenceGapError(n);
        Rational c = Rational(Integer(6) * it->second, pow12 * fact);
        f.coeffs[static_cast<size_t>(n)] = Scalar(n % 2 ? Rational(-c) : c);
    }
    return f;
}

std::map<long long, Integer> parse_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("parse_bfile: cannot open " + path);
    std::map<long long, Integer> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        long long n;
        std::string value;
        if (!(ls >> n >> value))
            throw ParseError("parse_bfile: malformed line " + std::to_string(lineno), lineno);
        std::string rest;
        if (ls >> rest)
            throw ParseError("parse_bfile: trailing tokens on line " + std::to_string(lineno), lineno);
        Integer v;
        try {
            v = integer_from_decimal(value);
        } catch (const std::exception&) {
            throw ParseError("parse_bfile: bad integer on line " + std::to_string(lineno), lineno);
        }
        if (!out.emplace(n, v).second)
            throw ParseError("parse_bfile: duplicate index " + std::to_string(n) + " on line " +
                                 std::to_string(lineno),
                             lineno);
    }
    return out;
}

std::pair<TruncatedSeries, NoiseRealization> add_noise(const TruncatedSeries& f,
                                                       const NoiseSpec& spec, int index) {
    TruncatedSeries g = f;
    NoiseRealization real_out;
    switch (spec.mode) {
        case NoiseMode::none:
            real_out = draw_realization(spec, index, static_cast<int>(f.coeffs.size()));
            return {g, real_out};
        case NoiseMode::truncation: {
            real_out = draw_realization(spec, index, static_cast<int>(f.coeffs.size()));
            for (auto& c : g.coeffs) c = truncate_digits(c, spec.digits);
            g.provenance = Provenance::noisy;
            g.noise = NoiseMode::truncation;
            return {g, real_out};
        }
        case NoiseMode::additive: {
            real_out = draw_realization(spec, index, static_cast<int>(f.coeffs.size()));
            for (size_t k = 0; k < g.coeffs.size(); ++k) {
                Scalar noise_term(Rational(spec.epsilon * real_out.r_values[k]));
                Scalar v = g.coeffs[k] + noise_term;
                // lossless rational value, but inexact by construction
                g.coeffs[k] = v.is_rational() ? Scalar::inexact(v.rational()) : v;
            }
            g.provenance = Provenance::noisy;
            g.noise = NoiseMode::additive;
            return {g, real_out};
        }
    }
    throw Error("add_noise: bad mode");
}

std::vector<Scalar> convolve(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                             int out_order) {
    std::vector<Scalar> c(out_order + 1, Scalar(0));
    for (int i = 0; i < static_cast<int>(a.size()) && i <= out_order; ++i) {
        if (a[i].is_zero() && a[i].exact()) continue;
        for (int j = 0; j < static_cast<int>(b.size()) && i + j <= out_order; ++j)
            c[i + j] = c[i + j] + a[i] * b[j];
    }
    return c;
}

}  // namespace padenoise
