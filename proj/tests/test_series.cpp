#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padenoise/series.hpp"

#include <cstdio>
#include <fstream>

using namespace padenoise;

TEST_CASE("binomial series examples") {
    auto f = binomial_series(Rational(-1, 9), 1, 2);
    CHECK(f.coeffs[0].rational() == 1);
    CHECK(f.coeffs[1].rational() == Rational(-1, 9));
    CHECK(f.coeffs[2].rational() == Rational(5, 81));
    CHECK(f.all_exact());

    auto g = binomial_series(Rational(1), 1, 3);
    CHECK(g.coeffs[0].rational() == 1);
    CHECK(g.coeffs[1].rational() == 1);
    CHECK(g.coeffs[2].rational() == 0);
    CHECK(g.coeffs[3].rational() == 0);

    auto h = binomial_series(Rational(-1, 9), 2, 3);
    CHECK(h.coeffs[0].rational() == 1);
    CHECK(h.coeffs[1].rational() == 0);
    CHECK(h.coeffs[2].rational() == Rational(-1, 9));
    CHECK(h.coeffs[3].rational() == 0);
}

TEST_CASE("binomial times its reciprocal is the unit series") {
    int m = 25;
    auto a = binomial_series(Rational(-1, 9), 1, m);
    auto b = binomial_series(Rational(1, 9), 1, m);
    auto c = convolve(a.coeffs, b.coeffs, m);
    CHECK(c[0].rational() == 1);
    for (int k = 1; k <= m; ++k) CHECK(c[k].rational() == 0);
}

TEST_CASE("painleve recursion start values and a3") {
    auto a = painleve1_recursion(3);
    CHECK(a[1] == Rational(4, 25));
    CHECK(a[2] == Rational(-392, 625));
    CHECK(a[3] == Rational(6272, 625));  // -4*(2)^2*a2, empty quadratic sum
}

TEST_CASE("painleve series coefficients divide by (2n-1)!") {
    auto f = painleve1_series(2);
    CHECK(f.order() == 3);
    CHECK(f.coeffs[0].rational() == 0);
    CHECK(f.coeffs[1].rational() == Rational(4, 25));
    CHECK(f.coeffs[2].rational() == 0);
    CHECK(f.coeffs[3].rational() == Rational(-196, 1875));  // a2/3!
    CHECK(f.all_exact());
}

TEST_CASE("painleve recursion residual is exactly zero") {
    int n_max = 60;
    auto a = painleve1_recursion(n_max);
    for (int n = 3; n <= n_max; ++n) {
        Rational s = 0;
        for (int m = 2; m <= n - 2; ++m) s += a[m] * a[n - m];
        Rational residual = a[n] + Rational(4) * (n - 1) * (n - 1) * a[n - 1] + s / 2;
        CHECK(residual == 0);
    }
}

static std::string write_tmp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

TEST_CASE("parse_bfile basics") {
    auto m = parse_bfile(write_tmp("bfile_ok.txt", "0 3\n1 -7\n"));
    CHECK(m.size() == 2);
    CHECK(m[0] == 3);
    CHECK(m[1] == -7);

    auto c = parse_bfile(write_tmp("bfile_comment.txt", "# comment\n2 5\n"));
    CHECK(c.size() == 1);
    CHECK(c[2] == 5);

    CHECK_THROWS_AS(parse_bfile(write_tmp("bfile_dup.txt", "1 2\n1 3\n")), ParseError);
    CHECK_THROWS_AS(parse_bfile(write_tmp("bfile_bad.txt", "1\n")), ParseError);
    CHECK_THROWS_AS(parse_bfile(write_tmp("bfile_bad2.txt", "1 x\n")), ParseError);
}

TEST_CASE("phi36 series from synthetic data") {
    std::map<long long, Integer> A{{0, 5}, {1, 2}, {2, 0}, {3, 9}};
    auto f = phi36_series(A, 3);
    CHECK(f.coeffs[0].rational() == 30);  // 6*A0
    CHECK(f.coeffs[1].rational() == Rational(-6 * 2, 12));
    CHECK(f.coeffs[2].rational() == 0);  // A2 = 0
    CHECK(f.coeffs[3].rational() == Rational(-6 * 9, 12 * 12 * 12 * 6));
    // sign alternates with parity for positive A_n
    CHECK(f.coeffs[1].rational() < 0);
    CHECK(f.coeffs[3].rational() < 0);

    std::map<long long, Integer> gap{{0, 1}, {2, 1}};
    CHECK_THROWS_AS(phi36_series(gap, 2), SequenceGapError);
}

TEST_CASE("add_noise: zero-noise and determinism") {
    auto f = binomial_series(Rational(-1, 9), 1, 10);
    auto [g, r] = add_noise(f, NoiseSpec::none_spec());
    for (int k = 0; k <= 10; ++k) CHECK(g.coeffs[k].rational() == f.coeffs[k].rational());

    NoiseSpec spec = NoiseSpec::additive(pow10_rational(-10), 31415, 1);
    auto [n1, r1] = add_noise(f, spec, 2);
    auto [n2, r2] = add_noise(f, spec, 2);
    for (int k = 0; k <= 10; ++k) CHECK(n1.coeffs[k].rational() == n2.coeffs[k].rational());
    CHECK(r1.r_values == r2.r_values);
    CHECK(n1.noise == NoiseMode::additive);
    CHECK_FALSE(n1.coeffs[0].exact());
    // additive really adds eps * r_k
    CHECK(n1.coeffs[3].rational() == f.coeffs[3].rational() + spec.epsilon * r1.r_values[3]);
}

TEST_CASE("add_noise: truncation reproduces the digit-truncation inputs") {
    auto f = binomial_series(Rational(-1, 9), 1, 6);
    auto [g, r] = add_noise(f, NoiseSpec::truncation(4));
    CHECK(g.coeffs[1].rational() == Rational(-1111, 10000));  // -1/9 -> -0.1111
    CHECK(g.noise == NoiseMode::truncation);
    CHECK(g.all_rational());
    CHECK_FALSE(g.all_exact());
    // zero coefficients stay zero
    auto h = binomial_series(Rational(-1, 9), 2, 6);
    auto [t, r2] = add_noise(h, NoiseSpec::truncation(40));
    CHECK(t.coeffs[1].rational() == 0);
}
