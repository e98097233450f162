#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padenoise/noise.hpp"

#include <algorithm>
#include <cmath>

using namespace padenoise;

TEST_CASE("draws are deterministic in (seed, index, k)") {
    NoiseSpec spec = NoiseSpec::additive(Rational(1, 100), 42, 3);
    auto a = draw_realization(spec, 7, 100);
    auto b = draw_realization(spec, 7, 100);
    CHECK(a.r_values == b.r_values);
    CHECK(a.derived_seed == b.derived_seed);
    auto c = draw_realization(spec, 8, 100);
    CHECK(a.r_values != c.r_values);
}

TEST_CASE("draws are dyadic rationals in [-1,1]") {
    auto r = draw_realization(NoiseSpec::additive(Rational(1, 10), 5, 1), 0, 500);
    for (const auto& v : r.r_values) {
        CHECK(v >= -1);
        CHECK(v <= 1);
        Integer d = denominator(v);
        // denominator divides 2^63
        while (d % 2 == 0) d /= 2;
        CHECK(d == 1);
    }
}

TEST_CASE("mean of 1e5 draws within the 3-sigma band") {
    const int n = 100000;
    double sum = 0;
    for (int k = 0; k < n; ++k)
        sum += static_cast<double>(uniform_pm1(987654321, 0, k));
    double mean = sum / n;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(3.0 * n));  // sigma = 1/sqrt(3)
}

TEST_CASE("variance of draws near 1/3") {
    const int n = 100000;
    double s2 = 0;
    for (int k = 0; k < n; ++k) {
        double v = static_cast<double>(uniform_pm1(123, 1, k));
        s2 += v * v;
    }
    double var = s2 / n;
    CHECK(var > 1.0 / 3 * 0.95);
    CHECK(var < 1.0 / 3 * 1.05);
}

TEST_CASE("Kolmogorov-Smirnov distance below the 1% critical value") {
    const int n = 100000;
    std::vector<double> xs(n);
    for (int k = 0; k < n; ++k) xs[k] = static_cast<double>(uniform_pm1(20240817, 2, k));
    std::sort(xs.begin(), xs.end());
    double ks = 0;
    for (int i = 0; i < n; ++i) {
        double cdf = (xs[i] + 1) / 2;
        ks = std::max(ks, std::abs(cdf - double(i) / n));
        ks = std::max(ks, std::abs(cdf - double(i + 1) / n));
    }
    CHECK(ks < 1.6276 / std::sqrt(double(n)));
}

TEST_CASE("reference spec scales epsilon by 1e-100 and keeps the seed") {
    NoiseSpec spec = NoiseSpec::additive(pow10_rational(-20), 99, 5);
    NoiseSpec ref = reference_spec(spec);
    CHECK(ref.epsilon == pow10_rational(-120));
    CHECK(ref.seed == spec.seed);
    CHECK(ref.realizations == spec.realizations);
    NoiseSpec ref2 = reference_spec(ref);
    CHECK(ref2.epsilon == pow10_rational(-220));
    CHECK_THROWS_AS(reference_spec(NoiseSpec::truncation(40)), Error);
}

TEST_CASE("noise_digits") {
    CHECK(NoiseSpec::additive(pow10_rational(-20), 0).noise_digits() == 20);
    CHECK(NoiseSpec::truncation(40).noise_digits() == 40);
    CHECK(NoiseSpec::none_spec().noise_digits() == 0);
}
