#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padenoise/conformal.hpp"
#include "padenoise/noise.hpp"

using namespace padenoise;

namespace {
const PrecisionContext ctx50{50, 10};

Complex random_disk_point(int i, double radius) {
    double a = static_cast<double>(uniform_pm1(777, 0, 2 * i));
    double b = static_cast<double>(uniform_pm1(777, 0, 2 * i + 1));
    return Complex(Real(a) * radius, Real(b) * radius);
}
}  // namespace

TEST_CASE("mcut capacities match 4^(-1/M)") {
    for (int M : {1, 2, 3, 4}) {
        auto map = ConformalMap::mcut(M);
        PrecisionScope scope(ctx50);
        Real c = map.capacity(ctx50);
        Real expect = pow(Real(4), -Real(1) / M);
        CHECK(abs(c - expect) < 1e-45);
    }
    CHECK(*ConformalMap::mcut(1).capacity_exact() == Rational(1, 4));
    CHECK(*ConformalMap::mcut(2).capacity_exact() == Rational(1, 2));
}

TEST_CASE("psi(0) = 0 and known z_inf values") {
    PrecisionScope scope(ctx50);
    for (int M : {1, 2, 3, 4}) {
        auto map = ConformalMap::mcut(M);
        CHECK(abs(map.psi(Complex(Real(0)), ctx50)) < 1e-45);
        Real z = *map.z_inf_known(ctx50);
        Real expect = pow(sqrt(Real(2)) + 1, -Real(2) / M);
        CHECK(abs(z - expect) < 1e-45);
    }
    CHECK(std::abs((*ConformalMap::mcut(1).z_inf_known(ctx50)).convert_to<double>() -
                   0.17157287525381) < 1e-10);
    CHECK(std::abs((*ConformalMap::mcut(2).z_inf_known(ctx50)).convert_to<double>() -
                   0.41421356237310) < 1e-10);
    CHECK(std::abs((*ConformalMap::mcut(4).z_inf_known(ctx50)).convert_to<double>() -
                   0.64359425290558) < 1e-10);
}

TEST_CASE("round-trip phi(psi(w)) = w across the disk") {
    PrecisionScope scope(ctx50);
    for (int M : {1, 2, 3}) {
        auto map = ConformalMap::mcut(M);
        for (int i = 0; i < 100; ++i) {
            Complex w = random_disk_point(i, 0.9);
            Complex back = map.phi(map.psi(w, ctx50), ctx50);
            CHECK(abs(back - w) < pow(Real(10), -40));
        }
    }
}

TEST_CASE("branch consistency: one-cut psi is monotone (-1,inf) -> (-1,1)") {
    PrecisionScope scope(ctx50);
    auto map = ConformalMap::mcut(1);
    Real prev = -2;
    for (double x : {-0.99, -0.5, 0.0, 0.5, 1.0, 5.0, 100.0}) {
        Complex z = map.psi(Complex(Real(x)), ctx50);
        CHECK(abs(z.im) < 1e-45);
        CHECK(z.re > prev);
        CHECK(z.re > -1);
        CHECK(z.re < 1);
        prev = z.re;
    }
}

TEST_CASE("map derivatives at the one-cut saddle") {
    auto map = ConformalMap::mcut(1);
    PrecisionScope scope(ctx50);
    auto d = map.derivatives(Complex(Real(1)), ctx50);
    CHECK(std::abs(d.psi.re.convert_to<double>() - 0.1715728752538099) < 1e-12);
    CHECK(std::abs(d.dpsi.re.convert_to<double>() - 0.12132034355964257) < 1e-12);
    // psi'(0) = 1/4
    auto d0 = map.derivatives(Complex(Real(1) / 2), ctx50);
    (void)d0;
    Complex near0 = map.psi(Complex(pow(Real(10), -20)), ctx50);
    CHECK(abs(near0 / Complex(pow(Real(10), -20)) - Complex(Real(1) / 4)) < 1e-15);

    // alpha_theta against a finite-difference second derivative of log psi(e^{i t})
    Real h = pow(Real(10), -12);
    auto logpsi = [&](const Real& t) {
        return log(map.psi(polar(Real(1), t), ctx50));
    };
    Complex fd = (logpsi(h) - 2 * Real(1) * logpsi(Real(0)) + logpsi(-h)) / Complex(h * h);
    CHECK(abs(fd - d.alpha_theta) < 1e-10);
    // closed form 1/(4 sqrt 2)
    CHECK(abs(d.alpha_theta - Complex(Real(1) / (4 * sqrt(Real(2))))) < 1e-40);
    // statement-form alpha (omega derivatives) is negative at the saddle
    CHECK(d.alpha_omega.re < 0);

    CHECK_THROWS_AS(map.derivatives(Complex(Real(0)), ctx50), Error);
}

TEST_CASE("derivatives by finite differences match the analytic path (user map)") {
    auto analytic = ConformalMap::mcut(2);
    auto user = ConformalMap::user(
        [&](const Complex& w) { return analytic.psi(w, ctx50); },
        [&](const Complex& z) { return analytic.phi(z, ctx50); });
    PrecisionScope scope(ctx50);
    for (int i = 0; i < 10; ++i) {
        Complex w = random_disk_point(i, 0.7) + Complex(Real(2), Real(0));  // off the cuts
        auto da = analytic.derivatives(w, ctx50);
        auto du = user.derivatives(w, ctx50);
        Real tol = pow(Real(10), -ctx50.effective() / 3 + 2);
        CHECK(abs(da.dpsi - du.dpsi) / abs(da.dpsi) < tol);
        CHECK(abs(da.d2psi - du.d2psi) / abs(da.d2psi) < tol);
    }
}

TEST_CASE("find_z_inf locates the minima") {
    PrecisionContext ctx{40, 10};
    auto z1 = find_z_inf(ConformalMap::mcut(1), 512, ctx);
    CHECK(z1.angles.size() == 1);
    CHECK(std::abs(z1.z_inf.convert_to<double>() - 0.17157287525381) < 1e-12);
    CHECK(std::abs(z1.angles[0].convert_to<double>()) < 1e-9);

    auto z2 = find_z_inf(ConformalMap::mcut(2), 512, ctx);
    CHECK(z2.angles.size() == 2);
    CHECK(std::abs(z2.z_inf.convert_to<double>() - 0.41421356237310) < 1e-12);
    CHECK(std::abs(z2.angles[1].convert_to<double>() - 3.14159265358979) < 1e-9);

    auto z4 = find_z_inf(ConformalMap::mcut(4), 512, ctx);
    CHECK(z4.angles.size() == 4);
    CHECK(std::abs(z4.z_inf.convert_to<double>() - 0.64359425290558) < 1e-12);

    CHECK_THROWS_AS(find_z_inf(ConformalMap::mcut(1), 100, ctx), Error);
}

TEST_CASE("phi series: one-cut coefficients are 4k") {
    auto map = ConformalMap::mcut(1);
    auto b = map.phi_series(6, ctx50);
    for (int k = 0; k <= 6; ++k) CHECK(b[k].rational() == Rational(4) * k);
    auto b2 = ConformalMap::mcut(2).phi_series(7, ctx50);
    CHECK(b2[1].rational() == 2);
    CHECK(b2[2].rational() == 0);
    CHECK(b2[3].rational() == 2);
}

TEST_CASE("powers of the one-cut map: [z^{m+k}] phi^m = 4^m C(k+2m-1, k)") {
    auto map = ConformalMap::mcut(1);
    auto b = map.phi_series(12, ctx50);
    std::vector<Scalar> power{Scalar(1)};
    for (int m = 1; m <= 3; ++m) {
        power = convolve(power, b, 12);
        for (int k = 0; k + m <= 12; ++k) {
            Rational expect = Rational(Integer(1) << (2 * m)) * binom_nonneg(k + 2 * m - 1, k);
            CHECK(power[m + k].rational() == expect);
        }
    }
}

TEST_CASE("composition: identity, constants, coupled coefficients") {
    auto map = ConformalMap::mcut(1);
    TruncatedSeries id;
    id.coeffs = {Scalar(0), Scalar(1)};
    auto c = compose_with_map(id, map, 8, ctx50);
    for (int k = 1; k <= 8; ++k) CHECK(c.coeffs[k].rational() == Rational(4) * k);
    CHECK(c.coeffs[0].rational() == 0);

    TruncatedSeries con;
    con.coeffs = {Scalar(Rational(7, 3))};
    auto cc = compose_with_map(con, map, 5, ctx50);
    CHECK(cc.coeffs[0].rational() == Rational(7, 3));
    for (int k = 1; k <= 5; ++k) CHECK(cc.coeffs[k].rational() == 0);
}

TEST_CASE("closed form equals generic composition exactly on rational input") {
    auto map = ConformalMap::mcut(1);
    TruncatedSeries f;
    for (int k = 0; k <= 30; ++k)
        f.coeffs.push_back(Scalar(uniform_pm1(4242, 1, k)));  // random dyadic rationals
    auto a = compose_with_map(f, map, 30, ctx50);
    auto b = compose_generic(f, map, 30, ctx50);
    for (int k = 0; k <= 30; ++k) CHECK(a.coeffs[k].rational() == b.coeffs[k].rational());
}

TEST_CASE("required_precision through a map") {
    PrecisionContext a = required_precision(33, 40, ConformalMap::mcut(1));
    CHECK(a.decimal_digits >= 100);
    PrecisionContext b = required_precision(66, 40, ConformalMap::mcut(2));
    CHECK(b.decimal_digits >= 99);
}
