#include "padenoise/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace padenoise {

ConformalMap ConformalMap::mcut(int M) {
    if (M < 1) throw Error("mcut: M must be >= 1");
    ConformalMap m;
    m.family_ = Family::mcut;
    m.M_ = M;
    return m;
}

ConformalMap ConformalMap::user(Evaluator psi, Evaluator phi) {
    ConformalMap m;
    m.family_ = Family::user;
    m.user_psi_ = std::move(psi);
    m.user_phi_ = std::move(phi);
    return m;
}

std::string ConformalMap::name() const {
    if (family_ == Family::mcut) return "mcut:" + std::to_string(M_);
    return "user";
}

namespace {

Complex phi_mcut(int M, const Complex& z) {
    if (M == 1) {
        Complex d = Complex(Real(1)) - z;
        return (4 * Real(1)) * z / (d * d);
    }
    if (M == 2) {
        return (2 * Real(1)) * z / (Complex(Real(1)) - z * z);
    }
    Complex zm = pow_int(z, M);
    Real ex = Real(2) / M;
    return pow(Real(2), ex) * z * pow(Complex(Real(1)) - zm, -ex);
}

// phi'(z) = 2^{2/M} (1+z^M) (1-z^M)^{-(M+2)/M}
Complex dphi_mcut(int M, const Complex& z) {
    Complex zm = pow_int(z, M);
    Complex one(Real(1));
    if (M == 1) {
        Complex d = one - z;
        return 4 * Real(1) * (one + z) / (d * d * d);
    }
    return pow(Real(2), Real(2) / M) * (one + zm) * pow(one - zm, -Real(M + 2) / M);
}

// phi''(z) = 2^{2/M} z^{M-1} (2M+2+2z^M) (1-z^M)^{-2(M+1)/M}
Complex d2phi_mcut(int M, const Complex& z) {
    Complex zm = pow_int(z, M);
    Complex one(Real(1));
    if (M == 1) {
        Complex d = one - z;
        return 4 * Real(1) * (Complex(Real(4)) + 2 * Real(1) * z) / (d * d * d * d);
    }
    Complex head = pow_int(z, M - 1) * (Complex(Real(2 * M + 2)) + 2 * Real(1) * zm);
    return pow(Real(2), Real(2) / M) * head * pow(one - zm, -Real(2 * (M + 1)) / M);
}

Complex psi_mcut(int M, const Complex& w) {
    Complex wm = pow_int(w, M);
    Complex s = sqrt(Complex(Real(1)) + wm);
    Complex t = (s - Complex(Real(1))) / (s + Complex(Real(1)));
    if (M == 1) return t;
    Real at = abs(t);
    if (at == 0) return Complex(Real(0));
    // among the M-th roots of t, take the one consistent with the inverse
    Real r = pow(at, Real(1) / M);
    Real theta = arg(t);
    Real two_pi = 8 * atan(Real(1));
    Complex best;
    Real best_err = -1;
    for (int j = 0; j < M; ++j) {
        Complex cand = polar(r, (theta + two_pi * j) / M);
        Real err = abs(phi_mcut(M, cand) - w);
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = cand;
        }
    }
    return best;
}

}  // namespace

Complex ConformalMap::psi(const Complex& w, const PrecisionContext& ctx) const {
    PrecisionScope scope(ctx);
    if (family_ == Family::mcut) return psi_mcut(M_, w);
    return user_psi_(w);
}

Complex ConformalMap::phi(const Complex& z, const PrecisionContext& ctx) const {
    PrecisionScope scope(ctx);
    if (family_ == Family::mcut) return phi_mcut(M_, z);
    return user_phi_(z);
}

Real ConformalMap::capacity(const PrecisionContext& ctx) const {
    PrecisionScope scope(ctx);
    if (family_ == Family::mcut) return pow(Real(4), -Real(1) / M_);
    // |psi'(0)| by central differences
    int d = ctx.effective();
    Real h = pow(Real(10), -(d / 3));
    Complex dp = (user_psi_(Complex(h)) - user_psi_(Complex(-h))) / Complex(2 * h);
    Real c = abs(dp);
    if (!(c > 0) || c >= 1) throw Error("capacity unavailable");
    return c;
}

std::optional<Rational> ConformalMap::capacity_exact() const {
    if (family_ != Family::mcut) return std::nullopt;
    if (M_ == 1) return Rational(1, 4);
    if (M_ == 2) return Rational(1, 2);
    return std::nullopt;
}

MapDerivatives ConformalMap::derivatives(const Complex& w, const PrecisionContext& ctx) const {
    PrecisionScope scope(ctx);
    MapDerivatives out;
    if (family_ == Family::mcut) {
        Complex z = psi_mcut(M_, w);
        Complex fp = dphi_mcut(M_, z);
        Complex fpp = d2phi_mcut(M_, z);
        out.psi = z;
        out.dpsi = Complex(Real(1)) / fp;
        out.d2psi = -fpp / (fp * fp * fp);
    } else {
        int d = ctx.effective();
        Real h = pow(Real(10), -(d / 3));
        Complex ch(h);
        Complex pm = user_psi_(w - ch), p0 = user_psi_(w), pp = user_psi_(w + ch);
        out.psi = p0;
        out.dpsi = (pp - pm) / Complex(2 * h);
        out.d2psi = (pp - 2 * Real(1) * p0 + pm) / Complex(h * h);
    }
    if (abs(out.psi) == 0) throw Error("alpha undefined at zero of psi");
    Complex lp = out.dpsi / out.psi;
    out.alpha_omega = out.d2psi / out.psi - lp * lp;
    out.alpha_theta = -(w * lp) - w * w * out.alpha_omega;
    return out;
}

std::vector<Scalar> ConformalMap::phi_series(int out_order, const PrecisionContext& ctx) const {
    if (family_ != Family::mcut)
        throw Error("phi_series: only available for the mcut family");
    std::vector<Scalar> b(out_order + 1, Scalar(0));
    if (M_ == 1) {
        for (int k = 1; k <= out_order; ++k) b[k] = Scalar(Rational(4) * k);
        return b;
    }
    if (M_ == 2) {
        for (int k = 1; k <= out_order; k += 2) b[k] = Scalar(Rational(2));
        return b;
    }
    PrecisionScope scope(ctx);
    // b_{Mk+1} = 2^{2/M} * binom(2/M + k - 1, k)
    Real lead = pow(Real(2), Real(2) / M_);
    Rational alpha(2, M_);
    Rational binom = 1;  // binom(alpha + k - 1, k)
    for (int k = 0; M_ * static_cast<long long>(k) + 1 <= out_order; ++k) {
        if (k > 0) binom = binom * (alpha + k - 1) / k;
        b[static_cast<size_t>(M_) * k + 1] = Scalar(Real(lead * Real(binom)));
    }
    return b;
}

std::optional<Real> ConformalMap::z_inf_known(const PrecisionContext& ctx) const {
    if (family_ != Family::mcut) return std::nullopt;
    PrecisionScope scope(ctx);
    return pow(sqrt(Real(2)) + 1, -Real(2) / M_);
}

std::vector<Complex> ConformalMap::omega_inf_known(const PrecisionContext& ctx) const {
    if (family_ != Family::mcut) return {};
    PrecisionScope scope(ctx);
    std::vector<Complex> out;
    Real two_pi = 8 * atan(Real(1));
    for (int j = 0; j < M_; ++j) out.push_back(polar(Real(1), two_pi * j / M_));
    return out;
}

ZInfResult find_z_inf(const ConformalMap& map, int samples, const PrecisionContext& ctx) {
    if (samples < 256) throw Error("find_z_inf: need >= 256 samples");
    PrecisionScope scope(ctx);
    int d = ctx.effective();
    Real two_pi = 8 * atan(Real(1));

    auto value_at = [&](const Real& theta) -> Real {
        Complex w = polar(Real(1), theta);
        return abs(map.psi(w, ctx));
    };

    std::vector<Real> theta(samples), val(samples);
    std::vector<bool> ok(samples, true);
    for (int j = 0; j < samples; ++j) {
        theta[j] = two_pi * j / samples;
        try {
            val[j] = value_at(theta[j]);
        } catch (const std::exception&) {
            ok[j] = false;  // branch point on the circle: skip sample
        }
    }

    // local minima with cyclic neighbours, then golden-section refinement
    Real gr = (sqrt(Real(5)) - 1) / 2;
    Real tol = pow(Real(10), -(d / 2));
    struct Minimum { Real theta, value; };
    std::vector<Minimum> minima;
    for (int j = 0; j < samples; ++j) {
        int jm = (j + samples - 1) % samples, jp = (j + 1) % samples;
        if (!ok[j] || !ok[jm] || !ok[jp]) continue;
        if (!(val[j] <= val[jm] && val[j] <= val[jp])) continue;
        Real a = theta[j] - two_pi / samples, b = theta[j] + two_pi / samples;
        Real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        Real f1 = value_at(x1), f2 = value_at(x2);
        while (b - a > tol) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = value_at(x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = value_at(x2);
            }
        }
        Real tm = (a + b) / 2;
        minima.push_back(Minimum{tm, value_at(tm)});
    }
    if (minima.empty()) throw Error("find_z_inf: no minima found");

    Real best = minima[0].value;
    for (const auto& m : minima) best = min(best, m.value);
    Real window = Real(1) / 100000000;  // declared tie window 1e-8
    ZInfResult out;
    out.z_inf = best;
    std::vector<Real> angles;
    for (const auto& m : minima) {
        if (m.value - best > window) continue;
        Real t = m.theta;
        if (t < 0) t += two_pi;
        if (t >= two_pi) t -= two_pi;
        bool dup = false;
        for (const auto& a : angles) {
            Real diff = abs(t - a);
            if (min(diff, two_pi - diff) < two_pi / samples / 2) dup = true;
        }
        if (!dup) angles.push_back(t);
    }
    std::sort(angles.begin(), angles.end());
    for (const auto& a : angles) out.omega_inf.push_back(polar(Real(1), a));
    out.angles = std::move(angles);
    return out;
}

Integer binom_nonneg(long n, long k) {
    if (k < 0) return 0;
    if (n < 0) {
        if (n == -1 && k == 0) return 1;  // C(-1,0): empty product convention
        throw Error("binom_nonneg: negative n");
    }
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

TruncatedSeries compose_generic(const TruncatedSeries& f, const ConformalMap& map, int out_order,
                                const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    auto b = map.phi_series(out_order, ctx);
    int jmax = std::min(f.order(), out_order);
    std::vector<Scalar> acc(out_order + 1, Scalar(0));
    std::vector<Scalar> power(1, Scalar(1));  // phi^j, truncated
    for (int j = 0; j <= jmax; ++j) {
        if (j > 0) power = convolve(power, b, out_order);
        const Scalar& fj = f.coeffs[j];
        if (fj.is_zero() && fj.exact()) continue;
        for (size_t k = 0; k < power.size(); ++k) acc[k] = acc[k] + fj * power[k];
    }
    TruncatedSeries out;
    out.coeffs = std::move(acc);
    out.label = f.label + " o phi[" + map.name() + "]";
    out.provenance = Provenance::composed;
    out.noise = f.noise;
    return out;
}

TruncatedSeries compose_with_map(const TruncatedSeries& f, const ConformalMap& map, int out_order,
                                 const PrecisionContext& ctx) {
    if (out_order < 0) throw Error("compose_with_map: out_order must be >= 0");
    if (!(map.family() == ConformalMap::Family::mcut && map.mcut_order() == 1))
        return compose_generic(f, map, out_order, ctx);

    // one-cut closed form: c_m = sum_k f_k 4^k C(m+k-1, m-k)
    PrecisionScope scope(ctx);
    TruncatedSeries out;
    out.coeffs.assign(out_order + 1, Scalar(0));
    int kmax_f = f.order();
    for (int m = 0; m <= out_order; ++m) {
        Scalar acc(0);
        Integer pow4 = 1;  // 4^k
        for (int k = 0; k <= std::min(m, kmax_f); ++k) {
            if (k > 0) pow4 *= 4;
            Integer c = binom_nonneg(m + k - 1, m - k);
            if (c == 0) continue;
            acc = acc + f.coeffs[k] * Scalar(Rational(pow4 * c));
        }
        out.coeffs[m] = acc;
    }
    out.label = f.label + " o phi[mcut:1]";
    out.provenance = Provenance::composed;
    out.noise = f.noise;
    return out;
}

PrecisionContext required_precision(int N, int noise_digits, const ConformalMap& map) {
    PrecisionContext probe{30, 10};
    double c;
    if (auto q = map.capacity_exact())
        c = static_cast<double>(*q);
    else
        c = static_cast<double>(map.capacity(probe));
    return required_precision_from_capacity(N, noise_digits, c);
}

}  // namespace padenoise
