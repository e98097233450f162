#include "padenoise/theory.hpp"

#include <cmath>

namespace padenoise {

Rational variance_exact(const Rational& eps, int m) {
    if (m < 0) throw Error("variance_exact: m must be >= 0");
    Integer sum = 0;
    Integer pow16 = 1;  // 4^{2k}
    for (int k = 0; k <= m; ++k) {
        if (k > 0) pow16 *= 16;
        Integer c = binom_nonneg(m + k - 1, m - k);
        sum += pow16 * c * c;
    }
    return eps * eps * Rational(sum, 3);
}

Real variance_asymptotic(const Rational& eps, int m, const PrecisionContext& ctx) {
    if (m < 1) throw Error("variance_asymptotic: m must be >= 1");
    PrecisionScope scope(ctx);
    Real pi = 4 * atan(Real(1));
    Real sq2 = sqrt(Real(2));
    Real e2 = Real(eps) * Real(eps);
    return e2 / 3 * pow(sq2 + 1, 4 * m) / (pow(Real(2), Real(1) / 4) * sqrt(2 * pi * m));
}

int variance_peak_index(int m) {
    if (m < 1) throw Error("variance_peak_index: m must be >= 1");
    Integer best_val = 0;
    int best_k = 0;
    Integer pow16 = 1;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) pow16 *= 16;
        Integer c = binom_nonneg(m + k - 1, m - k);
        Integer v = pow16 * c * c;
        if (v > best_val) {
            best_val = v;
            best_k = k;
        }
    }
    return best_k;
}

namespace {

struct SaddleData {
    Real zinf_abs;
    std::vector<Complex> omega_inf;
    std::vector<Complex> z_inf_points;
};

SaddleData saddle_data(const ConformalMap& map, const PrecisionContext& ctx) {
    SaddleData out;
    if (map.family() == ConformalMap::Family::mcut) {
        out.zinf_abs = *map.z_inf_known(ctx);
        out.omega_inf = map.omega_inf_known(ctx);
    } else {
        ZInfResult z = find_z_inf(map, 1024, ctx);
        out.zinf_abs = z.z_inf;
        out.omega_inf = z.omega_inf;
    }
    for (const auto& w : out.omega_inf) out.z_inf_points.push_back(map.psi(w, ctx));
    return out;
}

}  // namespace

Real sigma_nk_amplitude(const ConformalMap& map, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    SaddleData sd = saddle_data(map, ctx);
    Real pi = 4 * atan(Real(1));
    Real a2_sum = 0;
    for (const auto& w : sd.omega_inf) {
        MapDerivatives der = map.derivatives(w, ctx);
        Real re_alpha = der.alpha_theta.re;
        if (!(re_alpha > 0))
            throw Error("non-generic minimum, amplitude formula inapplicable (Re alpha <= 0)");
        Real a1 = abs(der.dpsi) / (sqrt(Real(3)) * sd.zinf_abs * pow(4 * pi * re_alpha, Real(1) / 4));
        a2_sum += a1 * a1;
    }
    return sqrt(a2_sum);
}

Real sigma_nk(const Rational& eps, int k, const ConformalMap& map, const PrecisionContext& ctx) {
    if (k < 1) throw Error("sigma_nk: k must be >= 1");
    PrecisionScope scope(ctx);
    SaddleData sd = saddle_data(map, ctx);
    Real A = sigma_nk_amplitude(map, ctx);
    return A * Real(eps) * pow(Real(k), -Real(1) / 4) * pow(sd.zinf_abs, -k);
}

bool breakdown_coeff_condition(const Rational& eps, int k, double delta, const ConformalMap& map,
                               const PrecisionContext& ctx) {
    return sigma_nk(eps, k, map, ctx) > Real(delta);
}

bool breakdown_point_condition(const Rational& eps, int k, double delta, const Complex& z,
                               const ConformalMap& map, const PrecisionContext& ctx) {
    if (k < 1) throw Error("breakdown_point_condition: k must be >= 1");
    PrecisionScope scope(ctx);
    SaddleData sd = saddle_data(map, ctx);
    if (!(abs(z) > sd.zinf_abs)) throw Error("inside noise-insensitive region");
    Real pi = 4 * atan(Real(1));
    Real total2 = 0;
    for (size_t i = 0; i < sd.omega_inf.size(); ++i) {
        MapDerivatives der = map.derivatives(sd.omega_inf[i], ctx);
        Real re_alpha = der.alpha_theta.re;
        if (!(re_alpha > 0))
            throw Error("non-generic minimum, amplitude formula inapplicable (Re alpha <= 0)");
        Real a1 = abs(der.dpsi) / (sqrt(Real(3)) * sd.zinf_abs * pow(4 * pi * re_alpha, Real(1) / 4));
        Complex zi = sd.z_inf_points[i];
        Real geom = pow(abs(z) / sd.zinf_abs, k);
        Real prox = Real(1) / abs(Complex(Real(1)) - zi / z);
        Real term = a1 * Real(eps) * pow(Real(k), -Real(1) / 4) * geom * prox;
        total2 += term * term;
    }
    return sqrt(total2) > Real(delta);
}

Real predict_nc1(const Rational& eps, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    if (!(eps > 0 && eps < 1)) throw Error("predict_Nc: eps must be in (0,1)");
    Real l = log10(Real(eps));
    return -l / (4 * log10(1 + sqrt(Real(2))));
}

Real predict_ncM(const Rational& eps, int M, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    return M * predict_nc1(eps, ctx);
}

Real predict_resultM(const Rational& eps, int M, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    if (!(eps > 0 && eps < 1)) throw Error("predict_Nc: eps must be in (0,1)");
    Real cM = pow(Real(4), -Real(1) / M);
    return result_constant(ctx) * log10(Real(eps)) / log10(cM);
}

Real predict_final(const Rational& eps, const ConformalMap& map, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    if (!(eps > 0 && eps < 1)) throw Error("predict_Nc: eps must be in (0,1)");
    ZInfResult z = find_z_inf(map, 1024, ctx);
    return log10(Real(eps)) / (2 * log10(z.z_inf));
}

Real result_constant(const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    return log10(sqrt(Real(2))) / log10(1 + sqrt(Real(2)));
}

}  // namespace padenoise
