#pragma once

#include "padenoise/conformal.hpp"

namespace padenoise {

/// Exact noise variance of [z^m](f_eps o phi) for the one-cut map:
/// sigma^2(m) = (eps^2/3) sum_k 4^{2k} C(m+k-1, m-k)^2.
Rational variance_exact(const Rational& eps, int m);

/// Large-m closed form (eps^2/3) (sqrt2+1)^{4m} / (2^{1/4} sqrt(2 pi m)).
Real variance_asymptotic(const Rational& eps, int m, const PrecisionContext& ctx);

/// argmax over k of the variance summand (peaks near m/sqrt2).
int variance_peak_index(int m);

/// Amplitude A of sigma(n_k) = A eps k^{-1/4} |z_inf|^{-k}: per minimum
/// A_1 = |psi'(w_inf)| / (sqrt3 |z_inf| (4 pi Re alpha_theta)^{1/4}),
/// multiple minima superposed by adding variances. Errors when a minimum is
/// non-generic (Re alpha_theta <= 0).
Real sigma_nk_amplitude(const ConformalMap& map, const PrecisionContext& ctx);

/// Predicted standard deviation of the k-th mapped-noise coefficient.
Real sigma_nk(const Rational& eps, int k, const ConformalMap& map, const PrecisionContext& ctx);

/// Coefficient breakdown predicate: sigma(n_k) >~ delta.
bool breakdown_coeff_condition(const Rational& eps, int k, double delta, const ConformalMap& map,
                               const PrecisionContext& ctx);

/// Pointwise breakdown predicate at z (|z| > |z_inf| required):
/// A eps k^{-1/4} |z/z_inf|^k |1/(1 - z_inf/z)| >~ delta.
bool breakdown_point_condition(const Rational& eps, int k, double delta, const Complex& z,
                               const ConformalMap& map, const PrecisionContext& ctx);

/// N_c predictions.
Real predict_nc1(const Rational& eps, const PrecisionContext& ctx);
Real predict_ncM(const Rational& eps, int M, const PrecisionContext& ctx);
Real predict_resultM(const Rational& eps, int M, const PrecisionContext& ctx);
/// z_inf measured from the map via find_z_inf.
Real predict_final(const Rational& eps, const ConformalMap& map, const PrecisionContext& ctx);

/// log10(sqrt2)/log10(1+sqrt2) = 0.3932..., the universal slope constant.
Real result_constant(const PrecisionContext& ctx);

}  // namespace padenoise
