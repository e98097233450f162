#pragma once

#include "padenoise/complex.hpp"

#include <vector>

namespace padenoise {

/// p(z) with coefficients low-to-high.
Complex poly_eval(const std::vector<Complex>& p, const Complex& z);
Complex poly_eval(const std::vector<Real>& p, const Complex& z);
Real poly_eval(const std::vector<Real>& p, const Real& x);

/// Sum_k |p_k| |z|^k, the natural scale for backward-error residuals.
Real poly_scale_at(const std::vector<Real>& p, const Real& absz);

struct RootConvergenceError : Error {
    using Error::Error;
};

struct RootOptions {
    int max_iterations_per_degree = 200;  // cap = 200*N
    // start radii come from the Newton-polygon coefficient-ratio estimates,
    // lifted slightly above them
    double initial_radius_factor = 1.2;
    std::vector<Complex> warm_start;  // optional previous roots
};

/// All roots of a real-coefficient polynomial by Aberth-Ehrlich simultaneous
/// iteration with Newton corrections. Roots are certified afterwards against
/// |p(x)| <= 10^(-cert_digits) * sum_k |p_k||x|^k and returned sorted by
/// (re, im); non-convergence raises RootConvergenceError naming the culprits.
std::vector<Complex> poly_roots(const std::vector<Real>& coeffs, int working_digits,
                                int cert_digits, const RootOptions& opts = {});

}  // namespace padenoise
