#pragma once

#include "padenoise/complex.hpp"
#include "padenoise/series.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace padenoise {

struct MapDerivatives {
    Complex psi, dpsi, d2psi;
    Complex alpha_omega;  // psi''/psi - (psi'/psi)^2
    Complex alpha_theta;  // d^2/dtheta^2 log psi(e^{i theta})
};

/// Conformal map between the cut plane and the unit disk: the M-cut family
/// (cuts from the roots of w^M = -1 radially to infinity) or a user-supplied
/// pair of analytic evaluators.
class ConformalMap {
public:
    enum class Family { mcut, user };
    using Evaluator = std::function<Complex(const Complex&)>;

    static ConformalMap mcut(int M);
    static ConformalMap user(Evaluator psi, Evaluator phi);

    Family family() const { return family_; }
    int mcut_order() const { return M_; }
    std::string name() const;

    Complex psi(const Complex& w, const PrecisionContext& ctx) const;
    Complex phi(const Complex& z, const PrecisionContext& ctx) const;

    /// c = psi'(0); errors with "capacity unavailable" when c >= 1 or the
    /// evaluators misbehave at the origin.
    Real capacity(const PrecisionContext& ctx) const;
    std::optional<Rational> capacity_exact() const;  // 1/4, 1/2 for M=1,2

    /// psi and derivatives at w (analytic for mcut, central differences of
    /// step 10^(-digits/3) for user maps) plus both alpha parameterizations.
    MapDerivatives derivatives(const Complex& w, const PrecisionContext& ctx) const;

    /// Maclaurin coefficients b_0..b_out of phi (b_0 = 0); exact rationals
    /// for M in {1,2}, reals at ctx otherwise.
    std::vector<Scalar> phi_series(int out_order, const PrecisionContext& ctx) const;

    /// Unit-circle minima of |psi|: known in closed form for mcut.
    std::optional<Real> z_inf_known(const PrecisionContext& ctx) const;
    std::vector<Complex> omega_inf_known(const PrecisionContext& ctx) const;

private:
    Family family_ = Family::mcut;
    int M_ = 1;
    Evaluator user_psi_, user_phi_;
};

struct ZInfResult {
    Real z_inf;                      // min |psi| on the unit circle
    std::vector<Real> angles;        // minimizing angles (ties within 1e-8)
    std::vector<Complex> omega_inf;  // e^{i angle}
};

/// Sample |psi| on |w|=1 and refine each local minimum by golden section;
/// returns every minimum within 1e-8 of the global one.
ZInfResult find_z_inf(const ConformalMap& map, int samples, const PrecisionContext& ctx);

/// Coefficients c_0..c_out of f(phi(z)): the one-cut closed form
/// c_m = sum_k f_k 4^k C(m+k-1, m-k) when the map is mcut(1), otherwise
/// iterative power accumulation. Exact when f and the phi series are exact.
TruncatedSeries compose_with_map(const TruncatedSeries& f, const ConformalMap& map,
                                 int out_order, const PrecisionContext& ctx);

/// Generic power-accumulation composition, exposed for cross-checking the
/// closed form.
TruncatedSeries compose_generic(const TruncatedSeries& f, const ConformalMap& map, int out_order,
                                const PrecisionContext& ctx);

/// Working precision for a Pade run of order N under the given noise floor.
PrecisionContext required_precision(int N, int noise_digits, const ConformalMap& map);

/// C(n, k) for n >= 0; the composition kernel's C(-1, 0) = 1 special case.
Integer binom_nonneg(long n, long k);

}  // namespace padenoise
