#pragma once

#include "padenoise/complex.hpp"
#include "padenoise/polyroots.hpp"
#include "padenoise/series.hpp"

#include <optional>
#include <vector>

namespace padenoise {

struct DegenerateTableError : Error {
    int L, N, deficiency;
    DegenerateTableError(int L_, int N_, int d_)
        : Error("degenerate table at (" + std::to_string(L_) + "," + std::to_string(N_) +
                "): rank deficiency " + std::to_string(d_)),
          L(L_), N(N_), deficiency(d_) {}
};

/// [L,N] Pade approximant P/Q, Q(0)=1, Maclaurin-matched through L+N.
struct PadeApproximant {
    std::vector<Scalar> P;  // degree <= L
    std::vector<Scalar> Q;  // degree <= N, Q[0] = 1
    int L = 0, N = 0;
    int match_order = 0;
    bool exact = false;  // built on the rational path

    Complex eval(const Complex& w) const;
    std::vector<Real> P_real(int digits) const;
    std::vector<Real> Q_real(int digits) const;
};

/// Build the [L,N] approximant (L defaults to N; only near-diagonal L in
/// {N-1, N, N+1} is supported). The denominator comes from the Taylor-match
/// linear system solved by fraction-free Bareiss elimination when the series
/// is exact-path eligible, else by partial-pivoted elimination at ctx
/// precision. Degenerate blocks raise DegenerateTableError.
PadeApproximant build_pade(const TruncatedSeries& f, int N, const PrecisionContext& ctx,
                           int L = -1);

/// Maclaurin coefficients of P/Q through `order`.
std::vector<Scalar> pade_series(const PadeApproximant& p, int order);

/// Largest |series(P/Q)_k - f_k| (relative to max|f|) through match_order;
/// exactly zero on the rational path.
Real taylor_match_residual(const PadeApproximant& p, const TruncatedSeries& f, int digits);

enum class PoleClass { on_locus, spurious, doublet };

struct Pole {
    Complex position;
    Real residue_mag;
    Real nearest_zero_dist;  // negative until annotated
    PoleClass cls = PoleClass::on_locus;
};

struct PoleSet {
    std::vector<Pole> poles;
    int order = 0;  // denominator degree N
};

/// Roots of Q with residue magnitudes, certified to 10^(-decimal_digits/2).
PoleSet find_poles(const PadeApproximant& p, const PrecisionContext& ctx,
                   const RootOptions& opts = {});

/// Roots of P (numerator zeros), same certification.
PoleSet find_zeros(const PadeApproximant& p, const PrecisionContext& ctx,
                   const RootOptions& opts = {});

/// Expected singularity locus: a union of radial rays.
struct Locus {
    struct Ray {
        Complex start;
        Complex direction;  // unit vector, outward
    };
    std::vector<Ray> rays;

    /// Rays from the M-th roots of w^M = -1 radially to infinity.
    static Locus mcut_rays(int M, int digits = 40);
    Real distance(const Complex& w) const;
};

struct SpuriousOptions {
    double doublet_tol = 1e-3;  // pole-zero pairing distance
    double window = 3.0;        // |w| window for spurious counting
};

struct SpuriousPartition {
    PoleSet classified;
    int n_on_locus = 0, n_spurious = 0, n_doublet = 0;
};

/// Partition poles into on-locus / spurious / Froissart doublets. A pole
/// pairing with a zero within doublet_tol is a doublet; otherwise a pole
/// farther than tol from the locus and inside the window is spurious.
SpuriousPartition flag_spurious(const PoleSet& poles, const PoleSet& zeros, const Locus& locus,
                                double tol, const SpuriousOptions& opts = {});

struct PsiEstimate {
    Real estimate;             // min over samples of |diff|^(1/2N)
    std::vector<Real> angles;  // argmin angles (ties within 1e-6 relative)
    int lower_order = 0;       // usually N-1; N-2 when the table is degenerate
    int digits_used = 0;
    bool degenerate = false;   // difference vanished identically
};

/// |psi| on the unit circle from successive diagonal differences
/// |[N,N]-[N-1,N-1]|^(1/2N); working precision raised internally until the
/// cancellation floor is resolved.
PsiEstimate psi_from_pade_diff(const TruncatedSeries& f, int N, int circle_samples);

}  // namespace padenoise
