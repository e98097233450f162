#pragma once

#include "padenoise/conformal.hpp"
#include "padenoise/pade.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace padenoise {

struct DegeneratePolePairError : Error {
    using Error::Error;
};

/// Transfinite-diameter estimator d_N from a pole set, computed in log space.
/// 1/d_N estimates the logarithmic capacity of the singularity set.
Real capacity_estimate_dN(const PoleSet& poles, const PrecisionContext& ctx);

struct CapacityEntry {
    int N;
    Real d_N;
    Real inv_d_N;
    std::optional<Real> richardson;
};

struct CapacityTrace {
    std::string label;
    std::vector<CapacityEntry> entries;
    std::vector<int> skipped;  // degenerate orders
};

/// Second-order Richardson acceleration in 1/N over consecutive trace
/// triples (uniform stride required); the accelerated value is reported at
/// the interior N of each triple.
std::vector<std::pair<int, Real>> richardson2(const std::vector<std::pair<int, Real>>& trace);

/// d_N trace of the (possibly noisy) series over an N grid; Richardson column
/// filled on the 1/d_N values.
CapacityTrace capacity_trace(const TruncatedSeries& f, const NoiseSpec& spec, int index, int N_min,
                             int N_max, int N_step, const ConformalMap& precision_map,
                             int precision_override = 0);

/// Delta_N: |1/d_N(f_eps) - 1/d_N(f_eps')| with the coupled-realization
/// reference eps' = eps*1e-100.
Real deviation_delta(const TruncatedSeries& f, const NoiseSpec& spec, int index, int N,
                     const PrecisionContext& ctx);

struct DeltaEntry {
    int N;
    Real delta;
};

struct KinkScan {
    std::vector<DeltaEntry> trace;
    std::optional<int> Nc;
    std::vector<int> skipped;
};

/// Scan Delta_N over the grid for one realization; stops at the first
/// exceedance when early_stop is set. Per-N working precision follows
/// required_precision(N, reference-noise digits, map) unless overridden.
KinkScan kink_scan(const TruncatedSeries& f, const NoiseSpec& spec, int index, int N_min,
                   int N_max, int N_step, double delta_threshold,
                   const ConformalMap& precision_map, bool early_stop = true,
                   int precision_override = 0);

/// Smallest N in the trace with Delta_N > delta.
std::optional<int> detect_Nc_kink(const std::vector<DeltaEntry>& trace, double delta = 1e-3);

struct SpuriousScanEntry {
    int N;
    int n_on_locus = 0, n_spurious = 0, n_doublet = 0;
    int n_significant = 0;  // off-locus poles with residue above the noise floor
};

struct SpuriousScan {
    std::vector<SpuriousScanEntry> entries;
    std::optional<int> Nc;
    std::vector<int> skipped;
};

/// Smallest N in the grid whose [N,N] approximant shows at least one
/// spurious (non-doublet) pole against the expected locus.
SpuriousScan detect_Nc_spurious(const TruncatedSeries& f, const NoiseSpec& spec, int index,
                                const Locus& locus, int N_min, int N_max, int N_step,
                                double locus_tol, const SpuriousOptions& sopts,
                                const ConformalMap& precision_map, bool early_stop = true,
                                int precision_override = 0);

enum class BreakdownCriterion { kink, spurious_pole };

struct BreakdownResult {
    BreakdownCriterion criterion = BreakdownCriterion::kink;
    double threshold = 1e-3;
    std::vector<std::vector<DeltaEntry>> traces;  // per realization (kink only)
    std::vector<std::optional<int>> ensemble_Nc;
    std::vector<std::uint64_t> realization_seeds;
    std::vector<std::string> errors;
    std::optional<double> Nc_median, Nc_mean;
    std::optional<int> Nc_min, Nc_max;
};

/// Run a per-realization detector over spec.realizations draws; failures are
/// recorded, not fatal, unless every realization fails.
BreakdownResult ensemble_Nc(const NoiseSpec& spec,
                            const std::function<KinkScan(int index)>& detector,
                            BreakdownCriterion criterion, double threshold);

struct SlopePoint {
    double log10_eps;
    double Nc;
};

struct SlopeFit {
    std::vector<SlopePoint> points;
    double slope = 0, intercept = 0, residual_norm = 0;
};

/// Ordinary least squares of N_c against log10(eps); requires >= 4 distinct
/// noise strengths.
SlopeFit slope_fit(const std::vector<SlopePoint>& points);

}  // namespace padenoise
