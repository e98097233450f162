#include "padenoise/breakdown.hpp"

#include <algorithm>
#include <cmath>

namespace padenoise {

Real capacity_estimate_dN(const PoleSet& poles, const PrecisionContext& ctx) {
    int n = static_cast<int>(poles.poles.size());
    if (n < 2) throw Error("capacity_estimate: need at least 2 poles");
    PrecisionScope scope(ctx);
    unsigned digits = static_cast<unsigned>(ctx.effective());
    // re-anchor positions at scope precision: unary ops inherit operand precision
    std::vector<Complex> at(n);
    for (int i = 0; i < n; ++i)
        at[i] = Complex(Real(poles.poles[i].position.re, digits),
                        Real(poles.poles[i].position.im, digits));
    Real coincidence = pow(Real(10), -ctx.decimal_digits);
    Real logsum = 0;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Real d = abs(at[i] - at[j]);
            if (d < coincidence) throw DegeneratePolePairError("degenerate pole pair in d_N");
            logsum += log(d);
        }
    }
    return exp(logsum * 2 / (Real(n) * (n - 1)));
}

std::vector<std::pair<int, Real>> richardson2(const std::vector<std::pair<int, Real>>& trace) {
    if (trace.size() < 3) throw Error("richardson2: need at least 3 entries");
    int stride = trace[1].first - trace[0].first;
    if (stride < 1) throw Error("richardson2: N must be strictly increasing");
    for (size_t i = 1; i < trace.size(); ++i)
        if (trace[i].first - trace[i - 1].first != stride)
            throw Error("richardson2: non-consecutive N in trace");
    std::vector<std::pair<int, Real>> out;
    for (size_t i = 0; i + 2 < trace.size(); ++i) {
        // quadratic in 1/N through three nodes, evaluated at 1/N -> 0
        Real acc = 0;
        for (int a = 0; a < 3; ++a) {
            Real xa = Real(1) / trace[i + a].first;
            Real w = 1;
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                Real xb = Real(1) / trace[i + b].first;
                w *= xb / (xb - xa);
            }
            acc += trace[i + a].second * w;
        }
        out.emplace_back(trace[i + 1].first, acc);
    }
    return out;
}

CapacityTrace capacity_trace(const TruncatedSeries& f, const NoiseSpec& spec, int index,
                             int N_min, int N_max, int N_step,
                             const ConformalMap& precision_map, int precision_override) {
    if (N_min < 2) N_min = 2;
    if (N_step < 1) throw Error("capacity_trace: bad N step");
    auto noisy = add_noise(f, spec, index).first;
    CapacityTrace out;
    out.label = f.label;

    RootOptions ropts;
    for (int N = N_min; N <= N_max; N += N_step) {
        if (noisy.order() < 2 * N) break;
        try {
            PrecisionContext ctx =
                precision_override > 0
                    ? PrecisionContext::with_digits(precision_override)
                    : required_precision(N, spec.noise_digits(), precision_map);
            PadeApproximant p = build_pade(noisy, N, ctx);
            PoleSet poles = find_poles(p, ctx, ropts);
            Real dN = capacity_estimate_dN(poles, ctx);
            CapacityEntry e{N, dN, Real(1) / dN, std::nullopt};
            out.entries.push_back(std::move(e));
            ropts.warm_start.clear();
            for (const auto& pl : poles.poles) ropts.warm_start.push_back(pl.position);
        } catch (const Error&) {
            out.skipped.push_back(N);
            ropts.warm_start.clear();
        }
    }

    // Richardson column on 1/d_N where the stride is uniform
    if (out.entries.size() >= 3) {
        bool uniform = true;
        int stride = out.entries[1].N - out.entries[0].N;
        for (size_t i = 1; i < out.entries.size(); ++i)
            if (out.entries[i].N - out.entries[i - 1].N != stride) uniform = false;
        if (uniform) {
            std::vector<std::pair<int, Real>> inv;
            for (const auto& e : out.entries) inv.emplace_back(e.N, e.inv_d_N);
            for (const auto& [N, v] : richardson2(inv)) {
                for (auto& e : out.entries)
                    if (e.N == N) e.richardson = v;
            }
        }
    }
    return out;
}

Real deviation_delta(const TruncatedSeries& f, const NoiseSpec& spec, int index, int N,
                     const PrecisionContext& ctx) {
    if (spec.mode != NoiseMode::additive)
        throw Error("deviation_delta: additive noise required");
    if (f.order() < 2 * N) throw Error("deviation_delta: series order below 2N");
    NoiseSpec ref = reference_spec(spec);
    auto noisy = add_noise(f, spec, index).first;
    auto refser = add_noise(f, ref, index).first;

    PrecisionScope scope(ctx);
    PadeApproximant p1 = build_pade(noisy, N, ctx);
    PadeApproximant p2 = build_pade(refser, N, ctx);
    Real d1 = capacity_estimate_dN(find_poles(p1, ctx), ctx);
    Real d2 = capacity_estimate_dN(find_poles(p2, ctx), ctx);
    return abs(Real(1) / d1 - Real(1) / d2);
}

KinkScan kink_scan(const TruncatedSeries& f, const NoiseSpec& spec, int index, int N_min,
                   int N_max, int N_step, double delta_threshold,
                   const ConformalMap& precision_map, bool early_stop, int precision_override) {
    if (spec.mode != NoiseMode::additive)
        throw Error("kink_scan: additive noise required");
    if (N_min < 2) N_min = 2;
    NoiseSpec ref = reference_spec(spec);
    auto noisy = add_noise(f, spec, index).first;
    auto refser = add_noise(f, ref, index).first;
    int ref_digits = ref.noise_digits();

    KinkScan out;
    RootOptions warm1, warm2;
    for (int N = N_min; N <= N_max; N += N_step) {
        if (f.order() < 2 * N) break;
        try {
            PrecisionContext ctx =
                precision_override > 0 ? PrecisionContext::with_digits(precision_override)
                                       : required_precision(N, ref_digits, precision_map);
            PrecisionScope scope(ctx);
            PadeApproximant p1 = build_pade(noisy, N, ctx);
            PadeApproximant p2 = build_pade(refser, N, ctx);
            PoleSet s1 = find_poles(p1, ctx, warm1);
            PoleSet s2 = find_poles(p2, ctx, warm2);
            Real d1 = capacity_estimate_dN(s1, ctx);
            Real d2 = capacity_estimate_dN(s2, ctx);
            Real delta = abs(Real(1) / d1 - Real(1) / d2);
            out.trace.push_back(DeltaEntry{N, delta});
            warm1.warm_start.clear();
            for (const auto& pl : s1.poles) warm1.warm_start.push_back(pl.position);
            warm2.warm_start.clear();
            for (const auto& pl : s2.poles) warm2.warm_start.push_back(pl.position);
            if (early_stop && delta > Real(delta_threshold)) break;
        } catch (const Error&) {
            out.skipped.push_back(N);
            warm1.warm_start.clear();
            warm2.warm_start.clear();
        }
    }
    out.Nc = detect_Nc_kink(out.trace, delta_threshold);
    return out;
}

std::optional<int> detect_Nc_kink(const std::vector<DeltaEntry>& trace, double delta) {
    std::optional<int> best;
    for (const auto& e : trace)
        if (e.delta > Real(delta) && (!best || e.N < *best)) best = e.N;
    return best;
}

SpuriousScan detect_Nc_spurious(const TruncatedSeries& f, const NoiseSpec& spec, int index,
                                const Locus& locus, int N_min, int N_max, int N_step,
                                double locus_tol, const SpuriousOptions& sopts,
                                const ConformalMap& precision_map, bool early_stop,
                                int precision_override) {
    if (N_min < 1) N_min = 1;
    auto noisy = add_noise(f, spec, index).first;
    // ghost pairs with residues below the coefficient noise floor are
    // indistinguishable from absent at the input's own precision
    Real floor = 0;
    if (spec.mode == NoiseMode::truncation) floor = Real(pow10_rational(-spec.digits), 40);
    if (spec.mode == NoiseMode::additive) floor = Real(spec.epsilon, 40);
    SpuriousScan out;
    for (int N = N_min; N <= N_max; N += N_step) {
        if (noisy.order() < 2 * N) break;
        try {
            PrecisionContext ctx =
                precision_override > 0 ? PrecisionContext::with_digits(precision_override)
                                       : required_precision(N, spec.noise_digits(), precision_map);
            PadeApproximant p = build_pade(noisy, N, ctx);
            PoleSet poles = find_poles(p, ctx);
            PoleSet zeros = find_zeros(p, ctx);
            SpuriousPartition part = flag_spurious(poles, zeros, locus, locus_tol, sopts);
            SpuriousScanEntry entry{N, part.n_on_locus, part.n_spurious, part.n_doublet, 0};
            // the noise arcs are made of near-cancelling pole-zero pairs, so
            // the onset counts every off-locus pole, doublet or free, whose
            // residue rises above the noise floor
            for (const auto& pl : part.classified.poles)
                if (pl.cls != PoleClass::on_locus && pl.residue_mag >= floor)
                    ++entry.n_significant;
            out.entries.push_back(entry);
            if (entry.n_significant >= 1) {
                if (!out.Nc) out.Nc = N;
                if (early_stop) break;
            }
        } catch (const Error&) {
            out.skipped.push_back(N);
        }
    }
    return out;
}

BreakdownResult ensemble_Nc(const NoiseSpec& spec,
                            const std::function<KinkScan(int index)>& detector,
                            BreakdownCriterion criterion, double threshold) {
    if (spec.realizations < 1) throw Error("ensemble_Nc: need at least one realization");
    BreakdownResult out;
    out.criterion = criterion;
    out.threshold = threshold;
    std::vector<int> found;
    for (int i = 0; i < spec.realizations; ++i) {
        out.realization_seeds.push_back(derive_stream_seed(spec.seed, i));
        try {
            KinkScan scan = detector(i);
            out.traces.push_back(scan.trace);
            out.ensemble_Nc.push_back(scan.Nc);
            if (scan.Nc) found.push_back(*scan.Nc);
        } catch (const std::exception& e) {
            out.traces.emplace_back();
            out.ensemble_Nc.push_back(std::nullopt);
            out.errors.push_back("realization " + std::to_string(i) + ": " + e.what());
        }
    }
    if (static_cast<int>(out.errors.size()) == spec.realizations)
        throw Error("ensemble_Nc: all realizations failed");
    if (!found.empty()) {
        std::sort(found.begin(), found.end());
        size_t n = found.size();
        out.Nc_median = n % 2 ? double(found[n / 2])
                              : 0.5 * (found[n / 2 - 1] + found[n / 2]);
        double mean = 0;
        for (int v : found) mean += v;
        out.Nc_mean = mean / n;
        out.Nc_min = found.front();
        out.Nc_max = found.back();
    }
    return out;
}

SlopeFit slope_fit(const std::vector<SlopePoint>& points) {
    std::vector<double> xs;
    for (const auto& p : points) {
        bool seen = false;
        for (double x : xs)
            if (x == p.log10_eps) seen = true;
        if (!seen) xs.push_back(p.log10_eps);
    }
    if (xs.size() < 4) throw Error("slope_fit: need at least 4 distinct noise strengths");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = points.size();
    for (const auto& p : points) {
        sx += p.log10_eps;
        sy += p.Nc;
        sxx += p.log10_eps * p.log10_eps;
        sxy += p.log10_eps * p.Nc;
    }
    double denom = n * sxx - sx * sx;
    SlopeFit fit;
    fit.points = points;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rn = 0;
    for (const auto& p : points) {
        double r = p.Nc - (fit.slope * p.log10_eps + fit.intercept);
        rn += r * r;
    }
    fit.residual_norm = std::sqrt(rn);
    return fit;
}

}  // namespace padenoise
