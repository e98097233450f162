#include "padenoise/pade.hpp"

#include <algorithm>
#include <cmath>

namespace padenoise {

namespace {

Rational coeff_rat(const TruncatedSeries& f, int j) {
    if (j < 0) return Rational(0);
    return f.coeffs[j].rational();
}

// rank of a rational matrix by full-pivot elimination (only used to report
// the deficiency of a degenerate block)
int rational_rank(std::vector<std::vector<Rational>> m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int k = 0; k < std::min(rows, cols); ++k) {
        int pr = -1, pc = -1;
        for (int i = rank; i < rows && pr < 0; ++i)
            for (int j = k; j < cols; ++j)
                if (m[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        std::swap(m[rank], m[pr]);
        for (int i = rank + 1; i < rows; ++i) {
            if (m[i][pc] == 0) continue;
            Rational factor = m[i][pc] / m[rank][pc];
            for (int j = 0; j < cols; ++j) m[i][j] -= factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Solve the N x N denominator system exactly: rows scaled to integers, then
// fraction-free Bareiss elimination and rational back-substitution.
std::vector<Rational> solve_denominator_exact(const TruncatedSeries& f, int L, int N) {
    // rows are the Taylor-match conditions at orders L+1..L+N; column c
    // multiplies q_{c+1}
    std::vector<std::vector<Rational>> ratm(N, std::vector<Rational>(N + 1));
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) ratm[r][c] = coeff_rat(f, L + r - c);
        ratm[r][N] = -coeff_rat(f, L + 1 + r);
    }
    std::vector<std::vector<Integer>> m(N, std::vector<Integer>(N + 1));
    for (int r = 0; r < N; ++r) {
        Integer l = 1;
        for (int c = 0; c <= N; ++c) l = lcm(l, Integer(denominator(ratm[r][c])));
        for (int c = 0; c <= N; ++c) {
            Rational v = ratm[r][c] * l;
            m[r][c] = Integer(numerator(v));
        }
    }

    Integer prev = 1;
    for (int k = 0; k < N; ++k) {
        int piv = -1;
        for (int r = k; r < N; ++r)
            if (m[r][k] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) {
            for (auto& row : ratm) row.pop_back();  // deficiency of the coefficient matrix
            throw DegenerateTableError(L, N, N - rational_rank(ratm));
        }
        if (piv != k) std::swap(m[k], m[piv]);
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j <= N; ++j) {
                Integer t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = t / prev;  // exact by Bareiss
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    std::vector<Rational> q(N);
    for (int i = N - 1; i >= 0; --i) {
        Rational s(m[i][N]);
        for (int j = i + 1; j < N; ++j) s -= Rational(m[i][j]) * q[j];
        q[i] = s / Rational(m[i][i]);
    }
    return q;
}

std::vector<Real> solve_denominator_float(const TruncatedSeries& f, int L, int N,
                                          const PrecisionContext& ctx) {
    int d = ctx.effective();
    auto coeff = [&](int j) -> Real {
        if (j < 0) return Real(0, static_cast<unsigned>(d));
        return f.coeffs[j].real(d);
    };
    std::vector<std::vector<Real>> m(N, std::vector<Real>(N + 1));
    Real scale = 0;
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            m[r][c] = coeff(L + r - c);
            scale = max(scale, abs(m[r][c]));
        }
        m[r][N] = -coeff(L + 1 + r);
    }
    if (scale == 0) throw DegenerateTableError(L, N, N);
    Real tiny = scale * pow(Real(10), -(d - 8));

    for (int k = 0; k < N; ++k) {
        int piv = k;
        for (int r = k + 1; r < N; ++r)
            if (abs(m[r][k]) > abs(m[piv][k])) piv = r;
        if (!(abs(m[piv][k]) > tiny)) throw DegenerateTableError(L, N, N - k);
        if (piv != k) std::swap(m[k], m[piv]);
        for (int i = k + 1; i < N; ++i) {
            if (m[i][k] == 0) continue;
            Real factor = m[i][k] / m[k][k];
            for (int j = k + 1; j <= N; ++j) m[i][j] -= factor * m[k][j];
            m[i][k] = 0;
        }
    }
    std::vector<Real> q(N);
    for (int i = N - 1; i >= 0; --i) {
        Real s = m[i][N];
        for (int j = i + 1; j < N; ++j) s -= m[i][j] * q[j];
        q[i] = s / m[i][i];
    }
    return q;
}

}  // namespace

PadeApproximant build_pade(const TruncatedSeries& f, int N, const PrecisionContext& ctx, int L) {
    if (L < 0) L = N;
    if (N < 1) throw Error("build_pade: N must be >= 1");
    if (L != N && L != N - 1 && L != N + 1)
        throw Error("build_pade: only near-diagonal [L,N] with L in {N-1,N,N+1} is supported");
    if (f.order() < L + N) throw Error("build_pade: series order below L+N");

    PadeApproximant p;
    p.L = L;
    p.N = N;
    p.match_order = L + N;
    bool exact_path = f.all_rational() && f.noise != NoiseMode::additive;
    p.exact = exact_path;

    if (exact_path) {
        auto q = solve_denominator_exact(f, L, N);
        bool flag = f.all_exact();
        p.Q.resize(N + 1);
        p.Q[0] = Scalar(Rational(1));
        for (int j = 1; j <= N; ++j)
            p.Q[j] = flag ? Scalar(q[j - 1]) : Scalar::inexact(q[j - 1]);
        p.P.resize(L + 1);
        for (int k = 0; k <= L; ++k) {
            Rational s = 0;
            for (int j = 0; j <= std::min(k, N); ++j)
                s += (j == 0 ? Rational(1) : q[j - 1]) * coeff_rat(f, k - j);
            p.P[k] = flag ? Scalar(s) : Scalar::inexact(s);
        }
    } else {
        PrecisionScope scope(ctx);
        int d = ctx.effective();
        auto q = solve_denominator_float(f, L, N, ctx);
        p.Q.resize(N + 1);
        p.Q[0] = Scalar(Real(1, static_cast<unsigned>(d)));
        for (int j = 1; j <= N; ++j) p.Q[j] = Scalar(q[j - 1]);
        p.P.resize(L + 1);
        for (int k = 0; k <= L; ++k) {
            Real s = k <= f.order() ? f.coeffs[k].real(d) : Real(0, static_cast<unsigned>(d));
            for (int j = 1; j <= std::min(k, N); ++j)
                if (k - j <= f.order()) s += q[j - 1] * f.coeffs[k - j].real(d);
            p.P[k] = Scalar(s);
        }
    }
    return p;
}

std::vector<Real> PadeApproximant::P_real(int digits) const {
    std::vector<Real> out;
    out.reserve(P.size());
    for (const auto& c : P) out.push_back(c.real(digits));
    return out;
}

std::vector<Real> PadeApproximant::Q_real(int digits) const {
    std::vector<Real> out;
    out.reserve(Q.size());
    for (const auto& c : Q) out.push_back(c.real(digits));
    return out;
}

Complex PadeApproximant::eval(const Complex& w) const {
    int d = static_cast<int>(Real::default_precision());
    return poly_eval(P_real(d), w) / poly_eval(Q_real(d), w);
}

std::vector<Scalar> pade_series(const PadeApproximant& p, int order) {
    std::vector<Scalar> s(order + 1, Scalar(0));
    for (int k = 0; k <= order; ++k) {
        Scalar acc = k <= p.L ? p.P[k] : Scalar(0);
        for (int j = 1; j <= std::min(k, p.N); ++j) acc = acc - p.Q[j] * s[k - j];
        s[k] = acc;  // Q[0] = 1
    }
    return s;
}

Real taylor_match_residual(const PadeApproximant& p, const TruncatedSeries& f, int digits) {
    PrecisionScope scope(digits);
    auto s = pade_series(p, p.match_order);
    Real scale = 0, worst = 0;
    for (int k = 0; k <= p.match_order; ++k) scale = max(scale, abs(f.coeffs[k].real(digits)));
    if (scale == 0) scale = 1;
    for (int k = 0; k <= p.match_order; ++k) {
        Real d = abs(s[k].real(digits) - f.coeffs[k].real(digits));
        worst = max(worst, d);
    }
    return worst / scale;
}

namespace {

PoleSet roots_with_residues(const PadeApproximant& p, const PrecisionContext& ctx,
                            const RootOptions& opts, bool of_denominator) {
    PrecisionScope scope(ctx);
    int d = ctx.effective();
    auto target = of_denominator ? p.Q_real(d) : p.P_real(d);
    auto other = of_denominator ? p.P_real(d) : p.Q_real(d);
    auto roots = poly_roots(target, d, ctx.decimal_digits / 2, opts);

    std::vector<Real> dtarget(target.size() > 1 ? target.size() - 1 : 1, Real(0));
    for (size_t k = 1; k < target.size(); ++k) dtarget[k - 1] = target[k] * static_cast<int>(k);

    PoleSet out;
    out.order = of_denominator ? p.N : p.L;
    out.poles.reserve(roots.size());
    for (const auto& r : roots) {
        Pole pole;
        pole.position = r;
        Complex num = poly_eval(other, r);
        Complex den = poly_eval(dtarget, r);
        pole.residue_mag = of_denominator && !(den.re == 0 && den.im == 0)
                               ? abs(num) / abs(den)
                               : Real(0);
        pole.nearest_zero_dist = Real(-1);
        out.poles.push_back(std::move(pole));
    }
    return out;
}

}  // namespace

PoleSet find_poles(const PadeApproximant& p, const PrecisionContext& ctx,
                   const RootOptions& opts) {
    return roots_with_residues(p, ctx, opts, true);
}

PoleSet find_zeros(const PadeApproximant& p, const PrecisionContext& ctx,
                   const RootOptions& opts) {
    return roots_with_residues(p, ctx, opts, false);
}

Locus Locus::mcut_rays(int M, int digits) {
    if (M < 1) throw Error("Locus: M must be >= 1");
    PrecisionScope scope(digits);
    Locus l;
    Real pi = 4 * atan(Real(1));
    for (int j = 0; j < M; ++j) {
        Real theta = pi * (2 * j + 1) / M;
        Complex u = polar(Real(1), theta);
        l.rays.push_back(Ray{u, u});
    }
    return l;
}

Real Locus::distance(const Complex& w) const {
    if (rays.empty()) throw Error("Locus: empty");
    Real best = -1;
    for (const auto& ray : rays) {
        Complex v = w - ray.start;
        Real t = v.re * ray.direction.re + v.im * ray.direction.im;
        if (t < 0) t = 0;
        Complex proj = ray.start + Complex(t * ray.direction.re, t * ray.direction.im);
        Real d = abs(w - proj);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

SpuriousPartition flag_spurious(const PoleSet& poles, const PoleSet& zeros, const Locus& locus,
                                double tol, const SpuriousOptions& opts) {
    if (!(tol > 0)) throw Error("flag_spurious: tol must be positive");
    SpuriousPartition out;
    out.classified = poles;
    for (auto& pole : out.classified.poles) {
        Real nz = Real(-1);
        for (const auto& z : zeros.poles) {
            Real d = abs(pole.position - z.position);
            if (nz < 0 || d < nz) nz = d;
        }
        pole.nearest_zero_dist = nz;
        // off-locus poles inside the window split into Froissart doublets and
        // free spurious poles; the dense pole-zero interlacing ON the cut is
        // left alone
        bool off_locus = locus.distance(pole.position) > Real(tol) &&
                         abs(pole.position) < Real(opts.window);
        if (off_locus && nz >= 0 && nz < Real(opts.doublet_tol)) {
            pole.cls = PoleClass::doublet;
            ++out.n_doublet;
        } else if (off_locus) {
            pole.cls = PoleClass::spurious;
            ++out.n_spurious;
        } else {
            pole.cls = PoleClass::on_locus;
            ++out.n_on_locus;
        }
    }
    return out;
}

PsiEstimate psi_from_pade_diff(const TruncatedSeries& f, int N, int circle_samples) {
    if (circle_samples < 64) throw Error("psi_from_pade_diff: need >= 64 circle samples");
    if (f.order() < 2 * N) throw Error("psi_from_pade_diff: series order below 2N");
    if (N < 2) throw Error("psi_from_pade_diff: N must be >= 2");

    int digits = 60;
    const int digits_cap = 64 + 8 * N;
    PsiEstimate result;
    while (true) {
        PrecisionContext ctx{digits, 10};
        PrecisionScope scope(ctx);
        int d = ctx.effective();

        PadeApproximant hi;
        try {
            hi = build_pade(f, N, ctx);
        } catch (const DegenerateTableError&) {
            // [N,N] sits inside a table block, so it equals a lower entry and
            // the successive difference vanishes
            result.estimate = Real(0);
            result.lower_order = N - 1;
            result.digits_used = digits;
            result.degenerate = true;
            return result;
        }
        int lower = N - 1;
        PadeApproximant lo;
        try {
            lo = build_pade(f, lower, ctx);
        } catch (const DegenerateTableError&) {
            lower = N - 2;
            lo = build_pade(f, lower, ctx);
        }

        auto P1 = hi.P_real(d), Q1 = hi.Q_real(d);
        auto P2 = lo.P_real(d), Q2 = lo.Q_real(d);
        Real q1scale = poly_scale_at(Q1, Real(1));
        Real q2scale = poly_scale_at(Q2, Real(1));
        Real pole_tol = pow(Real(10), -d / 2);
        Real floor_tol = pow(Real(10), -(d - 15));

        Real two_pi = 8 * atan(Real(1));
        std::vector<std::pair<Real, Real>> kept;  // (angle, |diff|)
        int skipped = 0;
        bool all_zero = true;
        for (int j = 0; j < circle_samples; ++j) {
            Real theta = two_pi * j / circle_samples;
            Complex w = polar(Real(1), theta);
            Complex q1 = poly_eval(Q1, w), q2 = poly_eval(Q2, w);
            if (abs(q1) < pole_tol * q1scale || abs(q2) < pole_tol * q2scale) {
                ++skipped;
                continue;
            }
            Complex diff = poly_eval(P1, w) / q1 - poly_eval(P2, w) / q2;
            Real a = abs(diff);
            if (a != 0) all_zero = false;
            kept.emplace_back(theta, a);
        }
        if (skipped * 10 > circle_samples)
            throw Error("psi_from_pade_diff: more than 10% of samples hit poles");
        if (kept.empty()) throw Error("psi_from_pade_diff: no usable samples");

        if (all_zero) {
            result.estimate = Real(0);
            result.lower_order = lower;
            result.digits_used = digits;
            result.degenerate = true;
            return result;
        }

        Real min_diff = kept[0].second;
        for (const auto& kv : kept) min_diff = min(min_diff, kv.second);
        if (min_diff <= floor_tol && digits < digits_cap) {
            digits = std::min(digits_cap, digits * 2);
            continue;  // cancellation floor not resolved yet
        }
        if (min_diff <= floor_tol) {
            result.estimate = Real(0);
            result.lower_order = lower;
            result.digits_used = digits;
            result.degenerate = true;
            return result;
        }

        Real inv = Real(1) / (2 * N);
        Real best = -1;
        std::vector<Real> angles;
        std::vector<Real> values;
        values.reserve(kept.size());
        for (const auto& kv : kept) {
            Real v = pow(kv.second, inv);
            values.push_back(v);
            if (best < 0 || v < best) best = v;
        }
        Real tie = best * Real(1e-6);
        for (size_t j = 0; j < kept.size(); ++j)
            if (values[j] - best <= tie) angles.push_back(kept[j].first);

        result.estimate = best;
        result.angles = std::move(angles);
        result.lower_order = lower;
        result.digits_used = digits;
        result.degenerate = false;
        return result;
    }
}

}  // namespace padenoise
