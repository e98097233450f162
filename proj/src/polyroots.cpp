#include "padenoise/polyroots.hpp"

#include <algorithm>
#include <sstream>

namespace padenoise {

Complex poly_eval(const std::vector<Complex>& p, const Complex& z) {
    Complex acc(Real(0), Real(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex poly_eval(const std::vector<Real>& p, const Complex& z) {
    Complex acc(Real(0), Real(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * z;
        acc.re += *it;
    }
    return acc;
}

Real poly_eval(const std::vector<Real>& p, const Real& x) {
    Real acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Real poly_scale_at(const std::vector<Real>& p, const Real& absz) {
    Real acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * absz + abs(*it);
    return acc;
}

namespace {

// evaluate p and p' together
void poly_eval2(const std::vector<Real>& p, const Complex& z, Complex& v, Complex& dv) {
    v = Complex(Real(0), Real(0));
    dv = Complex(Real(0), Real(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        dv = dv * z + v;
        v = v * z;
        v.re += *it;
    }
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Real>& coeffs, int working_digits,
                                int cert_digits, const RootOptions& opts) {
    PrecisionScope scope(working_digits);
    std::vector<Real> p = coeffs;
    // trim negligible leading coefficients
    Real cmax = 0;
    for (const auto& c : p) cmax = max(cmax, abs(c));
    if (cmax == 0) throw Error("poly_roots: zero polynomial");
    Real lead_tol = cmax * pow(Real(10), -(working_digits - 8));
    while (p.size() > 1 && abs(p.back()) <= lead_tol) p.pop_back();
    int n = static_cast<int>(p.size()) - 1;
    if (n < 1) return {};

    std::vector<Complex> x(n);
    int have = std::min<int>(n, static_cast<int>(opts.warm_start.size()));
    for (int i = 0; i < have; ++i) x[i] = opts.warm_start[i];

    Real two_pi = 8 * atan(Real(1));
    if (have < n) {
        // initial moduli from the Newton polygon: the upper convex hull of
        // (k, log|p_k|) estimates how many roots live at each radius, which
        // matters here because pole sets spread over orders of magnitude
        const Real neg_inf = -pow(Real(10), 9);
        std::vector<Real> u(n + 1, neg_inf);
        for (int k = 0; k <= n; ++k)
            if (abs(p[k]) > 0) u[k] = log(abs(p[k]));
        std::vector<int> hull;  // indices, upper hull left to right
        for (int k = 0; k <= n; ++k) {
            if (u[k] == neg_inf) continue;
            while (hull.size() >= 2) {
                int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
                // keep hull upper-convex: drop b if it lies below segment a-k
                if ((u[k] - u[a]) * (b - a) >= (u[b] - u[a]) * (k - a))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(k);
        }
        std::vector<Real> radii;
        radii.reserve(n);
        for (size_t s = 0; s + 1 < hull.size(); ++s) {
            int k1 = hull[s], k2 = hull[s + 1];
            Real r = exp((u[k1] - u[k2]) / (k2 - k1));
            for (int t = 0; t < k2 - k1; ++t) radii.push_back(r * opts.initial_radius_factor);
        }
        while (static_cast<int>(radii.size()) < n) radii.push_back(Real(1));
        for (int i = have; i < n; ++i) {
            Real theta = two_pi * i / n + Real(37) / 100;  // offset breaks conjugate symmetry
            x[i] = polar(radii[i], theta);
        }
    }

    const long max_iter = static_cast<long>(opts.max_iterations_per_degree) * n;
    Real step_tol = pow(Real(10), -(working_digits - 6));
    // backward-error lock: ill-conditioned clusters floor out on |dx| long
    // before the step tolerance, but their residual hits machine level
    Real resid_tol = pow(Real(10), -(working_digits - 4));
    std::vector<Real> pabs(p.size());
    for (size_t k = 0; k < p.size(); ++k) pabs[k] = abs(p[k]);
    std::vector<bool> locked(n, false);
    long iter = 0;
    for (; iter < max_iter; ++iter) {
        bool all_locked = true;
        for (int i = 0; i < n; ++i) {
            if (locked[i]) continue;
            Complex v, dv;
            poly_eval2(p, x[i], v, dv);
            if (v.re == 0 && v.im == 0) {
                locked[i] = true;
                continue;
            }
            if (abs(v) < resid_tol * poly_eval(pabs, abs(x[i]))) {
                locked[i] = true;
                continue;
            }
            Complex w;  // Newton correction
            if (dv.re == 0 && dv.im == 0) {
                w = Complex((1 + abs(x[i])) / 1000, Real(0));  // escape a flat spot
            } else {
                w = v / dv;
            }
            // Aberth deflation term
            Complex s(Real(0), Real(0));
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = x[i] - x[j];
                Real nd = norm(d);
                if (nd == 0) {
                    d = Complex(step_tol * (i + 1), step_tol);
                    nd = norm(d);
                }
                s += conj(d) / nd;
            }
            Complex denom = Complex(Real(1), Real(0)) - w * s;
            Complex dx = (norm(denom) == 0) ? w : w / denom;
            x[i] -= dx;
            if (abs(dx) < step_tol * (1 + abs(x[i])))
                locked[i] = true;
            else
                all_locked = false;
        }
        if (all_locked) break;
    }

    // Newton polish
    for (int i = 0; i < n; ++i) {
        for (int it2 = 0; it2 < 4; ++it2) {
            Complex v, dv;
            poly_eval2(p, x[i], v, dv);
            if ((v.re == 0 && v.im == 0) || (dv.re == 0 && dv.im == 0)) break;
            x[i] -= v / dv;
        }
    }

    // certification
    Real cert_tol = pow(Real(10), -cert_digits);
    std::vector<int> bad;
    for (int i = 0; i < n; ++i) {
        Real scale = poly_scale_at(p, abs(x[i]));
        if (!(abs(poly_eval(p, x[i])) <= cert_tol * scale)) bad.push_back(i);
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os << "poly_roots: " << bad.size() << " root(s) unconverged after " << iter
           << " iterations at";
        for (int i : bad)
            os << " (" << x[i].re.str(8) << "," << x[i].im.str(8) << ")";
        throw RootConvergenceError(os.str());
    }

    std::sort(x.begin(), x.end(), [](const Complex& a, const Complex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    return x;
}

}  // namespace padenoise
