#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padenoise/breakdown.hpp"
#include "padenoise/experiment.hpp"
#include "padenoise/theory.hpp"

#include <complex>

namespace py = pybind11;
using namespace padenoise;

namespace {

PrecisionContext ctx_of(int digits) {
    return digits > 0 ? PrecisionContext::with_digits(digits) : PrecisionContext{40, 10};
}

std::complex<double> to_std(const Complex& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

NoiseSpec spec_of(const std::string& mode, const std::string& epsilon, int digits,
                  std::uint64_t seed, int realizations) {
    if (mode == "none") {
        NoiseSpec s = NoiseSpec::none_spec();
        s.seed = seed;
        s.realizations = realizations;
        return s;
    }
    if (mode == "additive")
        return NoiseSpec::additive(rational_from_decimal(epsilon), seed, realizations);
    if (mode == "truncation") return NoiseSpec::truncation(digits, seed, realizations);
    throw Error("noise mode must be none|additive|truncation");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pade / conformal-map noise-breakdown toolkit";
    m.def("version", [] { return std::string("0.1.0"); });

    py::class_<TruncatedSeries>(m, "Series")
        .def_property_readonly("order", &TruncatedSeries::order)
        .def_property_readonly("label", [](const TruncatedSeries& s) { return s.label; })
        .def("coeffs", [](const TruncatedSeries& s) {
            std::vector<double> out;
            for (const auto& c : s.coeffs) out.push_back(c.as_double());
            return out;
        })
        .def("coeff_str", [](const TruncatedSeries& s, int k) {
            return s.coeffs.at(k).str(30);
        })
        .def("all_exact", &TruncatedSeries::all_exact)
        .def("__repr__", [](const TruncatedSeries& s) {
            return "<Series '" + s.label + "' order " + std::to_string(s.order()) + ">";
        });

    m.def("binomial_series",
          [](const std::string& alpha, int M, int order) {
              return binomial_series(rational_from_decimal(alpha), M, order);
          },
          py::arg("alpha"), py::arg("M"), py::arg("order"));
    m.def("painleve1_series", &painleve1_series, py::arg("n_max"));
    m.def("phi36_series_from_bfile",
          [](const std::string& path, int n_max) {
              return phi36_series(parse_bfile(path), n_max);
          },
          py::arg("path"), py::arg("n_max"));
    m.def("parse_bfile", [](const std::string& path) {
        py::dict out;
        for (const auto& [n, v] : parse_bfile(path))
            out[py::int_(n)] = py::int_(py::str(v.str()));
        return out;
    });

    m.def("add_noise",
          [](const TruncatedSeries& f, const std::string& mode, const std::string& epsilon,
             int digits, std::uint64_t seed, int index) {
              auto [g, r] = add_noise(f, spec_of(mode, epsilon, digits, seed, 1), index);
              std::vector<double> rv;
              for (const auto& v : r.r_values) rv.push_back(static_cast<double>(v));
              return py::make_tuple(g, rv);
          },
          py::arg("series"), py::arg("mode"), py::arg("epsilon") = "0", py::arg("digits") = 0,
          py::arg("seed") = 0, py::arg("index") = 0);

    py::class_<PadeApproximant>(m, "Pade")
        .def_property_readonly("L", [](const PadeApproximant& p) { return p.L; })
        .def_property_readonly("N", [](const PadeApproximant& p) { return p.N; })
        .def_property_readonly("match_order",
                               [](const PadeApproximant& p) { return p.match_order; })
        .def_property_readonly("exact", [](const PadeApproximant& p) { return p.exact; })
        .def("numerator", [](const PadeApproximant& p) {
            std::vector<double> out;
            for (const auto& c : p.P) out.push_back(c.as_double());
            return out;
        })
        .def("denominator", [](const PadeApproximant& p) {
            std::vector<double> out;
            for (const auto& c : p.Q) out.push_back(c.as_double());
            return out;
        })
        .def("eval",
             [](const PadeApproximant& p, std::complex<double> w, int digits) {
                 PrecisionScope scope(ctx_of(digits));
                 return to_std(p.eval(Complex(Real(w.real()), Real(w.imag()))));
             },
             py::arg("w"), py::arg("digits") = 0)
        .def("__repr__", [](const PadeApproximant& p) {
            return "<Pade [" + std::to_string(p.L) + "," + std::to_string(p.N) + "]>";
        });

    m.def("build_pade",
          [](const TruncatedSeries& f, int N, int L, int digits) {
              return build_pade(f, N, ctx_of(digits), L);
          },
          py::arg("series"), py::arg("N"), py::arg("L") = -1, py::arg("digits") = 0);

    m.def("find_poles",
          [](const PadeApproximant& p, int digits) {
              auto ps = find_poles(p, ctx_of(digits));
              std::vector<std::pair<std::complex<double>, double>> out;
              for (const auto& pl : ps.poles)
                  out.emplace_back(to_std(pl.position), pl.residue_mag.convert_to<double>());
              return out;
          },
          py::arg("pade"), py::arg("digits") = 0);
    m.def("find_zeros",
          [](const PadeApproximant& p, int digits) {
              auto zs = find_zeros(p, ctx_of(digits));
              std::vector<std::complex<double>> out;
              for (const auto& z : zs.poles) out.push_back(to_std(z.position));
              return out;
          },
          py::arg("pade"), py::arg("digits") = 0);

    m.def("taylor_match_residual",
          [](const PadeApproximant& p, const TruncatedSeries& f, int digits) {
              return taylor_match_residual(p, f, digits > 0 ? digits : 50).convert_to<double>();
          },
          py::arg("pade"), py::arg("series"), py::arg("digits") = 0);

    m.def("capacity_dN",
          [](const TruncatedSeries& f, int N, int digits) {
              PrecisionContext ctx =
                  digits > 0 ? PrecisionContext::with_digits(digits)
                             : required_precision(N, 0, ConformalMap::mcut(1));
              auto p = build_pade(f, N, ctx);
              return capacity_estimate_dN(find_poles(p, ctx), ctx).convert_to<double>();
          },
          py::arg("series"), py::arg("N"), py::arg("digits") = 0);

    m.def("kink_scan",
          [](const TruncatedSeries& f, const std::string& epsilon, std::uint64_t seed, int index,
             int n_min, int n_max, int M, double delta) {
              NoiseSpec spec = NoiseSpec::additive(rational_from_decimal(epsilon), seed, 1);
              auto scan = kink_scan(f, spec, index, n_min, n_max, 1, delta,
                                    ConformalMap::mcut(M), true);
              std::vector<std::pair<int, double>> trace;
              for (const auto& e : scan.trace)
                  trace.emplace_back(e.N, e.delta.convert_to<double>());
              return py::make_tuple(trace, scan.Nc ? py::cast(*scan.Nc) : py::none());
          },
          py::arg("series"), py::arg("epsilon"), py::arg("seed") = 0, py::arg("index") = 0,
          py::arg("n_min") = 2, py::arg("n_max") = 40, py::arg("M") = 1,
          py::arg("delta") = 1e-3);

    m.def("spurious_onset",
          [](const TruncatedSeries& f, int D, int n_min, int n_max, int n_step, int M,
             double locus_tol) {
              auto scan = detect_Nc_spurious(f, NoiseSpec::truncation(D), 0, Locus::mcut_rays(M),
                                             n_min, n_max, n_step, locus_tol, SpuriousOptions{},
                                             ConformalMap::mcut(M), true);
              return scan.Nc ? py::cast(*scan.Nc) : py::none();
          },
          py::arg("series"), py::arg("D"), py::arg("n_min") = 2, py::arg("n_max") = 40,
          py::arg("n_step") = 1, py::arg("M") = 1, py::arg("locus_tol") = 0.1);

    m.def("mcut_capacity",
          [](int M) { return ConformalMap::mcut(M).capacity(ctx_of(0)).convert_to<double>(); });
    m.def("mcut_z_inf", [](int M) {
        return ConformalMap::mcut(M).z_inf_known(ctx_of(0))->convert_to<double>();
    });
    m.def("find_z_inf",
          [](int M, int samples) {
              auto z = find_z_inf(ConformalMap::mcut(M), samples, ctx_of(0));
              std::vector<double> angles;
              for (const auto& a : z.angles) angles.push_back(a.convert_to<double>());
              return py::make_tuple(z.z_inf.convert_to<double>(), angles);
          },
          py::arg("M"), py::arg("samples") = 1024);

    m.def("compose_with_map",
          [](const TruncatedSeries& f, int M, int out_order, int digits) {
              return compose_with_map(f, ConformalMap::mcut(M), out_order, ctx_of(digits));
          },
          py::arg("series"), py::arg("M"), py::arg("out_order"), py::arg("digits") = 0);

    m.def("psi_from_pade_diff",
          [](const TruncatedSeries& f, int N, int samples) {
              auto est = psi_from_pade_diff(f, N, samples);
              std::vector<double> angles;
              for (const auto& a : est.angles) angles.push_back(a.convert_to<double>());
              return py::make_tuple(est.estimate.convert_to<double>(), angles, est.degenerate);
          },
          py::arg("series"), py::arg("N"), py::arg("samples") = 256);

    m.def("variance_exact", [](const std::string& eps, int m) {
        return Real(variance_exact(rational_from_decimal(eps), m), 50).convert_to<double>();
    });
    m.def("variance_exact_str", [](const std::string& eps, int m) {
        return variance_exact(rational_from_decimal(eps), m).str();
    });
    m.def("variance_asymptotic", [](const std::string& eps, int m) {
        return variance_asymptotic(rational_from_decimal(eps), m, ctx_of(0)).convert_to<double>();
    });
    m.def("sigma_nk", [](const std::string& eps, int k, int M) {
        return sigma_nk(rational_from_decimal(eps), k, ConformalMap::mcut(M), ctx_of(0))
            .convert_to<double>();
    });
    m.def("sigma_nk_amplitude", [](int M) {
        return sigma_nk_amplitude(ConformalMap::mcut(M), ctx_of(0)).convert_to<double>();
    });

    m.def("predict_nc1", [](const std::string& eps) {
        return predict_nc1(rational_from_decimal(eps), ctx_of(0)).convert_to<double>();
    });
    m.def("predict_ncM", [](const std::string& eps, int M) {
        return predict_ncM(rational_from_decimal(eps), M, ctx_of(0)).convert_to<double>();
    });
    m.def("predict_resultM", [](const std::string& eps, int M) {
        return predict_resultM(rational_from_decimal(eps), M, ctx_of(0)).convert_to<double>();
    });
    m.def("predict_final", [](const std::string& eps, int M) {
        return predict_final(rational_from_decimal(eps), ConformalMap::mcut(M), ctx_of(0))
            .convert_to<double>();
    });

    m.def("run",
          [](const std::map<std::string, std::string>& kv, const std::string& subcommand) {
              ExperimentConfig cfg = ExperimentConfig::from_key_values(kv);
              cfg.subcommand = subcommand;
              RunSummary s = run_subcommand(cfg);
              py::dict out;
              out["tasks"] = s.tasks;
              out["failures"] = s.failures;
              out["outputs"] = s.outputs;
              out["notes"] = s.notes;
              return out;
          },
          py::arg("config"), py::arg("subcommand"));
}
