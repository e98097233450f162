#pragma once

#include "padenoise/breakdown.hpp"
#include "padenoise/theory.hpp"

#include <map>
#include <string>
#include <vector>

namespace padenoise {

/// Fully serializable run description; the manifest written next to the
/// results reproduces the run byte for byte.
struct ExperimentConfig {
    std::string subcommand;

    // function provider
    std::string function = "binomial";  // binomial | painleve1 | phi36 | file
    std::string alpha = "-1/9";
    int M = 1;                 // binomial cut count; also selects the mcut proxy map
    std::string sequence_file;  // phi36 b-file
    std::string series_file;    // generic coefficient file, one value per line
    int series_order = -1;      // derived from the N grid when negative

    // noise
    std::string noise = "none";  // none | additive | truncation
    std::string epsilon = "1e-20";
    int truncation_digits = 40;
    std::uint64_t seed = 987654321;
    int realizations = 5;

    // N grid
    int n_min = 2, n_max = 40, n_step = 1;

    // eps grid for slope/application runs
    std::vector<std::string> eps_grid = {"1e-10", "1e-15", "1e-20", "1e-25",
                                         "1e-30", "1e-35", "1e-40"};
    double delta = 1e-3;

    // pole classification
    double locus_tol = 0.1;
    double doublet_tol = 1e-3;
    double window = 3.0;

    int precision = 0;  // 0 = automatic per-N provisioning

    // variance table
    std::vector<int> variance_m = {1, 2, 5, 10, 20, 30, 50};
    int mc_realizations = 10000;

    // zinf
    int circle_samples = 512;
    int zinf_order = 40;

    std::string out_dir = "out";
    bool svg = true;
    bool dry_run = false;

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_key_values(const std::map<std::string, std::string>& kv);
    std::string to_json() const;
};

struct RunSummary {
    int tasks = 0;
    int failures = 0;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
};

RunSummary run_poles(const ExperimentConfig& cfg);
RunSummary run_capacity(const ExperimentConfig& cfg);
RunSummary run_kink(const ExperimentConfig& cfg);
RunSummary run_slope(const ExperimentConfig& cfg);
RunSummary run_variance(const ExperimentConfig& cfg);
RunSummary run_zinf(const ExperimentConfig& cfg);
RunSummary run_application(const ExperimentConfig& cfg);
RunSummary run_subcommand(const ExperimentConfig& cfg);

/// Monte-Carlo estimate of the noise variance of [z^m](f_eps o phi) for the
/// one-cut map over R coupled realizations (the oracle behind cmd_variance).
Real mc_variance(const Rational& eps, int m, int R, std::uint64_t seed,
                 const PrecisionContext& ctx);

/// The series named by the config (exact coefficients, order series_order).
TruncatedSeries make_series(const ExperimentConfig& cfg, int order);

/// Noise spec named by the config.
NoiseSpec make_noise(const ExperimentConfig& cfg);

/// Expected pole locus for the configured function.
Locus make_locus(const ExperimentConfig& cfg);

/// Map proxy used for precision provisioning and theory overlays.
ConformalMap make_map(const ExperimentConfig& cfg);

std::string format_real(const Real& x, int sig_digits = 20);

}  // namespace padenoise
