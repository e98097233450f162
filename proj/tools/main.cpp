#include <CLI11.hpp>

#include "padenoise/experiment.hpp"

#include <cstdlib>
#include <iostream>

using namespace padenoise;

namespace {

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::string& config_path) {
    sub->add_option("--config", config_path, "key=value config file or a manifest.json to rerun");
    sub->add_option("--function", cfg.function, "binomial | painleve1 | phi36 | file");
    sub->add_option("--alpha", cfg.alpha, "binomial exponent (rational or decimal)");
    sub->add_option("-M,--cuts", cfg.M, "number of symmetric cuts");
    sub->add_option("--sequence-file", cfg.sequence_file, "b-file with integer sequence (phi36)");
    sub->add_option("--series-file", cfg.series_file, "coefficient file (one value per line)");
    sub->add_option("--series-order", cfg.series_order, "series truncation order override");
    sub->add_option("--noise", cfg.noise, "none | additive | truncation");
    sub->add_option("--epsilon", cfg.epsilon, "additive noise strength");
    sub->add_option("-D,--truncation-digits", cfg.truncation_digits, "significant digits kept");
    sub->add_option("--seed", cfg.seed, "ensemble seed");
    sub->add_option("-R,--realizations", cfg.realizations, "noise realizations");
    sub->add_option("--n-min", cfg.n_min, "lowest Pade order");
    sub->add_option("--n-max", cfg.n_max, "highest Pade order");
    sub->add_option("--n-step", cfg.n_step, "Pade order stride");
    sub->add_option("--eps-grid", cfg.eps_grid, "noise strengths for slope fits")->delimiter(',');
    sub->add_option("--delta", cfg.delta, "kink threshold");
    sub->add_option("--locus-tol", cfg.locus_tol, "distance to locus before a pole is spurious");
    sub->add_option("--doublet-tol", cfg.doublet_tol, "pole-zero distance for doublets");
    sub->add_option("--window", cfg.window, "|w| window for spurious counting");
    sub->add_option("--precision", cfg.precision, "decimal digits (0 = automatic)");
    sub->add_option("--variance-m", cfg.variance_m, "orders for the variance table")->delimiter(',');
    sub->add_option("--mc-realizations", cfg.mc_realizations, "Monte Carlo sample count");
    sub->add_option("--circle-samples", cfg.circle_samples, "unit-circle sample count");
    sub->add_option("--zinf-order", cfg.zinf_order, "Pade order for the z_inf estimate");
    sub->add_option("-o,--out-dir", cfg.out_dir, "output directory");
    sub->add_flag("--svg,!--no-svg", cfg.svg, "write SVG scatter plots");
    sub->add_flag("--dry-run", cfg.dry_run, "validate config and print the task count");
}

int execute(const std::string& name, ExperimentConfig cfg, const std::string& config_path,
            CLI::App* sub) {
    if (!config_path.empty()) {
        // the file provides the run; a few command-line toggles still win
        ExperimentConfig merged = ExperimentConfig::from_file(config_path);
        if (sub->count("--out-dir")) merged.out_dir = cfg.out_dir;
        if (sub->count("--dry-run")) merged.dry_run = cfg.dry_run;
        if (sub->count("--seed")) merged.seed = cfg.seed;
        if (sub->count("--sequence-file")) merged.sequence_file = cfg.sequence_file;
        cfg = merged;
    }
    cfg.subcommand = name;
    if (cfg.out_dir == "out") {
        if (const char* env = std::getenv("PADENOISE_OUT")) cfg.out_dir = env;
    }
    if (cfg.dry_run) {
        int tasks = 1;
        if (name == "poles")
            tasks = (cfg.n_max - cfg.n_min) / cfg.n_step + 1;
        else if (name == "kink")
            tasks = cfg.realizations;
        else if (name == "slope" || name == "application")
            tasks = static_cast<int>(cfg.eps_grid.size()) * cfg.realizations;
        else if (name == "variance")
            tasks = static_cast<int>(cfg.variance_m.size());
        else if (name == "zinf")
            tasks = 2;
        std::cout << "dry-run: " << tasks << " task(s); config valid\n";
        std::cout << cfg.to_json() << "\n";
        return 0;
    }
    RunSummary sum = run_subcommand(cfg);
    std::cout << cfg.subcommand << ": " << sum.tasks << " task(s), " << sum.failures
              << " failure(s)\n";
    for (const auto& n : sum.notes) std::cout << "  note: " << n << "\n";
    for (const auto& o : sum.outputs) std::cout << "  wrote " << o << "\n";
    return sum.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pade / conformal-map noise-breakdown experiments"};
    app.require_subcommand(1);

    struct SubState {
        ExperimentConfig cfg;
        std::string config_path;
        CLI::App* sub = nullptr;
    };
    std::vector<std::pair<std::string, std::string>> subs = {
        {"poles", "Pade pole maps over an order grid (spurious-pole onset)"},
        {"capacity", "1/d_N capacity trace with Richardson acceleration"},
        {"kink", "Delta_N deviation traces and kink breakdown order"},
        {"slope", "N_c vs log10(eps) slope fit against the scaling laws"},
        {"variance", "exact vs asymptotic vs Monte Carlo mapped-noise variance"},
        {"zinf", "z_inf from the map minimum and from Pade differences"},
        {"application", "Painleve I / phi^3 Borel-plane breakdown experiments"},
    };
    std::vector<SubState> states(subs.size());
    for (size_t i = 0; i < subs.size(); ++i) {
        states[i].sub = app.add_subcommand(subs[i].first, subs[i].second);
        add_common(states[i].sub, states[i].cfg, states[i].config_path);
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < subs.size(); ++i) {
        if (states[i].sub->parsed()) {
            try {
                return execute(subs[i].first, states[i].cfg, states[i].config_path,
                               states[i].sub);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    return 1;
}
