#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padenoise/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace padenoise;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool dirs_byte_identical(const fs::path& a, const fs::path& b) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
        if (!fs::exists(b / n)) return false;
        std::string sa = slurp(a / n), sb = slurp(b / n);
        // manifests embed the output directory; compare with it masked
        if (n == "manifest.json") {
            auto scrub = [&](std::string s, const std::string& dir) {
                size_t pos;
                while ((pos = s.find(dir)) != std::string::npos) s.replace(pos, dir.size(), "@");
                return s;
            };
            sa = scrub(sa, a.string());
            sb = scrub(sb, b.string());
        } else if (sa != sb) {
            return false;
        }
        if (n == "manifest.json" && sa != sb) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("config file parsing and json round trip") {
    std::string path = "/tmp/padenoise_cfg.txt";
    {
        std::ofstream out(path);
        out << "# test config\n"
            << "function=binomial\n"
            << "alpha=-1/9\n"
            << "M=2\n"
            << "noise=additive\n"
            << "epsilon=1e-12\n"
            << "seed=77\n"
            << "realizations=3\n"
            << "n_max=18\n"
            << "eps_grid=1e-10,1e-15,1e-20\n";
    }
    ExperimentConfig cfg = ExperimentConfig::from_file(path);
    CHECK(cfg.M == 2);
    CHECK(cfg.epsilon == "1e-12");
    CHECK(cfg.seed == 77);
    CHECK(cfg.eps_grid.size() == 3);

    // json round trip through a manifest-style file
    std::string jpath = "/tmp/padenoise_cfg.json";
    {
        std::ofstream out(jpath);
        out << "{\"config\":" << cfg.to_json() << "}";
    }
    ExperimentConfig back = ExperimentConfig::from_file(jpath);
    CHECK(back.M == cfg.M);
    CHECK(back.epsilon == cfg.epsilon);
    CHECK(back.eps_grid == cfg.eps_grid);
    CHECK(back.seed == cfg.seed);

    CHECK_THROWS_AS(ExperimentConfig::from_key_values({{"bogus", "1"}}), Error);
}

TEST_CASE("series/noise/map construction from config") {
    ExperimentConfig cfg;
    cfg.function = "painleve1";
    auto f = make_series(cfg, 21);
    CHECK(f.order() == 21);
    CHECK(f.coeffs[1].rational() == Rational(4, 25));
    CHECK(make_map(cfg).mcut_order() == 2);

    cfg.function = "phi36";
    CHECK_THROWS_AS(make_series(cfg, 10), Error);  // no sequence file

    cfg.function = "binomial";
    cfg.M = 1;
    CHECK(make_map(cfg).mcut_order() == 1);
    CHECK(make_locus(cfg).rays.size() == 1);

    cfg.noise = "truncation";
    cfg.truncation_digits = 12;
    CHECK(make_noise(cfg).mode == NoiseMode::truncation);
    cfg.noise = "bogus";
    CHECK_THROWS_AS(make_noise(cfg), Error);
}

TEST_CASE("file series provider") {
    std::string path = "/tmp/padenoise_series.txt";
    {
        std::ofstream out(path);
        out << "# coefficients\n1\n-0.5\n0.25\n-0.125\n1/16\n";
    }
    ExperimentConfig cfg;
    cfg.function = "file";
    cfg.series_file = path;
    auto f = make_series(cfg, 4);
    CHECK(f.coeffs[1].rational() == Rational(-1, 2));
    CHECK(f.coeffs[4].rational() == Rational(1, 16));
    CHECK_THROWS_AS(make_series(cfg, 10), Error);  // not enough coefficients
}

TEST_CASE("kink run writes csvs and reruns byte-identically from the manifest") {
    ExperimentConfig cfg;
    cfg.subcommand = "kink";
    cfg.function = "binomial";
    cfg.M = 1;
    cfg.noise = "additive";
    cfg.epsilon = "1e-10";
    cfg.seed = 4242;
    cfg.realizations = 2;
    cfg.n_min = 2;
    cfg.n_max = 12;
    cfg.out_dir = "/tmp/padenoise_run1";
    fs::remove_all(cfg.out_dir);
    RunSummary s1 = run_kink(cfg);
    CHECK(s1.failures == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "delta_traces.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "breakdown.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "manifest.json"));

    // rerun from the manifest into a fresh directory
    ExperimentConfig cfg2 = ExperimentConfig::from_file(cfg.out_dir + "/manifest.json");
    cfg2.subcommand = "kink";
    cfg2.out_dir = "/tmp/padenoise_run2";
    fs::remove_all(cfg2.out_dir);
    RunSummary s2 = run_kink(cfg2);
    CHECK(s2.failures == 0);
    CHECK(dirs_byte_identical("/tmp/padenoise_run1", "/tmp/padenoise_run2"));

    // breakdown csv records the seed and the interface's column header
    std::string bcsv = slurp("/tmp/padenoise_run1/breakdown.csv");
    CHECK(bcsv.rfind("# seed=4242\n", 0) == 0);
    CHECK(bcsv.find("epsilon,Nc_median,Nc_min,Nc_max,seed\n") != std::string::npos);
}

TEST_CASE("poles run emits csv + svg per order") {
    ExperimentConfig cfg;
    cfg.subcommand = "poles";
    cfg.function = "binomial";
    cfg.M = 1;
    cfg.noise = "truncation";
    cfg.truncation_digits = 8;
    cfg.n_min = 4;
    cfg.n_max = 8;
    cfg.n_step = 2;
    cfg.out_dir = "/tmp/padenoise_poles";
    fs::remove_all(cfg.out_dir);
    RunSummary s = run_poles(cfg);
    CHECK(s.failures == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "poles_N4.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "poles_N8.svg"));
    std::string csv = slurp(fs::path(cfg.out_dir) / "poles_N4.csv");
    CHECK(csv.rfind("# seed=", 0) == 0);
    CHECK(csv.find("re,im,residue_mag,nearest_zero_dist,classification\n") != std::string::npos);
}

TEST_CASE("variance run: asymptotic ratio and Monte Carlo sanity") {
    ExperimentConfig cfg;
    cfg.subcommand = "variance";
    cfg.epsilon = "0.001";
    cfg.variance_m = {1, 10};
    cfg.mc_realizations = 4000;
    cfg.seed = 11;
    cfg.out_dir = "/tmp/padenoise_var";
    fs::remove_all(cfg.out_dir);
    RunSummary s = run_variance(cfg);
    CHECK(s.failures == 0);

    PrecisionContext ctx{40, 10};
    Real mc = mc_variance(Rational(1, 1000), 10, 4000, 11, ctx);
    Real exact(variance_exact(Rational(1, 1000), 10));
    CHECK(abs(mc / exact - 1) < Real(10) / 100);  // ~1.6/sqrt(R) three-sigma
}

TEST_CASE("slope run fits a line over a fast epsilon grid") {
    ExperimentConfig cfg;
    cfg.subcommand = "slope";
    cfg.function = "binomial";
    cfg.M = 1;
    cfg.eps_grid = {"1e-6", "1e-8", "1e-10", "1e-12"};
    cfg.realizations = 2;
    cfg.seed = 5150;
    cfg.out_dir = "/tmp/padenoise_slope";
    fs::remove_all(cfg.out_dir);
    RunSummary s = run_slope(cfg);
    CHECK(s.failures == 0);
    std::string manifest = slurp(fs::path(cfg.out_dir) / "manifest.json");
    CHECK(manifest.find("\"slope\"") != std::string::npos);
    CHECK(manifest.find("\"guess_constant\"") != std::string::npos);
    std::string csv = slurp(fs::path(cfg.out_dir) / "slope_points.csv");
    CHECK(csv.rfind("# seed=5150\n", 0) == 0);
    CHECK(csv.find("epsilon,log10_eps,Nc_median,") != std::string::npos);
    // a slope-shaped result: negative, in the right ballpark for M=1
    auto pos = manifest.find("\"slope\": ");
    double slope = std::stod(manifest.substr(pos + 9));
    CHECK(slope < -0.3);
    CHECK(slope > -1.1);
}

TEST_CASE("application run: painleve walks even orders") {
    ExperimentConfig cfg;
    cfg.subcommand = "application";
    cfg.function = "painleve1";
    cfg.eps_grid = {"1e-6", "1e-8", "1e-10", "1e-12"};
    cfg.realizations = 1;
    cfg.seed = 31;
    cfg.out_dir = "/tmp/padenoise_app";
    fs::remove_all(cfg.out_dir);
    RunSummary s = run_application(cfg);
    CHECK(s.failures == 0);
    std::string manifest = slurp(fs::path(cfg.out_dir) / "manifest.json");
    auto pos = manifest.find("\"slope\": ");
    REQUIRE(pos != std::string::npos);
    double slope = std::stod(manifest.substr(pos + 9));
    CHECK(slope < -0.8);  // two-cut-like scaling
    CHECK(slope > -2.2);

    ExperimentConfig bad = cfg;
    bad.function = "binomial";
    CHECK_THROWS_AS(run_application(bad), Error);
}

TEST_CASE("zinf run on a small order") {
    ExperimentConfig cfg;
    cfg.subcommand = "zinf";
    cfg.function = "binomial";
    cfg.M = 1;
    cfg.zinf_order = 12;
    cfg.circle_samples = 512;
    cfg.out_dir = "/tmp/padenoise_zinf";
    fs::remove_all(cfg.out_dir);
    RunSummary s = run_zinf(cfg);
    CHECK(s.failures == 0);
    std::string csv = slurp(fs::path(cfg.out_dir) / "zinf.csv");
    CHECK(csv.find("map_minimum,0.1715728752538") != std::string::npos);
}
