#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

// End-to-end tests of the vfplab binary (exit codes, file contracts,
// determinism) plus unit coverage of the csv/svg helpers the commands are
// built on.  The binary path and the sample config directory come in through
// compile definitions.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "vfp/csv.hpp"
#include "vfp/errors.hpp"
#include "vfp/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vfplab_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VFPLAB_BINARY) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream f(path);
    f << body;
}

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("csv round-trip and error paths") {
    const fs::path dir = fresh_dir("csv");
    vfp::CsvTable t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.1}, {-2.5, 3e-17}, {0.0, 12345.678}};
    vfp::write_csv(dir / "t.csv", t);
    const auto back = vfp::read_csv(dir / "t.csv");
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(back.rows[i][j] == t.rows[i][j]);

    CHECK(back.column_index("b") == 1);
    CHECK(back.column_index("c") == -1);
    CHECK_THROWS_AS((void)back.column("c"), vfp::ValidationError);

    write_file(dir / "ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS((void)vfp::read_csv(dir / "ragged.csv"), vfp::ValidationError);
    write_file(dir / "alpha.csv", "a,b\n1,two\n");
    CHECK_THROWS_AS((void)vfp::read_csv(dir / "alpha.csv"), vfp::ValidationError);
    write_file(dir / "empty.csv", "");
    CHECK_THROWS_AS((void)vfp::read_csv(dir / "empty.csv"), vfp::ValidationError);

    vfp::CsvTable bad;
    bad.columns = {"a"};
    bad.rows = {{1.0, 2.0}};
    CHECK_THROWS_AS((void)vfp::to_csv(bad), vfp::ValidationError);
}

TEST_CASE("svg renderer is deterministic and validates input") {
    vfp::PlotSeries s{"norm", {0.0, 1.0, 2.0}, {1.0, 2.0, 4.0}};
    vfp::PlotOptions opt;
    opt.title = "growth";
    const std::string one = vfp::render_line_chart({s}, opt);
    const std::string two = vfp::render_line_chart({s}, opt);
    CHECK(one == two);
    CHECK(one.find("<svg") == 0);
    CHECK(one.find("polyline") != std::string::npos);
    CHECK(one.find("growth") != std::string::npos);

    opt.log_y = true;
    vfp::PlotSeries with_zero{"n", {0.0, 1.0, 2.0}, {0.0, 2.0, 4.0}};
    const std::string log_svg = vfp::render_line_chart({with_zero}, opt);
    CHECK(log_svg.find("polyline") != std::string::npos);  // zero point dropped, rest drawn

    vfp::PlotSeries all_zero{"n", {0.0, 1.0}, {0.0, -1.0}};
    CHECK_THROWS_AS((void)vfp::render_line_chart({all_zero}, opt), vfp::ValidationError);
    CHECK_THROWS_AS((void)vfp::render_line_chart({}, opt), vfp::ValidationError);

    vfp::PlotSeries ragged{"n", {0.0, 1.0}, {0.0}};
    CHECK_THROWS_AS((void)vfp::render_line_chart({ragged}, vfp::PlotOptions{}),
                    vfp::ValidationError);
}

TEST_CASE("dispersion command: outputs, fit quality, determinism, round-trip") {
    const fs::path dir = fresh_dir("dispersion");
    write_file(dir / "cfg.json",
               R"({"beta": 2.0, "n_modes": 41, "k_grid": {"min": 0.01, "max": 0.2, "points": 10}})");
    REQUIRE(run_cli("dispersion --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "a").string()) == 0);

    const auto curve = vfp::read_csv(dir / "a/dispersion.csv");
    CHECK(curve.columns ==
          std::vector<std::string>{"k", "re_lambda", "im_lambda", "residual", "N"});
    REQUIRE(curve.rows.size() == 10);
    CHECK(curve.rows[0][4] == 40.0);  // degree column

    const json fit = json::parse(slurp(dir / "a/fit_report.json"));
    CHECK(std::abs(fit["c2"]["re"].get<double>() - 0.5) < 1e-3);
    CHECK(fit["c2_expected"].get<double>() == 0.5);

    // byte-identical rerun
    REQUIRE(run_cli("dispersion --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a/dispersion.csv") == slurp(dir / "b/dispersion.csv"));
    CHECK(slurp(dir / "a/fit_report.json") == slurp(dir / "b/fit_report.json"));

    // the manifest's config snapshot reproduces the outputs byte for byte
    const json manifest = json::parse(slurp(dir / "a/manifest.json"));
    CHECK(manifest["version"] == "0.1.0");
    CHECK(manifest["command"] == "dispersion");
    write_file(dir / "echo.json", manifest["config"].dump());
    REQUIRE(run_cli("dispersion --config " + (dir / "echo.json").string() + " --out " +
                    (dir / "c").string()) == 0);
    CHECK(slurp(dir / "a/dispersion.csv") == slurp(dir / "c/dispersion.csv"));
    const json manifest_c = json::parse(slurp(dir / "c/manifest.json"));
    CHECK(manifest_c["config"] == manifest["config"]);
}

TEST_CASE("config errors exit with 2") {
    const fs::path dir = fresh_dir("config_errors");
    write_file(dir / "bad.json", "{not json");
    CHECK(run_cli("dispersion --config " + (dir / "bad.json").string() + " --out " +
                  (dir / "o").string()) == 2);

    write_file(dir / "unknown.json", R"({"beta": 2.0, "wavenumbers": 3})");
    CHECK(run_cli("dispersion --config " + (dir / "unknown.json").string() + " --out " +
                  (dir / "o").string()) == 2);

    write_file(dir / "nested.json", R"({"k_grid": {"min": 0.01, "maximum": 0.2}})");
    CHECK(run_cli("dispersion --config " + (dir / "nested.json").string() + " --out " +
                  (dir / "o").string()) == 2);

    write_file(dir / "type.json", R"({"beta": "two"})");
    CHECK(run_cli("dispersion --config " + (dir / "type.json").string() + " --out " +
                  (dir / "o").string()) == 2);

    // missing config file and missing subcommand are usage errors
    CHECK(run_cli("dispersion --config " + (dir / "nope.json").string()) == 2);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("instability command: ensemble contract on a short run") {
    const fs::path dir = fresh_dir("instability");
    write_file(dir / "cfg.json",
               R"({"beta": 2.0, "n_modes": 31, "epsilons": [1e-3], "t_end": 30.0})");
    REQUIRE(run_cli("instability --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "o").string()) == 0);

    const json e = json::parse(slurp(dir / "o/ensemble.json"));
    REQUIRE(e.contains("epsilons"));
    REQUIRE(e.contains("escape_times"));
    REQUIRE(e.contains("fitted_slope"));
    REQUIRE(e.contains("lambda1_reference"));
    CHECK(e["epsilons"] == json::array({1e-3}));
    CHECK(e["escape_times"][0].is_null());  // threshold not reachable by t = 30
    CHECK(e["fitted_slope"].is_null());     // degenerate ensemble: regression skipped
    CHECK(std::abs(e["lambda1_reference"].get<double>() - 0.004943) < 1e-4);

    const auto series = vfp::read_csv(dir / "o/series_0.csv");
    CHECK(series.columns == std::vector<std::string>{"t", "l2_norm", "H", "mass1", "mass2",
                                                     "symmetry_defect", "min_f"});
    CHECK(series.rows.size() >= 10);
    CHECK(series.rows.front()[0] == 0.0);
}

TEST_CASE("instability command: infeasible initial data fails the whole ensemble") {
    const fs::path dir = fresh_dir("instability_fail");
    // epsilon far beyond any positivity filter: every run fails, exit 4
    write_file(dir / "cfg.json",
               R"({"beta": 2.0, "n_modes": 31, "epsilons": [1.5], "delta0": 2.0, "t_end": 10.0})");
    CHECK(run_cli("instability --config " + (dir / "cfg.json").string() + " --out " +
                  (dir / "o").string()) == 4);
    const json e = json::parse(slurp(dir / "o/ensemble.json"));
    CHECK(e["runs"][0]["failed"] == true);
}

TEST_CASE("stationary command: constant collapse and solver-failure exit code") {
    const fs::path dir = fresh_dir("stationary");
    write_file(dir / "cfg.json", R"({"beta": 0.5, "L": 4.0, "grid_points": 64})");
    REQUIRE(run_cli("stationary --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "o").string()) == 0);
    const auto prof = vfp::read_csv(dir / "o/profile.csv");
    CHECK(prof.columns == std::vector<std::string>{"x", "rho1", "rho2"});
    REQUIRE(prof.rows.size() == 64);
    const json summary = json::parse(slurp(dir / "o/summary.json"));
    CHECK(summary["max_deviation_from_masses"].get<double>() <= 1e-6);

    write_file(dir / "short.json", R"({"beta": 2.0, "L": 4.0, "max_iter": 3})");
    CHECK(run_cli("stationary --config " + (dir / "short.json").string() + " --out " +
                  (dir / "p").string()) == 3);
}

TEST_CASE("lyapunov-audit command passes on a healthy run") {
    const fs::path dir = fresh_dir("audit");
    write_file(dir / "cfg.json", R"({"beta": 2.0, "n_modes": 31, "epsilon": 1e-3, "t_end": 20.0})");
    REQUIRE(run_cli("lyapunov-audit --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "o").string()) == 0);
    const json a = json::parse(slurp(dir / "o/audit.json"));
    CHECK(a["passed"] == true);
    CHECK(a["mass_drift_per_time"].get<double>() <= 1e-10);
    CHECK(a["max_symmetry_defect"].get<double>() <= 1e-9);
    CHECK(a["initial_min_f"].get<double>() >= 0.0);
    CHECK(fs::exists(dir / "o/series.csv"));
}

TEST_CASE("plot command renders series and rejects bad requests") {
    const fs::path dir = fresh_dir("plot");
    write_file(dir / "cfg.json", R"({"beta": 2.0, "n_modes": 31, "epsilon": 1e-3, "t_end": 20.0})");
    REQUIRE(run_cli("lyapunov-audit --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "o").string()) == 0);

    REQUIRE(run_cli("plot --csv " + (dir / "o/series.csv").string() +
                    " --x t --y l2_norm --log --out " + (dir / "o").string()) == 0);
    const std::string svg = slurp(dir / "o/plot.svg");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    // determinism of the rendered bytes
    REQUIRE(run_cli("plot --csv " + (dir / "o/series.csv").string() +
                    " --x t --y l2_norm --log --out " + (dir / "p").string()) == 0);
    CHECK(svg == slurp(dir / "p/plot.svg"));

    CHECK(run_cli("plot --csv " + (dir / "o/series.csv").string() + " --x t --y nosuch --out " +
                  (dir / "q").string()) == 2);
    write_file(dir / "empty.csv", "");
    CHECK(run_cli("plot --csv " + (dir / "empty.csv").string() + " --x t --y y --out " +
                  (dir / "q").string()) == 2);
}
