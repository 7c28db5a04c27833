// vfplab: command-line driver for the mixture lab.  Subcommands cover the
// dispersion scan with its small-k fit, the nonlinear instability ensemble,
// the stationary Picard solver, a structure-preservation audit of a single
// run, and CSV -> SVG plotting.  Every experiment writes its data files plus
// a manifest.json that echoes the fully-resolved configuration (defaults
// included), so each output is reproducible from its manifest alone.
//
// Exit codes: 0 ok, 2 config/usage error, 3 solver failure, 4 experiment
// failure (blow-up / all ensemble runs failed).

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vfp/csv.hpp"
#include "vfp/dispersion.hpp"
#include "vfp/errors.hpp"
#include "vfp/model.hpp"
#include "vfp/simulator.hpp"
#include "vfp/stationary.hpp"
#include "vfp/svg.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// strict config reading: every key must be consumed, unknown keys are errors

class Schema {
public:
    Schema(const json& j, std::string scope) : j_(j), scope_(std::move(scope)) {
        if (!j_.is_object())
            throw vfp::ValidationError(scope_ + ": expected a JSON object");
    }

    double number(const char* key, double fallback) {
        if (!j_.contains(key)) return fallback;
        return get_number(key);
    }

    int integer(const char* key, int fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_number_integer())
            throw vfp::ValidationError(scope_ + "." + key + ": expected an integer");
        return v.get<int>();
    }

    bool boolean(const char* key, bool fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_boolean())
            throw vfp::ValidationError(scope_ + "." + key + ": expected a boolean");
        return v.get<bool>();
    }

    std::string text(const char* key, std::string fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_string())
            throw vfp::ValidationError(scope_ + "." + key + ": expected a string");
        return v.get<std::string>();
    }

    json object(const char* key) {
        if (!j_.contains(key)) return json::object();
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_object())
            throw vfp::ValidationError(scope_ + "." + key + ": expected an object");
        return v;
    }

    std::vector<double> number_list(const char* key, std::vector<double> fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_array() || v.empty())
            throw vfp::ValidationError(scope_ + "." + key + ": expected a non-empty array");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw vfp::ValidationError(scope_ + "." + key + ": expected numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    // call after all reads: rejects keys the command does not understand
    void finish() const {
        for (const auto& item : j_.items())
            if (!used_.count(item.key()))
                throw vfp::ValidationError(scope_ + ": unknown key '" + item.key() + "'");
    }

private:
    double get_number(const char* key) {
        used_.insert(key);
        const json& v = j_.at(key);
        if (!v.is_number())
            throw vfp::ValidationError(scope_ + "." + key + ": expected a number");
        return v.get<double>();
    }

    const json& j_;
    std::string scope_;
    std::set<std::string> used_;
};

json load_config(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw vfp::ValidationError("cannot open config file " + path.string());
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw vfp::ValidationError("config " + path.string() + ": " + e.what());
    }
}

struct PotentialConfig {
    std::string kind = "bump";
    double width = 1.0;

    json echo() const { return json{{"kind", kind}, {"params", {{"width", width}}}}; }
    vfp::Potential make() const { return vfp::make_potential(kind, {width}); }
};

PotentialConfig read_potential(Schema& s) {
    PotentialConfig pc;
    json pot = s.object("potential");
    Schema ps(pot, "potential");
    pc.kind = ps.text("kind", pc.kind);
    json params = ps.object("params");
    Schema pp(params, "potential.params");
    pc.width = pp.number("width", pc.width);
    pp.finish();
    ps.finish();
    return pc;
}

// ---------------------------------------------------------------------------
// outputs

struct OutputSink {
    fs::path dir;
    std::vector<std::string> written;

    explicit OutputSink(const fs::path& d) : dir(d) { fs::create_directories(dir); }

    void csv(const std::string& name, const vfp::CsvTable& table) {
        vfp::write_csv(dir / name, table);
        written.push_back(name);
    }
    void text(const std::string& name, const std::string& body) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw vfp::ValidationError("cannot open " + (dir / name).string());
        f << body;
        written.push_back(name);
    }
    void data(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// manifest last: it lists everything written before it
void write_manifest(OutputSink& sink, const std::string& command, const json& config_echo,
                    double wall_seconds) {
    json m{{"command", command},
           {"version", kVersion},
           {"config", config_echo},
           {"outputs", sink.written},
           {"wall_clock_seconds", wall_seconds},
           {"finished_at", utc_now()}};
    sink.text("manifest.json", m.dump(2) + "\n");
}

json cplx_json(vfp::cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---------------------------------------------------------------------------
// dispersion

int cmd_dispersion(const fs::path& config_path, const fs::path& out_dir, int threads) {
    Timer timer;
    json cfg = load_config(config_path);
    Schema s(cfg, "config");
    const double beta = s.number("beta", 2.0);
    const int n_modes = s.integer("n_modes", 61);
    PotentialConfig pc = read_potential(s);
    json kg = s.object("k_grid");
    Schema ks(kg, "k_grid");
    const double k_min = ks.number("min", 0.01);
    const double k_max = ks.number("max", 0.2);
    const int k_points = ks.integer("points", 20);
    ks.finish();
    s.finish();
    if (k_points < 2 || k_min <= 0.0 || k_max <= k_min)
        throw vfp::ValidationError("k_grid: need 0 < min < max and points >= 2");
    if (n_modes < 4) throw vfp::ValidationError("n_modes: need at least 4");

    const json echo{{"beta", beta},
                    {"n_modes", n_modes},
                    {"potential", pc.echo()},
                    {"k_grid", {{"min", k_min}, {"max", k_max}, {"points", k_points}}}};

    const vfp::Potential u = pc.make();
    std::vector<double> grid(k_points);
    for (int i = 0; i < k_points; ++i)
        grid[i] = k_min + (k_max - k_min) * i / (k_points - 1);

    const auto curve = vfp::dispersion_scan(beta, u, grid, n_modes - 1, threads);
    const auto fit = vfp::verify_asymptotics(curve);

    OutputSink sink(out_dir);
    vfp::CsvTable table;
    table.columns = {"k", "re_lambda", "im_lambda", "residual", "N"};
    for (const auto& r : curve.results)
        table.rows.push_back({r.k, r.lambda.real(), r.lambda.imag(), r.residual,
                              static_cast<double>(curve.degree)});
    sink.csv("dispersion.csv", table);

    // advisory cross-check of the two solvers at small k (full version in the
    // acceptance suite)
    json cross = json::array();
    for (double k : {0.02, 0.05, 0.1}) {
        if (k < k_min || k > k_max) continue;
        try {
            const auto rem = vfp::remainder_iteration(beta, k, u, n_modes - 1);
            const vfp::cplx composite =
                vfp::expansion_prediction(beta, k) + k * k * k * rem.lambda_R;
            const auto direct =
                vfp::leading_eigenpair(vfp::assemble_generator(k, beta, u, n_modes - 1), k);
            cross.push_back(json{{"k", k},
                                 {"direct", cplx_json(direct.lambda)},
                                 {"composite", cplx_json(composite)},
                                 {"disagreement", std::abs(direct.lambda - composite)},
                                 {"iterations", rem.iterations},
                                 {"contraction", rem.contraction}});
        } catch (const vfp::ConvergenceError&) {
            cross.push_back(json{{"k", k}, {"converged", false}});
        }
    }

    const auto band = curve.unstable_band();
    json report{{"beta", beta},
                {"n_modes", n_modes},
                {"c2", cplx_json(fit.c2)},
                {"c3", cplx_json(fit.c3)},
                {"c4", cplx_json(fit.c4)},
                {"c2_expected", (beta - 1.0) / beta},
                {"max_residual", fit.max_residual},
                {"unstable_points", band.size()},
                {"solver_cross_check", cross}};
    sink.data("fit_report.json", report);
    write_manifest(sink, "dispersion", echo, timer.seconds());
    return 0;
}

// ---------------------------------------------------------------------------
// instability ensemble

vfp::SimConfig read_sim_config(Schema& s, PotentialConfig& pc, std::uint64_t seed) {
    vfp::SimConfig c;
    c.beta = s.number("beta", c.beta);
    c.half_period = s.number("half_period", c.half_period);
    c.n_fourier = s.integer("n_fourier", 4);  // single-mode truncation default
    c.n_modes = s.integer("n_modes", c.n_modes);
    c.dt = s.number("dt", c.dt);
    c.t_end = s.number("t_end", 2000.0);
    c.delta0 = s.number("delta0", c.delta0);
    c.sample_every = s.integer("sample_every", c.sample_every);
    c.linearized = s.boolean("linearized", false);
    pc = read_potential(s);
    c.potential_kind = pc.kind;
    c.potential_width = pc.width;
    c.seed = seed;
    return c;
}

json sim_echo(const vfp::SimConfig& c, const PotentialConfig& pc) {
    return json{{"beta", c.beta},           {"half_period", c.half_period},
                {"n_fourier", c.n_fourier}, {"n_modes", c.n_modes},
                {"dt", c.dt},               {"t_end", c.t_end},
                {"delta0", c.delta0},       {"sample_every", c.sample_every},
                {"linearized", c.linearized}, {"potential", pc.echo()}};
}

vfp::CsvTable series_table(const vfp::TimeSeries& series) {
    vfp::CsvTable table;
    table.columns = {"t", "l2_norm", "H", "mass1", "mass2", "symmetry_defect", "min_f"};
    for (const auto& r : series.records)
        table.rows.push_back(
            {r.time, r.l2_norm, r.lyapunov, r.mass1, r.mass2, r.symmetry_defect, r.min_f});
    return table;
}

// early-window exponential rate; null when the window holds too few samples
std::optional<double> early_growth_rate(const vfp::TimeSeries& series) {
    if (series.records.empty()) return std::nullopt;
    const double t_last = series.records.back().time;
    const double t0 = std::min(5.0, 0.2 * t_last);
    const double t1 = 0.4 * t_last;
    try {
        return vfp::measure_growth_rate(series, t0, t1);
    } catch (const vfp::ValidationError&) {
        return std::nullopt;
    }
}

int cmd_instability(const fs::path& config_path, const fs::path& out_dir, int threads,
                    std::uint64_t seed) {
    Timer timer;
    json cfg = load_config(config_path);
    Schema s(cfg, "config");
    PotentialConfig pc;
    vfp::SimConfig base = read_sim_config(s, pc, seed);
    const std::vector<double> epsilons = s.number_list("epsilons", {1e-3, 1e-4, 1e-5});
    s.finish();

    json echo = sim_echo(base, pc);
    echo["epsilons"] = epsilons;

    // validate every run configuration up front: bad configs are usage
    // errors, not run failures
    std::vector<vfp::SimConfig> run_cfgs;
    for (double eps : epsilons) {
        vfp::SimConfig c = base;
        c.epsilon = eps;
        c.validate();
        run_cfgs.push_back(c);
    }

    // the lambda_1 reference is a property of the configuration, not of any
    // particular run, so compute it before launching the ensemble
    const vfp::Potential u = pc.make();
    const auto reference = vfp::leading_eigenpair(
        vfp::assemble_generator(base.k0(), base.beta, u, base.n_modes - 1), base.k0());

    struct RunSlot {
        std::optional<vfp::RunOutput> output;
        std::string error;
    };
    std::vector<RunSlot> slots(run_cfgs.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= run_cfgs.size()) return;
            try {
                slots[i].output = vfp::run(run_cfgs[i]);
            } catch (const vfp::BlowUpError& e) {
                slots[i].error = e.what();
            } catch (const vfp::PositivityError& e) {
                slots[i].error = e.what();
            } catch (const vfp::ConvergenceError& e) {
                slots[i].error = e.what();
            } catch (const vfp::NumericalError& e) {
                slots[i].error = e.what();
            }
        }
    };
    const size_t n_workers =
        std::min<size_t>(std::max(threads, 1), run_cfgs.size());
    std::vector<std::thread> pool;
    for (size_t w = 0; w + 1 < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // single writer from here on
    OutputSink sink(out_dir);
    json runs = json::array();
    json escape_times = json::array();
    json growth_rates = json::array();
    std::vector<double> fit_x, fit_y;
    size_t failed = 0;
    for (size_t i = 0; i < slots.size(); ++i) {
        json entry{{"epsilon", epsilons[i]}};
        if (!slots[i].output) {
            ++failed;
            entry["failed"] = true;
            entry["error"] = slots[i].error;
            escape_times.push_back(nullptr);
            growth_rates.push_back(nullptr);
        } else {
            const vfp::RunOutput& out = *slots[i].output;
            const std::string name = "series_" + std::to_string(i) + ".csv";
            sink.csv(name, series_table(out.series));
            const auto T = vfp::escape_time(out.series, base.delta0);
            const auto rate = early_growth_rate(out.series);
            entry["failed"] = false;
            entry["series_csv"] = name;
            entry["reached_threshold"] = out.reached_threshold;
            entry["escape_time"] = T ? json(*T) : json(nullptr);
            entry["growth_rate"] = rate ? json(*rate) : json(nullptr);
            entry["filter_level"] = out.initial.filter_level;
            entry["initial_min_f"] = out.initial.min_f;
            escape_times.push_back(T ? json(*T) : json(nullptr));
            growth_rates.push_back(rate ? json(*rate) : json(nullptr));
            if (T) {
                fit_x.push_back(std::log(1.0 / epsilons[i]));
                fit_y.push_back(*T);
            }
        }
        runs.push_back(entry);
    }

    // escape-time regression T = a + b ln(1/eps); skipped for degenerate
    // ensembles (fewer than two distinct epsilons with a crossing)
    json slope = nullptr, intercept = nullptr, slope_check = nullptr;
    {
        std::set<double> distinct(fit_x.begin(), fit_x.end());
        if (distinct.size() >= 2) {
            const size_t n = fit_x.size();
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < n; ++i) {
                sx += fit_x[i];
                sy += fit_y[i];
                sxx += fit_x[i] * fit_x[i];
                sxy += fit_x[i] * fit_y[i];
            }
            const double det = n * sxx - sx * sx;
            const double b = (n * sxy - sx * sy) / det;
            const double a = (sy - b * sx) / n;
            slope = b;
            intercept = a;
            slope_check = b * reference.lambda.real();
        }
    }

    json ensemble{{"epsilons", epsilons},
                  {"escape_times", escape_times},
                  {"fitted_slope", slope},
                  {"fitted_intercept", intercept},
                  {"slope_times_lambda1", slope_check},
                  {"lambda1_reference", reference.lambda.real()},
                  {"growth_rates", growth_rates},
                  {"delta0", base.delta0},
                  {"runs", runs}};
    sink.data("ensemble.json", ensemble);
    write_manifest(sink, "instability", echo, timer.seconds());

    if (failed == slots.size()) {
        std::cerr << "instability: all " << slots.size() << " runs failed\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// stationary profiles

int cmd_stationary(const fs::path& config_path, const fs::path& out_dir) {
    Timer timer;
    json cfg = load_config(config_path);
    Schema s(cfg, "config");
    const double beta = s.number("beta", 2.0);
    const double L = s.number("L", 4.0);
    const std::vector<double> masses = s.number_list("masses", {1.0, 1.0});
    const int grid_points = s.integer("grid_points", 128);
    const double relax = s.number("relax", 0.5);
    const double tol = s.number("tol", 1e-12);
    const std::string init_kind = s.text("init", "broken");
    const double init_amplitude = s.number("init_amplitude", 0.6);
    const int max_iter = s.integer("max_iter", 5000);
    PotentialConfig pc = read_potential(s);
    s.finish();
    if (masses.size() != 2) throw vfp::ValidationError("masses: expected [n1, n2]");
    if (init_kind != "broken" && init_kind != "constant")
        throw vfp::ValidationError("init: expected 'broken' or 'constant'");

    const json echo{{"beta", beta},
                    {"L", L},
                    {"masses", masses},
                    {"grid_points", grid_points},
                    {"relax", relax},
                    {"tol", tol},
                    {"init", init_kind},
                    {"init_amplitude", init_amplitude},
                    {"max_iter", max_iter},
                    {"potential", pc.echo()}};

    const vfp::Potential u = pc.make();
    vfp::DensityProfile init;
    init.half_period = L;
    for (int i = 0; i < grid_points; ++i) {
        const double x = -L + i * (2.0 * L / grid_points);
        const double bump =
            init_kind == "broken" ? init_amplitude * std::sin(vfp::FourierGrid::kPi * x / L)
                                  : 0.0;
        init.rho1.push_back(1.0 - bump);
        init.rho2.push_back(1.0 + bump);
    }
    const auto result = vfp::stationary_fixed_point(beta, u, L, masses[0], masses[1], init,
                                                    relax, tol, max_iter);

    OutputSink sink(out_dir);
    vfp::CsvTable table;
    table.columns = {"x", "rho1", "rho2"};
    for (int i = 0; i < grid_points; ++i)
        table.rows.push_back(
            {-L + i * (2.0 * L / grid_points), result.profile.rho1[i], result.profile.rho2[i]});
    sink.csv("profile.csv", table);

    vfp::DensityProfile constant;
    constant.half_period = L;
    constant.n1 = masses[0];
    constant.n2 = masses[1];
    constant.rho1.assign(grid_points, masses[0]);
    constant.rho2.assign(grid_points, masses[1]);

    double dev = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        dev = std::max(dev, std::abs(result.profile.rho1[i] - masses[0]));
        dev = std::max(dev, std::abs(result.profile.rho2[i] - masses[1]));
    }
    const double f_profile = vfp::free_energy(result.profile, beta, u);
    const double f_constant = vfp::free_energy(constant, beta, u);
    json summary{{"beta", beta},
                 {"L", L},
                 {"iterations", result.iterations},
                 {"residual", result.residual},
                 {"max_deviation_from_masses", dev},
                 {"free_energy", f_profile},
                 {"free_energy_constant", f_constant},
                 {"free_energy_gap", f_profile - f_constant}};
    sink.data("summary.json", summary);
    write_manifest(sink, "stationary", echo, timer.seconds());
    return 0;
}

// ---------------------------------------------------------------------------
// lyapunov audit: one nonlinear run, checked against the structure invariants

int cmd_lyapunov_audit(const fs::path& config_path, const fs::path& out_dir,
                       std::uint64_t seed) {
    Timer timer;
    json cfg = load_config(config_path);
    Schema s(cfg, "config");
    PotentialConfig pc;
    vfp::SimConfig c = read_sim_config(s, pc, seed);
    c.epsilon = s.number("epsilon", 1e-3);
    s.finish();
    c.validate();
    json echo = sim_echo(c, pc);
    echo["epsilon"] = c.epsilon;

    const vfp::RunOutput out = vfp::run(c);
    const auto& rec = out.series.records;

    double max_uptick = 0.0;  // relative H increase per step, should be ~0
    for (size_t i = 0; i + 1 < rec.size(); ++i) {
        const double steps =
            std::max(1.0, std::round((rec[i + 1].time - rec[i].time) / c.dt));
        const double scale = steps * std::abs(rec[i].lyapunov);
        if (scale > 0.0)
            max_uptick = std::max(max_uptick, (rec[i + 1].lyapunov - rec[i].lyapunov) / scale);
    }
    const double elapsed = rec.back().time - rec.front().time;
    const double drift1 = std::abs(rec.back().mass1 - rec.front().mass1);
    const double drift2 = std::abs(rec.back().mass2 - rec.front().mass2);
    const double mass_drift = elapsed > 0.0 ? std::max(drift1, drift2) / elapsed : 0.0;
    double max_defect = 0.0, min_f = rec.front().min_f;
    for (const auto& r : rec) {
        max_defect = std::max(max_defect, r.symmetry_defect);
        min_f = std::min(min_f, r.min_f);
    }

    const bool h_ok = max_uptick <= 1e-8;
    const bool mass_ok = mass_drift <= 1e-10;
    const bool defect_ok = max_defect <= 1e-9;
    const bool initial_ok = out.initial.min_f >= 0.0;
    const bool passed = h_ok && mass_ok && defect_ok && initial_ok;

    OutputSink sink(out_dir);
    sink.csv("series.csv", series_table(out.series));
    json audit{{"passed", passed},
               {"h_non_increasing", h_ok},
               {"max_h_uptick_per_step", max_uptick},
               {"h_initial", rec.front().lyapunov},
               {"h_final", rec.back().lyapunov},
               {"mass_conserved", mass_ok},
               {"mass_drift_per_time", mass_drift},
               {"symmetry_preserved", defect_ok},
               {"max_symmetry_defect", max_defect},
               {"initial_data_nonnegative", initial_ok},
               {"initial_min_f", out.initial.min_f},
               {"min_f_over_run", min_f},
               {"filter_level", out.initial.filter_level},
               {"reached_threshold", out.reached_threshold},
               {"lambda1_reference", out.eigenpair.lambda.real()},
               {"records", rec.size()}};
    sink.data("audit.json", audit);
    write_manifest(sink, "lyapunov-audit", echo, timer.seconds());

    if (!passed) {
        std::cerr << "lyapunov-audit: structure invariants violated (see audit.json)\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// plotting

int cmd_plot(const fs::path& csv_path, const std::string& x_col,
             const std::vector<std::string>& y_cols, bool log_y, const std::string& title,
             const fs::path& out_dir, const std::string& svg_name) {
    Timer timer;
    const vfp::CsvTable table = vfp::read_csv(csv_path);
    const std::vector<double> x = table.column(x_col);
    std::vector<vfp::PlotSeries> series;
    for (const auto& name : y_cols)
        series.push_back({name, x, table.column(name)});
    vfp::PlotOptions options;
    options.title = title;
    options.x_label = x_col;
    options.y_label = y_cols.size() == 1 ? y_cols[0] : "value";
    options.log_y = log_y;
    const std::string svg = vfp::render_line_chart(series, options);

    OutputSink sink(out_dir);
    sink.text(svg_name, svg);
    const json echo{{"csv", csv_path.string()},  {"x", x_col},         {"y", y_cols},
                    {"log", log_y},              {"title", title},     {"svg", svg_name}};
    write_manifest(sink, "plot", echo, timer.seconds());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vfplab: spectral laboratory for the two-species VFP mixture"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int threads = 1;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "JSON config file")
                ->required()
                ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed recorded into the run config");
    };

    auto* disp = app.add_subcommand("dispersion", "scan lambda(k) and fit the small-k expansion");
    add_common(disp, true);
    auto* inst = app.add_subcommand("instability", "nonlinear escape-time ensemble over epsilon");
    add_common(inst, true);
    auto* stat = app.add_subcommand("stationary", "Picard solve of the stationary profiles");
    add_common(stat, true);
    auto* audit = app.add_subcommand("lyapunov-audit", "structure-preservation audit of one run");
    add_common(audit, true);

    auto* plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
    std::string csv_path, x_col = "t", title, svg_name = "plot.svg";
    std::vector<std::string> y_cols;
    bool log_y = false;
    plot->add_option("--csv", csv_path, "input CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--x", x_col, "x column name");
    plot->add_option("--y", y_cols, "y column name(s)")->required()->delimiter(',');
    plot->add_flag("--log", log_y, "log-scale y axis");
    plot->add_option("--title", title, "chart title");
    plot->add_option("--svg", svg_name, "output file name");
    add_common(plot, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (disp->parsed()) return cmd_dispersion(config_path, out_dir, threads);
        if (inst->parsed()) return cmd_instability(config_path, out_dir, threads, seed);
        if (stat->parsed()) return cmd_stationary(config_path, out_dir);
        if (audit->parsed()) return cmd_lyapunov_audit(config_path, out_dir, seed);
        if (plot->parsed())
            return cmd_plot(csv_path, x_col, y_cols, log_y, title, out_dir, svg_name);
    } catch (const vfp::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vfp::BlowUpError& e) {
        std::cerr << "blow-up at t = " << e.time << ": " << e.what() << "\n";
        return 4;
    } catch (const vfp::PositivityError& e) {
        std::cerr << "positivity failure: " << e.what() << "\n";
        return 3;
    } catch (const vfp::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const vfp::SolvabilityError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const vfp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
