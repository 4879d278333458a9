// otslab command-line interface.
//
// Subcommands: simulate, sweep, inequalities, oracle, plotdata.
// Exit codes are a stable contract:
//   0 ok, 2 usage error, 3 blow-up, 4 inequality sign violation,
//   5 oracle tolerance failure.
//
// All data outputs (CSV, SVG, JSON reports) are byte-identical across
// re-runs with the same flags and seed; run manifests additionally carry
// the wall-clock time.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otslab/expr.hpp"
#include "otslab/fraclap.hpp"
#include "otslab/functionals.hpp"
#include "otslab/ineqlab.hpp"
#include "otslab/io.hpp"
#include "otslab/kinetics.hpp"
#include "otslab/rng.hpp"
#include "otslab/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace otslab;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitViolation = 4;
constexpr int kExitOracleTol = 5;

// Relative --out paths land under OTSLAB_OUT when that is set.
fs::path resolve_out(const std::string& out) {
    fs::path p(out);
    if (p.is_relative()) {
        if (const char* base = std::getenv("OTSLAB_OUT")) return fs::path(base) / p;
    }
    return p;
}

double wallclock_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    double alpha = 1.5;
    double mu = 1.0;
    double epsilon = 0.0;
    std::string kinetic; // "power:r=..." or "poly:..."
    int n = 256;
    double dt = 1e-3;
    double t_end = 1.0;
    std::string ic = "1+0.5*cos(x)";
    std::string ic_q = "0";
    int record_every = 10;
    std::uint64_t seed = 0;
    bool dealias = true;
    double cfl_safety = 0.9;
};

SolverConfig config_from(const SimulateOptions& o) {
    SolverConfig cfg;
    cfg.alpha = o.alpha;
    cfg.mu = o.mu;
    cfg.epsilon = o.epsilon;
    cfg.n = o.n;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.dealias = o.dealias;
    cfg.record_every = o.record_every;
    cfg.cfl_safety = o.cfl_safety;
    return cfg;
}

ordered_json options_json(const SimulateOptions& o) {
    ordered_json j;
    j["alpha"] = o.alpha;
    j["mu"] = o.mu;
    j["epsilon"] = o.epsilon;
    j["kinetic"] = o.kinetic;
    j["n"] = o.n;
    j["dt"] = o.dt;
    j["t_end"] = o.t_end;
    j["ic"] = o.ic;
    j["ic_q"] = o.ic_q;
    j["record_every"] = o.record_every;
    j["seed"] = o.seed;
    j["dealias"] = o.dealias;
    j["cfl_safety"] = o.cfl_safety;
    return j;
}

SimulateOptions options_from_json(const ordered_json& j) {
    SimulateOptions o;
    o.alpha = j.at("alpha").get<double>();
    o.mu = j.at("mu").get<double>();
    o.epsilon = j.at("epsilon").get<double>();
    o.kinetic = j.at("kinetic").get<std::string>();
    o.n = j.at("n").get<int>();
    o.dt = j.at("dt").get<double>();
    o.t_end = j.at("t_end").get<double>();
    o.ic = j.at("ic").get<std::string>();
    o.ic_q = j.at("ic_q").get<std::string>();
    o.record_every = j.at("record_every").get<int>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.dealias = j.at("dealias").get<bool>();
    o.cfl_safety = j.at("cfl_safety").get<double>();
    return o;
}

RunResult execute_run(const SimulateOptions& o) {
    const KineticFunction f = parse_kinetic(o.kinetic);
    const SolverConfig cfg = config_from(o);
    Grid grid(o.n);
    Field u0 = Expression::parse(o.ic).evaluate_on(grid);
    Field q0 = Expression::parse(o.ic_q).evaluate_on(grid);
    return run(cfg, f, u0, q0);
}

int cmd_simulate(const SimulateOptions& o, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = resolve_out(out);
    fs::create_directories(dir);
    const RunResult res = execute_run(o);

    write_diagnostics_csv(dir / "diagnostics.csv", res.records);
    write_field_csv(dir / "u_final.csv", res.final_state.u);
    write_field_csv(dir / "q_final.csv", res.final_state.q);

    ordered_json manifest;
    manifest["artifact"] = "otslab";
    manifest["version"] = kVersion;
    manifest["command"] = "simulate";
    manifest["config"] = options_json(o);
    manifest["classification"] = res.classification();
    if (res.status == RunStatus::blowup) {
        manifest["blowup"] = {{"t", res.blowup_time}, {"what", res.blowup_what}};
    }
    manifest["positivity_warnings"] = res.positivity_warnings;
    manifest["flooring_events"] = res.flooring_events;
    manifest["records"] = res.records.size();
    manifest["outputs"] = {{"diagnostics", "diagnostics.csv"},
                           {"u_final", "u_final.csv"},
                           {"q_final", "q_final.csv"}};
    manifest["wallclock_sec"] = wallclock_since(t0);
    atomic_write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "classification=" << res.classification() << " records=" << res.records.size()
              << " t_final=" << fmt17(res.final_state.t) << '\n';
    return res.status == RunStatus::blowup ? kExitBlowup : kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepRow {
    double alpha = 0.0, r = 0.0;
    std::string classification;
    double t_final = 0.0, max_linf_u = 0.0;
};

int cmd_sweep(const SimulateOptions& base, const std::vector<double>& alphas,
              const std::vector<double>& rs, int jobs, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = resolve_out(out);
    fs::create_directories(dir);

    struct Cell {
        int idx;
        double alpha, r;
    };
    std::vector<Cell> cells;
    for (double a : alphas)
        for (double r : rs) cells.push_back({static_cast<int>(cells.size()), a, r});

    std::vector<std::optional<SweepRow>> results(cells.size());
    std::mutex mtx;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            SimulateOptions o = base;
            o.alpha = cells[i].alpha;
            o.kinetic = "power:r=" + fmt17(cells[i].r);
            o.seed = derive_seed(base.seed, static_cast<std::uint64_t>(i));
            SweepRow row;
            row.alpha = cells[i].alpha;
            row.r = cells[i].r;
            try {
                const RunResult res = execute_run(o);
                row.classification = res.classification();
                row.t_final = res.final_state.t;
                for (const auto& rec : res.records)
                    row.max_linf_u =
                        std::max({row.max_linf_u, std::abs(rec.u_min), std::abs(rec.u_max)});
            } catch (const std::exception& e) {
                row.classification = "unresolved";
                std::lock_guard<std::mutex> lock(mtx);
                std::cerr << "cell (" << row.alpha << ',' << row.r << ") failed: " << e.what()
                          << '\n';
            }
            {
                std::lock_guard<std::mutex> lock(mtx);
                results[i] = std::move(row);
            }
            cv.notify_all();
        }
    };

    const int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);

    // Single writer flushes finished rows in cell order, so partial results
    // are on disk early and the file is byte-identical across re-runs.
    std::ofstream csv(dir / "regimes.csv", std::ios::trunc);
    csv << "alpha,r,classification,t_final,max_linf_u\n" << std::flush;
    {
        std::unique_lock<std::mutex> lock(mtx);
        for (std::size_t w = 0; w < cells.size(); ++w) {
            cv.wait(lock, [&] { return results[w].has_value(); });
            const SweepRow& row = *results[w];
            csv << fmt17(row.alpha) << ',' << fmt17(row.r) << ',' << row.classification << ','
                << fmt17(row.t_final) << ',' << fmt17(row.max_linf_u) << '\n'
                << std::flush;
        }
    }
    for (auto& th : pool) th.join();
    csv.close();

    ordered_json manifest;
    manifest["artifact"] = "otslab";
    manifest["version"] = kVersion;
    manifest["command"] = "sweep";
    manifest["config"] = options_json(base);
    manifest["config"]["alphas"] = alphas;
    manifest["config"]["rs"] = rs;
    manifest["config"]["jobs"] = jobs;
    manifest["cells"] = cells.size();
    manifest["outputs"] = {{"regimes", "regimes.csv"}};
    manifest["wallclock_sec"] = wallclock_since(t0);
    atomic_write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "cells=" << cells.size() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------ inequalities

int cmd_inequalities(const std::string& lemma, double alpha, double delta, double s_exp,
                     const std::string& gamma_name, int samples, std::uint64_t seed,
                     const LabConfig& lab, const std::string& out) {
    if (gamma_name != "log")
        throw CLI::ValidationError("--gamma: only 'log' is available");
    const GammaFunction gamma = gamma_log();
    InequalityReport rep;
    if (lemma == "1a") rep = check_lemma1_hs(alpha, gamma, samples, seed, lab);
    else if (lemma == "1b") rep = check_lemma1_w(alpha, delta, gamma, samples, seed, lab);
    else if (lemma == "2") rep = check_lemma2_torus(alpha, gamma, samples, seed, lab);
    else if (lemma == "b2") rep = check_lemmaB2(alpha, s_exp, delta, samples, seed, lab);
    else throw CLI::ValidationError("--lemma must be one of 1a, 1b, 2, b2");

    const fs::path dir = resolve_out(out);
    fs::create_directories(dir);
    write_report_json(dir / ("report_" + rep.inequality_id + ".json"), rep);
    write_report_ratios_csv(dir / ("ratios_" + rep.inequality_id + ".csv"), rep);
    std::cout << "lemma=" << rep.inequality_id << " samples=" << rep.sample_count
              << " violations=" << rep.violations << " estimated_constant="
              << fmt17(estimate_constant(rep)) << '\n';
    return rep.violations == 0 ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------ oracle

int cmd_oracle(double alpha, int n, int cutoff, const std::string& ic, double tol,
               const std::string& out) {
    Grid grid(n);
    const Field u = Expression::parse(ic).evaluate_on(grid);
    const Field spec_path = fractional_laplacian_spectral(u, alpha);
    const Field int_path = fractional_laplacian_integral(u, alpha, cutoff);

    double max_abs = 0.0, ref = 0.0;
    std::ostringstream os;
    os << "x,spectral,integral,abs_err\n";
    for (int j = 0; j < n; ++j) {
        const double d = std::abs(spec_path.samples[j] - int_path.samples[j]);
        max_abs = std::max(max_abs, d);
        ref = std::max(ref, std::abs(spec_path.samples[j]));
        os << fmt17(grid.x(j)) << ',' << fmt17(spec_path.samples[j]) << ','
           << fmt17(int_path.samples[j]) << ',' << fmt17(d) << '\n';
    }
    const fs::path dir = resolve_out(out);
    fs::create_directories(dir);
    atomic_write_text(dir / "oracle.csv", os.str());

    const double max_rel_err = ref == 0.0 ? 0.0 : max_abs / ref;
    std::cout << "max_rel_err=" << fmt17(max_rel_err) << '\n';
    return max_rel_err <= tol ? kExitOk : kExitOracleTol;
}

// ---------------------------------------------------------------- plotdata

int class_code(const std::string& c) {
    if (c == "bounded") return 0;
    if (c == "blowup") return 1;
    return 2; // unresolved
}

int cmd_plotdata(const std::string& run_dir) {
    const fs::path dir = resolve_out(run_dir);
    const fs::path diag = dir / "diagnostics.csv";
    const fs::path regimes = dir / "regimes.csv";

    if (fs::exists(diag)) {
        std::vector<std::string> names;
        const auto cols = read_csv_columns(diag, names);
        if (cols.empty() || cols[0].empty()) {
            std::cerr << "plotdata: diagnostics.csv has no rows\n";
            return kExitUsage;
        }
        const fs::path plots = dir / "plots";
        fs::create_directories(plots);
        const std::vector<double>& ts = cols[0];
        for (std::size_t c = 1; c < names.size(); ++c) {
            std::ostringstream os;
            os << "t," << names[c] << '\n';
            for (std::size_t i = 0; i < ts.size(); ++i)
                os << fmt17(ts[i]) << ',' << fmt17(cols[c][i]) << '\n';
            atomic_write_text(plots / (names[c] + ".csv"), os.str());
            write_svg_chart(plots / (names[c] + ".svg"), names[c], ts, cols[c]);
        }
        std::cout << "series=" << names.size() - 1 << '\n';
        return kExitOk;
    }
    if (fs::exists(regimes)) {
        std::ifstream in(regimes);
        std::string line;
        std::getline(in, line); // header
        std::ostringstream os;
        os << "alpha,r,class_code\n";
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string a, r, cls;
            std::getline(ss, a, ',');
            std::getline(ss, r, ',');
            std::getline(ss, cls, ',');
            os << a << ',' << r << ',' << class_code(cls) << '\n';
            ++rows;
        }
        if (rows == 0) {
            std::cerr << "plotdata: regimes.csv has no rows\n";
            return kExitUsage;
        }
        atomic_write_text(dir / "plots" / "regime_heatmap.csv", os.str());
        std::cout << "cells=" << rows << '\n';
        return kExitOk;
    }
    std::cerr << "plotdata: no diagnostics.csv or regimes.csv in " << dir << '\n';
    return kExitUsage;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (v.empty()) throw CLI::ValidationError("empty list");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral laboratory for the fractional "
                 "hyperbolic-parabolic chemotaxis system on the torus"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.footer("Initial conditions use a tiny expression grammar over\n"
               "{x, numbers, +, -, *, /, ^, sin, cos, exp, pi, e},\n"
               "e.g. --ic \"1+0.5*cos(x)\". Kinetic functions: --r <real> for\n"
               "f(y)=y^r/r, or --kinetic power:r=<real> | poly:<c0>,<c1>,...\n"
               "Set OTSLAB_OUT to redirect relative output directories.");

    SimulateOptions so;
    std::string out = "run";
    std::optional<double> r_flag;
    std::string from_manifest;

    CLI::Option* sim_alpha_opt = nullptr;
    auto add_run_flags = [&](CLI::App* cmd) {
        auto* a = cmd->add_option("--alpha", so.alpha, "diffusion order in (0,2]");
        if (!sim_alpha_opt) sim_alpha_opt = a;
        cmd->add_option("--mu", so.mu, "diffusion strength >= 0");
        cmd->add_option("--epsilon", so.epsilon, "regularization viscosity >= 0");
        cmd->add_option("--r", r_flag, "power-law kinetics f(y)=y^r/r, r in [1,2]");
        cmd->add_option("--kinetic", so.kinetic, "kinetic spec: power:r=<real> | poly:<c0>,...");
        cmd->add_option("--n", so.n, "grid points (power of two >= 8)");
        cmd->add_option("--dt", so.dt, "time step cap");
        cmd->add_option("--t-end", so.t_end, "final time");
        cmd->add_option("--ic", so.ic, "initial u(x) expression");
        cmd->add_option("--ic-q", so.ic_q, "initial q(x) expression (zero mean)");
        cmd->add_option("--record-every", so.record_every, "steps between diagnostics records");
        cmd->add_option("--seed", so.seed, "seed for all randomness");
        cmd->add_flag("--no-dealias", [&](std::int64_t) { so.dealias = false; },
                      "disable the 2/3 dealiasing rule");
        cmd->add_option("--cfl-safety", so.cfl_safety, "CFL safety factor in (0,1]");
        cmd->add_option("--out", out, "output directory")->required();
    };

    auto* sim = app.add_subcommand("simulate", "run the solver once and write diagnostics");
    add_run_flags(sim);
    sim->add_option("--from-manifest", from_manifest,
                    "reproduce the configuration of a previous run manifest");

    auto* swp = app.add_subcommand("sweep", "classify runs over an (alpha, r) grid");
    std::string alphas_text, rs_text;
    int jobs = 4;
    add_run_flags(swp);
    swp->add_option("--alphas", alphas_text, "comma list of alpha values")->required();
    swp->add_option("--rs", rs_text, "comma list of power-law exponents")->required();
    swp->add_option("--jobs", jobs, "worker pool size");

    auto* ineq = app.add_subcommand("inequalities", "randomized lemma verification");
    std::string lemma, gamma_name = "log";
    double i_alpha = 1.0, i_delta = 0.2, i_s = 0.5;
    int samples = 200;
    std::uint64_t i_seed = 0;
    LabConfig lab;
    std::string i_out = "ineq";
    ineq->add_option("--lemma", lemma, "1a | 1b | 2 | b2")->required();
    ineq->add_option("--alpha", i_alpha, "fractional order")->required();
    ineq->add_option("--delta", i_delta, "seminorm offset delta");
    ineq->add_option("--s", i_s, "exponent s for lemma b2");
    ineq->add_option("--gamma", gamma_name, "Gamma weight (log)");
    ineq->add_option("--samples", samples, "sample count >= 1")
        ->required()
        ->check(CLI::PositiveNumber);
    ineq->add_option("--seed", i_seed, "sampler seed");
    ineq->add_option("--lab-n", lab.n, "lab grid size");
    ineq->add_option("--modes", lab.modes, "sampler modes");
    ineq->add_option("--decay", lab.decay, "sampler spectral decay");
    ineq->add_option("--floor", lab.floor_value, "sampler positive floor");
    ineq->add_option("--cutoff", lab.lattice_cutoff, "lattice cutoff for seminorms");
    ineq->add_option("--out", i_out, "output directory")->required();

    auto* orc = app.add_subcommand("oracle", "spectral vs. singular-integral comparison");
    double o_alpha = 1.0, o_tol = 1e-3;
    int o_n = 256, o_cutoff = 50;
    std::string o_ic = "2+cos(x)", o_out = "oracle";
    orc->add_option("--alpha", o_alpha, "fractional order in (0,2)")->required();
    orc->add_option("--n", o_n, "grid points");
    orc->add_option("--cutoff", o_cutoff, "lattice cutoff K");
    orc->add_option("--ic", o_ic, "field expression")->required();
    orc->add_option("--tol", o_tol, "relative L-infinity tolerance");
    orc->add_option("--out", o_out, "output directory")->required();

    auto* plt = app.add_subcommand("plotdata", "emit plot-ready CSV and SVG from a run");
    std::string run_dir;
    plt->add_option("--run", run_dir, "run or sweep output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(sim)) {
            if (from_manifest.empty() && sim_alpha_opt->count() == 0) {
                std::cerr << "error: --alpha is required\n" << sim->help();
                return kExitUsage;
            }
            if (!from_manifest.empty()) {
                std::ifstream in(from_manifest);
                if (!in) throw std::invalid_argument("cannot open manifest " + from_manifest);
                ordered_json m = ordered_json::parse(in);
                so = options_from_json(m.at("config"));
            } else {
                if (r_flag && !so.kinetic.empty())
                    throw std::invalid_argument("--r and --kinetic are mutually exclusive");
                if (r_flag) so.kinetic = "power:r=" + fmt17(*r_flag);
                if (so.kinetic.empty())
                    throw std::invalid_argument("one of --r or --kinetic is required");
            }
            return cmd_simulate(so, out);
        }
        if (app.got_subcommand(swp)) {
            if (r_flag || !so.kinetic.empty())
                throw std::invalid_argument("sweep varies r; do not pass --r/--kinetic");
            so.kinetic = "power:r=1"; // placeholder, overridden per cell
            return cmd_sweep(so, parse_list(alphas_text), parse_list(rs_text), jobs, out);
        }
        if (app.got_subcommand(ineq))
            return cmd_inequalities(lemma, i_alpha, i_delta, i_s, gamma_name, samples, i_seed,
                                    lab, i_out);
        if (app.got_subcommand(orc))
            return cmd_oracle(o_alpha, o_n, o_cutoff, o_ic, o_tol, o_out);
        if (app.got_subcommand(plt)) return cmd_plotdata(run_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
