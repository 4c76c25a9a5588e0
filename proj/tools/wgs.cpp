// Command-line runner: experiments from JSON configs, series as flat CSV,
// checkpoints as JSONL, one manifest per run, and the verification suite.

#include "wgs/config.hpp"
#include "wgs/io.hpp"
#include "wgs/norms.hpp"
#include "wgs/resonance.hpp"
#include "wgs/scattering.hpp"
#include "wgs/simd.hpp"
#include "wgs/szego.hpp"
#include "wgs/verify.hpp"
#include "wgs/waveguide.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <future>
#include <iostream>

namespace {

using namespace wgs;
namespace fs = std::filesystem;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int threads = 1;
    long seed = -1;
};

ExperimentConfig resolve(const CommonArgs& a, const std::string& experiment) {
    ExperimentConfig cfg;
    if (!a.config_path.empty()) cfg = load_config_file(a.config_path, a.overrides);
    else if (!a.overrides.empty())
        cfg = load_config("{\"grid\":{\"L\":1608.495,\"n_x\":1024,\"p_max\":5}}", a.overrides);
    cfg.experiment = experiment;
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (a.seed >= 0) cfg.seed = static_cast<unsigned>(a.seed);
    cfg.threads = a.threads;
    return cfg;
}

RunManifest start_manifest(const ExperimentConfig& cfg) {
    RunManifest m;
    m.experiment = cfg.experiment;
    m.config_json = cfg.to_json();
    m.build_stamp = build_stamp();
    return m;
}

int finish(RunManifest& m, const ExperimentConfig& cfg,
           std::chrono::steady_clock::time_point t0) {
    m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fs::path out(cfg.out_dir);
    m.write(out / "manifest.json");
    bool ok = m.all_pass();
    std::cout << (ok ? "PASS" : "FAIL") << " (" << m.experiment << ", " << m.wall_clock_s
              << " s) -> " << (out / "manifest.json").string() << "\n";
    return ok ? 0 : 1;
}

int run_szego(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest m = start_manifest(cfg);
    SzegoState v0(cfg.p_max);
    for (std::size_t i = 0; i < cfg.modes.size() && i < 4; ++i)
        if (cfg.modes[i] >= 0 && cfg.modes[i] <= cfg.p_max) v0.a[cfg.modes[i]] = cfg.eps;
    v0.a[1] = 1.0;
    auto traj = evolve_szego(v0, cfg.t_end, cfg.tol);
    auto drift = szego_invariant_drift(traj);
    fs::path out(cfg.out_dir);
    CsvWriter csv(out / "series" / "szego.csv");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        csv.row(traj.times[i], "mass", traj.states[i].mass());
        csv.row(traj.times[i], "hamiltonian", traj.states[i].hamiltonian());
        csv.row(traj.times[i], "hs", traj.states[i].hs_norm(cfg.norms.s));
    }
    m.artifacts.push_back("series/szego.csv");
    m.criteria["szego-invariant-drift<100*tol"] =
        std::max({drift.mass, drift.momentum, drift.hamiltonian}) < 100.0 * cfg.tol;
    m.criteria["szego-isospectral-drift<1e-6"] = drift.singular_values < 1e-6;
    return finish(m, cfg, t0);
}

int run_resonant(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest m = start_manifest(cfg);
    auto grid = cfg.make_grid();
    std::vector<std::pair<int, cplx>> modes;
    for (int p : cfg.modes) modes.emplace_back(p, cplx{cfg.eps, 0.0});
    double sig = cfg.xi_sigma;
    CylinderField G0 = make_separable(grid, modes, [sig](double xi) {
        return std::exp(-xi * xi / (2.0 * sig * sig));
    });
    auto traj = resonant_evolve(G0, cfg.tau_end, cfg.tol, ResonantMethod::direct);
    auto rep = z_conservation_audit(traj);
    fs::path out(cfg.out_dir);
    CsvWriter csv(out / "series" / "resonant.csv");
    for (std::size_t i = 0; i < traj.taus.size(); ++i) {
        csv.row(traj.taus[i], "Z", cylinder_norm(traj.states[i], CylWhich::Z, cfg.norms));
        csv.row(traj.taus[i], "S", cylinder_norm(traj.states[i], CylWhich::S, cfg.norms));
    }
    CylinderTrajectory ct{traj.taus, traj.states};
    write_checkpoints(out / "checkpoints" / "resonant.jsonl", ct);
    m.artifacts.push_back("series/resonant.csv");
    m.artifacts.push_back("checkpoints/resonant.jsonl");
    m.criteria["trace-drift<1e-6"] = rep.max_trace_drift < 1e-6;
    return finish(m, cfg, t0);
}

int run_waveguide(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest m = start_manifest(cfg);
    auto grid = cfg.make_grid();
    std::vector<std::pair<int, cplx>> modes;
    for (int p : cfg.modes) modes.emplace_back(p, cplx{cfg.eps, 0.0});
    double sig = cfg.xi_sigma;
    CylinderField U0 = make_separable(grid, modes, [sig](double xi) {
        return std::exp(-xi * xi / (2.0 * sig * sig));
    });
    SplitStepConfig ss;
    ss.dt = cfg.dt;
    auto run = evolve_waveguide(U0, cfg.t_end, ss);
    fs::path out(cfg.out_dir);
    CsvWriter csv(out / "series" / "conservation.csv");
    double m0 = run.conservation.front().mass, e0 = run.conservation.front().energy;
    double dm = 0.0, de = 0.0;
    for (const auto& row : run.conservation) {
        csv.row(row.t, "mass", row.mass);
        csv.row(row.t, "energy", row.energy);
        dm = std::max(dm, std::fabs(row.mass - m0) / m0);
        de = std::max(de, std::fabs(row.energy - e0) / e0);
    }
    write_checkpoints(out / "checkpoints" / "waveguide.jsonl", run.traj);
    m.artifacts.push_back("series/conservation.csv");
    m.artifacts.push_back("checkpoints/waveguide.jsonl");
    m.criteria["mass-drift<1e-6"] = dm < 1e-6;
    m.criteria["energy-drift<1e-6"] = de < 1e-6;
    return finish(m, cfg, t0);
}

int run_scatter(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest m = start_manifest(cfg);
    ScatteringConfig sc;
    sc.grid = cfg.make_grid();
    sc.eps = cfg.eps;
    sc.modes = cfg.modes;
    sc.xi_sigma = cfg.xi_sigma;
    sc.T = cfg.T;
    sc.n_samples = cfg.n_samples;
    sc.tol = cfg.tol;
    sc.pass_factor = cfg.pass_factor;
    sc.norms = cfg.norms;
    auto series = modified_scattering_run(sc);
    fs::path out(cfg.out_dir);
    CsvWriter csv(out / "series" / "scatter.csv");
    for (std::size_t i = 0; i < series.ts.size(); ++i) {
        csv.row(series.ts[i], "d_S", series.d_s[i]);
        csv.row(series.ts[i], "d_Z", series.d_z[i]);
        csv.row(series.ts[i], "d0_S", series.d0_s[i]);
    }
    m.artifacts.push_back("series/scatter.csv");
    m.criteria["deficit<factor*null"] = series.pass;
    return finish(m, cfg, t0);
}

int run_cascade(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest m = start_manifest(cfg);
    CascadeConfig cc;
    cc.grid = cfg.make_grid();
    cc.eps_list = cfg.eps_list;
    cc.s = cfg.norms.s;
    cc.amplitude = cfg.amplitude;
    cc.plateau_xi = cfg.plateau_xi;
    cc.tol = cfg.tol;
    cc.full_T = cfg.T;
    auto res = cascade_experiment(cc);
    fs::path out(cfg.out_dir);
    CsvWriter csv(out / "series" / "cascade.csv");
    for (const auto& row : res.resonant) {
        csv.row(row.eps, "sup_L2Hs", row.sup);
        csv.row(row.eps, "arg_sup_tau", row.arg_sup);
    }
    csv.row(0.0, "full_sup", res.full_sup);
    csv.row(0.0, "resonant_sup", res.resonant_sup);
    m.artifacts.push_back("series/cascade.csv");
    m.criteria["sup-monotone-in-eps"] = res.monotone;
    m.criteria["full-vs-resonant<25%"] = res.agreement < 0.25;
    return finish(m, cfg, t0);
}

int run_verify(const std::string& suite, const std::string& out_dir) {
    std::vector<int> ids;
    if (suite == "all" || suite.empty()) {
        for (int i = 1; i <= criterion_count(); ++i) ids.push_back(i);
    } else {
        // number, range, or name substring
        bool numeric = suite.find_first_not_of("0123456789-,") == std::string::npos;
        if (numeric) {
            std::stringstream ss(suite);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto dash = tok.find('-');
                if (dash == std::string::npos) ids.push_back(std::stoi(tok));
                else
                    for (int i = std::stoi(tok.substr(0, dash)); i <= std::stoi(tok.substr(dash + 1));
                         ++i)
                        ids.push_back(i);
            }
        } else {
            for (int i = 1; i <= criterion_count(); ++i)
                if (std::string(criterion_name(i)).find(suite) != std::string::npos)
                    ids.push_back(i);
            if (ids.empty()) {
                std::cerr << "verify: no criterion matches '" << suite << "'\n";
                return 2;
            }
        }
    }
    bool all = true;
    RunManifest m;
    m.experiment = "verify";
    m.build_stamp = build_stamp();
    auto t0 = std::chrono::steady_clock::now();
    for (int id : ids) {
        auto r = run_criterion(id);
        all &= r.pass;
        m.criteria[std::to_string(r.id) + ":" + r.name] = r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << r.seconds
                  << " s): " << r.detail << "\n";
    }
    if (!out_dir.empty()) {
        m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m.write(fs::path(out_dir) / "manifest.json");
    }
    return all ? 0 : 1;
}

int run_sweep(const CommonArgs& args, const std::string& param, const std::string& child) {
    auto eq = param.find('=');
    if (eq == std::string::npos) {
        std::cerr << "sweep: --param must be key=v1,v2,...\n";
        return 2;
    }
    std::string key = param.substr(0, eq);
    std::vector<std::string> values;
    std::stringstream ss(param.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) values.push_back(tok);

    auto run_child = [&](const std::string& v) -> int {
        CommonArgs a = args;
        a.overrides.push_back(key + "=" + v);
        a.out_dir = (fs::path(args.out_dir.empty() ? "out" : args.out_dir) / (key + "_" + v)).string();
        ExperimentConfig cfg = resolve(a, child);
        if (child == "scatter") return run_scatter(cfg);
        if (child == "cascade") return run_cascade(cfg);
        if (child == "waveguide") return run_waveguide(cfg);
        if (child == "szego") return run_szego(cfg);
        if (child == "resonant") return run_resonant(cfg);
        return 2;
    };
    if (child != "scatter" && child != "cascade" && child != "waveguide" && child != "szego" &&
        child != "resonant") {
        std::cerr << "sweep: unknown child experiment '" << child << "'\n";
        return 2;
    }

    // members are independent; aggregate in fixed order afterwards
    int rc = 0;
    std::vector<std::pair<double, bool>> rows(values.size());
    std::size_t next = 0;
    int workers = std::max(1, args.threads);
    while (next < values.size()) {
        std::vector<std::pair<std::size_t, std::future<int>>> batch;
        for (int w = 0; w < workers && next < values.size(); ++w, ++next)
            batch.emplace_back(next, std::async(std::launch::async, run_child, values[next]));
        for (auto& [idx, fut] : batch) {
            int one = fut.get();
            rows[idx] = {std::atof(values[idx].c_str()), one == 0};
            rc |= one;
        }
    }
    fs::path out(args.out_dir.empty() ? "out" : args.out_dir);
    CsvWriter csv(out / "series" / "sweep.csv");
    for (auto [v, ok] : rows) csv.row(v, "child_pass", ok ? 1.0 : 0.0);
    std::cout << "sweep: " << rows.size() << " child runs, aggregate at "
              << (out / "series" / "sweep.csv").string() << "\n";
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wave-guide NLS / cubic Szego spectral laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonArgs args;
    bool no_simd = false;
    app.add_option("--config", args.config_path, "JSON config path")->check(CLI::ExistingFile);
    app.add_option("--set", args.overrides, "config override key=value (repeatable)");
    app.add_option("--out", args.out_dir, "output directory");
    app.add_option("--threads", args.threads, "worker threads (default 1)");
    app.add_option("--seed", args.seed, "RNG seed override");
    app.add_flag("--no-simd", no_simd, "pin the scalar kernel path");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run acceptance criteria");
    verify->add_option("--suite", suite, "all, ids (e.g. 1,3-5), or name substring");

    auto* szego = app.add_subcommand("szego", "cubic Szego evolution with invariant monitoring");
    auto* resonant = app.add_subcommand("resonant", "resonant system evolution + Z audit");
    auto* waveguide = app.add_subcommand("waveguide", "full split-step flow + conservation");
    auto* scatter = app.add_subcommand("scatter", "modified scattering comparison");
    auto* cascade = app.add_subcommand("cascade", "Sobolev cascade experiment");

    std::string sweep_param, sweep_child;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep of a child experiment");
    sweep->add_option("--param", sweep_param, "key=v1,v2,...")->required();
    sweep->add_option("experiment", sweep_child, "child experiment name")->required();

    CLI11_PARSE(app, argc, argv);
    wgs::simd::force_scalar(no_simd);

    try {
        if (verify->parsed()) return run_verify(suite, args.out_dir);
        if (szego->parsed()) return run_szego(resolve(args, "szego"));
        if (resonant->parsed()) return run_resonant(resolve(args, "resonant"));
        if (waveguide->parsed()) return run_waveguide(resolve(args, "waveguide"));
        if (scatter->parsed()) return run_scatter(resolve(args, "scatter"));
        if (cascade->parsed()) return run_cascade(resolve(args, "cascade"));
        if (sweep->parsed()) return run_sweep(args, sweep_param, sweep_child);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
