#include "bnsf/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <json.hpp>

#include "bnsf/oracle.hpp"

namespace bnsf {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

bool wants(const RunConfig& cfg, const char* format) {
    return cfg.output_formats.find(format) != std::string::npos;
}

struct RunOutcome {
    Trajectory traj;
    int exit_code = exit_ok;
    std::string status = "ok";
    double fail_time = 0.0;
};

RunOutcome run_scenario(const RunConfig& cfg) {
    RunOutcome out;
    const State initial = build_scenario(cfg);
    try {
        out.traj = run(initial, cfg.t_end, cfg.step_config(), cfg.params,
                       cfg.sample_every, cfg.M_weight);
    } catch (const NoConvergence& e) {
        out.exit_code = exit_no_convergence;
        out.status = "no_convergence";
        out.fail_time = e.t_fail;
    }
    return out;
}

ordered_json certification_json(const std::vector<CheckResult>& checks) {
    ordered_json j = ordered_json::object();
    for (const auto& c : checks) {
        j[c.name] = {{"pass", c.pass},
                     {"measured", c.measured},
                     {"threshold", c.threshold}};
    }
    return j;
}

void write_summary(const RunConfig& cfg, const RunOutcome& out, double wall_s,
                   const std::vector<CheckResult>& checks, const std::string& path) {
    ordered_json j;
    ordered_json conf = ordered_json::object();
    for (const auto& [k, v] : config_echo(cfg)) conf[k] = v;
    j["config"] = conf;
    j["status"] = out.status;
    if (out.exit_code == exit_no_convergence) j["failure_time"] = out.fail_time;
    j["wall_time_s"] = wall_s;
    if (!out.traj.empty()) {
        const auto& d = out.traj.back().diag;
        j["final_extrema"] = {{"v_min", d.v_min},
                              {"v_max", d.v_max},
                              {"theta_min", d.theta_min},
                              {"theta_max", d.theta_max}};
    } else {
        j["final_extrema"] = ordered_json::object();
    }
    j["certification"] = certification_json(checks);
    open_out(path) << j.dump(2) << "\n";
}

} // namespace

void write_diagnostics_csv(const Trajectory& traj, const std::string& path) {
    auto out = open_out(path);
    out << "t,eta_total,dissipation_cum,balance_residual,v_min,v_max,theta_min,"
           "theta_max,mass_def,momentum,energy_def,h1_v,h2_v,h3_v,h1_u,h2_u,h3_u,"
           "h1_th,h2_th,h3_th,alpha_fn,vlog_grad,picard_sweeps,picard_alpha_median\n";
    for (const auto& s : traj.samples) {
        const auto& d = s.diag;
        out << fmt17(d.t) << ',' << fmt17(d.eta_total) << ',' << fmt17(d.dissipation_cum)
            << ',' << fmt17(d.balance_residual) << ',' << fmt17(d.v_min) << ','
            << fmt17(d.v_max) << ',' << fmt17(d.theta_min) << ',' << fmt17(d.theta_max)
            << ',' << fmt17(d.mass_def) << ',' << fmt17(d.momentum) << ','
            << fmt17(d.energy_def) << ',' << fmt17(d.h1_v) << ',' << fmt17(d.h2_v) << ','
            << fmt17(d.h3_v) << ',' << fmt17(d.h1_u) << ',' << fmt17(d.h2_u) << ','
            << fmt17(d.h3_u) << ',' << fmt17(d.h1_th) << ',' << fmt17(d.h2_th) << ','
            << fmt17(d.h3_th) << ',' << fmt17(d.alpha_fn) << ',' << fmt17(d.vlog_grad)
            << ',' << s.report.sweeps << ',' << fmt17(median(s.report.ratios)) << "\n";
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    auto out = open_out(path);
    out << "t,x,v,u,theta\n";
    for (const auto& s : traj.samples) {
        const Grid& g = s.state.grid;
        for (int i = 0; i < g.n; ++i)
            out << fmt17(s.state.t) << ',' << fmt17(g.x(i)) << ',' << fmt17(s.state.v[i])
                << ',' << fmt17(s.state.u[i]) << ',' << fmt17(s.state.theta[i]) << "\n";
    }
}

int cmd_run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);
    const RunOutcome out = run_scenario(cfg);

    std::vector<CheckResult> checks;
    if (out.exit_code == exit_ok) checks = evaluate_certification(out.traj, cfg.certify_tols());

    if (wants(cfg, "csv") && !out.traj.empty()) {
        write_diagnostics_csv(out.traj, cfg.output_dir + "/diagnostics.csv");
        write_trajectory_csv(out.traj, cfg.output_dir + "/trajectory.csv");
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (wants(cfg, "json"))
        write_summary(cfg, out, wall, checks, cfg.output_dir + "/summary.json");
    return out.exit_code;
}

int cmd_refine(const RunConfig& cfg, int levels) {
    if (levels < 2) throw ConfigError("refine: need at least 2 levels", 0, "");
    fs::create_directories(cfg.output_dir);

    struct Level {
        int n = 0;
        double dt = 0.0;
        double balance = 0.0;
        double oracle_err = 0.0;
    };

    auto run_level = [&cfg](int lvl) {
        RunConfig c = cfg;
        if (c.grid_bc == Bc::periodic)
            c.grid_n = cfg.grid_n << lvl;
        else
            c.grid_n = ((cfg.grid_n - 1) << lvl) + 1;
        c.dt = cfg.dt / static_cast<double>(1 << lvl);
        c.sample_every = cfg.sample_every << lvl;

        Level out;
        out.n = c.grid_n;
        out.dt = c.dt;
        const State initial = build_scenario(c);
        const Trajectory traj =
            run(initial, c.t_end, c.step_config(), c.params, c.sample_every, c.M_weight);
        out.balance = balance_check(traj, 1.0).max_residual;

        const int n_fine = c.grid_bc == Bc::periodic ? 2 * c.grid_n
                                                     : 2 * (c.grid_n - 1) + 1;
        const State ref = explicit_reference(initial, c.t_end, c.params, n_fine);
        const State& fin = traj.back().state;
        double err = 0.0;
        const int stride = c.grid_bc == Bc::periodic ? 2 : 2;
        for (int i = 0; i < c.grid_n; ++i) {
            err = std::max(err, std::abs(fin.v[i] - ref.v[i * stride]));
            err = std::max(err, std::abs(fin.u[i] - ref.u[i * stride]));
            err = std::max(err, std::abs(fin.theta[i] - ref.theta[i * stride]));
        }
        out.oracle_err = err;
        return out;
    };

    std::vector<std::future<Level>> futures;
    for (int l = 0; l < levels; ++l)
        futures.push_back(std::async(std::launch::async, run_level, l));
    std::vector<Level> rows;
    for (auto& f : futures) rows.push_back(f.get()); // deterministic level order

    auto out = open_out(cfg.output_dir + "/rates.csv");
    out << "level,n,dt,balance_residual,balance_order,oracle_err,err_order\n";
    for (int l = 0; l < levels; ++l) {
        const double border =
            l > 0 ? std::log2(rows[l - 1].balance / rows[l].balance) : 0.0;
        const double eorder =
            l > 0 ? std::log2(rows[l - 1].oracle_err / rows[l].oracle_err) : 0.0;
        out << l << ',' << rows[l].n << ',' << fmt17(rows[l].dt) << ','
            << fmt17(rows[l].balance) << ',' << fmt17(border) << ','
            << fmt17(rows[l].oracle_err) << ',' << fmt17(eorder) << "\n";
    }
    return exit_ok;
}

int cmd_compare(const RunConfig& cfg) {
    fs::create_directories(cfg.output_dir);

    auto run_variant = [&cfg](double tau) {
        RunConfig c = cfg;
        c.params.tau = tau;
        const State initial = build_scenario(c);
        return run(initial, c.t_end, c.step_config(), c.params, c.sample_every,
                   c.M_weight);
    };

    auto fut_bnsf = std::async(std::launch::async, run_variant, cfg.params.tau);
    auto fut_nsf = std::async(std::launch::async, run_variant, 0.0);
    const Trajectory bnsf_traj = fut_bnsf.get();
    const Trajectory nsf_traj = fut_nsf.get();

    auto out = open_out(cfg.output_dir + "/compare.csv");
    out << "t,eta_bnsf,eta_nsf,diss_mass_bnsf,diss_mass_nsf,diss_visc_bnsf,"
           "diss_visc_nsf,diss_heat_bnsf,diss_heat_nsf\n";
    const size_t rows = std::min(bnsf_traj.samples.size(), nsf_traj.samples.size());
    for (size_t i = 0; i < rows; ++i) {
        const auto& a = bnsf_traj.samples[i].diag;
        const auto& b = nsf_traj.samples[i].diag;
        out << fmt17(a.t) << ',' << fmt17(a.eta_total) << ',' << fmt17(b.eta_total) << ','
            << fmt17(a.diss_cum_mass) << ',' << fmt17(b.diss_cum_mass) << ','
            << fmt17(a.diss_cum_visc) << ',' << fmt17(b.diss_cum_visc) << ','
            << fmt17(a.diss_cum_heat) << ',' << fmt17(b.diss_cum_heat) << "\n";
    }
    return exit_ok;
}

int cmd_ladder(const RunConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    const RunOutcome out = run_scenario(cfg);
    if (out.exit_code != exit_ok) return out.exit_code;

    double v_max_obs = 0.0, w_max_obs = 0.0;
    for (const auto& s : out.traj.samples) {
        v_max_obs = std::max(v_max_obs, s.diag.v_max);
        w_max_obs = std::max(w_max_obs, 1.0 / std::sqrt(s.diag.v_min));
    }

    const LadderReport up = degiorgi_ladder(out.traj, LadderSide::upper,
                                            cfg.ladder_L_factor * v_max_obs, cfg.ladder_K);
    const LadderReport lo = degiorgi_ladder(out.traj, LadderSide::lower,
                                            cfg.ladder_L_factor * w_max_obs, cfg.ladder_K);

    auto csv = open_out(cfg.output_dir + "/ladder.csv");
    csv << "side,k,c_k,E_k\n";
    for (size_t k = 0; k < up.levels.size(); ++k)
        csv << "upper," << k << ',' << fmt17(up.levels[k]) << ',' << fmt17(up.energies[k])
            << "\n";
    for (size_t k = 0; k < lo.levels.size(); ++k)
        csv << "lower," << k << ',' << fmt17(lo.levels[k]) << ',' << fmt17(lo.energies[k])
            << "\n";
    return exit_ok;
}

int cmd_certify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);
    const RunOutcome out = run_scenario(cfg);

    std::vector<CheckResult> checks;
    bool all_pass = false;
    if (out.exit_code == exit_ok) {
        checks = evaluate_certification(out.traj, cfg.certify_tols());
        all_pass = true;
        for (const auto& c : checks) all_pass = all_pass && c.pass;
    }

    ordered_json j;
    j["status"] = out.exit_code != exit_ok ? out.status
                 : all_pass               ? "ok"
                                          : "certification_failed";
    j["checks"] = certification_json(checks);
    open_out(cfg.output_dir + "/certify.json") << j.dump(2) << "\n";

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    RunOutcome summary_out = out;
    if (out.exit_code == exit_ok && !all_pass) summary_out.status = "certification_failed";
    if (wants(cfg, "json"))
        write_summary(cfg, summary_out, wall, checks, cfg.output_dir + "/summary.json");

    if (out.exit_code != exit_ok) return out.exit_code;
    return all_pass ? exit_ok : exit_certification_failure;
}

} // namespace bnsf
