#include "bnsf/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bnsf {

Grid RunConfig::make_grid() const {
    return grid_bc == Bc::periodic ? Grid::periodic(grid_n, grid_L, face_mean)
                                   : Grid::dirichlet(grid_n, grid_L, face_mean);
}

CertifyTols RunConfig::certify_tols() const {
    CertifyTols t;
    t.balance_tol = balance_tol;
    t.conservation_tol = conservation_tol;
    t.ladder_terminal_tol = ladder_terminal_tol;
    t.theta_tol = theta_tol;
    t.ladder_L_factor = ladder_L_factor;
    t.ladder_K = ladder_K;
    return t;
}

StepConfig RunConfig::step_config() const {
    StepConfig c = picard;
    c.dt = dt;
    if (!(c.dt_min > 0.0) || c.dt_min > c.dt) c.dt_min = std::min(picard.dt_min, dt);
    return c;
}

namespace {

double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": bad numeric value '" + v +
                              "' for key '" + key + "'",
                          line, key);
    }
}

long parse_int(const std::string& v, const std::string& key, int line) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": bad integer value '" + v +
                              "' for key '" + key + "'",
                          line, key);
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& key_table() {
    auto dbl = [](auto assign) {
        return Setter([assign](RunConfig& c, const std::string& v, int line) {
            assign(c, parse_double(v, "", line));
        });
    };
    auto integer = [](auto assign) {
        return Setter([assign](RunConfig& c, const std::string& v, int line) {
            assign(c, parse_int(v, "", line));
        });
    };
    static const std::map<std::string, Setter> table = {
        {"params.R", dbl([](RunConfig& c, double x) { c.params.R = x; })},
        {"params.gamma", dbl([](RunConfig& c, double x) { c.params.gamma = x; })},
        {"params.tau", dbl([](RunConfig& c, double x) { c.params.tau = x; })},
        {"params.mu", dbl([](RunConfig& c, double x) { c.params.mu = x; })},
        {"params.kappa", dbl([](RunConfig& c, double x) { c.params.kappa = x; })},
        {"grid.n", integer([](RunConfig& c, long x) { c.grid_n = static_cast<int>(x); })},
        {"grid.L", dbl([](RunConfig& c, double x) { c.grid_L = x; })},
        {"grid.bc",
         Setter([](RunConfig& c, const std::string& v, int line) {
             if (v == "periodic")
                 c.grid_bc = Bc::periodic;
             else if (v == "dirichlet" || v == "dirichlet_background")
                 c.grid_bc = Bc::dirichlet_background;
             else
                 throw ConfigError("line " + std::to_string(line) +
                                       ": grid.bc must be 'periodic' or 'dirichlet', got '" +
                                       v + "'",
                                   line, "grid.bc");
         })},
        {"grid.face_mean",
         Setter([](RunConfig& c, const std::string& v, int line) {
             if (v == "harmonic")
                 c.face_mean = FaceMean::harmonic;
             else if (v == "arithmetic")
                 c.face_mean = FaceMean::arithmetic;
             else
                 throw ConfigError("line " + std::to_string(line) +
                                       ": grid.face_mean must be 'harmonic' or "
                                       "'arithmetic', got '" +
                                       v + "'",
                                   line, "grid.face_mean");
         })},
        {"scenario.name",
         Setter([](RunConfig& c, const std::string& v, int) { c.scenario_name = v; })},
        {"scenario.amplitude", dbl([](RunConfig& c, double x) { c.amplitude = x; })},
        {"scenario.width", dbl([](RunConfig& c, double x) { c.width = x; })},
        {"scenario.center", dbl([](RunConfig& c, double x) { c.center = x; })},
        {"scenario.theta_dip", dbl([](RunConfig& c, double x) { c.theta_dip = x; })},
        {"scenario.v_dip", dbl([](RunConfig& c, double x) { c.v_dip = x; })},
        {"time.t_end", dbl([](RunConfig& c, double x) { c.t_end = x; })},
        {"time.dt", dbl([](RunConfig& c, double x) { c.dt = x; })},
        {"time.sample_every",
         integer([](RunConfig& c, long x) { c.sample_every = static_cast<int>(x); })},
        {"picard.tol", dbl([](RunConfig& c, double x) { c.picard.picard_tol = x; })},
        {"picard.max",
         integer([](RunConfig& c, long x) { c.picard.picard_max = static_cast<int>(x); })},
        {"picard.dt_min", dbl([](RunConfig& c, double x) { c.picard.dt_min = x; })},
        {"picard.positivity_floor",
         dbl([](RunConfig& c, double x) { c.picard.positivity_floor = x; })},
        {"picard.sweeps",
         integer([](RunConfig& c, long x) { c.picard.fixed_sweeps = static_cast<int>(x); })},
        {"diagnostics.ladder_L_factor",
         dbl([](RunConfig& c, double x) { c.ladder_L_factor = x; })},
        {"diagnostics.ladder_K",
         integer([](RunConfig& c, long x) { c.ladder_K = static_cast<int>(x); })},
        {"diagnostics.theta_tol", dbl([](RunConfig& c, double x) { c.theta_tol = x; })},
        {"diagnostics.M_weight", dbl([](RunConfig& c, double x) { c.M_weight = x; })},
        {"diagnostics.balance_tol", dbl([](RunConfig& c, double x) { c.balance_tol = x; })},
        {"diagnostics.conservation_tol",
         dbl([](RunConfig& c, double x) { c.conservation_tol = x; })},
        {"diagnostics.ladder_terminal_tol",
         dbl([](RunConfig& c, double x) { c.ladder_terminal_tol = x; })},
        {"output.dir",
         Setter([](RunConfig& c, const std::string& v, int) { c.output_dir = v; })},
        {"output.formats",
         Setter([](RunConfig& c, const std::string& v, int) { c.output_formats = v; })},
        {"seed", integer([](RunConfig& c, long x) { c.seed = x; })},
    };
    return table;
}

void validate_config(const RunConfig& cfg) {
    cfg.params.validate();
    if (cfg.grid_n < 3) throw ConfigError("grid.n must be >= 3", 0, "grid.n");
    if (!(cfg.grid_L > 0.0)) throw ConfigError("grid.L must be > 0", 0, "grid.L");
    if (!(cfg.dt > 0.0)) throw ConfigError("time.dt must be > 0", 0, "time.dt");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("time.t_end must be >= 0", 0, "time.t_end");
    if (cfg.sample_every < 1)
        throw ConfigError("time.sample_every must be >= 1", 0, "time.sample_every");
    if (cfg.ladder_K < 2)
        throw ConfigError("diagnostics.ladder_K must be >= 2", 0, "diagnostics.ladder_K");
}

} // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'",
                              lineno, "");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = key_table();
        const auto it = table.find(key);
        if (it == table.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                                  "'",
                              lineno, key);
        it->second(cfg, value, lineno);
    }
    if (cfg.center < 0.0) cfg.center = 0.5 * cfg.grid_L;
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
    return parse_config(in);
}

namespace {

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("params.R", num17(cfg.params.R));
    kv.emplace_back("params.gamma", num17(cfg.params.gamma));
    kv.emplace_back("params.tau", num17(cfg.params.tau));
    kv.emplace_back("params.mu", num17(cfg.params.mu));
    kv.emplace_back("params.kappa", num17(cfg.params.kappa));
    kv.emplace_back("grid.n", std::to_string(cfg.grid_n));
    kv.emplace_back("grid.L", num17(cfg.grid_L));
    kv.emplace_back("grid.bc", cfg.grid_bc == Bc::periodic ? "periodic" : "dirichlet");
    kv.emplace_back("grid.face_mean",
                    cfg.face_mean == FaceMean::harmonic ? "harmonic" : "arithmetic");
    kv.emplace_back("scenario.name", cfg.scenario_name);
    kv.emplace_back("scenario.amplitude", num17(cfg.amplitude));
    kv.emplace_back("scenario.width", num17(cfg.width));
    kv.emplace_back("scenario.center", num17(cfg.center));
    kv.emplace_back("scenario.theta_dip", num17(cfg.theta_dip));
    kv.emplace_back("scenario.v_dip", num17(cfg.v_dip));
    kv.emplace_back("time.t_end", num17(cfg.t_end));
    kv.emplace_back("time.dt", num17(cfg.dt));
    kv.emplace_back("time.sample_every", std::to_string(cfg.sample_every));
    kv.emplace_back("picard.tol", num17(cfg.picard.picard_tol));
    kv.emplace_back("picard.max", std::to_string(cfg.picard.picard_max));
    kv.emplace_back("picard.dt_min", num17(cfg.picard.dt_min));
    kv.emplace_back("picard.positivity_floor", num17(cfg.picard.positivity_floor));
    kv.emplace_back("picard.sweeps", std::to_string(cfg.picard.fixed_sweeps));
    kv.emplace_back("diagnostics.ladder_L_factor", num17(cfg.ladder_L_factor));
    kv.emplace_back("diagnostics.ladder_K", std::to_string(cfg.ladder_K));
    kv.emplace_back("diagnostics.theta_tol", num17(cfg.theta_tol));
    kv.emplace_back("diagnostics.M_weight", num17(cfg.M_weight));
    kv.emplace_back("diagnostics.balance_tol", num17(cfg.balance_tol));
    kv.emplace_back("diagnostics.conservation_tol", num17(cfg.conservation_tol));
    kv.emplace_back("diagnostics.ladder_terminal_tol", num17(cfg.ladder_terminal_tol));
    kv.emplace_back("output.dir", cfg.output_dir);
    kv.emplace_back("output.formats", cfg.output_formats);
    kv.emplace_back("seed", std::to_string(cfg.seed));
    return kv;
}

namespace {

// quintic smoothstep: 0 at 0, 1 at 1, with two vanishing derivatives
double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

} // namespace

State build_scenario(const RunConfig& cfg) {
    const Grid g = cfg.make_grid();
    const double L = g.length();
    const double c = cfg.center;
    const double w = cfg.width;
    const double A = cfg.amplitude;
    if (!(w > 0.0)) throw ConfigError("scenario.width must be > 0", 0, "scenario.width");

    State s = State::background(g);

    auto gauss = [&](double x) {
        const double r = (x - c) / w;
        return std::exp(-r * r);
    };
    // exact zero within the outer 10% of a dirichlet domain
    auto taper = [&](double x) {
        const double edge = 0.1 * L;
        if (g.is_periodic()) return 1.0;
        const double dl = x / edge;
        const double dr = (L - x) / edge;
        return smoothstep5(std::min(1.0, dl)) * smoothstep5(std::min(1.0, dr));
    };

    if (cfg.scenario_name == "gaussian_bump") {
        for (int i = 0; i < g.n; ++i) {
            const double p = A * gauss(g.x(i));
            s.v[i] = 1.0 + p;
            s.u[i] = p;
            s.theta[i] = 1.0 + p;
        }
    } else if (cfg.scenario_name == "cold_dense_spot") {
        for (int i = 0; i < g.n; ++i) {
            const double gx = gauss(g.x(i));
            s.v[i] = 1.0 - (1.0 - cfg.v_dip) * gx;
            s.theta[i] = 1.0 - (1.0 - cfg.theta_dip) * gx;
            s.u[i] = A * gx;
        }
    } else if (cfg.scenario_name == "smoothed_riemann") {
        const double half = std::max(2.0 * w, L / 8.0);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            const double plateau =
                0.5 * (std::tanh((x - (c - half)) / w) - std::tanh((x - (c + half)) / w));
            const double p = A * plateau * taper(x);
            s.v[i] = 1.0 + p;
            s.theta[i] = 1.0 + 0.5 * p;
        }
    } else if (cfg.scenario_name == "sine") {
        for (int i = 0; i < g.n; ++i) {
            const double xi = 2.0 * M_PI * g.x(i) / L;
            s.v[i] = 1.0 + A * std::sin(xi);
            s.u[i] = A * std::cos(xi);
            s.theta[i] = 1.0 + 0.5 * A * std::sin(xi);
        }
    } else {
        throw ConfigError("unknown scenario '" + cfg.scenario_name + "'", 0,
                          "scenario.name");
    }

    if (!g.is_periodic()) {
        // perturbations must vanish at the pinned boundary
        const double tol = 1e-9;
        const int last = g.n - 1;
        for (int i : {0, last}) {
            if (std::abs(s.v[i] - 1.0) > tol || std::abs(s.u[i]) > tol ||
                std::abs(s.theta[i] - 1.0) > tol)
                throw ConfigError("scenario perturbation does not vanish at dirichlet "
                                  "boundary node " +
                                      std::to_string(i),
                                  0, "scenario.name");
        }
        s.v[0] = s.v[last] = 1.0;
        s.u[0] = s.u[last] = 0.0;
        s.theta[0] = s.theta[last] = 1.0;
    }

    for (int i = 0; i < g.n; ++i) {
        if (!(s.v[i] > 0.0))
            throw PositivityError("scenario rejected: v = " + std::to_string(s.v[i]) +
                                      " <= 0 at node " + std::to_string(i) +
                                      " (x = " + std::to_string(g.x(i)) + ")",
                                  i, s.v[i]);
        if (!(s.theta[i] > 0.0))
            throw PositivityError("scenario rejected: theta = " +
                                      std::to_string(s.theta[i]) + " <= 0 at node " +
                                      std::to_string(i) +
                                      " (x = " + std::to_string(g.x(i)) + ")",
                                  i, s.theta[i]);
    }
    return s;
}

} // namespace bnsf
