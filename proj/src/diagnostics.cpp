#include "bnsf/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "bnsf/grid_ops.hpp"

namespace bnsf {

namespace {

struct DissipationSplit {
    double mass = 0.0, visc = 0.0, heat = 0.0;
    double total() const { return mass + visc + heat; }
};

// Face-based quadrature of the dissipation integrals. Evaluating the squared
// gradients on faces (with the same harmonic face weights the solver uses)
// reproduces the solver's discrete entropy production identically, so the
// balance residual is pure time-integration error; nodal centered gradients
// would leave an O(h^2) floor that masks the dt order.
DissipationSplit dissipation_rates(const State& s, const Params& p) {
    const Grid& g = s.grid;
    const int n = g.n;
    const double inv_h2 = 1.0 / (g.h * g.h);
    const int nfaces = g.is_periodic() ? n : n - 1;
    double mass = 0.0, heat = 0.0;
    Field phiu(n, 0.0);
    for (int k = 0; k < nfaces; ++k) {
        const int kp = (k + 1 == n) ? 0 : k + 1;
        const double wf = face_weight(s.v[k], s.v[kp], g.face_mean);
        const double dv = s.v[kp] - s.v[k];
        const double du = s.u[kp] - s.u[k];
        const double dth = s.theta[kp] - s.theta[k];
        mass += dv * dv * inv_h2 / (wf * s.v[k] * s.v[kp]);
        heat += dth * dth * inv_h2 / (wf * s.theta[k] * s.theta[kp]);
        const double phif = du * du * inv_h2 / wf;
        phiu[k] += 0.5 * phif;
        phiu[kp] += 0.5 * phif;
    }
    double visc = 0.0;
    for (int i = 0; i < n; ++i) visc += phiu[i] / s.theta[i];
    DissipationSplit out;
    out.mass = p.tau * p.R * mass * g.h;
    out.visc = p.mu * visc * g.h;
    out.heat = p.kappa * heat * g.h;
    return out;
}

} // namespace

DiagnosticsRecord snapshot(const State& s, const Params& p, double M_weight,
                           const std::optional<DiagnosticsRecord>& prev) {
    check_positivity(s);
    const Grid& g = s.grid;
    const int n = g.n;

    DiagnosticsRecord r;
    r.t = s.t;

    Field eta(n), vm1(n), em(n), alpha_d(n), vlog(n);
    const double c0 = p.R / (p.gamma - 1.0);
    const Field vx = d1(s.v, g);
    for (int i = 0; i < n; ++i) {
        const ScalarPoint pt{s.v[i], s.u[i], s.theta[i]};
        eta[i] = relative_entropy_density(pt, p);
        vm1[i] = s.v[i] - 1.0;
        const double edef = c0 * (s.theta[i] - 1.0) + 0.5 * s.u[i] * s.u[i];
        em[i] = edef;
        const double u2 = s.u[i] * s.u[i];
        alpha_d[i] = 0.5 * edef * edef + 0.25 * M_weight * u2 * u2;
        const double r1 = vx[i] / s.v[i];
        vlog[i] = r1 * r1;
    }
    r.eta_total = trapz(eta, g);
    r.mass_def = trapz(vm1, g);
    r.momentum = trapz(s.u, g);
    r.energy_def = trapz(em, g);
    r.alpha_fn = trapz(alpha_d, g) + 1.0;
    r.vlog_grad = trapz(vlog, g);

    r.v_min = field_min(s.v);
    r.v_max = field_max(s.v);
    r.theta_min = field_min(s.theta);
    r.theta_max = field_max(s.theta);

    const auto hv = hk_seminorms(vm1, g, 3);
    const auto hu = hk_seminorms(s.u, g, 3);
    Field thm1(n);
    for (int i = 0; i < n; ++i) thm1[i] = s.theta[i] - 1.0;
    const auto hth = hk_seminorms(thm1, g, 3);
    r.h1_v = hv[1];
    r.h2_v = hv[2];
    r.h3_v = hv[3];
    r.h1_u = hu[1];
    r.h2_u = hu[2];
    r.h3_u = hu[3];
    r.h1_th = hth[1];
    r.h2_th = hth[2];
    r.h3_th = hth[3];

    const DissipationSplit d = dissipation_rates(s, p);
    r.dissipation_rate = d.total();
    r.diss_rate_mass = d.mass;
    r.diss_rate_visc = d.visc;
    r.diss_rate_heat = d.heat;

    if (prev) {
        const double half_dt = 0.5 * (r.t - prev->t);
        r.dissipation_cum = prev->dissipation_cum +
                            half_dt * (prev->dissipation_rate + r.dissipation_rate);
        r.diss_cum_mass =
            prev->diss_cum_mass + half_dt * (prev->diss_rate_mass + r.diss_rate_mass);
        r.diss_cum_visc =
            prev->diss_cum_visc + half_dt * (prev->diss_rate_visc + r.diss_rate_visc);
        r.diss_cum_heat =
            prev->diss_cum_heat + half_dt * (prev->diss_rate_heat + r.diss_rate_heat);
        r.eta0 = prev->eta0;
    } else {
        r.eta0 = r.eta_total;
    }
    r.balance_residual = std::abs(r.eta_total + r.dissipation_cum - r.eta0);
    return r;
}

BalanceReport balance_check(const Trajectory& traj, double tol) {
    BalanceReport rep;
    if (traj.empty()) {
        rep.pass = true;
        return rep;
    }
    rep.e0 = traj.front().diag.eta0;
    for (const auto& s : traj.samples)
        rep.max_residual = std::max(rep.max_residual, s.diag.balance_residual);
    rep.pass = rep.max_residual <= tol * std::max(rep.e0, 1e-15);
    return rep;
}

ConservationReport conservation_check(const Trajectory& traj, double tol) {
    ConservationReport rep;
    if (traj.samples.size() < 2) {
        rep.mass_pass = rep.momentum_pass = rep.energy_pass = rep.pass = true;
        return rep;
    }
    const auto& first = traj.front().diag;
    const double span = traj.back().diag.t - first.t;
    double dm = 0.0, dp = 0.0, de = 0.0;
    for (const auto& s : traj.samples) {
        dm = std::max(dm, std::abs(s.diag.mass_def - first.mass_def));
        dp = std::max(dp, std::abs(s.diag.momentum - first.momentum));
        de = std::max(de, std::abs(s.diag.energy_def - first.energy_def));
    }
    const double inv_span = span > 0.0 ? 1.0 / span : 0.0;
    rep.mass_drift = dm * inv_span;
    rep.momentum_drift = dp * inv_span;
    rep.energy_drift = de * inv_span;
    rep.mass_pass = rep.mass_drift <= tol;
    rep.momentum_pass = rep.momentum_drift <= tol;
    rep.energy_pass = rep.energy_drift <= tol;
    rep.pass = rep.mass_pass && rep.momentum_pass && rep.energy_pass;
    return rep;
}

namespace {

// One snapshot's contributions to a level-set energy: the spatial integral of
// the squared truncation and the weighted gradient integral. The truncation
// gradient follows the a.e. chain rule 1_{active} * v_x.
struct LevelTerms {
    double mass = 0.0; // int truncation^2 dx
    double grad = 0.0; // int indicator * weighted gradient^2 dx
};

template <typename TruncFn, typename ActiveFn, typename GradFn>
LevelTerms level_terms(const State& s, TruncFn trunc, ActiveFn active, GradFn gradw) {
    const Grid& g = s.grid;
    const Field vx = d1(s.v, g);
    Field t2(g.n), gr(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double tr = trunc(s.v[i]);
        t2[i] = tr * tr;
        gr[i] = active(s.v[i]) ? gradw(s.v[i], vx[i]) : 0.0;
    }
    return {trapz(t2, g), trapz(gr, g)};
}

template <typename TruncFn, typename ActiveFn, typename GradFn>
double level_set_energy(const Trajectory& traj, TruncFn trunc, ActiveFn active,
                        GradFn gradw) {
    double sup_mass = 0.0, time_int = 0.0, prev_grad = 0.0, prev_t = 0.0;
    bool have_prev = false;
    for (const auto& s : traj.samples) {
        const LevelTerms lt = level_terms(s.state, trunc, active, gradw);
        sup_mass = std::max(sup_mass, lt.mass);
        if (have_prev) time_int += 0.5 * (s.state.t - prev_t) * (prev_grad + lt.grad);
        prev_grad = lt.grad;
        prev_t = s.state.t;
        have_prev = true;
    }
    return sup_mass + time_int;
}

} // namespace

double level_set_energy_upper(const Trajectory& traj, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("level_set_energy_upper: c <= 0");
    return level_set_energy(
        traj, [c](double v) { return std::max(v - c, 0.0); },
        [c](double v) { return v > c; },
        [](double v, double vx) { return vx * vx / v; });
}

double level_set_energy_lower(const Trajectory& traj, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("level_set_energy_lower: c <= 0");
    const double vcut = 1.0 / (c * c);
    return level_set_energy(
        traj, [c](double v) { return std::max(1.0 / std::sqrt(v) - c, 0.0); },
        [vcut](double v) { return v <= vcut; },
        [](double v, double vx) { return vx * vx / (v * v * v * v); });
}

LadderReport degiorgi_ladder(const Trajectory& traj, LadderSide side, double L, int K) {
    if (!(L > 0.0)) throw std::invalid_argument("degiorgi_ladder: L <= 0");
    if (K < 2) throw std::invalid_argument("degiorgi_ladder: K < 2");

    LadderReport rep;
    rep.L = L;
    rep.side = side;

    // the truncation must vanish somewhere: some node sits below c_0 = L/2
    for (const auto& s : traj.samples) {
        double low;
        if (side == LadderSide::upper)
            low = field_min(s.state.v);
        else
            low = 1.0 / std::sqrt(field_max(s.state.v));
        if (!(low <= 0.5 * L))
            throw std::runtime_error(
                "degiorgi_ladder: no node below the base level c_0 = L/2 at t = " +
                std::to_string(s.state.t));
    }

    for (int k = 0; k <= K; ++k) {
        const double c = L * (1.0 - std::pow(2.0, -k - 1));
        rep.levels.push_back(c);
        rep.energies.push_back(side == LadderSide::upper
                                   ? level_set_energy_upper(traj, c)
                                   : level_set_energy_lower(traj, c));
    }
    rep.monotone = true;
    for (int k = 1; k <= K; ++k)
        if (rep.energies[k] > rep.energies[k - 1] * (1.0 + 1e-12) + 1e-300)
            rep.monotone = false;
    rep.terminal_ratio =
        rep.energies[0] > 0.0 ? rep.energies[K] / rep.energies[0] : 0.0;
    return rep;
}

ThetaMinReport theta_min_bound(const Trajectory& traj, double tol) {
    ThetaMinReport rep;
    if (traj.empty()) {
        rep.pass = true;
        return rep;
    }
    const Params& p = traj.params;
    const double slope = (p.gamma - 1.0) * p.R / (4.0 * p.mu);
    double integral = 0.0, prev_inv_vmin = 0.0, prev_t = 0.0;
    bool first = true;
    double bound0 = 0.0;
    for (const auto& s : traj.samples) {
        const double inv_vmin = 1.0 / s.diag.v_min;
        if (first) {
            bound0 = std::max(1.0 / s.diag.theta_min, 1.0);
            first = false;
        } else {
            integral += 0.5 * (s.diag.t - prev_t) * (prev_inv_vmin + inv_vmin);
        }
        prev_inv_vmin = inv_vmin;
        prev_t = s.diag.t;
        const double lhs = std::max(1.0 / s.diag.theta_min, 1.0);
        const double bound = bound0 + slope * integral;
        rep.bound_curve.push_back(bound);
        rep.inv_theta_min.push_back(lhs);
        if (lhs - bound > rep.max_violation) {
            rep.max_violation = lhs - bound;
            rep.worst_t = s.diag.t;
        }
    }
    rep.pass = rep.max_violation <= tol;
    return rep;
}

bool nonlinearization_check(const Field& v, double a, double b) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("nonlinearization_check: need 0 < a < b");
    const double coef = b / ((b - a) * (b - a));
    for (double vi : v) {
        if (vi < b) continue;
        const double trunc = std::max(vi - a, 0.0);
        if (vi > coef * trunc * trunc + 1e-12) return false;
    }
    return true;
}

AlphaSeries higher_integrability_monitor(const Trajectory& traj, double M_weight) {
    if (!(M_weight > 0.0))
        throw std::invalid_argument("higher_integrability_monitor: M_weight <= 0");
    AlphaSeries out;
    for (const auto& s : traj.samples) {
        const Grid& g = s.state.grid;
        const double c0 = traj.params.R / (traj.params.gamma - 1.0);
        Field d(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double edef =
                c0 * (s.state.theta[i] - 1.0) + 0.5 * s.state.u[i] * s.state.u[i];
            const double u2 = s.state.u[i] * s.state.u[i];
            d[i] = 0.5 * edef * edef + 0.25 * M_weight * u2 * u2;
        }
        const double alpha = trapz(d, g) + 1.0;
        out.t.push_back(s.state.t);
        out.alpha.push_back(alpha);
        out.max_alpha = std::max(out.max_alpha, alpha);
    }
    return out;
}

std::vector<CheckResult> evaluate_certification(const Trajectory& traj,
                                                const CertifyTols& tols) {
    std::vector<CheckResult> checks;

    const BalanceReport bal = balance_check(traj, tols.balance_tol);
    checks.push_back({"entropy_balance", bal.pass,
                      bal.max_residual / std::max(bal.e0, 1e-15), tols.balance_tol});

    const ConservationReport cons = conservation_check(traj, tols.conservation_tol);
    checks.push_back({"conservation_mass", cons.mass_pass, cons.mass_drift,
                      tols.conservation_tol});
    checks.push_back({"conservation_momentum", cons.momentum_pass, cons.momentum_drift,
                      tols.conservation_tol});
    checks.push_back({"conservation_energy", cons.energy_pass, cons.energy_drift,
                      tols.conservation_tol});

    double v_max_obs = 0.0, w_max_obs = 0.0, v_min_obs = 0.0, th_min_obs = 0.0;
    double max_alpha_ratio = 0.0;
    if (!traj.empty()) {
        v_min_obs = traj.front().diag.v_min;
        th_min_obs = traj.front().diag.theta_min;
        for (const auto& s : traj.samples) {
            v_max_obs = std::max(v_max_obs, s.diag.v_max);
            w_max_obs = std::max(w_max_obs, 1.0 / std::sqrt(s.diag.v_min));
            v_min_obs = std::min(v_min_obs, s.diag.v_min);
            th_min_obs = std::min(th_min_obs, s.diag.theta_min);
            for (double a : s.report.ratios)
                max_alpha_ratio = std::max(max_alpha_ratio, a);
        }
    }

    if (!traj.empty()) {
        const LadderReport up =
            degiorgi_ladder(traj, LadderSide::upper, tols.ladder_L_factor * v_max_obs,
                            tols.ladder_K);
        const bool up_pass =
            up.monotone &&
            up.energies.back() <= tols.ladder_terminal_tol * up.energies.front();
        checks.push_back({"degiorgi_upper", up_pass, up.terminal_ratio,
                          tols.ladder_terminal_tol});

        const LadderReport lo =
            degiorgi_ladder(traj, LadderSide::lower, tols.ladder_L_factor * w_max_obs,
                            tols.ladder_K);
        const bool lo_pass =
            lo.monotone &&
            lo.energies.back() <= tols.ladder_terminal_tol * lo.energies.front();
        checks.push_back({"degiorgi_lower", lo_pass, lo.terminal_ratio,
                          tols.ladder_terminal_tol});
    }

    const ThetaMinReport th = theta_min_bound(traj, tols.theta_tol);
    checks.push_back({"theta_min_envelope", th.pass, th.max_violation, tols.theta_tol});

    checks.push_back({"positivity", std::min(v_min_obs, th_min_obs) > 0.0,
                      std::min(v_min_obs, th_min_obs), 0.0});

    checks.push_back({"no_dt_retries", traj.retry_steps == 0,
                      static_cast<double>(traj.retry_steps), 0.0});

    checks.push_back({"contraction", max_alpha_ratio < 1.0, max_alpha_ratio, 1.0});

    return checks;
}

} // namespace bnsf
