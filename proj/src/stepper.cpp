#include "bnsf/stepper.hpp"

#include <cmath>
#include <optional>

#include "bnsf/grid_ops.hpp"
#include "bnsf/tridiag.hpp"

namespace bnsf {

void StepConfig::validate() const {
    if (!(dt_min > 0.0) || !(dt >= dt_min))
        throw std::invalid_argument("StepConfig: need dt >= dt_min > 0");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("StepConfig: picard_tol <= 0");
    if (picard_max < 1) throw std::invalid_argument("StepConfig: picard_max < 1");
}

namespace {

// Backward-Euler system (c0/dt) x - coef L_w(x) = rhs with the conservative
// diffusion stencil frozen at weights w. Dirichlet rows pin boundary values.
Tridiag assemble_diffusion(const Field& w, const Grid& g, double c0_over_dt,
                           double coef, const Field& rhs, double pin) {
    const int n = g.n;
    const double inv_h2 = 1.0 / (g.h * g.h);
    Tridiag sys;
    sys.resize(n);
    sys.periodic = g.is_periodic();

    auto face = [&](int l, int r) {
        return coef * inv_h2 / face_weight(w[l], w[r], g.face_mean);
    };

    const int lo = sys.periodic ? 0 : 1;
    const int hi = sys.periodic ? n - 1 : n - 2;
    for (int i = lo; i <= hi; ++i) {
        const int im = (i == 0) ? n - 1 : i - 1;
        const int ip = (i == n - 1) ? 0 : i + 1;
        const double a = face(i, ip); // coupling to i+1 side
        const double b = face(im, i); // coupling to i-1 side
        sys.diag[i] = c0_over_dt + a + b;
        sys.rhs[i] = rhs[i];
        if (sys.periodic && i == 0) {
            sys.sup[i] = -a;
            sys.top_right = -b;
        } else if (sys.periodic && i == n - 1) {
            sys.sub[i] = -b;
            sys.bottom_left = -a;
        } else {
            sys.sub[i] = -b;
            sys.sup[i] = -a;
        }
    }
    if (!sys.periodic) {
        sys.diag[0] = 1.0;
        sys.rhs[0] = pin;
        sys.diag[n - 1] = 1.0;
        sys.rhs[n - 1] = pin;
    }
    return sys;
}

} // namespace

State linearized_sweep(const State& frozen, const State& base, double dt,
                       const Params& p) {
    if (!frozen.grid.same_as(base.grid))
        throw std::invalid_argument("linearized_sweep: grid mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("linearized_sweep: dt <= 0");
    check_positivity(frozen);

    const Grid& g = frozen.grid;
    const int n = g.n;
    const double inv_dt = 1.0 / dt;

    State out;
    out.t = base.t;
    out.grid = g;

    // v' : (v' - v)/dt - tau ((v'_x)/vf)_x = d1(uf)
    {
        const Field ufx = d1(frozen.u, g);
        Field rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = base.v[i] * inv_dt + ufx[i];
        out.v = thomas_solve(assemble_diffusion(frozen.v, g, inv_dt, p.tau, rhs, 1.0));
    }

    // u' : (u' - u)/dt - mu ((u'_x)/vf)_x = -R d1(thf/vf)
    Field q(n); // thf / vf
    for (int i = 0; i < n; ++i) q[i] = frozen.theta[i] / frozen.v[i];
    {
        const Field qx = d1(q, g);
        Field rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = base.u[i] * inv_dt - p.R * qx[i];
        out.u = thomas_solve(assemble_diffusion(frozen.v, g, inv_dt, p.mu, rhs, 0.0));
    }

    // th' : c0 (th' - th)/dt - kappa ((th'_x)/vf)_x = -R q d1(ub) + mu PhiF
    // with ub = (u' + u)/2. The pressure work and the face-form viscous
    // heating are the discrete duals of the u' update, so the total energy
    // sum telescopes exactly.
    {
        const double c0 = p.R / (p.gamma - 1.0);
        Field ubar(n);
        for (int i = 0; i < n; ++i) ubar[i] = 0.5 * (out.u[i] + base.u[i]);
        const Field ubx = d1(ubar, g);

        const double inv_h2 = 1.0 / (g.h * g.h);
        const int nfaces = g.is_periodic() ? n : n - 1;
        Field face_heat(nfaces);
        for (int k = 0; k < nfaces; ++k) {
            const int kp = (k + 1 == n) ? 0 : k + 1;
            const double wf = face_weight(frozen.v[k], frozen.v[kp], g.face_mean);
            face_heat[k] = (out.u[kp] - out.u[k]) * (ubar[kp] - ubar[k]) * inv_h2 / wf;
        }

        Field rhs(n);
        for (int i = 0; i < n; ++i) {
            double heat;
            if (g.is_periodic()) {
                const int im = (i == 0) ? n - 1 : i - 1;
                heat = 0.5 * (face_heat[im] + face_heat[i]);
            } else if (i == 0 || i == n - 1) {
                heat = 0.0;
            } else {
                heat = 0.5 * (face_heat[i - 1] + face_heat[i]);
            }
            rhs[i] = c0 * base.theta[i] * inv_dt - p.R * q[i] * ubx[i] + p.mu * heat;
        }
        out.theta =
            thomas_solve(assemble_diffusion(frozen.v, g, c0 * inv_dt, p.kappa, rhs, 1.0));
    }
    return out;
}

double contraction_metric(const State& a, const State& b, const Params& p) {
    if (!a.grid.same_as(b.grid))
        throw std::invalid_argument("contraction_metric: grid mismatch");
    const Grid& g = a.grid;
    const int n = g.n;
    Field dv(n), du(n), dth(n);
    for (int i = 0; i < n; ++i) {
        dv[i] = a.v[i] - b.v[i];
        du[i] = a.u[i] - b.u[i];
        dth[i] = a.theta[i] - b.theta[i];
    }
    const double wth = std::sqrt(p.R / (p.gamma - 1.0));
    return l2_norm(dv, g) + l2_norm(du, g) + wth * l2_norm(dth, g);
}

namespace {

std::optional<StepResult> try_step(const State& base, double dt, const StepConfig& cfg,
                                   const Params& p) {
    const int limit = cfg.fixed_sweeps > 0 ? cfg.fixed_sweeps : cfg.picard_max;
    State prev = base;
    StepReport rep;
    double x1 = 0.0, x_last = 0.0;
    bool converged = false;

    for (int m = 1; m <= limit; ++m) {
        State next = linearized_sweep(prev, base, dt, p);
        if (!is_positive(next, cfg.positivity_floor)) return std::nullopt;
        const double xm = contraction_metric(next, prev, p);
        if (!std::isfinite(xm)) return std::nullopt;
        if (m == 1)
            x1 = xm;
        else
            rep.ratios.push_back(x_last > 0.0 ? xm / x_last : 0.0);
        rep.sweeps = m;
        rep.final_residual = xm;
        x_last = xm;
        prev = std::move(next);
        if (cfg.fixed_sweeps == 0 && xm <= cfg.picard_tol * (1.0 + x1)) {
            converged = true;
            break;
        }
    }
    if (cfg.fixed_sweeps == 0 && !converged) return std::nullopt;

    StepResult res;
    res.state = std::move(prev);
    res.state.t = base.t + dt;
    res.report = std::move(rep);
    res.report.dt_used = dt;
    return res;
}

} // namespace

StepResult picard_advance(const State& base, const StepConfig& cfg, const Params& p) {
    cfg.validate();
    p.validate();
    check_positivity(base, cfg.positivity_floor);

    double dt = cfg.dt;
    for (;;) {
        auto res = try_step(base, dt, cfg, p);
        if (res) return std::move(*res);
        dt *= 0.5;
        if (dt < cfg.dt_min)
            throw NoConvergence("picard_advance: no converged positive state above the "
                                "dt floor at t = " +
                                    std::to_string(base.t),
                                base.t, dt * 2.0);
    }
}

} // namespace bnsf
