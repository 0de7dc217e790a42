#pragma once

#include "bnsf/model.hpp"

namespace bnsf {

struct StepConfig {
    double dt = 1e-3;
    double picard_tol = 1e-10;
    int picard_max = 50;
    double dt_min = 1e-12;          // floor for adaptive halving
    double positivity_floor = 1e-12; // smallest admissible nodal v, theta
    int fixed_sweeps = 0;            // > 0: run exactly that many sweeps
                                     // (1 = cheap semi-implicit variant)
    void validate() const;
};

struct StepReport {
    int sweeps = 0;
    std::vector<double> ratios; // alpha_m = X(U^m,U^{m-1}) / X(U^{m-1},U^{m-2})
    double final_residual = 0.0; // X of the last two iterates
    double dt_used = 0.0;        // actual step after any halving
};

// One pass of the linearized implicit solve: three decoupled backward-Euler
// tridiagonal systems with diffusion coefficients frozen at `frozen` and the
// time level anchored at `base`:
//   (v' - base.v)/dt - tau ((v'_x)/vf)_x = d1(uf)
//   (u' - base.u)/dt - mu  ((u'_x)/vf)_x = -R d1(thf/vf)
//   R/(g-1) (th' - base.th)/dt - kappa ((th'_x)/vf)_x
//        = -R (thf/vf) d1(ub) + mu PhiF(u', ub; vf),   ub = (u' + base.u)/2
// where PhiF is the face-averaged viscous heating built from the same face
// weights as the u' system. This dual pairing of the work terms makes the
// discrete totals of v, u and R th/(g-1) + u^2/2 telescope exactly on
// periodic grids, independent of how far the Picard iteration has converged.
State linearized_sweep(const State& frozen, const State& base, double dt,
                       const Params& p);

// Sum of the three weighted L2 norms of the field differences:
//   ||a.v - b.v||_2 + ||a.u - b.u||_2 + sqrt(R/(gamma-1)) ||a.th - b.th||_2.
// Zero iff the states agree nodewise; symmetric.
double contraction_metric(const State& a, const State& b, const Params& p);

struct StepResult {
    State state;
    StepReport report;
};

// Picard-iterates linearized_sweep from U^0 = base until
//   X(U^m, U^{m-1}) <= picard_tol (1 + X(U^1, base)),
// halving dt on positivity loss or sweep exhaustion, down to dt_min.
// Throws NoConvergence when dt_min is reached without a converged positive
// state.
StepResult picard_advance(const State& base, const StepConfig& cfg, const Params& p);

} // namespace bnsf
