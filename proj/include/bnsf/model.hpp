#pragma once

#include "bnsf/state.hpp"

namespace bnsf {

// Physical constants of the ideal polytropic gas with bi-velocity diffusion.
// tau = 0 selects the classical single-velocity system.
struct Params {
    double R = 1.0;     // gas constant, > 0
    double gamma = 1.4; // adiabatic constant, > 1
    double tau = 1.0;   // mass-equation diffusion coefficient, >= 0
    double mu = 1.0;    // viscosity, > 0
    double kappa = 1.0; // heat conductivity, > 0

    double cp() const { return gamma * R / (gamma - 1.0); }

    // tau matching the constitutive coupling kappa/c_p between the two
    // velocity fields; tau is otherwise an independent knob.
    double tau_consistent() const { return kappa / cp(); }

    void validate() const;
};

struct ScalarPoint {
    double v = 1.0;
    double u = 0.0;
    double theta = 1.0;
};

// p = R theta / v
double pressure(const ScalarPoint& pt, const Params& p);

// E = R theta / (gamma - 1) + u^2 / 2
double total_energy(const ScalarPoint& pt, const Params& p);

// Phi(z) = z - 1 - log z; nonnegative, zero only at z = 1.
double phi(double z);

// eta(U | background) = R Phi(v) + R/(gamma-1) Phi(theta) + u^2/2
double relative_entropy_density(const ScalarPoint& pt, const Params& p);

// u_m = u_v + (kappa/c_p) (v_x / v)
double mass_velocity(double u_v, double v, double v_x, const Params& p);

// tau R v_x^2/v^3 + mu u_x^2/(v theta) + kappa theta_x^2/(v theta^2)
double entropy_dissipation_density(const ScalarPoint& pt, double v_x, double u_x,
                                   double theta_x, const Params& p);

struct Rhs {
    Field v_t, u_t, theta_t;
};

// Semidiscrete right-hand sides of
//   v_t  = u_x + tau ((v_x)/v)_x
//   u_t  = -p_x + mu ((u_x)/v)_x
//   th_t = (gamma-1)/R (-p u_x + kappa ((th_x)/v)_x + mu u_x^2 / v)
// built from the d1 / div_flux_diffusion operators. Dirichlet boundary nodes
// are constrained to the background state, so their rates are zero.
Rhs rhs(const State& s, const Params& p);

} // namespace bnsf
