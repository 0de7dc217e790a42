#include "bnsf/model.hpp"

#include <cmath>

#include "bnsf/grid_ops.hpp"

namespace bnsf {

void Params::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("Params: R must be > 0");
    if (!(gamma > 1.0)) throw std::invalid_argument("Params: gamma must be > 1");
    if (!(mu > 0.0)) throw std::invalid_argument("Params: mu must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("Params: kappa must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("Params: tau must be >= 0");
    if (!std::isfinite(cp())) throw std::invalid_argument("Params: c_p not finite");
}

double pressure(const ScalarPoint& pt, const Params& p) {
    if (!(pt.v > 0.0)) throw std::domain_error("pressure: v <= 0");
    return p.R * pt.theta / pt.v;
}

double total_energy(const ScalarPoint& pt, const Params& p) {
    return p.R * pt.theta / (p.gamma - 1.0) + 0.5 * pt.u * pt.u;
}

double phi(double z) {
    if (!(z > 0.0)) throw std::domain_error("phi: z <= 0");
    return z - 1.0 - std::log(z);
}

double relative_entropy_density(const ScalarPoint& pt, const Params& p) {
    if (!(pt.v > 0.0) || !(pt.theta > 0.0))
        throw std::domain_error("relative_entropy_density: nonpositive v or theta");
    return p.R * phi(pt.v) + p.R / (p.gamma - 1.0) * phi(pt.theta) + 0.5 * pt.u * pt.u;
}

double mass_velocity(double u_v, double v, double v_x, const Params& p) {
    if (!(v > 0.0)) throw std::domain_error("mass_velocity: v <= 0");
    return u_v + p.kappa / p.cp() * (v_x / v);
}

double entropy_dissipation_density(const ScalarPoint& pt, double v_x, double u_x,
                                   double theta_x, const Params& p) {
    if (!(pt.v > 0.0) || !(pt.theta > 0.0))
        throw std::domain_error("entropy_dissipation_density: nonpositive v or theta");
    const double v = pt.v, th = pt.theta;
    return p.tau * p.R * v_x * v_x / (v * v * v) + p.mu * u_x * u_x / (v * th) +
           p.kappa * theta_x * theta_x / (v * th * th);
}

Rhs rhs(const State& s, const Params& p) {
    check_positivity(s);
    const Grid& g = s.grid;
    const int n = g.n;

    const Field ux = d1(s.u, g);
    Field pfield(n);
    for (int i = 0; i < n; ++i) pfield[i] = p.R * s.theta[i] / s.v[i];
    const Field px = d1(pfield, g);

    Rhs out;
    out.v_t = ux;
    if (p.tau != 0.0) {
        const Field dv = div_flux_diffusion(s.v, s.v, g);
        for (int i = 0; i < n; ++i) out.v_t[i] += p.tau * dv[i];
    }

    const Field du = div_flux_diffusion(s.u, s.v, g);
    out.u_t.resize(n);
    for (int i = 0; i < n; ++i) out.u_t[i] = -px[i] + p.mu * du[i];

    const Field dth = div_flux_diffusion(s.theta, s.v, g);
    out.theta_t.resize(n);
    const double c = (p.gamma - 1.0) / p.R;
    for (int i = 0; i < n; ++i)
        out.theta_t[i] =
            c * (-pfield[i] * ux[i] + p.kappa * dth[i] + p.mu * ux[i] * ux[i] / s.v[i]);

    if (!g.is_periodic()) {
        // pinned background boundary
        out.v_t[0] = out.v_t[n - 1] = 0.0;
        out.u_t[0] = out.u_t[n - 1] = 0.0;
        out.theta_t[0] = out.theta_t[n - 1] = 0.0;
    }
    return out;
}

} // namespace bnsf
