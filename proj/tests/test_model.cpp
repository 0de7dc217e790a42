#include <cmath>

#include <doctest.h>

#include "bnsf/grid_ops.hpp"
#include "bnsf/model.hpp"

using namespace bnsf;

namespace {

Params unit_params() {
    Params p;
    p.R = 1.0;
    p.gamma = 2.0;
    p.tau = 1.0;
    p.mu = 1.0;
    p.kappa = 1.0;
    return p;
}

} // namespace

TEST_CASE("params validation and derived quantities") {
    Params p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.cp() == doctest::Approx(1.4 / 0.4));
    CHECK(p.tau_consistent() == doctest::Approx(0.4 / 1.4));

    Params bad = p;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.mu = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.tau = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("pressure law") {
    Params p = unit_params();
    CHECK(pressure({1.0, 0.0, 1.0}, p) == doctest::Approx(1.0));
    CHECK(pressure({2.0, 0.0, 1.0}, p) == doctest::Approx(0.5));
    Params air = p;
    air.R = 8.314;
    // 8.314 * 2 / 0.5
    CHECK(pressure({0.5, 0.0, 2.0}, air) == doctest::Approx(33.256).epsilon(1e-12));
    CHECK_THROWS_AS(pressure({0.0, 0.0, 1.0}, p), std::domain_error);
    CHECK_THROWS_AS(pressure({-1.0, 0.0, 1.0}, p), std::domain_error);
}

TEST_CASE("total energy") {
    Params p = unit_params(); // gamma = 2
    CHECK(total_energy({1.0, 0.0, 1.0}, p) == doctest::Approx(1.0));
    CHECK(total_energy({1.0, 2.0, 1.0}, p) == doctest::Approx(3.0));
    Params q;
    q.R = 2.0;
    q.gamma = 1.4;
    // 2*3/0.4 + 0.5
    CHECK(total_energy({1.0, 1.0, 3.0}, q) == doctest::Approx(15.5));
}

TEST_CASE("phi: convex distance to 1") {
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(phi(0.5) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-15));
    CHECK_THROWS_AS(phi(0.0), std::domain_error);
    CHECK_THROWS_AS(phi(-3.0), std::domain_error);

    // nonnegative with the unique zero at z = 1
    for (double z = 0.01; z < 8.0; z += 0.01) {
        CHECK(phi(z) >= 0.0);
        if (std::abs(z - 1.0) > 1e-9) CHECK(phi(z) > 0.0);
    }
}

TEST_CASE("phi: linear lower bounds away from 1") {
    // min of phi(z)/z on [2, inf) sits at z = 2: (1 - log 2)/2 = 0.1534
    for (double z = 2.0; z < 1e6; z *= 1.17) CHECK(phi(z) >= 0.15 * z);
    CHECK(phi(1e6) >= 0.15 * 1e6);
    // phi decreasing on (0,1): min over (0, 0.5] at z = 0.5: 0.1931
    for (double z = 1e-8; z <= 0.5; z = std::min(z * 1.31, 0.5)) {
        CHECK(phi(z) >= 0.19);
        if (z == 0.5) break;
    }
}

TEST_CASE("phi: locally quadratic on [0.5, 2]") {
    // bounds on phi(z)/(z-1)^2 over the interval: [0.3068 at z=2, 0.7726 at z=0.5]
    for (int i = 0; i <= 1500; ++i) {
        const double z = 0.5 + 1.5 * i / 1500.0;
        const double q = (z - 1.0) * (z - 1.0);
        CHECK(phi(z) >= 0.15 * q);
        CHECK(phi(z) <= 1.0 * q);
    }
}

TEST_CASE("relative entropy density") {
    Params p = unit_params(); // gamma = 2
    CHECK(relative_entropy_density({1.0, 0.0, 1.0}, p) == 0.0);
    CHECK(relative_entropy_density({1.0, 1.0, 1.0}, p) == doctest::Approx(0.5));
    CHECK(relative_entropy_density({2.0, 0.0, 1.0}, p) ==
          doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(relative_entropy_density({-1.0, 0.0, 1.0}, p), std::domain_error);
    CHECK_THROWS_AS(relative_entropy_density({1.0, 0.0, 0.0}, p), std::domain_error);

    // nonnegative, zero only at the background
    for (double v = 0.2; v < 3.0; v += 0.13)
        for (double th = 0.2; th < 3.0; th += 0.17) {
            const double e = relative_entropy_density({v, 0.3, th}, p);
            CHECK(e > 0.0);
        }
}

TEST_CASE("mass velocity from the constitutive coupling") {
    Params p = unit_params(); // gamma = 2, R = 1, kappa = 1 -> c_p = 2
    CHECK(mass_velocity(5.0, 1.0, 0.0, p) == doctest::Approx(5.0));
    CHECK(mass_velocity(0.0, 1.0, 2.0, p) == doctest::Approx(1.0));
    Params q;
    q.R = 1.0;
    q.gamma = 1.4;
    q.kappa = 2.0; // c_p = 3.5
    CHECK(mass_velocity(1.0, 2.0, -4.0, q) == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
    CHECK_THROWS_AS(mass_velocity(1.0, 0.0, 1.0, p), std::domain_error);
}

TEST_CASE("entropy dissipation density") {
    Params p = unit_params();
    CHECK(entropy_dissipation_density({1.0, 0.0, 1.0}, 0.0, 0.0, 0.0, p) == 0.0);
    CHECK(entropy_dissipation_density({1.0, 0.0, 1.0}, 1.0, 1.0, 1.0, p) ==
          doctest::Approx(3.0));
    CHECK(entropy_dissipation_density({2.0, 0.0, 1.0}, 2.0, 0.0, 0.0, p) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(entropy_dissipation_density({0.0, 0.0, 1.0}, 0, 0, 0, p),
                    std::domain_error);

    // nonnegative for arbitrary gradients
    for (double vx = -3; vx <= 3; vx += 0.7)
        for (double ux = -3; ux <= 3; ux += 0.9)
            CHECK(entropy_dissipation_density({0.7, 0.1, 1.3}, vx, ux, 0.4, p) >= 0.0);
}

TEST_CASE("rhs: background is a steady state") {
    Params p;
    for (Bc bc : {Bc::periodic, Bc::dirichlet_background}) {
        const Grid g(65, 0.25, bc);
        const State s = State::background(g);
        const Rhs r = rhs(s, p);
        for (int i = 0; i < g.n; ++i) {
            CHECK(r.v_t[i] == 0.0);
            CHECK(r.u_t[i] == 0.0);
            CHECK(r.theta_t[i] == 0.0);
        }
    }
}

TEST_CASE("rhs: positivity is a hard error") {
    Params p;
    const Grid g(17, 0.1, Bc::periodic);
    State s = State::background(g);
    s.v[4] = -0.2;
    CHECK_THROWS_AS(rhs(s, p), PositivityError);
    s = State::background(g);
    s.theta[9] = 0.0;
    CHECK_THROWS_AS(rhs(s, p), PositivityError);
}

namespace {

// manufactured profile v = 1 + 0.1 sin(kx), u = 0, theta = 1 on a periodic grid;
// closed-form rates:
//   v_t  = tau (v_xx / v - (v_x / v)^2)
//   u_t  = R * 0.1 k cos(kx) / v^2
//   th_t = 0
double manufactured_linf_error(int n, const Params& p) {
    const double L = 1.0;
    const Grid g = Grid::periodic(n, L);
    const double k = 2.0 * M_PI / L;
    State s = State::background(g);
    for (int i = 0; i < n; ++i) s.v[i] = 1.0 + 0.1 * std::sin(k * g.x(i));
    const Rhs r = rhs(s, p);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g.x(i);
        const double v = 1.0 + 0.1 * std::sin(k * x);
        const double vx = 0.1 * k * std::cos(k * x);
        const double vxx = -0.1 * k * k * std::sin(k * x);
        const double vt = p.tau * (vxx / v - vx * vx / (v * v));
        const double ut = p.R * vx / (v * v);
        err = std::max(err, std::abs(r.v_t[i] - vt));
        err = std::max(err, std::abs(r.u_t[i] - ut));
        err = std::max(err, std::abs(r.theta_t[i]));
    }
    return err;
}

} // namespace

TEST_CASE("rhs: manufactured sinusoid converges at second order") {
    Params p;
    const double e1 = manufactured_linf_error(64, p);
    const double e2 = manufactured_linf_error(128, p);
    const double e3 = manufactured_linf_error(256, p);
    CHECK(std::log2(e1 / e2) > 1.9);
    CHECK(std::log2(e2 / e3) > 1.9);
}

TEST_CASE("rhs: theta_t vanishes identically for constant theta, zero u") {
    Params p;
    const Grid g = Grid::periodic(128, 1.0);
    State s = State::background(g);
    for (int i = 0; i < g.n; ++i) s.v[i] = 1.0 + 0.1 * std::sin(2.0 * M_PI * g.x(i));
    const Rhs r = rhs(s, p);
    for (int i = 0; i < g.n; ++i) CHECK(r.theta_t[i] == 0.0);
}

TEST_CASE("rhs: tau term is exactly the standalone diffusion operator") {
    // u = 0 makes d1(u) = 0 bitwise, so the tau on/off difference must equal
    // the diffusion stencil output bit for bit
    Params p1;
    p1.tau = 1.0;
    Params p0 = p1;
    p0.tau = 0.0;
    const Grid g = Grid::periodic(128, 1.0);
    State s = State::background(g);
    for (int i = 0; i < g.n; ++i) s.v[i] = 1.0 + 0.1 * std::sin(2.0 * M_PI * g.x(i));

    const Rhs r1 = rhs(s, p1);
    const Rhs r0 = rhs(s, p0);
    const Field diff = div_flux_diffusion(s.v, s.v, g);
    for (int i = 0; i < g.n; ++i) {
        CHECK(r1.v_t[i] - r0.v_t[i] == diff[i]);
        CHECK(r1.u_t[i] == r0.u_t[i]);
    }
}

TEST_CASE("rhs: coefficient additivity on a general state") {
    Params full;
    full.tau = 0.8;
    full.mu = 1.3;
    full.kappa = 0.6;
    const Grid g = Grid::periodic(96, 2.0);
    State s = State::background(g);
    for (int i = 0; i < g.n; ++i) {
        const double x = 2.0 * M_PI * g.x(i) / g.length();
        s.v[i] = 1.0 + 0.3 * std::sin(x);
        s.u[i] = 0.2 * std::cos(2.0 * x);
        s.theta[i] = 1.0 + 0.1 * std::sin(3.0 * x);
    }
    const Rhs r = rhs(s, full);

    Params no_tau = full;
    no_tau.tau = 0.0;
    const Rhs rt = rhs(s, no_tau);
    const Field dv = div_flux_diffusion(s.v, s.v, g);
    for (int i = 0; i < g.n; ++i)
        CHECK(r.v_t[i] - rt.v_t[i] ==
              doctest::Approx(full.tau * dv[i]).epsilon(1e-12).scale(1.0));

    Params no_kappa = full;
    no_kappa.kappa = 1e-30; // kappa must stay positive; negligible instead of zero
    const Rhs rk = rhs(s, no_kappa);
    const Field dth = div_flux_diffusion(s.theta, s.v, g);
    const double c = (full.gamma - 1.0) / full.R;
    for (int i = 0; i < g.n; ++i)
        CHECK(r.theta_t[i] - rk.theta_t[i] ==
              doctest::Approx(c * full.kappa * dth[i]).epsilon(1e-10).scale(1.0));
}
