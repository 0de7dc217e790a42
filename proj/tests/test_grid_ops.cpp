#include <cmath>
#include <random>

#include <doctest.h>

#include "bnsf/grid_ops.hpp"
#include "bnsf/oracle.hpp"
#include "bnsf/tridiag.hpp"

using namespace bnsf;

TEST_CASE("d1 annihilates constants and is exact on linears") {
    for (Bc bc : {Bc::periodic, Bc::dirichlet_background}) {
        const Grid g(129, 1.0 / 128, bc); // h = 2^-7
        Field c(g.n, 0.7314);
        const Field dc = d1(c, g);
        CHECK(linf_norm(dc) <= 1e-13);

        if (bc == Bc::dirichlet_background) {
            Field lin(g.n);
            for (int i = 0; i < g.n; ++i) lin[i] = g.x(i);
            const Field dl = d1(lin, g);
            for (int i = 0; i < g.n; ++i) CHECK(dl[i] == 1.0);
        }
    }
}

TEST_CASE("d1 size mismatch is an error") {
    const Grid g(16, 0.1, Bc::periodic);
    Field f(10, 0.0);
    CHECK_THROWS_AS(d1(f, g), std::invalid_argument);
}

namespace {

double d1_sin_error(int n) {
    const double L = 1.0;
    const Grid g = Grid::periodic(n, L);
    const double k = 2.0 * M_PI / L;
    Field f(n);
    for (int i = 0; i < n; ++i) f[i] = std::sin(k * g.x(i));
    const Field df = d1(f, g);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(df[i] - k * std::cos(k * g.x(i))));
    return err;
}

double divflux_error(int n) {
    //  f = sin x, w = 2 + cos x on [0, 2 pi):  ((f_x)/w)_x = -2 sin x / (2 + cos x)^2
    const Grid g = Grid::periodic(n, 2.0 * M_PI);
    Field f(n), w(n);
    for (int i = 0; i < n; ++i) {
        f[i] = std::sin(g.x(i));
        w[i] = 2.0 + std::cos(g.x(i));
    }
    const Field out = div_flux_diffusion(f, w, g);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g.x(i);
        const double exact = -2.0 * std::sin(x) / ((2.0 + std::cos(x)) * (2.0 + std::cos(x)));
        err = std::max(err, std::abs(out[i] - exact));
    }
    return err;
}

} // namespace

TEST_CASE("d1 observed order >= 1.9 on smooth periodic data") {
    std::vector<double> errs;
    for (int n : {32, 64, 128, 256}) errs.push_back(d1_sin_error(n));
    for (size_t i = 1; i < errs.size(); ++i) CHECK(std::log2(errs[i - 1] / errs[i]) >= 1.9);
}

TEST_CASE("div_flux_diffusion basics") {
    const Grid g(129, 1.0 / 128, Bc::dirichlet_background);
    Field c(g.n, 3.25), w(g.n, 1.0);
    const Field out = div_flux_diffusion(c, w, g);
    for (double x : out) CHECK(x == 0.0);

    // f = x^2 with unit weight: interior value exactly 2
    Field f(g.n);
    for (int i = 0; i < g.n; ++i) f[i] = g.x(i) * g.x(i);
    const Field d2 = div_flux_diffusion(f, w, g);
    for (int i = 1; i + 1 < g.n; ++i) CHECK(d2[i] == 2.0);
    CHECK(d2[0] == 0.0);
    CHECK(d2[g.n - 1] == 0.0);

    Field bad = w;
    bad[40] = 0.0;
    CHECK_THROWS_AS(div_flux_diffusion(f, bad, g), std::domain_error);
}

TEST_CASE("div_flux_diffusion observed order >= 1.9") {
    std::vector<double> errs;
    for (int n : {64, 128, 256, 512}) errs.push_back(divflux_error(n));
    for (size_t i = 1; i < errs.size(); ++i) CHECK(std::log2(errs[i - 1] / errs[i]) >= 1.9);
}

TEST_CASE("div_flux_diffusion telescopes on periodic grids") {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> uf(-2.0, 2.0), uw(0.1, 4.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Grid g = Grid::periodic(64 + rep, 3.0);
        Field f(g.n), w(g.n);
        double scale = 0.0;
        for (int i = 0; i < g.n; ++i) {
            f[i] = uf(rng);
            w[i] = uw(rng);
        }
        const Field out = div_flux_diffusion(f, w, g);
        for (double x : out) scale = std::max(scale, std::abs(x));
        const double total = trapz(out, g);
        CHECK(std::abs(total) <= 1e-13 * std::max(scale, 1.0));
    }
}

TEST_CASE("harmonic vs arithmetic face means") {
    CHECK(face_weight(1.0, 1.0, FaceMean::harmonic) == doctest::Approx(1.0));
    CHECK(face_weight(1.0, 3.0, FaceMean::harmonic) == doctest::Approx(1.5));
    CHECK(face_weight(1.0, 3.0, FaceMean::arithmetic) == doctest::Approx(2.0));

    // the switch is wired through the grid
    Grid gh = Grid::periodic(32, 1.0, FaceMean::harmonic);
    Grid ga = Grid::periodic(32, 1.0, FaceMean::arithmetic);
    Field f(32), w(32);
    for (int i = 0; i < 32; ++i) {
        f[i] = std::sin(2.0 * M_PI * i / 32.0);
        w[i] = 2.0 + std::cos(2.0 * M_PI * i / 32.0);
    }
    const Field oh = div_flux_diffusion(f, w, gh);
    const Field oa = div_flux_diffusion(f, w, ga);
    CHECK(linf_norm(oh) > 0.0);
    bool differ = false;
    for (int i = 0; i < 32; ++i) differ = differ || oh[i] != oa[i];
    CHECK(differ);
}

TEST_CASE("thomas_solve: identity and manufactured systems") {
    Tridiag sys;
    sys.resize(5);
    for (int i = 0; i < 5; ++i) {
        sys.diag[i] = 1.0;
        sys.rhs[i] = 0.5 * i - 1.0;
    }
    const Field x = thomas_solve(sys);
    for (int i = 0; i < 5; ++i) CHECK(x[i] == sys.rhs[i]);

    // sub = sup = -1, diag = 2, rhs built by forward multiplication of 1..n
    const int n = 64;
    Tridiag a;
    a.resize(n);
    Field truth(n);
    for (int i = 0; i < n; ++i) {
        truth[i] = i + 1.0;
        a.diag[i] = 2.0;
        if (i > 0) a.sub[i] = -1.0;
        if (i + 1 < n) a.sup[i] = -1.0;
    }
    for (int i = 0; i < n; ++i) {
        a.rhs[i] = a.diag[i] * truth[i];
        if (i > 0) a.rhs[i] += a.sub[i] * truth[i - 1];
        if (i + 1 < n) a.rhs[i] += a.sup[i] * truth[i + 1];
    }
    const Field sol = thomas_solve(a);
    for (int i = 0; i < n; ++i) CHECK(sol[i] == doctest::Approx(truth[i]).epsilon(1e-12));
    CHECK(tridiag_residual_inf(a, sol) <= 1e-12 * linf_norm(a.rhs));
}

TEST_CASE("thomas_solve: zero pivot reported") {
    Tridiag sys;
    sys.resize(4);
    sys.diag = {0.0, 1.0, 1.0, 1.0};
    sys.rhs = {1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(thomas_solve(sys), std::runtime_error);
}

TEST_CASE("thomas_solve: periodic rank-one correction matches dense elimination") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 16 + rep;
        Tridiag sys;
        sys.resize(n);
        sys.periodic = true;
        std::vector<double> dense(n * n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double s = off(rng), p = off(rng);
            sys.diag[i] = 4.0 + std::abs(off(rng));
            sys.rhs[i] = off(rng);
            dense[i * n + i] = sys.diag[i];
            if (i > 0) {
                sys.sub[i] = s;
                dense[i * n + i - 1] = s;
            }
            if (i + 1 < n) {
                sys.sup[i] = p;
                dense[i * n + i + 1] = p;
            }
        }
        sys.top_right = off(rng);
        sys.bottom_left = off(rng);
        dense[0 * n + (n - 1)] = sys.top_right;
        dense[(n - 1) * n + 0] = sys.bottom_left;

        const Field xt = thomas_solve(sys);
        const std::vector<double> xd = dense_solve(dense, sys.rhs);
        for (int i = 0; i < n; ++i) CHECK(xt[i] == doctest::Approx(xd[i]).epsilon(1e-10));
        CHECK(diagonally_dominant(sys));
    }
}

TEST_CASE("diagonal dominance detector") {
    Tridiag sys;
    sys.resize(3);
    sys.diag = {2.0, 2.0, 2.0};
    sys.sub = {0.0, -1.0, -1.0};
    sys.sup = {-1.0, -1.0, 0.0};
    CHECK(diagonally_dominant(sys));
    sys.diag[1] = 1.5;
    CHECK_FALSE(diagonally_dominant(sys));
}

TEST_CASE("norms: trivial values and quadrature oracle agreement") {
    const Grid g = Grid::dirichlet(129, 1.0);
    Field zero(g.n, 0.0), one(g.n, 1.0);
    const auto sz = hk_seminorms(zero, g, 3);
    for (double s : sz) CHECK(s == 0.0);

    CHECK(l2_norm(one, g) == doctest::Approx(1.0).epsilon(1e-14));
    const auto so = hk_seminorms(one, g, 3);
    CHECK(so[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(so[1] <= 1e-12);
    CHECK(so[2] <= 1e-10);
    CHECK(so[3] <= 1e-8);
    CHECK_THROWS_AS(hk_seminorms(one, g, 4), std::invalid_argument);

    // gaussian bump against the 10x Simpson oracle
    const Grid gg = Grid::dirichlet(4097, 16.0);
    Field bump(gg.n);
    for (int i = 0; i < gg.n; ++i) {
        const double r = (gg.x(i) - 8.0) / 0.7;
        bump[i] = std::exp(-r * r);
    }
    Field bump2(gg.n);
    for (int i = 0; i < gg.n; ++i) bump2[i] = bump[i] * bump[i];
    const double l2 = l2_norm(bump, gg);
    const double oracle = std::sqrt(quadrature(bump2, gg, 10));
    CHECK(l2 == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("linf_norm") {
    CHECK(linf_norm({-3.0, 2.0, 0.5}) == 3.0);
    CHECK(linf_norm({}) == 0.0);
}

TEST_CASE("sobolev_check: trivial, tent, gaussian") {
    const Grid g = Grid::dirichlet(1025, 4.0); // h = 2^-8, tent nodes aligned
    Field zero(g.n, 0.0);
    const SobolevReport z = sobolev_check(zero, g);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(z.pass);

    // tent of height 1 supported on [1.5, 2.5]:
    // ||f||_2 = sqrt(1/3), ||f'||_2 = 2, continuous rhs = 1.1547
    Field tent(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double d = std::abs(g.x(i) - 2.0);
        tent[i] = std::max(0.0, 1.0 - 2.0 * d);
    }
    const SobolevReport t = sobolev_check(tent, g);
    CHECK(t.lhs == doctest::Approx(1.0));
    CHECK(t.rhs == doctest::Approx(2.0 * std::sqrt(1.0 / 3.0)).epsilon(2e-2));
    CHECK(t.pass);

    Field gauss(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double r = (g.x(i) - 2.0) / 0.25;
        gauss[i] = std::exp(-r * r);
    }
    const SobolevReport s = sobolev_check(gauss, g);
    CHECK(s.pass);
    // continuous ratio for a pure gaussian is sqrt(2/pi) = 0.798
    CHECK(s.lhs / s.rhs == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(2e-2));

    Field bad(g.n, 0.5); // no boundary decay
    CHECK_THROWS_AS(sobolev_check(bad, g), std::invalid_argument);
}

TEST_CASE("sobolev_check passes on a seeded corpus of bumps, tents, gaussians") {
    const Grid g = Grid::dirichlet(257, 16.0);
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> uc(0.35, 0.65), uw(0.02, 0.08), ua(0.1, 3.0),
        us(0.05, 0.2);
    const double L = g.length();
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        Field f(g.n, 0.0);
        const int kind = rep % 3;
        if (kind == 0) { // single gaussian
            const double c = uc(rng) * L, w = uw(rng) * L, a = ua(rng);
            for (int i = 0; i < g.n; ++i) {
                const double r = (g.x(i) - c) / w;
                f[i] = a * std::exp(-r * r);
            }
        } else if (kind == 1) { // tent
            const double c = uc(rng) * L, s = us(rng) * L, a = ua(rng);
            for (int i = 0; i < g.n; ++i)
                f[i] = a * std::max(0.0, 1.0 - std::abs(g.x(i) - c) / s);
        } else { // two-bump
            const double c1 = uc(rng) * L, c2 = uc(rng) * L;
            const double w1 = uw(rng) * L, w2 = uw(rng) * L;
            const double a1 = ua(rng), a2 = ua(rng);
            for (int i = 0; i < g.n; ++i) {
                const double r1 = (g.x(i) - c1) / w1, r2 = (g.x(i) - c2) / w2;
                f[i] = a1 * std::exp(-r1 * r1) + a2 * std::exp(-r2 * r2);
            }
        }
        const SobolevReport r = sobolev_check(f, g);
        CHECK(r.pass);
        ++checked;
    }
    CHECK(checked == 200);
}
