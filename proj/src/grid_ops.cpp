#include "bnsf/grid_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace bnsf {

namespace {

void require_size(const Field& f, const Grid& g, const char* op) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument(std::string(op) + ": field size " +
                                    std::to_string(f.size()) + " != grid n " +
                                    std::to_string(g.n));
}

} // namespace

Field d1(const Field& f, const Grid& g) {
    require_size(f, g, "d1");
    const int n = g.n;
    const double inv2h = 1.0 / (2.0 * g.h);
    Field out(n);
    for (int i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
    if (g.is_periodic()) {
        out[0] = (f[1] - f[n - 1]) * inv2h;
        out[n - 1] = (f[0] - f[n - 2]) * inv2h;
    } else {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
        out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
    }
    return out;
}

double face_weight(double wl, double wr, FaceMean mean) {
    if (mean == FaceMean::harmonic) return 2.0 * wl * wr / (wl + wr);
    return 0.5 * (wl + wr);
}

Field div_flux_diffusion(const Field& f, const Field& w, const Grid& g) {
    require_size(f, g, "div_flux_diffusion");
    require_size(w, g, "div_flux_diffusion");
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        if (!(w[i] > 0.0))
            throw std::domain_error("div_flux_diffusion: nonpositive weight at node " +
                                    std::to_string(i));
    const double inv_h2 = 1.0 / (g.h * g.h);
    Field out(n, 0.0);
    if (g.is_periodic()) {
        // face k sits between nodes k and k+1 (mod n)
        Field flux(n);
        for (int k = 0; k < n; ++k) {
            const int kp = (k + 1 == n) ? 0 : k + 1;
            flux[k] = (f[kp] - f[k]) * inv_h2 / face_weight(w[k], w[kp], g.face_mean);
        }
        for (int i = 0; i < n; ++i) {
            const int im = (i == 0) ? n - 1 : i - 1;
            out[i] = flux[i] - flux[im];
        }
    } else {
        Field flux(n - 1);
        for (int k = 0; k + 1 < n; ++k)
            flux[k] = (f[k + 1] - f[k]) * inv_h2 / face_weight(w[k], w[k + 1], g.face_mean);
        for (int i = 1; i + 1 < n; ++i) out[i] = flux[i] - flux[i - 1];
        // boundary nodes are dirichlet constraints; leave zero
    }
    return out;
}

double trapz(const Field& f, const Grid& g) {
    require_size(f, g, "trapz");
    double s = 0.0;
    if (g.is_periodic()) {
        for (double x : f) s += x;
    } else {
        s += 0.5 * (f.front() + f.back());
        for (int i = 1; i + 1 < g.n; ++i) s += f[i];
    }
    return s * g.h;
}

double l2_norm(const Field& f, const Grid& g) {
    require_size(f, g, "l2_norm");
    double s = 0.0;
    if (g.is_periodic()) {
        for (double x : f) s += x * x;
    } else {
        s += 0.5 * (f.front() * f.front() + f.back() * f.back());
        for (int i = 1; i + 1 < g.n; ++i) s += f[i] * f[i];
    }
    return std::sqrt(s * g.h);
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

std::array<double, 4> hk_seminorms(const Field& f, const Grid& g, int k) {
    if (k < 0 || k > 3) throw std::invalid_argument("hk_seminorms: need 0 <= k <= 3");
    std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
    Field cur = f;
    out[0] = l2_norm(cur, g);
    for (int l = 1; l <= k; ++l) {
        cur = d1(cur, g);
        out[l] = l2_norm(cur, g);
    }
    return out;
}

SobolevReport sobolev_check(const Field& f, const Grid& g) {
    require_size(f, g, "sobolev_check");
    const double amp = linf_norm(f);
    if (!g.is_periodic()) {
        const double tol = 1e-5 * (1.0 + amp);
        if (std::abs(f.front()) > tol || std::abs(f.back()) > tol)
            throw std::invalid_argument(
                "sobolev_check: field does not decay at dirichlet boundaries");
    }
    SobolevReport r;
    r.lhs = amp * amp;
    r.rhs = (1.0 + 10.0 * g.h) * l2_norm(f, g) * l2_norm(d1(f, g), g);
    r.pass = r.lhs <= r.rhs;
    return r;
}

} // namespace bnsf
