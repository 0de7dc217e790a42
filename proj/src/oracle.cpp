#include "bnsf/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "bnsf/grid_ops.hpp"

namespace bnsf {

namespace {

// 4-point Lagrange interpolation of uniformly spaced samples at offset
// s in [0,1] between nodes j and j+1, using nodes j-1 .. j+2.
double cubic4(double fm1, double f0, double f1, double f2, double s) {
    const double a = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double b = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double d = (s + 1.0) * s * (s - 1.0) / 6.0;
    return a * fm1 + b * f0 + c * f1 + d * f2;
}

} // namespace

Field resample_cubic(const Field& f, const Grid& g, int n_fine) {
    const int n = g.n;
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("resample_cubic: field/grid size mismatch");
    if (n_fine == n) return f;
    const double L = g.length();
    Field out(n_fine);
    const double hf = g.is_periodic() ? L / n_fine : L / (n_fine - 1);
    for (int k = 0; k < n_fine; ++k) {
        const double x = k * hf;
        double pos = x / g.h;
        int j = static_cast<int>(std::floor(pos));
        double s = pos - j;
        if (g.is_periodic()) {
            auto at = [&](int i) { return f[((i % n) + n) % n]; };
            out[k] = cubic4(at(j - 1), at(j), at(j + 1), at(j + 2), s);
        } else {
            // clamp the 4-point stencil inside the domain
            if (j < 1) {
                s += static_cast<double>(j - 1);
                j = 1;
            }
            if (j > n - 3) {
                s += static_cast<double>(j - (n - 3));
                j = n - 3;
            }
            out[k] = cubic4(f[j - 1], f[j], f[j + 1], f[j + 2], s);
        }
    }
    return out;
}

State explicit_reference(const State& initial, double t_end, const Params& p,
                         int n_fine, double cfl) {
    if (!(cfl > 0.0) || cfl > 0.25)
        throw std::invalid_argument("explicit_reference: need 0 < cfl <= 0.25");
    p.validate();

    State s;
    s.t = initial.t;
    s.grid = Grid(n_fine, initial.grid.length() / (initial.grid.is_periodic()
                                                       ? n_fine
                                                       : n_fine - 1),
                  initial.grid.bc, initial.grid.face_mean);
    s.v = resample_cubic(initial.v, initial.grid, n_fine);
    s.u = resample_cubic(initial.u, initial.grid, n_fine);
    s.theta = resample_cubic(initial.theta, initial.grid, n_fine);
    if (!s.grid.is_periodic()) {
        s.v.front() = s.v.back() = 1.0;
        s.u.front() = s.u.back() = 0.0;
        s.theta.front() = s.theta.back() = 1.0;
    }

    const double coef_max =
        std::max({p.tau, p.mu, p.kappa * (p.gamma - 1.0) / p.R});
    const double h2 = s.grid.h * s.grid.h;
    const int n = s.grid.n;

    auto abort_positivity = [](const char* stage, double t) {
        throw PositivityError(std::string("explicit_reference: positivity lost (") +
                              stage + ") at t = " + std::to_string(t) +
                              "; the explicit midpoint scheme is not positivity-safe");
    };

    while (s.t < t_end - 1e-14 * std::max(1.0, t_end)) {
        if (!is_positive(s)) abort_positivity("state", s.t);
        const double dt_stable = cfl * h2 * field_min(s.v) / coef_max;
        const double dt = std::min(dt_stable, t_end - s.t);

        // stage 1: half step
        const Rhs k1 = rhs(s, p);
        State mid = s;
        for (int i = 0; i < n; ++i) {
            mid.v[i] += 0.5 * dt * k1.v_t[i];
            mid.u[i] += 0.5 * dt * k1.u_t[i];
            mid.theta[i] += 0.5 * dt * k1.theta_t[i];
        }
        if (!is_positive(mid)) abort_positivity("midpoint", s.t);

        // stage 2: full step with midpoint slope
        const Rhs k2 = rhs(mid, p);
        for (int i = 0; i < n; ++i) {
            s.v[i] += dt * k2.v_t[i];
            s.u[i] += dt * k2.u_t[i];
            s.theta[i] += dt * k2.theta_t[i];
        }
        s.t += dt;
    }
    s.t = t_end;
    if (!is_positive(s)) abort_positivity("final", s.t);
    return s;
}

SequenceResult degiorgi_sequence(const SequenceSpec& spec) {
    if (!(spec.C > 0.0)) throw std::invalid_argument("degiorgi_sequence: C <= 0");
    if (!(spec.beta > 1.0)) throw std::invalid_argument("degiorgi_sequence: beta <= 1");
    if (!(spec.W0 >= 0.0)) throw std::invalid_argument("degiorgi_sequence: W0 < 0");
    if (spec.K < 1) throw std::invalid_argument("degiorgi_sequence: K < 1");

    SequenceResult res;
    const double bm1 = spec.beta - 1.0;
    res.threshold_c0 = std::pow(spec.C, -1.0 / bm1 - 1.0 / (bm1 * bm1));

    res.series.push_back(spec.W0);
    double w = spec.W0;
    for (int k = 0; k < spec.K; ++k) {
        w = std::pow(spec.C, k) * std::pow(w, spec.beta);
        if (!std::isfinite(w) || w > 1e300) {
            res.converged = false; // overflow counts as divergence
            return res;
        }
        res.series.push_back(w);
    }
    res.converged = res.series.back() < 1e-12;
    return res;
}

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    if (static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("dense_solve: matrix/rhs size mismatch");
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;

    for (int col = 0; col < n; ++col) {
        int best = col;
        double best_abs = std::abs(a[piv[col] * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double cand = std::abs(a[piv[r] * n + col]);
            if (cand > best_abs) {
                best_abs = cand;
                best = r;
            }
        }
        if (best_abs == 0.0) throw std::runtime_error("dense_solve: singular matrix");
        std::swap(piv[col], piv[best]);
        const double pivot = a[piv[col] * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double m = a[piv[r] * n + col] / pivot;
            if (m == 0.0) continue;
            a[piv[r] * n + col] = 0.0;
            for (int c = col + 1; c < n; ++c) a[piv[r] * n + c] -= m * a[piv[col] * n + c];
            b[piv[r]] -= m * b[piv[col]];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[piv[r]];
        for (int c = r + 1; c < n; ++c) acc -= a[piv[r] * n + c] * x[c];
        x[r] = acc / a[piv[r] * n + r];
    }
    return x;
}

namespace {

double simpson(const Field& vals, double h) {
    const int m = static_cast<int>(vals.size()) - 1; // panels
    if (m % 2 != 0) throw std::invalid_argument("simpson: odd panel count");
    double s = vals.front() + vals.back();
    for (int i = 1; i < m; i += 2) s += 4.0 * vals[i];
    for (int i = 2; i < m; i += 2) s += 2.0 * vals[i];
    return s * h / 3.0;
}

} // namespace

double quadrature(const Field& f, const Grid& g, int refine) {
    if (refine < 2) throw std::invalid_argument("quadrature: refine < 2");
    if (refine % 2 != 0) ++refine;
    const double L = g.length();
    if (g.is_periodic()) {
        const int nf = refine * g.n;
        Field fine = resample_cubic(f, g, nf);
        fine.push_back(fine.front()); // close the circle for Simpson
        return simpson(fine, L / nf);
    }
    const int nf = refine * (g.n - 1) + 1;
    const Field fine = resample_cubic(f, g, nf);
    return simpson(fine, L / (nf - 1));
}

double quadrature(const std::function<double(double)>& f, const Grid& g, int refine) {
    if (refine < 2) throw std::invalid_argument("quadrature: refine < 2");
    if (refine % 2 != 0) ++refine;
    const double L = g.length();
    const int panels = g.is_periodic() ? refine * g.n : refine * (g.n - 1);
    const double hf = L / panels;
    Field vals(panels + 1);
    for (int i = 0; i <= panels; ++i) vals[i] = f(i * hf);
    return simpson(vals, hf);
}

} // namespace bnsf
