#include "bnsf/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace bnsf {

namespace {

// Plain Thomas elimination. sub/diag/sup are copied; rhs is consumed in
// place of the solution.
Field thomas_plain(std::vector<double> sub, std::vector<double> diag,
                   std::vector<double> sup, Field rhs) {
    const int n = static_cast<int>(diag.size());
    for (int i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
    rhs[n - 1] /= diag[n - 1];
    for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    return rhs;
}

} // namespace

bool diagonally_dominant(const Tridiag& sys) {
    const int n = sys.size();
    bool strict = false;
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        if (i > 0 || sys.periodic) off += std::abs(sys.sub[i]);
        if (i + 1 < n || sys.periodic) off += std::abs(sys.sup[i]);
        if (sys.periodic && i == 0) off += std::abs(sys.top_right);
        if (sys.periodic && i == n - 1) off += std::abs(sys.bottom_left);
        const double d = std::abs(sys.diag[i]);
        if (d < off) return false;
        if (d > off) strict = true;
    }
    return strict;
}

Field thomas_solve(const Tridiag& sys) {
    const int n = sys.size();
    if (n < 3) throw std::invalid_argument("thomas_solve: need n >= 3");
    if (!sys.periodic) return thomas_plain(sys.sub, sys.diag, sys.sup, sys.rhs);

    // Sherman-Morrison: A = B + u v^T with u = (gamma, 0, .., 0, bl)^T,
    // v = (1, 0, .., 0, tr/gamma)^T, and B tridiagonal with
    // b0 -= gamma, b_{n-1} -= tr * bl / gamma.
    const double gamma = (sys.diag[0] != 0.0) ? -sys.diag[0] : 1.0;
    std::vector<double> diag = sys.diag;
    diag[0] -= gamma;
    diag[n - 1] -= sys.top_right * sys.bottom_left / gamma;

    Field y = thomas_plain(sys.sub, diag, sys.sup, sys.rhs);
    Field u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = sys.bottom_left;
    Field z = thomas_plain(sys.sub, diag, sys.sup, u);

    const double vy = y[0] + sys.top_right / gamma * y[n - 1];
    const double vz = z[0] + sys.top_right / gamma * z[n - 1];
    const double denom = 1.0 + vz;
    if (denom == 0.0) throw std::runtime_error("thomas_solve: singular periodic correction");
    const double factor = vy / denom;
    for (int i = 0; i < n; ++i) y[i] -= factor * z[i];
    return y;
}

double tridiag_residual_inf(const Tridiag& sys, const Field& x) {
    const int n = sys.size();
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        double ax = sys.diag[i] * x[i];
        if (i > 0) ax += sys.sub[i] * x[i - 1];
        if (i + 1 < n) ax += sys.sup[i] * x[i + 1];
        if (sys.periodic && i == 0) ax += sys.top_right * x[n - 1];
        if (sys.periodic && i == n - 1) ax += sys.bottom_left * x[0];
        r = std::max(r, std::abs(ax - sys.rhs[i]));
    }
    return r;
}

} // namespace bnsf
