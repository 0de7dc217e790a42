#pragma once

#include "bnsf/grid.hpp"

namespace bnsf {

// Tridiagonal system; periodic mode adds the two wrap corner entries
// A[0][n-1] = top_right and A[n-1][0] = bottom_left.
// sub[i] couples row i to i-1 (sub[0] unused when not periodic),
// sup[i] couples row i to i+1 (sup[n-1] unused when not periodic).
struct Tridiag {
    std::vector<double> sub, diag, sup;
    std::vector<double> rhs;
    bool periodic = false;
    double top_right = 0.0;
    double bottom_left = 0.0;

    int size() const { return static_cast<int>(diag.size()); }
    void resize(int n) {
        sub.assign(n, 0.0);
        diag.assign(n, 0.0);
        sup.assign(n, 0.0);
        rhs.assign(n, 0.0);
    }
};

// Weak row dominance with at least one strict row; backward-Euler diffusion
// assembly with dt > 0 gives strict dominance on every row.
bool diagonally_dominant(const Tridiag& sys);

// Thomas elimination; periodic systems via rank-one (Sherman-Morrison)
// correction of the two corner entries. Throws std::runtime_error on a
// zero pivot.
Field thomas_solve(const Tridiag& sys);

// Residual A x - rhs in the max norm, for solve verification.
double tridiag_residual_inf(const Tridiag& sys, const Field& x);

} // namespace bnsf
