#pragma once

#include <array>

#include "bnsf/grid.hpp"

namespace bnsf {

// First derivative: centered second-order on interior nodes, one-sided
// second-order at dirichlet boundaries, wrap-around in periodic mode.
Field d1(const Field& f, const Grid& g);

// Face weight w_{i+1/2} from nodal w_i, w_{i+1}.
double face_weight(double wl, double wr, FaceMean mean);

// Conservative discretization of ((f_x)/w)_x:
//   out_i = (F_{i+1/2} - F_{i-1/2})/h,  F_{i+1/2} = (f_{i+1} - f_i)/(h w_{i+1/2}).
// Periodic sums telescope to zero exactly. In dirichlet mode the two boundary
// entries are zero: boundary nodes are constraints, not evolved unknowns.
Field div_flux_diffusion(const Field& f, const Field& w, const Grid& g);

// Trapezoidal integral of nodal values over the grid (full circle in
// periodic mode, half-weighted endpoints in dirichlet mode).
double trapz(const Field& f, const Grid& g);

double l2_norm(const Field& f, const Grid& g);
double linf_norm(const Field& f);

// [l2(f), l2(d1 f), ..., l2(d1^k f)], k <= 3.
std::array<double, 4> hk_seminorms(const Field& f, const Grid& g, int k);

struct SobolevReport {
    double lhs = 0.0; // ||f||_inf^2
    double rhs = 0.0; // (1 + 10h) ||f||_2 ||d1 f||_2
    bool pass = false;
};

// Discrete check of ||f||_inf^2 <= C ||f||_2 ||f'||_2 with the sharp
// continuous constant C = 1 and slack factor (1 + 10h) for the stencil error.
// Dirichlet inputs must decay to zero at the boundary nodes (checked).
SobolevReport sobolev_check(const Field& f, const Grid& g);

} // namespace bnsf
