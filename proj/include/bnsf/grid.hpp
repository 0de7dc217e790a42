#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bnsf {

using Field = std::vector<double>;

enum class Bc { dirichlet_background, periodic };

// Face-weight averaging for the conservative diffusion stencil.
// Harmonic is the default; arithmetic is kept for sensitivity studies.
enum class FaceMean { harmonic, arithmetic };

// Uniform 1D mesh in the Lagrangian mass coordinate.
// dirichlet_background pins the boundary nodes to the far-field state (1,0,1);
// periodic wraps node n-1 back to node 0.
struct Grid {
    int n = 0;
    double h = 0.0;
    Bc bc = Bc::dirichlet_background;
    FaceMean face_mean = FaceMean::harmonic;

    Grid() = default;
    Grid(int n_, double h_, Bc bc_, FaceMean fm = FaceMean::harmonic)
        : n(n_), h(h_), bc(bc_), face_mean(fm) {
        if (n < 3) throw std::invalid_argument("Grid: need n >= 3, got " + std::to_string(n));
        if (!(h > 0.0)) throw std::invalid_argument("Grid: need h > 0");
    }

    static Grid dirichlet(int n, double length, FaceMean fm = FaceMean::harmonic) {
        return Grid(n, length / (n - 1), Bc::dirichlet_background, fm);
    }
    static Grid periodic(int n, double length, FaceMean fm = FaceMean::harmonic) {
        return Grid(n, length / n, Bc::periodic, fm);
    }

    bool is_periodic() const { return bc == Bc::periodic; }
    double length() const { return is_periodic() ? n * h : (n - 1) * h; }
    double x(int i) const { return i * h; }

    bool same_as(const Grid& o) const {
        return n == o.n && h == o.h && bc == o.bc;
    }
};

} // namespace bnsf
