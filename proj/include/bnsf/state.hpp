#pragma once

#include "bnsf/errors.hpp"
#include "bnsf/grid.hpp"

namespace bnsf {

// Nodal fields (v, u, theta) at one time level. v and theta must stay
// strictly positive; dirichlet boundary nodes hold (1, 0, 1) exactly.
struct State {
    double t = 0.0;
    Grid grid;
    Field v, u, theta;

    static State background(const Grid& g, double t0 = 0.0) {
        State s;
        s.t = t0;
        s.grid = g;
        s.v.assign(g.n, 1.0);
        s.u.assign(g.n, 0.0);
        s.theta.assign(g.n, 1.0);
        return s;
    }
};

// Throws PositivityError if any nodal v or theta is <= floor (NaN-safe).
void check_positivity(const State& s, double floor = 0.0);

// True when every nodal v and theta exceeds floor (NaN counts as violation).
bool is_positive(const State& s, double floor = 0.0);

double field_min(const Field& f);
double field_max(const Field& f);

// Max-norm distance between two states on the same grid, over all three fields.
double state_linf_distance(const State& a, const State& b);

} // namespace bnsf
