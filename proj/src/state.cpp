#include "bnsf/state.hpp"

#include <algorithm>
#include <cmath>

namespace bnsf {

void check_positivity(const State& s, double floor) {
    for (int i = 0; i < s.grid.n; ++i) {
        if (!(s.v[i] > floor))
            throw PositivityError("specific volume v = " + std::to_string(s.v[i]) +
                                      " <= " + std::to_string(floor) + " at node " +
                                      std::to_string(i),
                                  i, s.v[i]);
        if (!(s.theta[i] > floor))
            throw PositivityError("temperature theta = " + std::to_string(s.theta[i]) +
                                      " <= " + std::to_string(floor) + " at node " +
                                      std::to_string(i),
                                  i, s.theta[i]);
    }
}

bool is_positive(const State& s, double floor) {
    for (int i = 0; i < s.grid.n; ++i)
        if (!(s.v[i] > floor) || !(s.theta[i] > floor)) return false;
    return true;
}

double field_min(const Field& f) { return *std::min_element(f.begin(), f.end()); }
double field_max(const Field& f) { return *std::max_element(f.begin(), f.end()); }

double state_linf_distance(const State& a, const State& b) {
    double m = 0.0;
    for (int i = 0; i < a.grid.n; ++i) {
        m = std::max(m, std::abs(a.v[i] - b.v[i]));
        m = std::max(m, std::abs(a.u[i] - b.u[i]));
        m = std::max(m, std::abs(a.theta[i] - b.theta[i]));
    }
    return m;
}

} // namespace bnsf
