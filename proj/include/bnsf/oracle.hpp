#pragma once

#include <functional>

#include "bnsf/model.hpp"

namespace bnsf {

// Independent brute-force references. These are deliberately different
// schemes and codepaths from the main solver, so agreement is evidence.

// Two-stage explicit midpoint integration of the semidiscrete system on an
// n_fine-node grid (the initial state is cubic-interpolated when needed).
// The step follows dt = cfl h^2 min(v) / max(tau, mu, kappa (gamma-1)/R),
// recomputed as min(v) evolves. Aborts with PositivityError if positivity is
// lost: the explicit scheme is not positivity-safe.
State explicit_reference(const State& initial, double t_end, const Params& p,
                         int n_fine, double cfl = 0.25);

// Geometric recursion of the iteration lemma: W_{k+1} = C^k W_k^beta.
struct SequenceSpec {
    double C = 2.0;   // > 0
    double beta = 2.0; // > 1
    double W0 = 0.0;  // >= 0
    int K = 60;       // iteration count
};

struct SequenceResult {
    std::vector<double> series; // W_0 ... W_K (truncated early on overflow)
    bool converged = false;     // W_K < 1e-12
    double threshold_c0 = 0.0;  // C^{-1/(beta-1) - 1/(beta-1)^2}
};

// Iterates the equality recursion and reports the closed-form threshold
// estimate C0; starting below C0 decays to zero for C >= 1 (the exponent
// recursion a_{k+1} = beta a_k - k has particular solution
// k/(beta-1) + 1/(beta-1)^2, shifted down by the extra 1/(beta-1) margin).
// Overflow is reported as diverged.
SequenceResult degiorgi_sequence(const SequenceSpec& spec);

// Partial-pivot Gaussian elimination; a is row-major n x n (consumed).
// Throws std::runtime_error on a singular matrix.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b);

// Cubic (4-point Lagrange) resampling of nodal data onto an n_fine-node grid
// of the same length and boundary mode.
Field resample_cubic(const Field& f, const Grid& g, int n_fine);

// Composite-Simpson quadrature oracle on a refine x finer mesh; field data is
// upsampled by cubic interpolation first.
double quadrature(const Field& f, const Grid& g, int refine = 10);
double quadrature(const std::function<double(double)>& f, const Grid& g, int refine = 10);

} // namespace bnsf
