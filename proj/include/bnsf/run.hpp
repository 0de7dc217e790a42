#pragma once

#include "bnsf/diagnostics.hpp"

namespace bnsf {

// Advances `initial` to t_end with picard_advance, shortening the final step
// to land on t_end exactly. Diagnostics are recorded at t = initial.t, every
// `sample_every` accepted steps, and at t_end. The dissipation integral is
// accumulated trapezoidally over every accepted step regardless of sampling.
// Throws NoConvergence (with the failure time) if the dt floor is reached.
Trajectory run(const State& initial, double t_end, const StepConfig& cfg,
               const Params& p, int sample_every = 1, double M_weight = 4.0);

} // namespace bnsf
