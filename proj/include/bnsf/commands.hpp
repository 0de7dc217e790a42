#pragma once

#include "bnsf/run.hpp"
#include "bnsf/scenario.hpp"

namespace bnsf {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_no_convergence = 2;
inline constexpr int exit_certification_failure = 3;

// 17-significant-digit formatting used for all CSV/JSON numbers so that
// downstream rate computations are not quantization-limited.
std::string fmt17(double x);

void write_diagnostics_csv(const Trajectory& traj, const std::string& path);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// run the scenario + write trajectory.csv, diagnostics.csv, summary.json
int cmd_run(const RunConfig& cfg);

// refinement ladder (n, dt) -> rates.csv with observed orders for the
// balance residual and the error against the explicit reference
int cmd_refine(const RunConfig& cfg, int levels);

// same scenario with tau as configured vs tau = 0 -> compare.csv with the
// per-time dissipation split
int cmd_compare(const RunConfig& cfg);

// level-set energies for both ladder sides -> ladder.csv
int cmd_ladder(const RunConfig& cfg);

// pass/fail per lemma-diagnostic -> certify.json (+ summary.json); exit 3 on
// any failed check
int cmd_certify(const RunConfig& cfg);

} // namespace bnsf
