#pragma once

#include <iosfwd>

#include "bnsf/diagnostics.hpp"

namespace bnsf {

// Fully resolved run configuration. The on-disk format is flat UTF-8
// key-value lines with dotted sections ("time.dt = 1e-3"), '#' comments,
// and unknown keys rejected with line context.
struct RunConfig {
    Params params;

    int grid_n = 257;
    double grid_L = 16.0;
    Bc grid_bc = Bc::periodic;
    FaceMean face_mean = FaceMean::harmonic;

    std::string scenario_name = "gaussian_bump";
    double amplitude = 1.0;
    double width = 0.5;
    double center = -1.0; // < 0 resolves to L/2
    double theta_dip = 1.0;
    double v_dip = 1.0;

    double t_end = 0.5;
    double dt = 1e-3;
    int sample_every = 1;

    StepConfig picard; // dt mirrored from `dt` when resolved

    double ladder_L_factor = 2.0;
    int ladder_K = 6;
    double theta_tol = 1e-6;
    double M_weight = 4.0;
    double balance_tol = 1e-3;
    double conservation_tol = 1e-10;
    double ladder_terminal_tol = 1e-6;

    std::string output_dir = "out";
    std::string output_formats = "csv,json";
    long seed = 0;

    Grid make_grid() const;
    CertifyTols certify_tols() const;
    StepConfig step_config() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// The full resolved configuration as ordered (key, value) pairs; values are
// formatted so that re-parsing reproduces the run bit-identically.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

// Initial data presets. All perturbations respect v > 0, theta > 0 (rejected
// otherwise with the offending node) and vanish at dirichlet boundaries.
//   gaussian_bump:    v = 1 + A g, u = A g, theta = 1 + A g,
//                     g = exp(-((x-c)/w)^2)
//   cold_dense_spot:  v = 1 - (1-v_dip) g, theta = 1 - (1-theta_dip) g,
//                     u = A g
//   smoothed_riemann: plateau of height A between two tanh transitions of
//                     width w, tapered to meet the boundary
//   sine:             v = 1 + A sin(2 pi x / L), u = A cos(2 pi x / L),
//                     theta = 1 + A/2 sin(2 pi x / L)
State build_scenario(const RunConfig& cfg);

} // namespace bnsf
