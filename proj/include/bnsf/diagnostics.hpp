#pragma once

#include <optional>

#include "bnsf/stepper.hpp"

namespace bnsf {

// Time-stamped certification quantities for one state. Cumulative time
// integrals are trapezoidal and extend the previous record.
struct DiagnosticsRecord {
    double t = 0.0;
    double eta_total = 0.0;       // integral of the relative entropy density
    double dissipation_cum = 0.0; // time-integrated entropy dissipation
    double balance_residual = 0.0;
    double v_min = 0.0, v_max = 0.0;
    double theta_min = 0.0, theta_max = 0.0;
    double mass_def = 0.0;   // integral of (v - 1)
    double momentum = 0.0;   // integral of u
    double energy_def = 0.0; // integral of (E - R/(gamma-1))
    double h1_v = 0.0, h2_v = 0.0, h3_v = 0.0;
    double h1_u = 0.0, h2_u = 0.0, h3_u = 0.0;
    double h1_th = 0.0, h2_th = 0.0, h3_th = 0.0;
    double alpha_fn = 0.0;  // 1 + integral of (E - R/(g-1))^2/2 + (M/4) u^4
    double vlog_grad = 0.0; // integral of (v_x / v)^2

    // bookkeeping carried between records (not CSV columns)
    double eta0 = 0.0;             // eta_total of the trajectory start
    double dissipation_rate = 0.0; // instantaneous spatial dissipation integral
    double diss_rate_mass = 0.0, diss_rate_visc = 0.0, diss_rate_heat = 0.0;
    double diss_cum_mass = 0.0, diss_cum_visc = 0.0, diss_cum_heat = 0.0;
};

DiagnosticsRecord snapshot(const State& s, const Params& p, double M_weight = 4.0,
                           const std::optional<DiagnosticsRecord>& prev = std::nullopt);

struct TrajectorySample {
    State state;
    StepReport report;
    DiagnosticsRecord diag;
};

struct Trajectory {
    Params params;
    double M_weight = 4.0;
    int retry_steps = 0; // accepted steps that needed dt halving
    std::vector<TrajectorySample> samples;

    bool empty() const { return samples.empty(); }
    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
};

struct BalanceReport {
    double max_residual = 0.0;
    double e0 = 0.0;
    bool pass = false;
};

// max_t |eta(t) + cumulative dissipation(t) - eta(0)| <= tol * max(E0, 1e-15)
BalanceReport balance_check(const Trajectory& traj, double tol);

struct ConservationReport {
    double mass_drift = 0.0; // max deviation over the run, per unit time
    double momentum_drift = 0.0;
    double energy_drift = 0.0;
    bool mass_pass = false, momentum_pass = false, energy_pass = false;
    bool pass = false;
};

ConservationReport conservation_check(const Trajectory& traj, double tol);

// Level-set energy of the truncation (v - c)_+:
//   sup_t int (v-c)_+^2 dx + int_0^T int 1_{v>c} v_x^2 / v dx dt.
double level_set_energy_upper(const Trajectory& traj, double c);

// Lower-side energy with w = 1/sqrt(v):
//   sup_t int (w-c)_+^2 dx + int_0^T int v_x^2 / v^4 1_{v<=1/c^2} dx dt.
double level_set_energy_lower(const Trajectory& traj, double c);

enum class LadderSide { upper, lower };

struct LadderReport {
    double L = 0.0;
    LadderSide side = LadderSide::upper;
    std::vector<double> levels;   // c_k = L (1 - 2^{-k-1}), k = 0..K
    std::vector<double> energies; // E_k at each level
    bool monotone = false;        // E_0 >= E_1 >= ... >= E_K
    double terminal_ratio = 0.0;  // E_K / E_0 (0 when E_0 = 0)
};

LadderReport degiorgi_ladder(const Trajectory& traj, LadderSide side, double L, int K);

struct ThetaMinReport {
    double max_violation = 0.0;
    double worst_t = 0.0; // sample time of the largest violation
    bool pass = false;
    std::vector<double> bound_curve; // envelope values at the sample times
    std::vector<double> inv_theta_min;
};

// Envelope form of the temperature minimum principle:
//   max(1/theta_min(t), 1) <= max(1/theta_min(0), 1)
//        + (gamma-1) R / (4 mu) * int_0^t ds / v_min(s) + tol
// with the time integral trapezoidal over the samples.
ThetaMinReport theta_min_bound(const Trajectory& traj, double tol);

// Pointwise algebraic inequality v 1_{v>=b} <= b/(b-a)^2 (v-a)_+^2, 0 < a < b.
bool nonlinearization_check(const Field& v, double a, double b);

struct AlphaSeries {
    std::vector<double> t;
    std::vector<double> alpha;
    double max_alpha = 0.0;
};

AlphaSeries higher_integrability_monitor(const Trajectory& traj, double M_weight);

// One pass/fail judgment with its measured value and threshold.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct CertifyTols {
    double balance_tol = 1e-3;      // relative to E0
    double conservation_tol = 1e-10; // drift per unit time
    double ladder_terminal_tol = 1e-6;
    double theta_tol = 1e-6;
    double ladder_L_factor = 2.0;
    int ladder_K = 6;
};

// Runs every lemma-diagnostic on a finished trajectory.
std::vector<CheckResult> evaluate_certification(const Trajectory& traj,
                                                const CertifyTols& tols);

} // namespace bnsf
