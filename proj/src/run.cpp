#include "bnsf/run.hpp"

namespace bnsf {

Trajectory run(const State& initial, double t_end, const StepConfig& cfg,
               const Params& p, int sample_every, double M_weight) {
    if (!(t_end >= initial.t)) throw std::invalid_argument("run: t_end < initial.t");
    if (sample_every < 1) throw std::invalid_argument("run: sample_every < 1");
    cfg.validate();
    p.validate();

    Trajectory traj;
    traj.params = p;
    traj.M_weight = M_weight;

    DiagnosticsRecord rec = snapshot(initial, p, M_weight);
    traj.samples.push_back({initial, StepReport{}, rec});
    if (t_end == initial.t) return traj;

    State current = initial;
    DiagnosticsRecord per_step = rec; // step-resolution accumulator
    int accepted = 0;
    const double t_tiny = 1e-12 * std::max(1.0, std::abs(t_end));

    while (current.t < t_end - t_tiny) {
        StepConfig step_cfg = cfg;
        const double remaining = t_end - current.t;
        if (remaining < cfg.dt) {
            step_cfg.dt = remaining; // final partial step lands on t_end
            step_cfg.dt_min = std::min(cfg.dt_min, remaining);
        }
        StepResult res;
        try {
            res = picard_advance(current, step_cfg, p);
        } catch (const NoConvergence& e) {
            throw NoConvergence(std::string(e.what()) + " (run aborted at t = " +
                                    std::to_string(current.t) + ")",
                                current.t, e.dt_last);
        }
        if (res.report.dt_used < step_cfg.dt) ++traj.retry_steps;
        current = std::move(res.state);
        ++accepted;

        per_step = snapshot(current, p, M_weight, per_step);
        const bool at_end = current.t >= t_end - t_tiny;
        if (at_end) {
            current.t = t_end;
            per_step.t = t_end;
        }
        if (accepted % sample_every == 0 || at_end)
            traj.samples.push_back({current, res.report, per_step});
    }
    return traj;
}

} // namespace bnsf
