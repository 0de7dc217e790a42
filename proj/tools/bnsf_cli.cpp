#include <iostream>

#include <CLI11.hpp>

#include "bnsf/commands.hpp"

namespace {

bnsf::RunConfig load_with_overrides(const std::string& config_path,
                                    const std::string& out_dir) {
    bnsf::RunConfig cfg = bnsf::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bnsf - 1D bi-velocity compressible flow laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int levels = 4;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "run configuration file")->required();
        sub->add_option("-o,--out", out_dir, "override output.dir");
    };

    CLI::App* c_run = app.add_subcommand("run", "simulate and write trajectory/diagnostics");
    add_common(c_run);
    CLI::App* c_refine = app.add_subcommand("refine", "(n, dt) refinement ladder -> rates.csv");
    add_common(c_refine);
    c_refine->add_option("-l,--levels", levels, "refinement levels")->check(CLI::Range(2, 8));
    CLI::App* c_compare =
        app.add_subcommand("compare", "configured tau vs tau=0 -> compare.csv");
    add_common(c_compare);
    CLI::App* c_ladder = app.add_subcommand("ladder", "level-set energies -> ladder.csv");
    add_common(c_ladder);
    CLI::App* c_certify =
        app.add_subcommand("certify", "pass/fail per diagnostic -> certify.json");
    add_common(c_certify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_run->parsed()) return bnsf::cmd_run(load_with_overrides(config_path, out_dir));
        if (c_refine->parsed())
            return bnsf::cmd_refine(load_with_overrides(config_path, out_dir), levels);
        if (c_compare->parsed())
            return bnsf::cmd_compare(load_with_overrides(config_path, out_dir));
        if (c_ladder->parsed())
            return bnsf::cmd_ladder(load_with_overrides(config_path, out_dir));
        if (c_certify->parsed())
            return bnsf::cmd_certify(load_with_overrides(config_path, out_dir));
    } catch (const bnsf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return bnsf::exit_config_error;
    } catch (const bnsf::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return bnsf::exit_no_convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bnsf::exit_config_error;
    }
    return bnsf::exit_ok;
}
