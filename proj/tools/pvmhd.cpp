#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvmhd/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-c,--config", o.config_path, "JSON configuration file");
    cmd->add_option("-o,--out", o.out_dir,
                    "output directory (beats PVMHD_OUTPUT_DIR and the config)");
    cmd->add_option("--override", o.overrides,
                    "section.key=value configuration override, repeatable");
}

pvmhd::Config build_config(const CommonOpts& o) {
    nlohmann::json j = pvmhd::config_to_json(pvmhd::Config{});
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in)
            throw std::invalid_argument("cannot open config file: " + o.config_path);
        nlohmann::json file = nlohmann::json::parse(in);
        j.merge_patch(file);
    }
    for (const std::string& assignment : o.overrides) pvmhd::apply_override(j, assignment);
    pvmhd::Config c = pvmhd::config_from_json(j);
    c.out_dir = pvmhd::resolve_output_dir(c, o.out_dir);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric plasma-vacuum free-boundary evolution"};
    app.require_subcommand(1);

    CommonOpts run_opts, verify_opts, mms_opts, eq_opts;
    bool quiet = false;
    std::string mms_case, eq_preset;

    CLI::App* run = app.add_subcommand("run", "evolve a configured problem");
    add_common(run, run_opts);
    run->add_flag("-q,--quiet", quiet, "suppress progress output");

    CLI::App* verify =
        app.add_subcommand("verify", "check the discrete structure identities");
    add_common(verify, verify_opts);

    CLI::App* mms = app.add_subcommand(
        "mms", "pressure-solve convergence against manufactured solutions");
    add_common(mms, mms_opts);
    CLI::Option* case_opt =
        mms->add_option("--case", mms_case, "identity, shear, stretch or all");

    CLI::App* eq = app.add_subcommand(
        "equilibrium", "hold a steady state and measure the drift");
    add_common(eq, eq_opts);
    CLI::Option* preset_opt =
        eq->add_option("--preset", eq_preset, "screw_pinch or rigid_rotation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pvmhd::exit_usage;
    }

    try {
        if (run->parsed())
            return pvmhd::driver_run(build_config(run_opts), std::cout, quiet);
        if (verify->parsed())
            return pvmhd::driver_verify(build_config(verify_opts), std::cout);
        if (mms->parsed()) {
            pvmhd::Config c = build_config(mms_opts);
            if (case_opt->count() > 0) c.case_id = mms_case;
            return pvmhd::driver_mms(c, std::cout);
        }
        pvmhd::Config c = build_config(eq_opts);
        if (preset_opt->count() > 0) c.preset = eq_preset;
        return pvmhd::driver_equilibrium(c, std::cout);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pvmhd::exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pvmhd::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pvmhd::exit_no_convergence;
    }
}
