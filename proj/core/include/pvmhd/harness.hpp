#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pvmhd/diagnostics.hpp"
#include "pvmhd/evolve.hpp"
#include "pvmhd/grid.hpp"
#include "pvmhd/magnetics.hpp"

namespace pvmhd {

// Process exit conventions shared by the drivers and the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_violation = 2,      // admissibility or monitor violation
    exit_no_convergence = 3, // iteration or solver failure
    exit_usage = 4,          // bad configuration or command line
};

struct Config {
    std::size_t nr = 64, nz = 64;
    double r0 = 1.0;
    double lz = 6.283185307179586;

    EvolveParams evolve;  // time step, iteration and solver controls

    double delta_min = 1e-6;
    double energy_tol = 0.05;
    double seed_div_tol = 1e-3;
    int norm_order = 4;

    std::string preset = "screw_pinch";
    double c0 = 0.5, c1 = 0.5;  // screw pinch field profile b0 = (0, c0 r, c1)
    double omega = 1.0;         // rigid rotation rate
    double amp = 0.01;          // poloidal perturbation amplitude
    std::string case_id = "all";  // manufactured-solution case, or all of them

    std::string out_dir = "out";
    std::string prefix = "run";
    std::size_t snapshot_every = 0;  // 0: final node only
};

nlohmann::json config_to_json(const Config& c);
Config config_from_json(const nlohmann::json& j);
Config load_config(const std::string& path);

// Apply "section.key=value" to a config JSON tree; the value is parsed as
// JSON when possible and taken as a string otherwise. Unknown paths are
// caught later by config_from_json.
void apply_override(nlohmann::json& j, const std::string& assignment);

// FNV-1a digest of the canonical (sorted-key, compact) dump.
std::string config_hash(const nlohmann::json& j);

// Output directory priority: explicit flag, then PVMHD_OUTPUT_DIR, then the
// config value.
std::string resolve_output_dir(const Config& c, const std::string& flag_value);

struct ProblemSetup {
    Grid grid;
    SeedField seed;
    State initial;
};
ProblemSetup make_problem(const Config& c);

void write_snapshot(const std::string& path, const Grid& g, const State& s);
State read_snapshot(const std::string& path, const Grid& g);

struct RunReport {
    int exit_code = exit_ok;
    bool converged = false;
    bool diverged = false;
    std::vector<double> psi;
    MonitorFlags flags;
    SeedReport seed;
    double initial_energy = 0.0;
    double final_energy = 0.0;
    double final_c = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
    std::string digest;
    std::string monitors_path, summary_path, final_snapshot_path;
};

struct SimulationOutput {
    RunReport report;
    PicardResult picard;
};

// Full pipeline: admissibility check, iteration to convergence, monitors,
// NDJSON + snapshot + summary files under c.out_dir.
SimulationOutput run_simulation_detailed(const Config& c, std::ostream* log = nullptr);
RunReport run_simulation(const Config& c, std::ostream* log = nullptr);

// Manufactured geometry/solution/forcing for the pressure solve.
struct MmsCase {
    Field dispR, dispZ, q_exact, forcing;
};
MmsCase make_mms_case(const std::string& id, const Grid& g);

int driver_run(const Config& c, std::ostream& out, bool quiet);
int driver_verify(const Config& c, std::ostream& out);
int driver_mms(const Config& c, std::ostream& out);
int driver_equilibrium(const Config& c, std::ostream& out);

}  // namespace pvmhd
