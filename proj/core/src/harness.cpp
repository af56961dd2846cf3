#include "pvmhd/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pvmhd/geometry.hpp"
#include "pvmhd/pressure.hpp"

namespace pvmhd {

using nlohmann::json;

json config_to_json(const Config& c) {
    json j;
    j["grid"] = {{"nr", c.nr}, {"nz", c.nz}, {"r0", c.r0}, {"lz", c.lz}};
    j["time"] = {{"t_final", c.evolve.t_final},
                 {"dt", c.evolve.dt},
                 {"cfl_safety", c.evolve.cfl_safety}};
    j["picard"] = {{"psi_tol", c.evolve.psi_tol}, {"n_max", c.evolve.n_max}};
    j["solver"] = {{"rel_tol", c.evolve.solver_tol}};
    j["physics"] = {{"eps", c.evolve.eps},
                    {"c_initial", c.evolve.c_initial},
                    {"shell_radius", c.evolve.shell_radius},
                    {"delta_min", c.delta_min},
                    {"energy_tol", c.energy_tol},
                    {"seed_div_tol", c.seed_div_tol},
                    {"norm_order", c.norm_order}};
    j["preset"] = {{"name", c.preset}, {"c0", c.c0},     {"c1", c.c1},
                   {"omega", c.omega}, {"amp", c.amp},   {"case_id", c.case_id}};
    j["output"] = {{"dir", c.out_dir},
                   {"prefix", c.prefix},
                   {"snapshot_every", c.snapshot_every}};
    return j;
}

namespace {

void check_known_keys(const json& j, const json& ref, const std::string& path) {
    for (const auto& item : j.items()) {
        if (!ref.contains(item.key()))
            throw std::invalid_argument("unknown config key: " + path + item.key());
        if (item.value().is_object() && ref[item.key()].is_object())
            check_known_keys(item.value(), ref[item.key()], path + item.key() + ".");
    }
}

template <typename T>
void fetch(const json& j, const char* section, const char* key, T& out) {
    if (j.contains(section) && j[section].contains(key))
        j[section][key].get_to(out);
}

}  // namespace

Config config_from_json(const json& j) {
    Config c;
    check_known_keys(j, config_to_json(c), "");
    fetch(j, "grid", "nr", c.nr);
    fetch(j, "grid", "nz", c.nz);
    fetch(j, "grid", "r0", c.r0);
    fetch(j, "grid", "lz", c.lz);
    fetch(j, "time", "t_final", c.evolve.t_final);
    fetch(j, "time", "dt", c.evolve.dt);
    fetch(j, "time", "cfl_safety", c.evolve.cfl_safety);
    fetch(j, "picard", "psi_tol", c.evolve.psi_tol);
    fetch(j, "picard", "n_max", c.evolve.n_max);
    fetch(j, "solver", "rel_tol", c.evolve.solver_tol);
    fetch(j, "physics", "eps", c.evolve.eps);
    fetch(j, "physics", "c_initial", c.evolve.c_initial);
    fetch(j, "physics", "shell_radius", c.evolve.shell_radius);
    fetch(j, "physics", "delta_min", c.delta_min);
    fetch(j, "physics", "energy_tol", c.energy_tol);
    fetch(j, "physics", "seed_div_tol", c.seed_div_tol);
    fetch(j, "physics", "norm_order", c.norm_order);
    fetch(j, "preset", "name", c.preset);
    fetch(j, "preset", "c0", c.c0);
    fetch(j, "preset", "c1", c.c1);
    fetch(j, "preset", "omega", c.omega);
    fetch(j, "preset", "amp", c.amp);
    fetch(j, "preset", "case_id", c.case_id);
    fetch(j, "output", "dir", c.out_dir);
    fetch(j, "output", "prefix", c.prefix);
    fetch(j, "output", "snapshot_every", c.snapshot_every);
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void apply_override(json& j, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override must look like section.key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string part = path.substr(start, dot - start);
        if (part.empty())
            throw std::invalid_argument("bad override path: " + path);
        if (dot == std::string::npos) {
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

std::string config_hash(const json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string resolve_output_dir(const Config& c, const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("PVMHD_OUTPUT_DIR"); env && *env) return env;
    return c.out_dir;
}

ProblemSetup make_problem(const Config& c) {
    Grid g(c.nr, c.nz, c.r0, c.lz);
    SeedField seed;
    seed.br = g.zeros();
    seed.btheta = g.zeros();
    seed.bz = g.zeros();
    State init = rest_state(g, c.evolve.c_initial);

    if (c.preset == "rest") {
        for (std::size_t p = 0; p < g.size(); ++p) seed.bz[p] = 1.0;
    } else if (c.preset == "screw_pinch" || c.preset == "perturbed_pinch") {
        for (std::size_t i = 0; i < g.nr; ++i)
            for (std::size_t j = 0; j < g.nz; ++j) {
                seed.btheta[i * g.nz + j] = c.c0 * g.r[i];
                seed.bz[i * g.nz + j] = c.c1;
            }
        if (c.preset == "perturbed_pinch") {
            // divergence-free poloidal perturbation from the stream function
            // psi = amp r^2 sin z
            for (std::size_t i = 0; i < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j) {
                    init.vr[i * g.nz + j] = -c.amp * g.r[i] * std::cos(g.z[j]);
                    init.vz[i * g.nz + j] = 2.0 * c.amp * std::sin(g.z[j]);
                }
        }
    } else if (c.preset == "rigid_rotation") {
        for (std::size_t i = 0; i < g.nr; ++i)
            for (std::size_t j = 0; j < g.nz; ++j)
                init.vtheta[i * g.nz + j] = c.omega * g.r[i];
    } else {
        throw std::invalid_argument("unknown preset: " + c.preset +
                                    " (expected rest, screw_pinch, rigid_rotation or "
                                    "perturbed_pinch)");
    }
    return {std::move(g), std::move(seed), std::move(init)};
}

void write_snapshot(const std::string& path, const Grid& g, const State& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out << "r,z,R,Z,Theta_hat,vr,vtheta,vz,q\n";
    char line[512];
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const std::size_t p = i * g.nz + j;
            std::snprintf(line, sizeof line,
                          "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          g.r[i], g.z[j], g.r[i] + s.dispR[p], g.z[j] + s.dispZ[p],
                          s.thetaHat[p], s.vr[p], s.vtheta[p], s.vz[p], s.q[p]);
            out << line;
        }
}

State read_snapshot(const std::string& path, const Grid& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (header != "r,z,R,Z,Theta_hat,vr,vtheta,vz,q")
        throw std::runtime_error("read_snapshot: unexpected header in " + path);
    State s = rest_state(g, 0.0);
    std::string line;
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            if (!std::getline(in, line))
                throw std::runtime_error("read_snapshot: truncated file " + path);
            double col[9];
            const char* ptr = line.c_str();
            char* end = nullptr;
            for (int k = 0; k < 9; ++k) {
                col[k] = std::strtod(ptr, &end);
                if (ptr == end)
                    throw std::runtime_error("read_snapshot: bad row in " + path);
                ptr = (*end == ',') ? end + 1 : end;
            }
            const std::size_t p = i * g.nz + j;
            s.dispR[p] = col[2] - g.r[i];
            s.dispZ[p] = col[3] - g.z[j];
            s.thetaHat[p] = col[4];
            s.vr[p] = col[5];
            s.vtheta[p] = col[6];
            s.vz[p] = col[7];
            s.q[p] = col[8];
        }
    return s;
}

namespace {

std::string snapshot_name(const std::string& prefix, std::size_t step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%06zu.csv", step);
    return prefix + buf;
}

}  // namespace

SimulationOutput run_simulation_detailed(const Config& c, std::ostream* log) {
    SimulationOutput out;
    RunReport& rep = out.report;

    const json cfg_json = config_to_json(c);
    rep.digest = config_hash(cfg_json);

    ProblemSetup setup = make_problem(c);
    const Grid& g = setup.grid;

    rep.seed = check_seed(g, setup.seed);
    const bool inadmissible =
        rep.seed.div_residual > c.seed_div_tol || rep.seed.wall_br > c.seed_div_tol;

    std::filesystem::create_directories(c.out_dir);
    const std::string base = c.out_dir + "/" + c.prefix;
    rep.summary_path = base + "_summary.json";

    MonitorParams mp;
    mp.norm_order = c.norm_order;
    mp.energy_tol = c.energy_tol;
    mp.delta_min = c.delta_min;

    std::vector<MonitorRecord> records;
    if (!inadmissible) {
        out.picard = picard_iterate(g, setup.seed, c.evolve, setup.initial);
        rep.psi = out.picard.psi;
        rep.converged = out.picard.converged;
        rep.diverged = out.picard.diverged;
        const double psi_last = rep.psi.empty() ? 0.0 : rep.psi.back();
        records = monitor_trajectory(g, setup.seed, out.picard.traj, mp, psi_last);
        rep.flags = evaluate_flags(records, mp);
        rep.initial_energy = records.front().energy;
        rep.final_energy = records.back().energy;
        rep.final_c = out.picard.traj.nodes.back().c;
        rep.steps = out.picard.traj.steps();
        rep.dt = out.picard.traj.dt;

        rep.monitors_path = base + "_monitors.ndjson";
        write_ndjson(rep.monitors_path, records);
        if (c.snapshot_every > 0)
            for (std::size_t k = 0; k < rep.steps; k += c.snapshot_every)
                write_snapshot(c.out_dir + "/" + snapshot_name(c.prefix, k), g,
                               out.picard.traj.nodes[k]);
        rep.final_snapshot_path = c.out_dir + "/" + snapshot_name(c.prefix, rep.steps);
        write_snapshot(rep.final_snapshot_path, g, out.picard.traj.nodes.back());

        if (!rep.converged || rep.diverged)
            rep.exit_code = exit_no_convergence;
        else if (rep.flags.any())
            rep.exit_code = exit_violation;
    } else {
        rep.exit_code = exit_violation;
    }

    json summary;
    summary["config"] = cfg_json;
    summary["config_hash"] = rep.digest;
    summary["seed"] = {{"div_residual", rep.seed.div_residual},
                       {"wall_br", rep.seed.wall_br},
                       {"delta", rep.seed.delta},
                       {"admissible", !inadmissible}};
    summary["psi"] = rep.psi;
    summary["converged"] = rep.converged;
    summary["diverged"] = rep.diverged;
    summary["flags"] = {{"energy_growth", rep.flags.energy_growth},
                        {"assumption", rep.flags.assumption},
                        {"collinearity", rep.flags.collinearity}};
    summary["initial_energy"] = rep.initial_energy;
    summary["final_energy"] = rep.final_energy;
    summary["final_c"] = rep.final_c;
    summary["steps"] = rep.steps;
    summary["dt"] = rep.dt;
    summary["exit_code"] = rep.exit_code;
    {
        std::ofstream s(rep.summary_path, std::ios::binary);
        if (!s) throw std::runtime_error("cannot write " + rep.summary_path);
        s << summary.dump(2) << "\n";
    }

    if (log) {
        *log << "configuration " << rep.digest << ", " << rep.steps << " steps, dt "
             << rep.dt << "\n";
        for (std::size_t n = 0; n < rep.psi.size(); ++n)
            *log << "  pass " << n + 1 << "  psi " << std::scientific
                 << std::setprecision(3) << rep.psi[n] << std::defaultfloat << "\n";
        if (inadmissible)
            *log << "seed rejected: div residual " << rep.seed.div_residual
                 << ", wall br " << rep.seed.wall_br << "\n";
    }
    return out;
}

RunReport run_simulation(const Config& c, std::ostream* log) {
    return run_simulation_detailed(c, log).report;
}

MmsCase make_mms_case(const std::string& id, const Grid& g) {
    MmsCase mc;
    mc.dispR = g.zeros();
    mc.dispZ = g.zeros();
    mc.q_exact = g.zeros();
    mc.forcing = g.zeros();
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const double r = g.r[i], z = g.z[j];
            const std::size_t p = i * g.nz + j;
            if (id == "identity") {
                mc.q_exact[p] = r * r;
                mc.forcing[p] = 4.0;
            } else if (id == "shear") {
                const double s = std::sin(z);
                mc.dispR[p] = (2.0 / 25.0) * r * s;
                mc.q_exact[p] = r * r;
                mc.forcing[p] = (4.0 / 25.0) *
                                (-4.0 * r * r * s * s + 25.0 * r * r * s +
                                 6.0 * r * r + 625.0) /
                                (2.0 * s + 25.0);
            } else if (id == "stretch") {
                const double s = std::sin(z);
                mc.dispR[p] = (1.0 / 10.0) * r;
                mc.q_exact[p] = 0.5 * r * r * (s + 2.0);
                mc.forcing[p] =
                    -11.0 / 20.0 * r * r * s + (20.0 / 11.0) * s + 40.0 / 11.0;
            } else {
                throw std::invalid_argument("unknown manufactured case: " + id);
            }
        }
    return mc;
}

namespace {

struct CheckPrinter {
    std::ostream& out;
    bool all_ok = true;

    void line(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) out << "  " << detail;
        out << "\n";
        all_ok = all_ok && ok;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// residual decays at second order, or it already sits at the rounding floor
bool order_or_floor(const std::vector<double>& res, double floor, double min_order) {
    if (res.back() <= floor) return true;
    for (std::size_t k = 1; k < res.size(); ++k) {
        if (res[k] <= floor) continue;
        const double slope = std::log2(res[k - 1] / res[k]);
        if (slope < min_order) return false;
    }
    return true;
}

}  // namespace

int driver_verify(const Config& c, std::ostream& out) {
    CheckPrinter pr{out};
    const double floor = 1e-12;
    const std::vector<std::size_t> ns = {32, 64, 128};

    // canonical volume-preserving shear (R, Z) = (r, z + 0.1 sin r)
    {
        std::vector<double> piola, dj, vol;
        for (std::size_t n : ns) {
            Grid g(n, n, 1.0, c.lz);
            Field dispZ = g.zeros();
            for (std::size_t i = 0; i < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j)
                    dispZ[i * g.nz + j] = 0.1 * std::sin(g.r[i]);
            const Metric m = build_metric(g, g.zeros(), dispZ);
            const IdentityResiduals res = identity_residuals(g, m);
            piola.push_back(std::max(res.piola_r, res.piola_z));
            dj.push_back(std::max(res.dj_r, res.dj_z));
            vol.push_back(interior_max(g, incompressibility_residual(g, m)));
            out << "  shear map n=" << n << "  piola " << fmt(piola.back()) << "  dJ "
                << fmt(dj.back()) << "  volume " << fmt(vol.back()) << "\n";
        }
        pr.line(order_or_floor(piola, floor, 1.9), "identity.cofactor_divergence", "");
        pr.line(order_or_floor(dj, floor, 1.9), "identity.jacobian_rate", "");
        pr.line(vol.back() <= floor, "identity.volume_preservation", "");
    }

    // transcendental map: genuine second-order decay of the dJ defect
    {
        std::vector<double> piola, djr, djz;
        for (std::size_t n : ns) {
            Grid g(n, n, 1.0, c.lz);
            Field dispR = g.zeros(), dispZ = g.zeros();
            for (std::size_t i = 0; i < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j) {
                    dispR[i * g.nz + j] = 0.05 * std::sin(2.0 * g.r[i]) * std::cos(g.z[j]);
                    dispZ[i * g.nz + j] = 0.04 * std::cos(2.0 * g.r[i]) * std::sin(g.z[j]);
                }
            const IdentityResiduals res =
                identity_residuals(g, build_metric(g, dispR, dispZ));
            piola.push_back(std::max(res.piola_r, res.piola_z));
            djr.push_back(res.dj_r);
            djz.push_back(res.dj_z);
            out << "  curved map n=" << n << "  piola " << fmt(piola.back()) << "  dJ_r "
                << fmt(res.dj_r) << "  dJ_z " << fmt(res.dj_z) << "\n";
        }
        pr.line(order_or_floor(piola, floor, 1.9), "identity.cofactor_divergence_curved",
                "");
        pr.line(order_or_floor(djr, floor, 1.9) && order_or_floor(djz, floor, 1.9),
                "identity.jacobian_rate_curved", "");
    }

    // exact symmetry of the pressure operator with mixed coefficients
    {
        Grid g(24, 24, 1.0, c.lz);
        const MmsCase mc = make_mms_case("shear", g);
        const PressureSolver ps(g, build_metric(g, mc.dispR, mc.dispZ));
        std::mt19937 rng(7);
        std::normal_distribution<double> dist;
        const std::vector<double> zero(g.nz, 0.0);
        double worst = 0.0;
        double quad = 0.0;
        for (int rep = 0; rep < 6; ++rep) {
            Field u(g.size()), v(g.size());
            for (double& x : u) x = dist(rng);
            for (double& x : v) x = dist(rng);
            const Field au = ps.apply(u, zero);
            const Field av = ps.apply(v, zero);
            double uav = 0.0, vau = 0.0;
            for (std::size_t p = 0; p < g.size(); ++p) {
                vau += au[p] * v[p];
                uav += av[p] * u[p];
            }
            worst = std::max(worst, std::abs(vau - uav));
            if (rep == 0) {
                quad = 0.0;
                for (std::size_t p = 0; p < g.size(); ++p) quad += au[p] * u[p];
            }
        }
        pr.line(worst <= 1e-12, "pressure.operator_symmetry", "asym " + fmt(worst));
        pr.line(quad > 0.0, "pressure.operator_positivity", "<Au,u> " + fmt(quad));
    }

    // vacuum amplitude quadrature: linear rate integrates exactly
    {
        const double dt = 1e-3;
        double amp = 1.0;
        const int steps = 1000;
        for (int k = 0; k < steps; ++k)
            amp = advance_amplitude(amp, k * dt, (k + 1) * dt, dt);
        const double err = std::abs(amp - std::exp(0.5));
        pr.line(err <= 1e-6, "vacuum.amplitude_quadrature", "err " + fmt(err));
    }

    // admissibility of the configured preset
    {
        const ProblemSetup setup = make_problem(c);
        const SeedReport rep = check_seed(setup.grid, setup.seed);
        pr.line(rep.div_residual <= c.seed_div_tol && rep.wall_br <= c.seed_div_tol,
                "seed.admissibility",
                "div " + fmt(rep.div_residual) + " wall_br " + fmt(rep.wall_br));
        if (rep.delta < c.delta_min)
            out << "WARN seed.non_collinearity  delta " << fmt(rep.delta)
                << " below delta_min " << fmt(c.delta_min) << "\n";
    }

    return pr.all_ok ? exit_ok : exit_violation;
}

int driver_mms(const Config& c, std::ostream& out) {
    std::vector<std::string> cases;
    if (c.case_id == "all")
        cases = {"identity", "shear", "stretch"};
    else
        cases = {c.case_id};

    const std::vector<std::size_t> ns = {16, 32, 64};
    bool all_ok = true;
    for (const std::string& id : cases) {
        std::vector<double> errs;
        for (std::size_t n : ns) {
            Grid g(n, n, 1.0, c.lz);
            const MmsCase mc = make_mms_case(id, g);
            const PressureSolver ps(g, build_metric(g, mc.dispR, mc.dispZ));
            SolveStats st;
            const Field q = ps.solve(mc.forcing, wall_trace(g, mc.q_exact),
                                     c.evolve.solver_tol, &st);
            double err = 0.0;
            for (std::size_t p = 0; p < g.size(); ++p)
                err = std::max(err, std::abs(q[p] - mc.q_exact[p]));
            errs.push_back(err);
            out << "  " << id << " n=" << n << "  Linf " << fmt(err) << "  cg "
                << st.iterations << "\n";
        }
        const double slope = std::log2(errs[errs.size() - 2] / errs.back());
        const bool ok =
            errs.back() <= 5e-3 && (errs.back() <= 1e-12 || slope >= 1.9);
        out << (ok ? "PASS " : "FAIL ") << "mms." << id << "  slope "
            << (errs.back() <= 1e-12 ? std::string("(floor)") : fmt(slope)) << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? exit_ok : exit_violation;
}

int driver_equilibrium(const Config& c, std::ostream& out) {
    if (c.preset != "screw_pinch" && c.preset != "rigid_rotation")
        throw std::invalid_argument(
            "equilibrium check expects preset screw_pinch or rigid_rotation, got " +
            c.preset);

    const SimulationOutput sim = run_simulation_detailed(c, nullptr);
    if (!sim.report.converged) {
        out << "FAIL equilibrium." << c.preset << "  iteration did not converge\n";
        return exit_no_convergence;
    }
    const ProblemSetup setup = make_problem(c);
    const Grid& g = setup.grid;

    double max_v = 0.0, max_disp = 0.0, max_energy = 0.0;
    double vth_dev = 0.0, theta_spread = 0.0;
    const double e0 = energy(g, setup.seed, sim.picard.traj.nodes.front(), c.norm_order);
    for (const State& s : sim.picard.traj.nodes) {
        max_disp = std::max(max_disp, interior_max(g, s.dispR));
        max_energy = std::max(max_energy, energy(g, setup.seed, s, c.norm_order));
        if (c.preset == "screw_pinch") {
            max_v = std::max({max_v, interior_max(g, s.vr), interior_max(g, s.vtheta),
                              interior_max(g, s.vz)});
        } else {
            max_v = std::max({max_v, interior_max(g, s.vr), interior_max(g, s.vz)});
            Field dev(g.size());
            for (std::size_t i = 0; i < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j)
                    dev[i * g.nz + j] = s.vtheta[i * g.nz + j] - c.omega * g.r[i];
            vth_dev = std::max(vth_dev, interior_max(g, dev));
            double mean = 0.0;
            std::size_t count = 0;
            for (std::size_t i = 2; i + 2 < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j) {
                    mean += s.thetaHat[i * g.nz + j];
                    ++count;
                }
            mean /= static_cast<double>(count);
            Field spread(g.size(), 0.0);
            for (std::size_t i = 2; i + 2 < g.nr; ++i)
                for (std::size_t j = 0; j < g.nz; ++j)
                    spread[i * g.nz + j] = s.thetaHat[i * g.nz + j] - mean;
            theta_spread = std::max(theta_spread, interior_max(g, spread));
        }
    }
    const double ratio = e0 > 0.0 ? max_energy / e0 : 1.0;

    bool ok;
    if (c.preset == "screw_pinch") {
        ok = max_v <= 1e-2 && max_disp <= 1e-2 && ratio <= 1.05;
        out << "  max |v| " << fmt(max_v) << "  max |R-r| " << fmt(max_disp)
            << "  energy ratio " << fmt(ratio) << "\n";
    } else {
        ok = vth_dev <= 1e-2 && theta_spread <= 1e-3;
        out << "  max |vtheta - omega r| " << fmt(vth_dev) << "  angle spread "
            << fmt(theta_spread) << "  max poloidal |v| " << fmt(max_v) << "\n";
    }
    out << (ok ? "PASS " : "FAIL ") << "equilibrium." << c.preset << "\n";
    return ok ? exit_ok : exit_violation;
}

int driver_run(const Config& c, std::ostream& out, bool quiet) {
    const RunReport rep = run_simulation(c, quiet ? nullptr : &out);
    if (!quiet) {
        out << (rep.converged ? "converged" : (rep.diverged ? "diverged" : "not converged"))
            << " after " << rep.psi.size() << " pass(es)\n";
        if (rep.flags.any()) {
            out << "monitor flags:";
            if (rep.flags.energy_growth) out << " energy_growth";
            if (rep.flags.assumption) out << " assumption";
            if (rep.flags.collinearity) out << " collinearity";
            out << "\n";
        }
        out << "wrote " << rep.summary_path << "\n";
    }
    return rep.exit_code;
}

}  // namespace pvmhd
