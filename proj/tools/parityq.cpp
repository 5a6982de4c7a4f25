// Command line front end: pulse-schedule synthesis, gate simulation,
// parameter sweeps, and surface-code cycle reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "parityq/config.hpp"
#include "parityq/surface_code.hpp"

namespace {

using namespace parityq;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> dt_override;  // ns
    bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_dry_run = false) {
    cmd->add_option("--config", args.config_path, "JSON config file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: current)");
    cmd->add_option("--dt", args.dt_override, "override the trotter step in ns");
    if (with_dry_run)
        cmd->add_flag("--dry-run", args.dry_run, "print the condition audit, write no files");
}

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = RunConfig::from_file(args.config_path);
    if (args.dt_override) cfg.dt = *args.dt_override;
    return cfg;
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
    std::cout << "wrote " << path << "\n";
}

int cmd_synthesize(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    TestbedExperiment ex = cfg.to_experiment();
    SubspaceGateSpec spec = testbed_gate_spec(ex);
    PulseSchedule schedule = synthesize_testbed_schedule(ex, spec);
    ScheduleAudit audit = audit_schedule(spec, {ex.xi[0], ex.xi[1], ex.xi[2], ex.xi[3]}, ex.delta,
                                         ex.tau, schedule.biases());

    std::cout << "schedule:";
    for (const auto& s : schedule.steps)
        std::cout << " (" << format_sig6(s.bias) << " GHz, " << format_sig6(s.duration) << " ns)";
    std::cout << "\nfeasible: " << (audit.feasible() ? "yes" : "no") << "\n";
    if (args.dry_run) {
        std::cout << audit.to_string();
        return kExitOk;
    }
    nlohmann::json out = {{"tool", "parityq"},
                          {"version", kVersion},
                          {"config", cfg.resolved()},
                          {"schedule", schedule_to_json(schedule)}};
    write_file(args.out_dir, "schedule.json", out.dump(2) + "\n");
    write_file(args.out_dir, "audit.txt", file_header(cfg) + audit.to_string());
    return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    TestbedExperiment ex = cfg.to_experiment();
    ExperimentResult result = run_testbed_experiment(ex);

    std::ostringstream os;
    os << "gate: " << detail::gate_name(ex.gate) << "\n";
    os << "engine: " << (ex.engine == Engine::Exact ? "exact" : "trotter") << "\n";
    os << "dt: " << format_sig6(ex.dt) << " ns\n";
    os << "schedule:";
    for (const auto& s : result.schedule.steps)
        os << " (" << format_sig6(s.bias) << " GHz, " << format_sig6(s.duration) << " ns)";
    os << "\n";
    os << "fid: " << format_sig6(result.fid) << "\n";
    os << "fid_unit: " << format_sig6(result.fid_unit) << "\n";
    os << "worst_spectator_fidelity: " << format_sig6(result.worst_spectator) << "\n";
    os << "wall_seconds: " << format_sig6(result.wall_seconds) << "\n";
    std::cout << os.str();
    write_file(args.out_dir, "fidelity.txt", file_header(cfg) + os.str());
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    if (!cfg.sweep_request) throw ConfigError("sweep command requires a 'sweep' config block");
    TestbedExperiment ex = cfg.to_experiment();
    const SweepRequest& req = *cfg.sweep_request;
    std::vector<SweepRow> rows = sweep(ex, req.parameter, req.values, req.rescale_pulses);
    std::string csv = sweep_to_csv(req.parameter, rows);
    std::cout << csv;
    std::string header = file_header(cfg);
    write_file(args.out_dir, "sweep.csv", header + csv);
    return kExitOk;
}

int cmd_surface(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    if (cfg.lattice != "surface")
        throw ConfigError("surface command requires lattice = \"surface\"");
    LatticeSpec spec = cfg.build_lattice();

    std::ostringstream os;
    os << "layout (" << cfg.rows << "x" << cfg.cols << "):\n" << ascii_render(spec) << "\n";

    const std::array<CycleStep, 3> abc{CycleStep::VerticalX, CycleStep::HorizontalX,
                                       CycleStep::ZParity};
    const std::array<CycleStep, 3> acb{CycleStep::VerticalX, CycleStep::ZParity,
                                       CycleStep::HorizontalX};
    CycleSchedule three_abc = build_three_step_schedule(spec, abc);
    CycleSchedule three_acb = build_three_step_schedule(spec, acb);
    CycleSchedule two = build_two_step_schedule(spec);
    for (const auto& w : three_abc.warnings) os << "warning: " << w << "\n";

    os << "== three-step cycle, order vertical-x / horizontal-x / z-parity ==\n"
       << validate_ordering(three_abc, spec).to_string(spec) << "\n";
    os << "== three-step cycle, order vertical-x / z-parity / horizontal-x ==\n"
       << validate_ordering(three_acb, spec).to_string(spec) << "\n";
    os << "== two-step cycle ==\n" << validate_ordering(two, spec).to_string(spec) << "\n";

    Fig9Report fig9 = check_fig9_equivalence();
    os << "== phase-syndrome circuit equivalence ==\n";
    os << "reversed_cnot_deviation: " << format_sig6(fig9.dev_reversed) << "\n";
    os << "parity_gate_deviation: " << format_sig6(fig9.dev_parity) << "\n";
    os << "equivalent: " << (fig9.equivalent ? "yes" : "no") << "\n";
    os << "negative_control_detected: " << (fig9.negative_control_detected ? "yes" : "no")
       << "\n\n";

    DepthAccounting depth = depth_accounting(spec);
    os << "== multi-qubit depth (units of tau) ==\n";
    os << "two_step: " << depth.two_step << "\n";
    os << "three_step: " << depth.three_step << "\n";
    os << "conventional_cnot: " << depth.conventional << "\n\n";

    os << "== syndromes (three-step cycle) ==\n";
    auto print_syndrome = [&](const std::string& label, const PauliString& error) {
        auto syndrome = extract_syndrome(spec, error, three_abc);
        os << label << ":";
        for (const auto& [site, bit] : syndrome) {
            auto [r, c] = spec.coords(site);
            if (bit) os << " (" << r << "," << c << ")";
        }
        bool any = false;
        for (const auto& [site, bit] : syndrome) any = any || bit;
        if (!any) os << " clean";
        os << "\n";
    };
    print_syndrome("no error", PauliString::identity(spec.num_sites()));
    for (const auto& e : cfg.errors) {
        const int site = spec.site(e.row, e.col);
        if (spec.role(site) != SiteRole::Data)
            throw ConfigError("injected error at (" + std::to_string(e.row) + "," +
                              std::to_string(e.col) + ") does not hit a data qubit");
        PauliString err = PauliString::single(spec.num_sites(), site, e.pauli);
        print_syndrome(std::string(1, pauli_char(e.pauli)) + " on (" + std::to_string(e.row) +
                           "," + std::to_string(e.col) + ")",
                       err);
    }

    std::cout << os.str();
    write_file(args.out_dir, "surface.txt", file_header(cfg) + os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level parity-gate synthesis and surface-code scheduling for Ising-coupled "
                 "qubit grids"};
    app.set_version_flag("--version", std::string("parityq ") + parityq::kVersion);
    app.require_subcommand(1);

    CommonArgs synth_args, sim_args, sweep_args, surface_args;
    CLI::App* synth = app.add_subcommand("synthesize", "derive a pulse schedule and audit it");
    add_common(synth, synth_args, /*with_dry_run=*/true);
    CLI::App* sim = app.add_subcommand("simulate", "time-evolve a gate and report fidelities");
    add_common(sim, sim_args);
    CLI::App* swp = app.add_subcommand("sweep", "fidelity vs one swept parameter, CSV output");
    add_common(swp, sweep_args);
    CLI::App* surf = app.add_subcommand("surface", "surface-code schedules, validation, syndromes");
    add_common(surf, surface_args);

    try {
        app.parse(argc, argv);
        if (synth->parsed()) return cmd_synthesize(synth_args);
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (swp->parsed()) return cmd_sweep(sweep_args);
        if (surf->parsed()) return cmd_surface(surface_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const parityq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return parityq::kExitConfig;
    } catch (const parityq::SynthesisError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return parityq::kExitInfeasible;
    } catch (const parityq::DimensionCapError& e) {
        std::cerr << "dimension cap: " << e.what() << "\n";
        return parityq::kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return parityq::kExitOk;
}
