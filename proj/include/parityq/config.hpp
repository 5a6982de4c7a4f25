#pragma once

// Configuration ingestion and report/serialization helpers for the command
// line tool. Config files are JSON with explicit unit suffixes on every
// physical quantity ("25 MHz", "10 ns"); values are normalized to GHz and ns
// internally. Unknown keys are rejected.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "parityq/fidelity.hpp"
#include "parityq/gate_synthesis.hpp"
#include "parityq/lattice.hpp"
#include "parityq/pauli.hpp"

namespace parityq {

inline constexpr const char* kVersion = "1.0.0";

// Process exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitCap = 4;

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::pair<double, std::string> split_quantity(const std::string& text) {
    std::istringstream is(text);
    double value;
    std::string unit, extra;
    if (!(is >> value) || !(is >> unit) || (is >> extra))
        throw ConfigError("malformed quantity '" + text + "' (expected \"<value> <unit>\")");
    return {value, unit};
}

}  // namespace detail

inline double parse_frequency_ghz(const std::string& text) {
    auto [value, unit] = detail::split_quantity(text);
    if (unit == "GHz") return value;
    if (unit == "MHz") return value * 1e-3;
    if (unit == "kHz") return value * 1e-6;
    throw ConfigError("unknown frequency unit '" + unit + "' in '" + text + "'");
}

inline double parse_time_ns(const std::string& text) {
    auto [value, unit] = detail::split_quantity(text);
    if (unit == "ns") return value;
    if (unit == "us") return value * 1e3;
    if (unit == "ms") return value * 1e6;
    throw ConfigError("unknown time unit '" + unit + "' in '" + text + "'");
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

inline double freq_field(const nlohmann::json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return parse_frequency_ghz(obj.at(key).get<std::string>());
}

inline double time_field(const nlohmann::json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return parse_time_ns(obj.at(key).get<std::string>());
}

}  // namespace detail

struct SweepRequest {
    SweepParameter parameter = SweepParameter::Tunneling;
    std::vector<double> values;  // GHz or ns depending on the parameter
    bool rescale_pulses = true;
};

struct InjectedError {
    Pauli pauli = Pauli::X;
    int row = 0;
    int col = 0;
};

struct RunConfig {
    std::string lattice = "testbed-9q";  // or "surface"
    int rows = 5;
    int cols = 5;
    double delta = 0.025;                       // GHz, all qubits
    std::array<double, 4> xi{0.4, 0.4, 0.4, 0.4};  // testbed: up,down,left,right
    double xi_z = 0.4;                          // surface: measure-Z couplings
    double xi_x = 0.6;                          // surface: measure-X couplings
    double control_bias = 2.0;                  // GHz
    double tau = 10.0;                          // ns
    double dt = 0.1;                            // ns
    Engine engine = Engine::Exact;
    TestbedGate gate = TestbedGate::FourActive;
    std::vector<std::string> flip_configs;      // gate = "general"
    std::optional<std::vector<PulseStep>> pulse_steps;
    std::optional<SweepRequest> sweep_request;
    std::vector<InjectedError> errors;
    int dense_cap = kDefaultDenseCap;
    int register_cap = kDefaultRegisterCap;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    nlohmann::json resolved() const;
    TestbedExperiment to_experiment() const;
    LatticeSpec build_lattice() const;
};

namespace detail {

inline TestbedGate parse_gate(const std::string& name) {
    if (name == "four-active") return TestbedGate::FourActive;
    if (name == "two-active-vertical") return TestbedGate::TwoActiveVertical;
    if (name == "two-active-horizontal") return TestbedGate::TwoActiveHorizontal;
    if (name == "cnot") return TestbedGate::Cnot;
    if (name == "general") return TestbedGate::General;
    throw ConfigError("unknown gate '" + name + "'");
}

inline const char* gate_name(TestbedGate g) {
    switch (g) {
        case TestbedGate::FourActive: return "four-active";
        case TestbedGate::TwoActiveVertical: return "two-active-vertical";
        case TestbedGate::TwoActiveHorizontal: return "two-active-horizontal";
        case TestbedGate::Cnot: return "cnot";
        case TestbedGate::General: return "general";
    }
    return "?";
}

inline SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "tunneling") return SweepParameter::Tunneling;
    if (name == "coupling_all") return SweepParameter::CouplingAll;
    if (name == "control_bias") return SweepParameter::ControlBias;
    if (name == "pulse_magnitudes") return SweepParameter::PulseMagnitudes;
    if (name == "tau") return SweepParameter::Tau;
    if (name == "dt") return SweepParameter::Dt;
    throw ConfigError("unknown sweep parameter '" + name + "'");
}

inline const char* sweep_parameter_key(SweepParameter p) {
    switch (p) {
        case SweepParameter::Tunneling: return "tunneling";
        case SweepParameter::CouplingAll: return "coupling_all";
        case SweepParameter::ControlBias: return "control_bias";
        case SweepParameter::PulseMagnitudes: return "pulse_magnitudes";
        case SweepParameter::Tau: return "tau";
        case SweepParameter::Dt: return "dt";
    }
    return "?";
}

inline bool sweep_parameter_is_time(SweepParameter p) {
    return p == SweepParameter::Tau || p == SweepParameter::Dt;
}

inline Pauli parse_pauli_letter(const std::string& s) {
    if (s == "X") return Pauli::X;
    if (s == "Y") return Pauli::Y;
    if (s == "Z") return Pauli::Z;
    throw ConfigError("injected error pauli must be X, Y or Z (got '" + s + "')");
}

}  // namespace detail

inline RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    detail::reject_unknown_keys(
        j,
        {"lattice", "rows", "cols", "tunneling", "couplings", "control_bias", "tau", "dt",
         "engine", "gate", "flip_configs", "pulse_steps", "sweep", "errors", "dense_cap",
         "register_cap"},
        "config");
    RunConfig cfg;
    try {
        if (j.contains("lattice")) cfg.lattice = j.at("lattice").get<std::string>();
        if (cfg.lattice != "testbed-9q" && cfg.lattice != "surface")
            throw ConfigError("lattice must be 'testbed-9q' or 'surface'");
        if (j.contains("rows")) cfg.rows = j.at("rows").get<int>();
        if (j.contains("cols")) cfg.cols = j.at("cols").get<int>();
        cfg.delta = detail::freq_field(j, "tunneling", cfg.delta);
        cfg.control_bias = detail::freq_field(j, "control_bias", cfg.control_bias);
        cfg.tau = detail::time_field(j, "tau", cfg.tau);
        cfg.dt = detail::time_field(j, "dt", cfg.dt);
        if (j.contains("couplings")) {
            const auto& c = j.at("couplings");
            if (cfg.lattice == "testbed-9q") {
                detail::reject_unknown_keys(c, {"up", "down", "left", "right", "all"}, "couplings");
                if (c.contains("all")) {
                    double v = parse_frequency_ghz(c.at("all").get<std::string>());
                    cfg.xi = {v, v, v, v};
                }
                cfg.xi[0] = detail::freq_field(c, "up", cfg.xi[0]);
                cfg.xi[1] = detail::freq_field(c, "down", cfg.xi[1]);
                cfg.xi[2] = detail::freq_field(c, "left", cfg.xi[2]);
                cfg.xi[3] = detail::freq_field(c, "right", cfg.xi[3]);
            } else {
                detail::reject_unknown_keys(c, {"measure_z", "measure_x"}, "couplings");
                cfg.xi_z = detail::freq_field(c, "measure_z", cfg.xi_z);
                cfg.xi_x = detail::freq_field(c, "measure_x", cfg.xi_x);
            }
        }
        if (j.contains("engine")) {
            std::string e = j.at("engine").get<std::string>();
            if (e == "exact")
                cfg.engine = Engine::Exact;
            else if (e == "trotter")
                cfg.engine = Engine::Trotter;
            else
                throw ConfigError("engine must be 'exact' or 'trotter'");
        }
        if (j.contains("gate")) cfg.gate = detail::parse_gate(j.at("gate").get<std::string>());
        if (j.contains("flip_configs"))
            for (const auto& f : j.at("flip_configs"))
                cfg.flip_configs.push_back(f.get<std::string>());
        if (j.contains("pulse_steps")) {
            std::vector<PulseStep> steps;
            for (const auto& s : j.at("pulse_steps")) {
                detail::reject_unknown_keys(s, {"bias", "duration"}, "pulse_steps entry");
                steps.push_back({parse_frequency_ghz(s.at("bias").get<std::string>()),
                                 parse_time_ns(s.at("duration").get<std::string>())});
            }
            cfg.pulse_steps = std::move(steps);
        }
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            detail::reject_unknown_keys(s, {"parameter", "values", "range", "rescale_pulses"},
                                        "sweep");
            SweepRequest req;
            req.parameter = detail::parse_sweep_parameter(s.at("parameter").get<std::string>());
            const bool time_unit = detail::sweep_parameter_is_time(req.parameter);
            auto parse_value = [&](const std::string& text) {
                return time_unit ? parse_time_ns(text) : parse_frequency_ghz(text);
            };
            if (s.contains("values")) {
                for (const auto& v : s.at("values")) req.values.push_back(parse_value(v.get<std::string>()));
            } else if (s.contains("range")) {
                const auto& r = s.at("range");
                detail::reject_unknown_keys(r, {"from", "to", "points"}, "sweep range");
                const double from = parse_value(r.at("from").get<std::string>());
                const double to = parse_value(r.at("to").get<std::string>());
                const int points = r.at("points").get<int>();
                if (points < 2) throw ConfigError("sweep range needs at least 2 points");
                for (int i = 0; i < points; ++i)
                    req.values.push_back(from + (to - from) * i / (points - 1));
            } else {
                throw ConfigError("sweep needs 'values' or 'range'");
            }
            if (s.contains("rescale_pulses")) req.rescale_pulses = s.at("rescale_pulses").get<bool>();
            cfg.sweep_request = std::move(req);
        }
        if (j.contains("errors")) {
            for (const auto& e : j.at("errors")) {
                detail::reject_unknown_keys(e, {"pauli", "row", "col"}, "errors entry");
                cfg.errors.push_back({detail::parse_pauli_letter(e.at("pauli").get<std::string>()),
                                      e.at("row").get<int>(), e.at("col").get<int>()});
            }
        }
        if (j.contains("dense_cap")) cfg.dense_cap = j.at("dense_cap").get<int>();
        if (j.contains("register_cap")) cfg.register_cap = j.at("register_cap").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

inline RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

inline nlohmann::json RunConfig::resolved() const {
    nlohmann::json j;
    j["lattice"] = lattice;
    if (lattice == "surface") {
        j["rows"] = rows;
        j["cols"] = cols;
        j["couplings"] = {{"measure_z", format_sig6(xi_z) + " GHz"},
                          {"measure_x", format_sig6(xi_x) + " GHz"}};
    } else {
        j["couplings"] = {{"up", format_sig6(xi[0]) + " GHz"},
                          {"down", format_sig6(xi[1]) + " GHz"},
                          {"left", format_sig6(xi[2]) + " GHz"},
                          {"right", format_sig6(xi[3]) + " GHz"}};
        j["gate"] = detail::gate_name(gate);
    }
    j["tunneling"] = format_sig6(delta * 1e3) + " MHz";
    j["control_bias"] = format_sig6(control_bias) + " GHz";
    j["tau"] = format_sig6(tau) + " ns";
    j["dt"] = format_sig6(dt) + " ns";
    j["engine"] = engine == Engine::Exact ? "exact" : "trotter";
    if (!flip_configs.empty()) j["flip_configs"] = flip_configs;
    if (pulse_steps) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : *pulse_steps)
            steps.push_back({{"bias", format_sig6(s.bias) + " GHz"},
                             {"duration", format_sig6(s.duration) + " ns"}});
        j["pulse_steps"] = steps;
    }
    if (sweep_request) {
        nlohmann::json sv = nlohmann::json::array();
        const char* unit = detail::sweep_parameter_is_time(sweep_request->parameter) ? " ns" : " GHz";
        for (double v : sweep_request->values) sv.push_back(format_sig6(v) + unit);
        j["sweep"] = {{"parameter", detail::sweep_parameter_key(sweep_request->parameter)},
                      {"values", sv},
                      {"rescale_pulses", sweep_request->rescale_pulses}};
    }
    if (!errors.empty()) {
        nlohmann::json errs = nlohmann::json::array();
        for (const auto& e : errors)
            errs.push_back({{"pauli", std::string(1, pauli_char(e.pauli))},
                            {"row", e.row},
                            {"col", e.col}});
        j["errors"] = errs;
    }
    j["dense_cap"] = dense_cap;
    j["register_cap"] = register_cap;
    return j;
}

inline TestbedExperiment RunConfig::to_experiment() const {
    if (lattice != "testbed-9q")
        throw ConfigError("gate experiments run on the testbed-9q lattice; use the surface command "
                          "for surface layouts");
    TestbedExperiment ex;
    ex.delta = delta;
    ex.xi = xi;
    ex.control_bias = control_bias;
    ex.tau = tau;
    ex.dt = dt;
    ex.gate = gate;
    ex.engine = engine;
    ex.pulse_override = pulse_steps;
    ex.dense_cap = dense_cap;
    if (gate == TestbedGate::General) {
        if (flip_configs.empty())
            throw ConfigError("gate 'general' requires flip_configs");
        SubspaceGateSpec spec;
        spec.target = Testbed9q::target;
        spec.controls = {Testbed9q::up, Testbed9q::down, Testbed9q::left, Testbed9q::right};
        spec.assignment.assign(16, GateAction::Identity);
        for (const auto& f : flip_configs) {
            if (f.size() != 4 || f.find_first_not_of("01") != std::string::npos)
                throw ConfigError("flip_configs entries must be 4-bit strings over {0,1} "
                                  "(up,down,left,right), got '" + f + "'");
            std::size_t cfg = 0;
            for (char c : f) cfg = (cfg << 1) | static_cast<std::size_t>(c - '0');
            spec.assignment[cfg] = GateAction::FlipX;
        }
        ex.custom_spec = std::move(spec);
    }
    return ex;
}

inline LatticeSpec RunConfig::build_lattice() const {
    if (lattice == "surface") {
        try {
            return build_surface_layout(rows, cols, xi_z, xi_x);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return build_testbed_9q(xi[0], xi[1], xi[2], xi[3]);
}

// ---------------------------------------------------------------------------
// Output formatting
// ---------------------------------------------------------------------------

// Leading comment block carried by every emitted file: tool version plus the
// fully resolved configuration.
inline std::string file_header(const RunConfig& cfg) {
    return std::string("# parityq ") + kVersion + "\n# config: " + cfg.resolved().dump() + "\n";
}

inline nlohmann::json schedule_to_json(const PulseSchedule& schedule) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : schedule.steps)
        steps.push_back({{"bias", format_sig6(s.bias) + " GHz"},
                         {"duration", format_sig6(s.duration) + " ns"}});
    return {{"steps", steps},
            {"tracked_phase", schedule.tracked_phase.imag() < 0 ? "-i" : "+1"},
            {"total_duration", format_sig6(schedule.total_duration()) + " ns"}};
}

inline nlohmann::json lattice_to_json(const LatticeSpec& spec) {
    nlohmann::json roles = nlohmann::json::array();
    for (int r = 0; r < spec.rows; ++r) {
        std::string row;
        for (int c = 0; c < spec.cols; ++c) {
            switch (spec.role(spec.site(r, c))) {
                case SiteRole::Data: row += 'D'; break;
                case SiteRole::MeasureX: row += 'X'; break;
                case SiteRole::MeasureZ: row += 'Z'; break;
                case SiteRole::Plain: row += 'o'; break;
            }
        }
        roles.push_back(row);
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [edge, xi] : spec.couplings) {
        auto [ar, ac] = spec.coords(edge.first);
        auto [br, bc] = spec.coords(edge.second);
        edges.push_back({{"from", {ar, ac}}, {"to", {br, bc}}, {"coupling", format_sig6(xi) + " GHz"}});
    }
    return {{"rows", spec.rows}, {"cols", spec.cols}, {"roles", roles}, {"edges", edges}};
}

}  // namespace parityq
