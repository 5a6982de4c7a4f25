#pragma once

// Ideal-gate construction, the two gate-fidelity metrics
//
//     Fid      = |Tr(U_ideal^dagger U)| / d
//     Fid+Unit = (Tr(U^dagger U) + |Tr(U_ideal^dagger U)|^2) / (d (d+1))
//
// and the 9-qubit testbed experiment harness with parameter sweeps.

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parityq/gate_synthesis.hpp"
#include "parityq/hamiltonian.hpp"
#include "parityq/lattice.hpp"
#include "parityq/propagator.hpp"

namespace parityq {

// Exactly unitary reference gate: block-diagonal over the control
// configurations of its SubspaceGateSpec, identity on every other qubit.
struct IdealGate {
    int num_qubits = 0;
    Eigen::MatrixXcd matrix;
    SubspaceGateSpec spec;
    std::complex<double> flip_phase{0.0, -1.0};
};

// Builds the ideal parity-gate unitary on a register: flipped subspaces act
// as flip_phase * X on the target, identity subspaces leave it alone.
inline IdealGate ideal_parity_unitary(const SubspaceGateSpec& spec, int register_size,
                                      std::complex<double> flip_phase = {0.0, -1.0}) {
    if (spec.target < 0 || spec.target >= register_size)
        throw std::invalid_argument("ideal_parity_unitary: target outside register");
    for (std::size_t i = 0; i < spec.controls.size(); ++i) {
        int c = spec.controls[i];
        if (c < 0 || c >= register_size)
            throw std::invalid_argument("ideal_parity_unitary: control outside register");
        if (c == spec.target)
            throw std::invalid_argument("ideal_parity_unitary: control collides with target");
        for (std::size_t j = i + 1; j < spec.controls.size(); ++j)
            if (spec.controls[j] == c)
                throw std::invalid_argument("ideal_parity_unitary: duplicate control");
    }
    const int n = register_size;
    const std::uint64_t dim = std::uint64_t{1} << n;
    IdealGate gate;
    gate.num_qubits = n;
    gate.spec = spec;
    gate.flip_phase = flip_phase;
    gate.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim));
    const std::uint64_t target_mask = std::uint64_t{1} << (n - 1 - spec.target);
    const std::size_t k = spec.controls.size();
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::size_t cfg = 0;
        for (std::size_t i = 0; i < k; ++i)
            cfg = (cfg << 1) | static_cast<std::size_t>(bit_of(b, spec.controls[i], n));
        if (spec.assignment[cfg] == GateAction::FlipX)
            gate.matrix(static_cast<Eigen::Index>(b ^ target_mask), static_cast<Eigen::Index>(b)) =
                flip_phase;
        else
            gate.matrix(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return gate;
}

inline double fid(const Eigen::MatrixXcd& u_ideal, const Eigen::MatrixXcd& u) {
    if (u_ideal.rows() != u.rows() || u_ideal.cols() != u.cols())
        throw std::invalid_argument("fid: dimension mismatch");
    const double d = static_cast<double>(u.rows());
    return std::abs((u_ideal.adjoint() * u).trace()) / d;
}

inline double fid_unit(const Eigen::MatrixXcd& u_ideal, const Eigen::MatrixXcd& u) {
    if (u_ideal.rows() != u.rows() || u_ideal.cols() != u.cols())
        throw std::invalid_argument("fid_unit: dimension mismatch");
    const double d = static_cast<double>(u.rows());
    const double overlap = std::abs((u_ideal.adjoint() * u).trace());
    const double unit = (u.adjoint() * u).trace().real();
    return (unit + overlap * overlap) / (d * (d + 1.0));
}

inline double fid(const IdealGate& g, const Eigen::MatrixXcd& u) { return fid(g.matrix, u); }
inline double fid_unit(const IdealGate& g, const Eigen::MatrixXcd& u) { return fid_unit(g.matrix, u); }

// Per-control-configuration fidelity of the target's 2x2 block against the
// requested action (flip_phase * X or identity). The register must contain
// exactly the target and its controls.
inline std::vector<double> subspace_fidelities(const Eigen::MatrixXcd& u,
                                               const SubspaceGateSpec& spec,
                                               std::complex<double> flip_phase = {0.0, -1.0}) {
    const std::size_t k = spec.controls.size();
    const int n = static_cast<int>(k) + 1;
    if (u.rows() != static_cast<Eigen::Index>(std::uint64_t{1} << n))
        throw std::invalid_argument(
            "subspace_fidelities: register must hold exactly the target and its controls");
    const std::uint64_t target_mask = std::uint64_t{1} << (n - 1 - spec.target);
    std::vector<double> out;
    out.reserve(spec.num_configs());
    for (std::size_t cfg = 0; cfg < spec.num_configs(); ++cfg) {
        std::uint64_t base = 0;
        for (std::size_t i = 0; i < k; ++i)
            if ((cfg >> (k - 1 - i)) & 1u)
                base |= std::uint64_t{1} << (n - 1 - spec.controls[i]);
        const Eigen::Index i0 = static_cast<Eigen::Index>(base);
        const Eigen::Index i1 = static_cast<Eigen::Index>(base | target_mask);
        Eigen::Matrix2cd block;
        block << u(i0, i0), u(i0, i1), u(i1, i0), u(i1, i1);
        std::complex<double> overlap;
        if (spec.assignment[cfg] == GateAction::FlipX)
            overlap = std::conj(flip_phase) * (block(1, 0) + block(0, 1));
        else
            overlap = block(0, 0) + block(1, 1);
        out.push_back(std::abs(overlap) / 2.0);
    }
    return out;
}

// Round-trip validation of a synthesized schedule on the star system of one
// target (register position 0) coupled to its controls (positions 1..k),
// with all controls held at `control_bias` and the same tunneling everywhere.
inline std::vector<double> verify_schedule_subspaces(const PulseSchedule& schedule,
                                                     const SubspaceGateSpec& logical_spec,
                                                     const std::vector<double>& xi, double delta,
                                                     double control_bias) {
    const std::size_t k = xi.size();
    if (logical_spec.num_controls() != k)
        throw std::invalid_argument("verify_schedule_subspaces: coupling count mismatch");
    IsingModel model;
    model.num_qubits = static_cast<int>(k) + 1;
    model.tunneling.assign(model.num_qubits, delta);
    model.bias.assign(model.num_qubits, control_bias);
    for (std::size_t i = 0; i < k; ++i)
        model.couplings.push_back({0, static_cast<int>(i) + 1, xi[i]});
    std::vector<UnitarySegment> segments;
    for (const auto& step : schedule.steps) segments.push_back({step.duration, {{0, step.bias}}});
    Eigen::MatrixXcd u = evolve_exact(model, segments);
    SubspaceGateSpec star = logical_spec;
    star.target = 0;
    star.controls.resize(k);
    for (std::size_t i = 0; i < k; ++i) star.controls[i] = static_cast<int>(i) + 1;
    return subspace_fidelities(u, star, schedule.tracked_phase);
}

// ---------------------------------------------------------------------------
// 9-qubit testbed experiments
// ---------------------------------------------------------------------------

enum class Engine { Exact, Trotter };

enum class TestbedGate { FourActive, TwoActiveVertical, TwoActiveHorizontal, Cnot, General };

struct TestbedExperiment {
    double delta = 0.025;                       // GHz, every qubit
    std::array<double, 4> xi{0.4, 0.4, 0.4, 0.4};  // up, down, left, right at the target
    double control_bias = 2.0;                  // GHz on every non-target qubit
    double tau = 10.0;                          // ns per pulse step
    double dt = 0.1;                            // ns (splitting engine only)
    TestbedGate gate = TestbedGate::FourActive;
    Engine engine = Engine::Exact;
    std::optional<std::vector<PulseStep>> pulse_override;  // replay / stale-pulse studies
    std::optional<SubspaceGateSpec> custom_spec;           // TestbedGate::General
    int dense_cap = kDefaultDenseCap;
};

struct ExperimentResult {
    PulseSchedule schedule;
    double fid = 0.0;
    double fid_unit = 0.0;
    double worst_spectator = 0.0;  // min basis-state fidelity over the corner qubits
    double wall_seconds = 0.0;
};

// Gate request -> subspace assignment on the testbed register.
inline SubspaceGateSpec testbed_gate_spec(const TestbedExperiment& ex) {
    const std::vector<int> controls{Testbed9q::up, Testbed9q::down, Testbed9q::left,
                                    Testbed9q::right};
    switch (ex.gate) {
        case TestbedGate::FourActive:
            return SubspaceGateSpec::parity(Testbed9q::target, controls, {true, true, true, true});
        case TestbedGate::TwoActiveVertical:
            return SubspaceGateSpec::parity(Testbed9q::target, controls, {true, true, false, false});
        case TestbedGate::TwoActiveHorizontal:
            return SubspaceGateSpec::parity(Testbed9q::target, controls, {false, false, true, true});
        case TestbedGate::Cnot:
            return SubspaceGateSpec::parity(Testbed9q::target, controls, {true, false, false, false});
        case TestbedGate::General:
            if (!ex.custom_spec)
                throw std::invalid_argument("TestbedGate::General requires custom_spec");
            return *ex.custom_spec;
    }
    throw std::logic_error("unknown testbed gate");
}

// Gate request -> pulse schedule (or the configured override).
inline PulseSchedule synthesize_testbed_schedule(const TestbedExperiment& ex,
                                                 const SubspaceGateSpec& spec) {
    if (ex.pulse_override) {
        PulseSchedule s;
        s.steps = *ex.pulse_override;
        return s;
    }
    switch (ex.gate) {
        case TestbedGate::FourActive: {
            for (double x : ex.xi)
                if (std::abs(x - ex.xi[0]) > kBiasTol)
                    throw SynthesisError("four-active gate requires equal couplings",
                                         {"couplings differ across the four neighbors"});
            return synthesize_four_active(ex.xi[0], ex.delta, ex.tau);
        }
        case TestbedGate::TwoActiveVertical:
            return synthesize_two_active_vertical(ex.xi, ex.delta, ex.tau);
        case TestbedGate::TwoActiveHorizontal:
            return synthesize_two_active_horizontal(ex.xi, ex.delta, ex.tau);
        case TestbedGate::Cnot:
        case TestbedGate::General:
            return synthesize_general(spec, {ex.xi[0], ex.xi[1], ex.xi[2], ex.xi[3]}, ex.delta,
                                      ex.tau);
    }
    throw std::logic_error("unknown testbed gate");
}

inline ExperimentResult run_testbed_experiment(const TestbedExperiment& ex) {
    const auto t0 = std::chrono::steady_clock::now();
    LatticeSpec lattice = build_testbed_9q(ex.xi[0], ex.xi[1], ex.xi[2], ex.xi[3]);
    SubspaceGateSpec spec = testbed_gate_spec(ex);
    PulseSchedule schedule = synthesize_testbed_schedule(ex, spec);

    SystemParams params = SystemParams::uniform(lattice.num_sites(), ex.delta, ex.control_bias);
    IsingModel model = make_model(lattice, params);
    std::vector<UnitarySegment> segments;
    for (const auto& step : schedule.steps)
        segments.push_back({step.duration, {{Testbed9q::target, step.bias}}});

    Eigen::MatrixXcd u = (ex.engine == Engine::Exact)
                             ? evolve_exact(model, segments, ex.dense_cap)
                             : evolve_trotter(model, segments, ex.dt, ex.dense_cap);
    IdealGate ideal = ideal_parity_unitary(spec, lattice.num_sites(), schedule.tracked_phase);

    ExperimentResult result;
    result.schedule = schedule;
    result.fid = fid(ideal, u);
    result.fid_unit = fid_unit(ideal, u);

    const int n = lattice.num_sites();
    const std::uint64_t dim = std::uint64_t{1} << n;
    double worst = 1.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
        for (int q : Testbed9q::corners) {
            const int want = bit_of(col, q, n);
            double keep = 0.0;
            for (std::uint64_t row = 0; row < dim; ++row)
                if (bit_of(row, q, n) == want)
                    keep += std::norm(u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
            worst = std::min(worst, keep);
        }
    }
    result.worst_spectator = worst;
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// ---------------------------------------------------------------------------
// Parameter sweeps (Fid / Fid+Unit vs one parameter, everything else fixed)
// ---------------------------------------------------------------------------

enum class SweepParameter { Tunneling, CouplingAll, ControlBias, PulseMagnitudes, Tau, Dt };

inline const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::Tunneling: return "tunneling_ghz";
        case SweepParameter::CouplingAll: return "coupling_ghz";
        case SweepParameter::ControlBias: return "control_bias_ghz";
        case SweepParameter::PulseMagnitudes: return "pulse_magnitude_ghz";
        case SweepParameter::Tau: return "tau_ns";
        case SweepParameter::Dt: return "dt_ns";
    }
    return "?";
}

struct SweepRow {
    double value = 0.0;
    double fid = std::nan("");
    double fid_unit = std::nan("");
    std::string note;  // empty on success, error summary otherwise
};

// One full simulation per value, rows in input order. Points run in
// parallel; infeasible points yield NaN fidelities with a note instead of
// aborting the sweep. `rescale_pulses` only affects CouplingAll: when false
// the base configuration's pulse magnitudes are replayed unchanged.
inline std::vector<SweepRow> sweep(const TestbedExperiment& base, SweepParameter parameter,
                                   const std::vector<double>& values, bool rescale_pulses = true) {
    std::optional<std::vector<PulseStep>> stale_steps;
    if (parameter == SweepParameter::CouplingAll && !rescale_pulses)
        stale_steps = synthesize_testbed_schedule(base, testbed_gate_spec(base)).steps;

    auto run_point = [&, stale_steps](double v) {
        TestbedExperiment ex = base;
        switch (parameter) {
            case SweepParameter::Tunneling: ex.delta = v; break;
            case SweepParameter::CouplingAll:
                ex.xi = {v, v, v, v};
                if (stale_steps) ex.pulse_override = stale_steps;
                break;
            case SweepParameter::ControlBias: ex.control_bias = v; break;
            case SweepParameter::PulseMagnitudes:
                ex.pulse_override = std::vector<PulseStep>{{+v, ex.tau}, {-v, ex.tau}};
                break;
            case SweepParameter::Tau: ex.tau = v; break;
            case SweepParameter::Dt:
                ex.dt = v;
                ex.engine = Engine::Trotter;
                break;
        }
        SweepRow row;
        row.value = v;
        try {
            ExperimentResult r = run_testbed_experiment(ex);
            row.fid = r.fid;
            row.fid_unit = r.fid_unit;
        } catch (const SynthesisError& err) {
            row.note = "infeasible";
        }
        return row;
    };

    std::vector<std::future<SweepRow>> futures;
    futures.reserve(values.size());
    for (double v : values)
        futures.push_back(std::async(std::launch::async, run_point, v));
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

// Fixed-format numeric rendering for golden-file-stable CSV output: six
// significant digits.
inline std::string format_sig6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline std::string sweep_to_csv(SweepParameter parameter, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << sweep_parameter_name(parameter) << ",fid,fid_unit\n";
    for (const auto& r : rows)
        os << format_sig6(r.value) << ',' << format_sig6(r.fid) << ',' << format_sig6(r.fid_unit)
           << '\n';
    return os.str();
}

}  // namespace parityq
