#pragma once

// Surface-code syndrome-extraction scheduling on the parity-gate substrate:
// cycle builders (three-step and two-step), Heisenberg-picture ordering
// validation, the phase-syndrome circuit equivalence check, Clifford-level
// syndrome extraction, and cycle-depth accounting.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parityq/fidelity.hpp"
#include "parityq/gate_synthesis.hpp"
#include "parityq/lattice.hpp"
#include "parityq/pauli.hpp"

namespace parityq {

// One parity gate inside a layer: the target is flipped on odd parity of the
// active controls; the target's remaining lattice neighbors are dummies.
struct ParityGateOp {
    int target = 0;
    std::vector<int> active_controls;
};

enum class LayerKind : std::uint8_t { Hadamard, ParityGates, Measure };

struct CycleLayer {
    LayerKind kind = LayerKind::Hadamard;
    std::string label;
    std::vector<int> sites;           // Hadamard / Measure layers
    std::vector<ParityGateOp> gates;  // ParityGates layers
};

struct CycleSchedule {
    std::vector<CycleLayer> layers;
    int depth_units = 0;  // multi-qubit time in units of tau
    std::vector<std::string> warnings;
};

// The three multi-qubit steps of the data-targeted cycle.
enum class CycleStep : std::uint8_t { VerticalX, HorizontalX, ZParity };

inline const char* cycle_step_name(CycleStep s) {
    switch (s) {
        case CycleStep::VerticalX: return "vertical-x";
        case CycleStep::HorizontalX: return "horizontal-x";
        case CycleStep::ZParity: return "z-parity";
    }
    return "?";
}

namespace detail {

inline void require_surface(const LatticeSpec& spec) {
    if (spec.rows < 3 || spec.cols < 3)
        throw std::invalid_argument("surface schedule: lattice too small");
    for (int s = 0; s < spec.num_sites(); ++s)
        if (spec.role(s) == SiteRole::Plain)
            throw std::invalid_argument("surface schedule: lattice has plain sites");
}

// Number of pulse steps a gate needs: one bias per distinct flip-subspace
// coupling sum (parity gates over the target's full neighbor set).
inline int gate_step_count(const LatticeSpec& spec, const ParityGateOp& gate) {
    auto nbrs = spec.neighbor_sites(gate.target);
    std::vector<bool> active(nbrs.size(), false);
    std::vector<double> xi(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        xi[i] = spec.coupling(gate.target, nbrs[i]);
        for (int a : gate.active_controls)
            if (a == nbrs[i]) active[i] = true;
    }
    auto gate_spec = SubspaceGateSpec::parity(gate.target, nbrs, active);
    return static_cast<int>(forced_step_biases(gate_spec, xi).size());
}

inline int layer_step_count(const LatticeSpec& spec, const CycleLayer& layer) {
    int steps = 0;
    for (const auto& g : layer.gates) steps = std::max(steps, gate_step_count(spec, g));
    return steps;
}

// Simultaneity rule: targets are the only qubits whose state changes, so a
// layer is valid iff targets are distinct and no gate's target sits inside
// another gate's support (target + lattice neighbors). Shared frozen
// controls and dummies are allowed.
inline void check_layer_simultaneity(const LatticeSpec& spec, const CycleLayer& layer) {
    std::vector<int> targets;
    for (const auto& g : layer.gates) targets.push_back(g.target);
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
        throw std::logic_error("parity layer targets a qubit twice");
    for (const auto& g : layer.gates) {
        std::vector<int> support = spec.neighbor_sites(g.target);
        support.push_back(g.target);
        for (const auto& h : layer.gates) {
            if (&g == &h) continue;
            for (int s : support)
                if (s == h.target && s != g.target)
                    throw std::logic_error("parity layer: a gate target lies in another gate's support");
        }
    }
}

inline std::string site_label(const LatticeSpec& spec, int s) {
    auto [r, c] = spec.coords(s);
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

}  // namespace detail

// Layer of parity gates flipping data qubits on the parity of their vertical
// (step A) or horizontal (step B) measure-X neighbors, or flipping measure-Z
// ancillas on the parity of all adjacent data qubits (step C).
inline CycleLayer build_cycle_step(const LatticeSpec& spec, CycleStep step) {
    CycleLayer layer;
    layer.kind = LayerKind::ParityGates;
    layer.label = cycle_step_name(step);
    if (step == CycleStep::ZParity) {
        for (int m : spec.sites_with_role(SiteRole::MeasureZ)) {
            ParityGateOp gate;
            gate.target = m;
            gate.active_controls = spec.neighbor_sites(m);
            layer.gates.push_back(std::move(gate));
        }
    } else {
        const bool vertical = (step == CycleStep::VerticalX);
        for (int d : spec.sites_with_role(SiteRole::Data)) {
            ParityGateOp gate;
            gate.target = d;
            for (auto [dir, nbr] : spec.neighbors(d)) {
                const bool dir_vertical = (dir == Direction::Up || dir == Direction::Down);
                if (dir_vertical == vertical && spec.role(nbr) == SiteRole::MeasureX)
                    gate.active_controls.push_back(nbr);
            }
            if (!gate.active_controls.empty()) layer.gates.push_back(std::move(gate));
        }
    }
    detail::check_layer_simultaneity(spec, layer);
    return layer;
}

// Three-step cycle: Hadamards on the measure-X qubits, the three parity-gate
// steps in the requested order, closing Hadamards, then ancilla readout.
inline CycleSchedule build_three_step_schedule(
    const LatticeSpec& spec,
    std::array<CycleStep, 3> order = {CycleStep::VerticalX, CycleStep::HorizontalX,
                                      CycleStep::ZParity}) {
    detail::require_surface(spec);
    CycleSchedule sched;
    auto measure_x = spec.sites_with_role(SiteRole::MeasureX);
    sched.layers.push_back({LayerKind::Hadamard, "hadamard measure-x", measure_x, {}});
    for (CycleStep step : order) {
        CycleLayer layer = build_cycle_step(spec, step);
        sched.depth_units += detail::layer_step_count(spec, layer);
        sched.layers.push_back(std::move(layer));
    }
    sched.layers.push_back({LayerKind::Hadamard, "hadamard measure-x", measure_x, {}});
    std::vector<int> measures = measure_x;
    for (int m : spec.sites_with_role(SiteRole::MeasureZ)) measures.push_back(m);
    std::sort(measures.begin(), measures.end());
    sched.layers.push_back({LayerKind::Measure, "measure ancillas", measures, {}});

    // Every data qubit must receive the X-ancilla propagation in exactly one
    // of the two data-targeted layers; report any that do not.
    for (int d : spec.sites_with_role(SiteRole::Data)) {
        int hits = 0;
        for (const auto& layer : sched.layers)
            for (const auto& g : layer.gates)
                if (g.target == d) ++hits;
        if (hits == 0)
            sched.warnings.push_back("data qubit " + detail::site_label(spec, d) +
                                     " has no measure-X neighbor in either data-targeted layer");
    }
    return sched;
}

// Two-step cycle: Hadamards on all data qubits, a four-active parity layer
// onto the measure-X ancillas, the same onto the measure-Z ancillas (order
// swappable), closing Hadamards, readout.
inline CycleSchedule build_two_step_schedule(const LatticeSpec& spec, bool z_first = false) {
    detail::require_surface(spec);
    CycleSchedule sched;
    auto data = spec.sites_with_role(SiteRole::Data);
    sched.layers.push_back({LayerKind::Hadamard, "hadamard data", data, {}});
    std::array<SiteRole, 2> roles{SiteRole::MeasureX, SiteRole::MeasureZ};
    if (z_first) std::swap(roles[0], roles[1]);
    for (SiteRole role : roles) {
        CycleLayer layer;
        layer.kind = LayerKind::ParityGates;
        layer.label = (role == SiteRole::MeasureX) ? "x-ancilla parity" : "z-ancilla parity";
        for (int m : spec.sites_with_role(role)) {
            ParityGateOp gate;
            gate.target = m;
            gate.active_controls = spec.neighbor_sites(m);
            layer.gates.push_back(std::move(gate));
        }
        detail::check_layer_simultaneity(spec, layer);
        sched.depth_units += detail::layer_step_count(spec, layer);
        sched.layers.push_back(std::move(layer));
    }
    sched.layers.push_back({LayerKind::Hadamard, "hadamard data", data, {}});
    std::vector<int> measures;
    for (int s = 0; s < spec.num_sites(); ++s)
        if (spec.is_measure(s)) measures.push_back(s);
    sched.layers.push_back({LayerKind::Measure, "measure ancillas", measures, {}});
    return sched;
}

// Multi-qubit depth (in units of tau) of the two cycle styles next to the
// CNOT-decomposition baseline: three CNOT sequences, each CNOT unrolled into
// one five-qubit step per dummy-qubit configuration (2^3 steps).
struct DepthAccounting {
    int two_step = 0;
    int three_step = 0;
    int conventional = 0;
};

inline DepthAccounting depth_accounting(const LatticeSpec& spec) {
    DepthAccounting d;
    d.two_step = build_two_step_schedule(spec).depth_units;
    d.three_step = build_three_step_schedule(spec).depth_units;
    d.conventional = 3 * (1 << 3);
    return d;
}

// ---------------------------------------------------------------------------
// Heisenberg-picture ordering validation
// ---------------------------------------------------------------------------

struct OrderingReport {
    struct GeneratorTrack {
        int site = 0;
        SiteRole type = SiteRole::MeasureX;
        PauliString initial;             // entering the first parity layer
        PauliString after_parity;        // after the last parity layer
    };
    struct SharingViolation {
        int x_site = 0;
        int z_site = 0;
        std::vector<int> shared_data;
        std::vector<int> x_layers;  // 1-based parity-layer ordinals
        std::vector<int> z_layers;
    };

    std::vector<GeneratorTrack> generators;
    bool pairwise_commuting = true;
    bool sharing_rule_ok = true;
    bool independent = true;
    bool pass = true;
    std::vector<SharingViolation> violations;

    std::string to_string(const LatticeSpec& spec) const {
        std::ostringstream os;
        for (const auto& g : generators)
            os << "generator " << detail::site_label(spec, g.site)
               << (g.type == SiteRole::MeasureX ? " [measure-x]" : " [measure-z]")
               << ": initial " << parityq::to_string(g.initial) << " -> final "
               << parityq::to_string(g.after_parity) << "\n";
        os << "pairwise_commuting: " << (pairwise_commuting ? "yes" : "no") << "\n";
        os << "sharing_rule_ok: " << (sharing_rule_ok ? "yes" : "no") << "\n";
        os << "independent: " << (independent ? "yes" : "no") << "\n";
        for (const auto& v : violations) {
            os << "sharing_violation: x " << detail::site_label(spec, v.x_site) << " layers";
            for (int l : v.x_layers) os << ' ' << l;
            os << " interleave z " << detail::site_label(spec, v.z_site) << " layers";
            for (int l : v.z_layers) os << ' ' << l;
            os << " on shared data";
            for (int d : v.shared_data) os << ' ' << detail::site_label(spec, d);
            os << "\n";
        }
        os << "pass: " << (pass ? "yes" : "no") << "\n";
        return os.str();
    }
};

namespace detail {

// GF(2) rank of the symplectic (x|z) representation; phases ignored.
inline int symplectic_rank(const std::vector<PauliString>& gens) {
    if (gens.empty()) return 0;
    const std::size_t n = gens[0].size();
    std::vector<std::vector<std::uint64_t>> rows;
    const std::size_t words = (2 * n + 63) / 64;
    for (const auto& g : gens) {
        std::vector<std::uint64_t> row(words, 0);
        for (std::size_t q = 0; q < n; ++q) {
            bool x = g.ops[q] == Pauli::X || g.ops[q] == Pauli::Y;
            bool z = g.ops[q] == Pauli::Z || g.ops[q] == Pauli::Y;
            if (x) row[q / 64] |= std::uint64_t{1} << (q % 64);
            if (z) row[(n + q) / 64] |= std::uint64_t{1} << ((n + q) % 64);
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (std::size_t bit = 0; bit < 2 * n && rank < static_cast<int>(rows.size()); ++bit) {
        const std::size_t w = bit / 64;
        const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][w] & mask) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            if (rows[r][w] & mask)
                for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Propagates each ancilla's initialization stabilizer through the schedule
// and checks (a) pairwise commutation and independence of the propagated
// generators and (b) the structural rule that data qubits shared between an
// X-type and a Z-type stabilizer interact with one ancilla type at a time
// (the two ancillas' interaction layers must not interleave).
inline OrderingReport validate_ordering(const CycleSchedule& schedule, const LatticeSpec& spec) {
    const std::size_t n = static_cast<std::size_t>(spec.num_sites());

    // All ancillas prepared in |0>; a leading Hadamard layer rotates the
    // measure-X generators to X before the first parity layer.
    std::vector<int> measure_sites;
    std::vector<PauliString> gens;
    for (int s = 0; s < spec.num_sites(); ++s) {
        if (!spec.is_measure(s)) continue;
        measure_sites.push_back(s);
        gens.push_back(PauliString::single(n, static_cast<std::size_t>(s), Pauli::Z));
    }

    OrderingReport report;
    std::vector<PauliString> initial = gens;
    bool seen_parity = false;
    for (const auto& layer : schedule.layers) {
        if (layer.kind == LayerKind::Hadamard) {
            for (auto& g : gens)
                for (int s : layer.sites) g = conjugate_by_hadamard(g, static_cast<std::size_t>(s));
        } else if (layer.kind == LayerKind::ParityGates) {
            if (!seen_parity) {
                initial = gens;
                seen_parity = true;
            }
            for (auto& g : gens) {
                for (const auto& gate : layer.gates) {
                    std::vector<std::size_t> controls;
                    for (int c : gate.active_controls) controls.push_back(static_cast<std::size_t>(c));
                    g = conjugate_by_parity_gate(g, controls, static_cast<std::size_t>(gate.target));
                }
            }
        } else {
            break;  // readout
        }
        if (layer.kind == LayerKind::ParityGates) {
            report.generators.clear();
            for (std::size_t i = 0; i < gens.size(); ++i)
                report.generators.push_back({measure_sites[i], spec.role(measure_sites[i]),
                                             initial[i], gens[i]});
        }
    }
    if (report.generators.empty())
        for (std::size_t i = 0; i < gens.size(); ++i)
            report.generators.push_back({measure_sites[i], spec.role(measure_sites[i]), initial[i],
                                         gens[i]});

    for (std::size_t i = 0; i < report.generators.size(); ++i)
        for (std::size_t j = i + 1; j < report.generators.size(); ++j)
            if (!commutes(report.generators[i].after_parity, report.generators[j].after_parity))
                report.pairwise_commuting = false;

    std::vector<PauliString> finals;
    for (const auto& g : report.generators) finals.push_back(g.after_parity);
    report.independent =
        detail::symplectic_rank(finals) == static_cast<int>(finals.size());

    // Interaction layers: ancilla m touches data d in parity layer L either
    // as an active control of a gate targeting d, or as the target of a gate
    // with d among its active controls.
    std::map<std::pair<int, int>, std::vector<int>> touch;  // (ancilla, data) -> layers
    int parity_ordinal = 0;
    for (const auto& layer : schedule.layers) {
        if (layer.kind != LayerKind::ParityGates) continue;
        ++parity_ordinal;
        for (const auto& gate : layer.gates) {
            if (spec.is_measure(gate.target)) {
                for (int d : gate.active_controls)
                    touch[{gate.target, d}].push_back(parity_ordinal);
            } else {
                for (int m : gate.active_controls)
                    touch[{m, gate.target}].push_back(parity_ordinal);
            }
        }
    }
    for (int x : spec.sites_with_role(SiteRole::MeasureX)) {
        for (int z : spec.sites_with_role(SiteRole::MeasureZ)) {
            std::vector<int> shared;
            for (int d : spec.neighbor_sites(x))
                for (int dz : spec.neighbor_sites(z))
                    if (d == dz && spec.role(d) == SiteRole::Data) shared.push_back(d);
            if (shared.empty()) continue;
            std::vector<int> x_layers, z_layers;
            for (int d : shared) {
                auto it = touch.find({x, d});
                if (it != touch.end())
                    x_layers.insert(x_layers.end(), it->second.begin(), it->second.end());
                it = touch.find({z, d});
                if (it != touch.end())
                    z_layers.insert(z_layers.end(), it->second.begin(), it->second.end());
            }
            if (x_layers.empty() || z_layers.empty()) continue;
            const auto [xmin, xmax] = std::minmax_element(x_layers.begin(), x_layers.end());
            const auto [zmin, zmax] = std::minmax_element(z_layers.begin(), z_layers.end());
            const bool ordered = *xmax < *zmin || *zmax < *xmin;
            if (!ordered) {
                report.sharing_rule_ok = false;
                std::sort(x_layers.begin(), x_layers.end());
                std::sort(z_layers.begin(), z_layers.end());
                report.violations.push_back({x, z, shared, x_layers, z_layers});
            }
        }
    }
    report.pass = report.pairwise_commuting && report.sharing_rule_ok && report.independent;
    return report;
}

// A diagonal measure-X/measure-Z ancilla pair sharing two data qubits: the
// elementary box on which the ordering analysis acts. `data_vertical` is the
// shared data qubit coupled vertically to the X ancilla.
struct PlaquettePair {
    int x_site = 0;
    int z_site = 0;
    int data_vertical = 0;
    int data_horizontal = 0;

    std::vector<std::size_t> box_sites() const {
        return {static_cast<std::size_t>(x_site), static_cast<std::size_t>(data_vertical),
                static_cast<std::size_t>(data_horizontal), static_cast<std::size_t>(z_site)};
    }
};

inline std::vector<PlaquettePair> find_plaquette_pairs(const LatticeSpec& spec) {
    std::vector<PlaquettePair> out;
    for (int x : spec.sites_with_role(SiteRole::MeasureX)) {
        for (int z : spec.sites_with_role(SiteRole::MeasureZ)) {
            std::vector<int> shared;
            for (int d : spec.neighbor_sites(x))
                for (int dz : spec.neighbor_sites(z))
                    if (d == dz) shared.push_back(d);
            if (shared.size() != 2) continue;
            PlaquettePair pair;
            pair.x_site = x;
            pair.z_site = z;
            auto [xr, xc] = spec.coords(x);
            for (int d : shared) {
                auto [dr, dc] = spec.coords(d);
                if (dc == xc)
                    pair.data_vertical = d;
                else
                    pair.data_horizontal = d;
            }
            out.push_back(pair);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Phase-syndrome circuit equivalence (ancilla + four data, 32x32)
// ---------------------------------------------------------------------------

struct Fig9Report {
    double dev_reversed = 0.0;     // conventional vs reversed-CNOT circuit
    double dev_parity = 0.0;       // conventional vs parity-gate circuit
    double negative_control_dev = 0.0;  // one Hadamard omitted
    bool equivalent = false;
    bool negative_control_detected = false;
};

namespace detail {

inline Eigen::MatrixXcd single_qubit_op(const Eigen::Matrix2cd& op, int site, int n) {
    Eigen::MatrixXcd out(1, 1);
    out(0, 0) = 1.0;
    Eigen::MatrixXcd eye2 = Eigen::MatrixXcd::Identity(2, 2);
    for (int q = 0; q < n; ++q) out = kron(out, q == site ? Eigen::MatrixXcd(op) : eye2);
    return out;
}

inline Eigen::MatrixXcd cnot_matrix(int control, int target, int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t out = b;
        if (bit_of(b, control, n)) out ^= std::uint64_t{1} << (n - 1 - target);
        u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return u;
}

inline Eigen::Matrix2cd hadamard_2x2() {
    Eigen::Matrix2cd h;
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

}  // namespace detail

// Compares the three logically equivalent phase-syndrome circuits on one
// ancilla (register position 0) and four data qubits:
//   (1) Hadamard on the ancilla, four CNOTs from the ancilla onto the data,
//       Hadamard on the ancilla;
//   (2) Hadamards on the data, four CNOTs from the data onto the ancilla,
//       Hadamards on the data;
//   (3) as (2) with the CNOT block replaced by the four-active parity gate.
// Circuits (1) and (2) agree exactly; (3) agrees once its tracked -i flip
// phase is set aside. A mutated copy of (3) with one closing Hadamard
// omitted serves as the negative control.
inline Fig9Report check_fig9_equivalence(double tol = 1e-9) {
    const int n = 5;
    const Eigen::Matrix2cd h2 = detail::hadamard_2x2();

    Eigen::MatrixXcd h_anc = detail::single_qubit_op(h2, 0, n);
    Eigen::MatrixXcd cnots_out = Eigen::MatrixXcd::Identity(32, 32);
    Eigen::MatrixXcd cnots_in = Eigen::MatrixXcd::Identity(32, 32);
    Eigen::MatrixXcd h_data = Eigen::MatrixXcd::Identity(32, 32);
    for (int d = 1; d < n; ++d) {
        cnots_out = detail::cnot_matrix(0, d, n) * cnots_out;
        cnots_in = detail::cnot_matrix(d, 0, n) * cnots_in;
        h_data = detail::single_qubit_op(h2, d, n) * h_data;
    }

    Eigen::MatrixXcd conventional = h_anc * cnots_out * h_anc;
    Eigen::MatrixXcd reversed = h_data * cnots_in * h_data;

    SubspaceGateSpec spec = SubspaceGateSpec::parity(0, {1, 2, 3, 4}, {true, true, true, true});
    Eigen::MatrixXcd parity_plain = ideal_parity_unitary(spec, n, 1.0).matrix;
    Eigen::MatrixXcd parity_circuit = h_data * parity_plain * h_data;

    Eigen::MatrixXcd mutated = detail::single_qubit_op(h2, 1, n) * parity_circuit;

    Fig9Report report;
    report.dev_reversed = (conventional - reversed).cwiseAbs().maxCoeff();
    report.dev_parity = (conventional - parity_circuit).cwiseAbs().maxCoeff();
    report.negative_control_dev = (conventional - mutated).cwiseAbs().maxCoeff();
    report.equivalent = report.dev_reversed <= tol && report.dev_parity <= tol;
    report.negative_control_detected = report.negative_control_dev > tol;
    return report;
}

// ---------------------------------------------------------------------------
// Clifford-level syndrome extraction
// ---------------------------------------------------------------------------

// The stabilizer a measure qubit reads out: X (measure-X) or Z (measure-Z)
// on each adjacent data qubit.
inline PauliString stabilizer_of(const LatticeSpec& spec, int measure_site) {
    if (!spec.is_measure(measure_site))
        throw std::invalid_argument("stabilizer_of: site is not a measure qubit");
    const Pauli op = spec.role(measure_site) == SiteRole::MeasureX ? Pauli::X : Pauli::Z;
    PauliString stab = PauliString::identity(static_cast<std::size_t>(spec.num_sites()));
    for (int d : spec.neighbor_sites(measure_site)) stab.ops[static_cast<std::size_t>(d)] = op;
    return stab;
}

// Deterministic syndrome of an injected data-qubit error: the bit at each
// measure site is 1 iff the error anticommutes with that site's stabilizer.
// The schedule must pass the ordering validator first.
inline std::map<int, int> extract_syndrome(const LatticeSpec& spec, const PauliString& error,
                                           const CycleSchedule& schedule) {
    if (error.size() != static_cast<std::size_t>(spec.num_sites()))
        throw std::invalid_argument("extract_syndrome: error register size mismatch");
    for (int s = 0; s < spec.num_sites(); ++s)
        if (error.ops[static_cast<std::size_t>(s)] != Pauli::I && spec.role(s) != SiteRole::Data)
            throw std::invalid_argument("extract_syndrome: error touches a non-data qubit");
    OrderingReport order = validate_ordering(schedule, spec);
    if (!order.pass)
        throw std::invalid_argument("extract_syndrome: schedule fails ordering validation");
    std::map<int, int> syndrome;
    for (int s = 0; s < spec.num_sites(); ++s)
        if (spec.is_measure(s))
            syndrome[s] = commutes(error, stabilizer_of(spec, s)) ? 0 : 1;
    return syndrome;
}

}  // namespace parityq
