#pragma once

// Construction of the always-on Ising Hamiltonian
//
//     H = sum_q (Delta_q sigma_x^q + eps_q sigma_z^q)
//       + sum_<qq'> xi_qq' sigma_z^q sigma_z^q'
//
// with energies in GHz, plus the conditioned 2x2 target-qubit Hamiltonian and
// the per-subspace effective-bias tables used by the pulse synthesizer.
//
// Basis convention: site 0 is the most significant bit of the computational
// basis index, i.e. |q0 q1 ... q(n-1)> reads like a binary number. sigma_z
// has eigenvalue +1 on |0> and -1 on |1>.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "parityq/lattice.hpp"

namespace parityq {

inline constexpr int kDefaultDenseCap = 10;      // largest dense 2^n x 2^n matrix
inline constexpr int kDefaultRegisterCap = 17;   // largest state-vector register

class DimensionCapError : public std::runtime_error {
  public:
    explicit DimensionCapError(const std::string& what) : std::runtime_error(what) {}
};

inline int bit_of(std::uint64_t index, int site, int n) {
    return static_cast<int>((index >> (n - 1 - site)) & 1u);
}

inline int z_of(std::uint64_t index, int site, int n) {
    return 1 - 2 * bit_of(index, site, n);
}

// Per-site tunneling and bias; couplings come from the LatticeSpec.
struct SystemParams {
    std::vector<double> tunneling;  // GHz
    std::vector<double> bias;       // GHz

    static SystemParams uniform(int n, double delta, double eps) {
        SystemParams p;
        p.tunneling.assign(n, delta);
        p.bias.assign(n, eps);
        return p;
    }
};

// Flattened term list consumed by the propagators: everything the full
// Hamiltonian needs, independent of lattice geometry.
struct IsingModel {
    struct Coupling {
        int a;
        int b;
        double strength;  // GHz
    };

    int num_qubits = 0;
    std::vector<double> tunneling;
    std::vector<double> bias;
    std::vector<Coupling> couplings;
};

inline IsingModel make_model(const LatticeSpec& spec, const SystemParams& params) {
    const int n = spec.num_sites();
    if (static_cast<int>(params.tunneling.size()) != n ||
        static_cast<int>(params.bias.size()) != n)
        throw std::invalid_argument("make_model: parameter arrays must match lattice size");
    IsingModel m;
    m.num_qubits = n;
    m.tunneling = params.tunneling;
    m.bias = params.bias;
    for (auto& [edge, xi] : spec.couplings) m.couplings.push_back({edge.first, edge.second, xi});
    return m;
}

// Sub-register restriction: keeps the listed sites (in the given order, which
// defines the new qubit indices) and only the couplings internal to the set.
inline IsingModel extract_subsystem(const IsingModel& model, const std::vector<int>& sites) {
    std::map<int, int> index;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        int s = sites[i];
        if (s < 0 || s >= model.num_qubits)
            throw std::out_of_range("extract_subsystem: site out of range");
        if (!index.emplace(s, static_cast<int>(i)).second)
            throw std::invalid_argument("extract_subsystem: duplicate site");
    }
    IsingModel out;
    out.num_qubits = static_cast<int>(sites.size());
    for (int s : sites) {
        out.tunneling.push_back(model.tunneling[s]);
        out.bias.push_back(model.bias[s]);
    }
    for (auto& c : model.couplings) {
        auto ia = index.find(c.a), ib = index.find(c.b);
        if (ia != index.end() && ib != index.end())
            out.couplings.push_back({ia->second, ib->second, c.strength});
    }
    return out;
}

// Diagonal of the sigma_z part (biases + couplings), in GHz.
inline Eigen::VectorXd diagonal_energies(const IsingModel& m) {
    const int n = m.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int q = 0; q < n; ++q) e += m.bias[q] * z_of(idx, q, n);
        for (auto& c : m.couplings) e += c.strength * z_of(idx, c.a, n) * z_of(idx, c.b, n);
        diag[static_cast<Eigen::Index>(idx)] = e;
    }
    return diag;
}

// Dense Hermitian Hamiltonian matrix. Refuses registers above `dense_cap`
// qubits; larger systems go through apply_hamiltonian.
inline Eigen::MatrixXcd full_hamiltonian(const IsingModel& m, int dense_cap = kDefaultDenseCap) {
    if (m.num_qubits > dense_cap)
        throw DimensionCapError("full_hamiltonian: " + std::to_string(m.num_qubits) +
                                " qubits exceeds dense cap of " + std::to_string(dense_cap));
    const int n = m.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    Eigen::VectorXd diag = diagonal_energies(m);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        H(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) =
            diag[static_cast<Eigen::Index>(idx)];
        for (int q = 0; q < n; ++q) {
            std::uint64_t flipped = idx ^ (std::uint64_t{1} << (n - 1 - q));
            H(static_cast<Eigen::Index>(flipped), static_cast<Eigen::Index>(idx)) +=
                m.tunneling[q];
        }
    }
    return H;
}

// Matrix-free y = H x. Re-entrant; safe to call concurrently on distinct
// vectors.
inline Eigen::VectorXcd apply_hamiltonian(const IsingModel& m, const Eigen::VectorXcd& x,
                                          int register_cap = kDefaultRegisterCap) {
    if (m.num_qubits > register_cap)
        throw DimensionCapError("apply_hamiltonian: register cap exceeded");
    const int n = m.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (x.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("apply_hamiltonian: state dimension mismatch");
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int q = 0; q < n; ++q) e += m.bias[q] * z_of(idx, q, n);
        for (auto& c : m.couplings) e += c.strength * z_of(idx, c.a, n) * z_of(idx, c.b, n);
        y[static_cast<Eigen::Index>(idx)] += e * x[static_cast<Eigen::Index>(idx)];
        for (int q = 0; q < n; ++q) {
            std::uint64_t flipped = idx ^ (std::uint64_t{1} << (n - 1 - q));
            y[static_cast<Eigen::Index>(flipped)] += m.tunneling[q] * x[static_cast<Eigen::Index>(idx)];
        }
    }
    return y;
}

// ---------------------------------------------------------------------------
// Effective bias of a target qubit conditioned on frozen neighbor states.
// ---------------------------------------------------------------------------

// One row of the conditioned-bias table: a basis assignment of the target's
// neighbors (in up/down/left/right order) and the resulting net sigma_z
// coefficient E = eps_T + sum_i s_i xi_i with s_i = +1 for |0>, -1 for |1>.
struct EffectiveBiasRow {
    std::vector<int> control_config;
    double effective_bias = 0.0;  // GHz
};

inline double effective_bias(const LatticeSpec& spec, const SystemParams& params, int target,
                             const std::vector<int>& config) {
    auto nbrs = spec.neighbors(target);
    if (config.size() != nbrs.size())
        throw std::invalid_argument("effective_bias: control assignment must cover exactly the neighbors");
    double e = params.bias[target];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        int s = 1 - 2 * config[i];
        e += s * spec.coupling(target, nbrs[i].second);
    }
    return e;
}

// All 2^k rows, enumerated with the first neighbor as the most significant
// bit (so a 4-neighbor target lists the vertical pair as the major index).
inline std::vector<EffectiveBiasRow> effective_bias_table(const LatticeSpec& spec,
                                                          const SystemParams& params, int target) {
    auto nbrs = spec.neighbors(target);
    const std::size_t k = nbrs.size();
    std::vector<EffectiveBiasRow> rows;
    rows.reserve(std::size_t{1} << k);
    for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << k); ++cfg) {
        EffectiveBiasRow row;
        row.control_config.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            row.control_config[i] = static_cast<int>((cfg >> (k - 1 - i)) & 1u);
        row.effective_bias = effective_bias(spec, params, target, row.control_config);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Effective bias per subspace under each candidate pulse bias substituted for
// the target's static bias: result[config][pulse].
inline std::vector<std::vector<double>> pulse_bias_table(const LatticeSpec& spec,
                                                         const SystemParams& params, int target,
                                                         const std::vector<double>& pulse_biases) {
    SystemParams p = params;
    std::vector<std::vector<double>> table;
    auto base_rows = effective_bias_table(spec, params, target);
    table.resize(base_rows.size());
    for (std::size_t r = 0; r < base_rows.size(); ++r) {
        double coupling_part = base_rows[r].effective_bias - params.bias[target];
        for (double eps : pulse_biases) table[r].push_back(eps + coupling_part);
    }
    return table;
}

// 2x2 target-qubit Hamiltonian Delta_T sigma_x + E sigma_z for one neighbor
// configuration.
inline Eigen::Matrix2cd reduced_hamiltonian(const LatticeSpec& spec, const SystemParams& params,
                                            int target, const std::vector<int>& config) {
    double e = effective_bias(spec, params, target, config);
    double delta = params.tunneling[target];
    Eigen::Matrix2cd h;
    h << e, delta, delta, -e;
    return h;
}

}  // namespace parityq
