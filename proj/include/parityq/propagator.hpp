#pragma once

// Time evolution under piecewise-constant bias schedules.
//
// Unit convention: energies in GHz, times in ns, and the propagator for a
// constant Hamiltonian H over time t is exp(-i 2*pi H t). With that choice
// the analytic 2x2 propagator below has angular frequency
// omega = 2*pi*sqrt(Delta^2 + E^2).
//
// Two engines are provided:
//   * evolve_exact    - per-segment Hermitian eigendecomposition; numerically
//                       exact for piecewise-constant schedules and the oracle
//                       every other path is checked against.
//   * evolve_trotter  - first-order splitting per dt step: the single-qubit
//                       terms (exact 2x2 factors) followed by the mutually
//                       commuting sigma_z sigma_z coupling phases.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "parityq/hamiltonian.hpp"

namespace parityq {

using Complex = std::complex<double>;

// One piecewise-constant schedule segment: per-site bias overrides applied
// for `duration` ns; every other parameter keeps its model value.
struct UnitarySegment {
    double duration = 0.0;                 // ns, > 0
    std::map<int, double> bias_override;   // site -> GHz
};

// Exact single-qubit propagator for Delta sigma_x + E sigma_z over t ns,
// global phase omitted.
inline Eigen::Matrix2cd analytic_2x2(double delta, double e, double t) {
    const double omega = 2.0 * M_PI * std::sqrt(delta * delta + e * e);
    Eigen::Matrix2cd u;
    if (omega == 0.0) {
        u.setIdentity();
        return u;
    }
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const Complex iz(0.0, 2.0 * M_PI * e / omega * s);
    const Complex ix(0.0, 2.0 * M_PI * delta / omega * s);
    u << c - iz, -ix, -ix, c + iz;
    return u;
}

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, std::uint64_t exponent) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    while (exponent > 0) {
        if (exponent & 1u) result = base * result;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

inline IsingModel with_overrides(const IsingModel& model, const UnitarySegment& seg) {
    IsingModel m = model;
    for (auto& [site, eps] : seg.bias_override) {
        if (site < 0 || site >= m.num_qubits)
            throw std::out_of_range("bias_override: site out of range");
        m.bias[site] = eps;
    }
    return m;
}

inline std::uint64_t step_count(double duration, double dt) {
    if (duration <= 0.0) throw std::invalid_argument("segment duration must be positive");
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    const double steps = duration / dt;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) * dt > 1e-9)
        throw std::invalid_argument("dt does not divide segment duration");
    return static_cast<std::uint64_t>(rounded);
}

// Coupling-only phase diagonal exp(-i 2*pi * sum_e xi z z * dt).
inline Eigen::VectorXcd coupling_phases(const IsingModel& m, double dt) {
    const int n = m.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim));
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (auto& c : m.couplings) e += c.strength * z_of(idx, c.a, n) * z_of(idx, c.b, n);
        d[static_cast<Eigen::Index>(idx)] = std::exp(Complex(0.0, -2.0 * M_PI * e * dt));
    }
    return d;
}

}  // namespace detail

// Product over segments of exact matrix exponentials, via Hermitian
// eigendecomposition of the dense Hamiltonian.
inline Eigen::MatrixXcd evolve_exact(const IsingModel& model,
                                     const std::vector<UnitarySegment>& segments,
                                     int dense_cap = kDefaultDenseCap) {
    const std::uint64_t dim = std::uint64_t{1} << model.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
    for (const auto& seg : segments) {
        if (seg.duration <= 0.0) throw std::invalid_argument("segment duration must be positive");
        IsingModel m = detail::with_overrides(model, seg);
        Eigen::MatrixXcd h = full_hamiltonian(m, dense_cap);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("evolve_exact: eigendecomposition failed");
        Eigen::VectorXcd phases(es.eigenvalues().size());
        for (Eigen::Index i = 0; i < phases.size(); ++i)
            phases[i] = std::exp(Complex(0.0, -2.0 * M_PI * es.eigenvalues()[i] * seg.duration));
        u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * u;
    }
    return u;
}

// First-order splitting engine, dense output. Within a segment the step
// operator is constant, so the repeated product is evaluated by binary
// powering; the result is identical to applying the step `duration/dt`
// times.
inline Eigen::MatrixXcd evolve_trotter(const IsingModel& model,
                                       const std::vector<UnitarySegment>& segments,
                                       double dt = 0.1, int dense_cap = kDefaultDenseCap) {
    if (model.num_qubits > dense_cap)
        throw DimensionCapError("evolve_trotter: dense cap exceeded");
    const std::uint64_t dim = std::uint64_t{1} << model.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
    for (const auto& seg : segments) {
        const std::uint64_t steps = detail::step_count(seg.duration, dt);
        IsingModel m = detail::with_overrides(model, seg);
        Eigen::MatrixXcd single(1, 1);
        single(0, 0) = 1.0;
        for (int q = 0; q < m.num_qubits; ++q)
            single = detail::kron(single, analytic_2x2(m.tunneling[q], m.bias[q], dt));
        Eigen::VectorXcd coupling = detail::coupling_phases(m, dt);
        Eigen::MatrixXcd step = single * coupling.asDiagonal();
        u = detail::matrix_power(step, steps) * u;
    }
    return u;
}

// Matrix-free variant of the splitting engine for registers too large for
// dense matrices: applies the coupling phases and the per-qubit 2x2 factors
// directly to the state, step by step.
inline Eigen::VectorXcd evolve_trotter_state(const IsingModel& model,
                                             const std::vector<UnitarySegment>& segments,
                                             Eigen::VectorXcd psi, double dt = 0.1,
                                             int register_cap = kDefaultRegisterCap) {
    const int n = model.num_qubits;
    if (n > register_cap)
        throw DimensionCapError("evolve_trotter_state: register cap exceeded");
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("evolve_trotter_state: state dimension mismatch");
    for (const auto& seg : segments) {
        const std::uint64_t steps = detail::step_count(seg.duration, dt);
        IsingModel m = detail::with_overrides(model, seg);
        Eigen::VectorXcd coupling = detail::coupling_phases(m, dt);
        std::vector<Eigen::Matrix2cd> factors(n);
        for (int q = 0; q < n; ++q)
            factors[q] = analytic_2x2(m.tunneling[q], m.bias[q], dt);
        for (std::uint64_t s = 0; s < steps; ++s) {
            psi.array() *= coupling.array();
            for (int q = 0; q < n; ++q) {
                const std::uint64_t mask = std::uint64_t{1} << (n - 1 - q);
                const Eigen::Matrix2cd& f = factors[q];
                for (std::uint64_t idx = 0; idx < dim; ++idx) {
                    if (idx & mask) continue;
                    const Complex a0 = psi[static_cast<Eigen::Index>(idx)];
                    const Complex a1 = psi[static_cast<Eigen::Index>(idx | mask)];
                    psi[static_cast<Eigen::Index>(idx)] = f(0, 0) * a0 + f(0, 1) * a1;
                    psi[static_cast<Eigen::Index>(idx | mask)] = f(1, 0) * a0 + f(1, 1) * a1;
                }
            }
        }
    }
    return psi;
}

// U |psi>, with a norm sanity check on the input state.
inline Eigen::VectorXcd apply_to_state(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& psi) {
    if (u.cols() != psi.size())
        throw std::invalid_argument("apply_to_state: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("apply_to_state: input state is not normalized");
    return u * psi;
}

// max |(U^dagger U - I)_ij| -- unitarity defect of a propagator.
inline double unitarity_defect(const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd d = u.adjoint() * u;
    d -= Eigen::MatrixXcd::Identity(d.rows(), d.cols());
    return d.cwiseAbs().maxCoeff();
}

// Operator 2-norm of A - B (largest singular value of the difference,
// computed as the square root of the top eigenvalue of D^dagger D).
inline double operator_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.adjoint() * d);
    const double top = es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 0.0;
    return std::sqrt(std::max(0.0, top));
}

}  // namespace parityq
