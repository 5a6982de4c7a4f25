#pragma once

// Brute-force oracles for the test suites, built term by term with Kronecker
// products. These deliberately avoid the bit-twiddling construction paths in
// the library headers so the two routes stay independent.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "parityq/hamiltonian.hpp"
#include "parityq/pauli.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix identity2() { return Matrix::Identity(2, 2); }

inline Matrix sigma(parityq::Pauli p) {
    Matrix m(2, 2);
    switch (p) {
        case parityq::Pauli::I: m << 1, 0, 0, 1; break;
        case parityq::Pauli::X: m << 0, 1, 1, 0; break;
        case parityq::Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case parityq::Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Operator `op` on `site` of an n-qubit register (site 0 most significant).
inline Matrix lift(const Matrix& op, int site, int n) {
    Matrix out(1, 1);
    out(0, 0) = 1.0;
    for (int q = 0; q < n; ++q) out = kron(out, q == site ? op : identity2());
    return out;
}

inline Matrix two_site(const Matrix& a, int sa, const Matrix& b, int sb, int n) {
    Matrix out(1, 1);
    out(0, 0) = 1.0;
    for (int q = 0; q < n; ++q) {
        if (q == sa)
            out = kron(out, a);
        else if (q == sb)
            out = kron(out, b);
        else
            out = kron(out, identity2());
    }
    return out;
}

// Full matrix of a PauliString, phase included.
inline Matrix pauli_matrix(const parityq::PauliString& p) {
    Matrix out(1, 1);
    out(0, 0) = p.phase();
    for (parityq::Pauli op : p.ops) out = kron(out, sigma(op));
    return out;
}

// Term-by-term Kronecker construction of the Ising Hamiltonian.
inline Matrix hamiltonian_matrix(const parityq::IsingModel& m) {
    const int n = m.num_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix h = Matrix::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        h += m.tunneling[q] * lift(sigma(parityq::Pauli::X), q, n);
        h += m.bias[q] * lift(sigma(parityq::Pauli::Z), q, n);
    }
    for (const auto& c : m.couplings)
        h += c.strength * two_site(sigma(parityq::Pauli::Z), c.a, sigma(parityq::Pauli::Z), c.b, n);
    return h;
}

// exp(-i 2*pi H t) through the Hermitian eigendecomposition.
inline Matrix expm_herm(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases[i] = std::exp(Complex(0.0, -2.0 * M_PI * es.eigenvalues()[i] * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix cnot(int control, int target, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix u = Matrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index out = b;
        if ((b >> (n - 1 - control)) & 1) out = b ^ (Eigen::Index{1} << (n - 1 - target));
        u(out, b) = 1.0;
    }
    return u;
}

inline Matrix hadamard(int site, int n) {
    Matrix h2(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h2 << s, s, s, -s;
    return lift(h2, site, n);
}

inline parityq::Pauli random_pauli(std::mt19937& rng) {
    return static_cast<parityq::Pauli>(rng() % 4);
}

inline parityq::PauliString random_string(std::mt19937& rng, std::size_t n) {
    parityq::PauliString p = parityq::PauliString::identity(n);
    for (auto& op : p.ops) op = random_pauli(rng);
    p.phase_power = static_cast<int>(rng() % 4);
    return p;
}

}  // namespace oracle
