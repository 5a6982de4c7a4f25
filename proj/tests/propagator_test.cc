#include "parityq/propagator.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "parityq/lattice.hpp"

using namespace parityq;

namespace {

IsingModel testbed_model(double delta, double bias, double xi) {
    LatticeSpec lattice = build_testbed_9q(xi, xi, xi, xi);
    return make_model(lattice, SystemParams::uniform(9, delta, bias));
}

IsingModel star_model(double delta, double bias, std::array<double, 4> xi) {
    IsingModel m;
    m.num_qubits = 5;
    m.tunneling.assign(5, delta);
    m.bias.assign(5, bias);
    for (int i = 0; i < 4; ++i) m.couplings.push_back({0, i + 1, xi[i]});
    return m;
}

std::vector<UnitarySegment> target_schedule(int target, std::initializer_list<double> biases,
                                            double tau) {
    std::vector<UnitarySegment> segs;
    for (double b : biases) segs.push_back({tau, {{target, b}}});
    return segs;
}

}  // namespace

TEST(Analytic2x2, QuarterPeriodIsFlip) {
    Eigen::Matrix2cd u = analytic_2x2(0.025, 0.0, 10.0);
    EXPECT_NEAR(std::abs(u(0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u(1, 1)), 0.0, 1e-12);
    EXPECT_LT(std::abs(u(0, 1) - std::complex<double>(0.0, -1.0)), 1e-12);
    EXPECT_LT(std::abs(u(1, 0) - std::complex<double>(0.0, -1.0)), 1e-12);
}

TEST(Analytic2x2, ZeroTimeIsIdentity) {
    Eigen::Matrix2cd u = analytic_2x2(0.3, 1.7, 0.0);
    EXPECT_LT((u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Analytic2x2, LargeBiasSuppressesOffDiagonal) {
    const double delta = 0.025, e = 1.6;
    Eigen::Matrix2cd u = analytic_2x2(delta, e, 10.0);
    const double bound = delta / std::sqrt(delta * delta + e * e);
    EXPECT_LE(std::abs(u(0, 1)), bound + 1e-12);
    EXPECT_LE(std::abs(u(1, 0)), bound + 1e-12);
}

TEST(Analytic2x2, MatchesExponentialOracle) {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> mag(-3.0, 3.0), time(0.0, 30.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double delta = mag(rng), e = mag(rng), t = time(rng);
        Eigen::MatrixXcd h(2, 2);
        h << e, delta, delta, -e;
        Eigen::MatrixXcd want = oracle::expm_herm(h, t);
        EXPECT_LT((analytic_2x2(delta, e, t) - want).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EvolveTrotter, ZeroHamiltonianIsIdentity) {
    IsingModel m;
    m.num_qubits = 3;
    m.tunneling.assign(3, 0.0);
    m.bias.assign(3, 0.0);
    Eigen::MatrixXcd u = evolve_trotter(m, {{10.0, {}}, {10.0, {}}}, 0.1);
    EXPECT_LT((u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EvolveTrotter, SingleQubitMatchesAnalytic) {
    IsingModel m;
    m.num_qubits = 1;
    m.tunneling = {0.025};
    m.bias = {0.0};
    Eigen::MatrixXcd u = evolve_trotter(m, {{10.0, {}}}, 0.1);
    EXPECT_LT((u - Eigen::MatrixXcd(analytic_2x2(0.025, 0.0, 10.0))).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(EvolveTrotter, ExactWhenTermsCommute) {
    // No tunneling anywhere: single-qubit and coupling terms all commute, so
    // the splitting is exact.
    IsingModel m = star_model(0.0, 1.3, {0.6, 0.6, 0.4, 0.4});
    auto segs = target_schedule(0, {-0.8, 0.8}, 10.0);
    Eigen::MatrixXcd ut = evolve_trotter(m, segs, 0.1);
    Eigen::MatrixXcd ue = evolve_exact(m, segs);
    EXPECT_LT((ut - ue).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(EvolveTrotter, RejectsNonDivisibleDuration) {
    IsingModel m;
    m.num_qubits = 1;
    m.tunneling = {0.025};
    m.bias = {0.0};
    EXPECT_THROW(evolve_trotter(m, {{10.05, {}}}, 0.1), std::invalid_argument);
    EXPECT_NO_THROW(evolve_trotter(m, {{10.0, {}}}, 0.1));
}

TEST(EvolveTrotter, FirstOrderConvergenceOnStarSchedule) {
    IsingModel m = star_model(0.025, 2.0, {0.6, 0.6, 0.4, 0.4});
    auto segs = target_schedule(0, {-0.8, 0.0, 0.8}, 10.0);
    Eigen::MatrixXcd ue = evolve_exact(m, segs);
    const double err_coarse = operator_distance(evolve_trotter(m, segs, 0.1), ue);
    const double err_fine = operator_distance(evolve_trotter(m, segs, 0.01), ue);
    // First-order splitting against the coupling terms: the error constant
    // is set by Delta*xi and comes out near 0.5 at dt = 0.1 ns here, with a
    // clean ~10x reduction per decade of dt.
    EXPECT_GT(err_coarse, 0.1);
    EXPECT_LT(err_coarse, 1.0);
    EXPECT_NEAR(err_coarse / err_fine, 10.0, 2.0);
}

TEST(EvolveTrotter, UnitarityDefectStaysTiny) {
    IsingModel m = star_model(0.025, 2.0, {0.4, 0.4, 0.4, 0.4});
    auto segs = target_schedule(0, {0.8, -0.8}, 10.0);
    EXPECT_LT(unitarity_defect(evolve_trotter(m, segs, 0.1)), 1e-6);
    EXPECT_LT(unitarity_defect(evolve_exact(m, segs)), 1e-6);
}

TEST(EvolveExact, MatchesOraclePerSegment) {
    std::mt19937 rng(77);
    IsingModel m = star_model(0.025, 2.0, {0.6, 0.6, 0.4, 0.4});
    auto segs = target_schedule(0, {-0.8, 0.8}, 10.0);
    Eigen::MatrixXcd got = evolve_exact(m, segs);
    IsingModel m1 = m, m2 = m;
    m1.bias[0] = -0.8;
    m2.bias[0] = 0.8;
    Eigen::MatrixXcd want = oracle::expm_herm(oracle::hamiltonian_matrix(m2), 10.0) *
                            oracle::expm_herm(oracle::hamiltonian_matrix(m1), 10.0);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-11);
}

// Holding every qubit at the freeze bias acts as the identity on the
// computational basis up to per-state phases.
TEST(EvolveExact, FreezeScheduleIsDiagonalIdentity) {
    IsingModel m = testbed_model(0.025, 2.0, 0.4);
    Eigen::MatrixXcd u = evolve_exact(m, {{20.0, {}}});
    for (Eigen::Index col = 0; col < u.cols(); ++col)
        EXPECT_GE(std::abs(u(col, col)), 0.999) << "column " << col;
}

// The target block of the frozen-control star evolution reproduces the
// analytic 2x2 propagator for every control configuration.
TEST(EvolveExact, FrozenControlBlocksMatchAnalytic) {
    IsingModel m = star_model(0.025, 2.0, {0.6, 0.6, 0.4, 0.4});
    for (int q = 1; q < 5; ++q) m.tunneling[q] = 0.0;
    const double pulse = -0.8, tau = 10.0;
    Eigen::MatrixXcd u = evolve_exact(m, target_schedule(0, {pulse}, tau));
    for (std::uint64_t cfg = 0; cfg < 16; ++cfg) {
        double e = pulse;
        const std::array<double, 4> xi{0.6, 0.6, 0.4, 0.4};
        for (int i = 0; i < 4; ++i) e += (1 - 2 * static_cast<int>((cfg >> (3 - i)) & 1u)) * xi[i];
        Eigen::Matrix2cd want = analytic_2x2(0.025, e, tau);
        Eigen::Matrix2cd block;
        block << u(cfg, cfg), u(cfg, cfg | 16), u(cfg | 16, cfg), u(cfg | 16, cfg | 16);
        // Control bias phases factor out of the block as a global phase.
        const double overlap = std::abs((want.adjoint() * block).trace()) / 2.0;
        EXPECT_NEAR(overlap, 1.0, 1e-12) << "config " << cfg;
    }
}

TEST(TrotterState, MatchesDenseEngine) {
    IsingModel m = star_model(0.025, 2.0, {0.4, 0.4, 0.4, 0.4});
    auto segs = target_schedule(0, {0.8, -0.8}, 10.0);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(32);
    psi[7] = 1.0;
    Eigen::VectorXcd via_state = evolve_trotter_state(m, segs, psi, 0.1);
    Eigen::VectorXcd via_dense = evolve_trotter(m, segs, 0.1) * psi;
    EXPECT_LT((via_state - via_dense).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(TrotterState, NormPreservedOverSixHundredSteps) {
    IsingModel m = testbed_model(0.025, 2.0, 0.4);
    auto segs = target_schedule(Testbed9q::target, {0.8, -0.8, 2.0}, 20.0);  // 600 steps
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(512);
    psi[300] = 1.0;
    Eigen::VectorXcd out = evolve_trotter_state(m, segs, psi, 0.1);
    EXPECT_LE(std::abs(out.norm() - 1.0), 1e-9);
}

TEST(TrotterState, RegisterCapEnforced) {
    IsingModel m;
    m.num_qubits = 18;
    m.tunneling.assign(18, 0.0);
    m.bias.assign(18, 0.0);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(1 << 18);
    EXPECT_THROW(evolve_trotter_state(m, {{1.0, {}}}, psi, 0.1), DimensionCapError);
}

TEST(ApplyToState, BasicsAndErrors) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi[0] = 1.0;
    EXPECT_LT((apply_to_state(u, psi) - psi).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(4);
    bad[0] = 1.0;
    EXPECT_THROW(apply_to_state(u, bad), std::invalid_argument);
    Eigen::VectorXcd unnormalized = Eigen::VectorXcd::Constant(8, 1.0);
    EXPECT_THROW(apply_to_state(u, unnormalized), std::invalid_argument);
}

// An X-realizing schedule applied to a basis state with odd-parity controls
// flips the target and nothing else.
TEST(ApplyToState, ParityScheduleFlipsTargetState) {
    IsingModel m = testbed_model(0.025, 2.0, 0.4);
    auto segs = target_schedule(Testbed9q::target, {0.8, -0.8}, 10.0);
    Eigen::MatrixXcd u = evolve_exact(m, segs);
    // Controls (up,down,left,right) = sites 1,7,3,5; set only "up" to |1>.
    const int n = 9;
    std::uint64_t idx = std::uint64_t{1} << (n - 1 - Testbed9q::up);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(512);
    psi[static_cast<Eigen::Index>(idx)] = 1.0;
    Eigen::VectorXcd out = apply_to_state(u, psi);
    const std::uint64_t flipped = idx | (std::uint64_t{1} << (n - 1 - Testbed9q::target));
    EXPECT_GE(std::norm(out[static_cast<Eigen::Index>(flipped)]), 0.999);
}
