#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wmprotect/circuit.hpp"
#include "wmprotect/experiments.hpp"

using namespace wmp;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kP25 = 0.9179150013761012;

CMatrix random_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

DensityState protected_register(const PureQubit& q, double w, double p) {
  return run_circuit(build_protection_circuit(w, p, reversal_strength(w, p)), q.density());
}

}  // namespace

TEST(GateOpTest, Validation) {
  EXPECT_THROW(GateOp::make("big", identity(2) * 2.0, {kC1}), InvalidState);
  EXPECT_THROW(GateOp::make("far", pauli_x(), {4}), IndexError);
  EXPECT_THROW(GateOp::make("self", pauli_x(), {kC3}, Control{kC3, 1}), InvalidState);
  EXPECT_THROW(GateOp::make("size", identity(4), {kC1}), InvalidState);
  EXPECT_THROW(GateOp::make("pol", pauli_x(), {kC1}, Control{kC2, 2}), InvalidState);
  EXPECT_NO_THROW(GateOp::make("cx", pauli_x(), {kC3}, Control{kC4, 1}));
}

TEST(Embed, SingleWireIsKroneckerFactor) {
  const CMatrix full = embed(GateOp::make("x", pauli_x(), {kC1}));
  EXPECT_EQ(max_abs(full - kron(pauli_x(), identity(8))), 0.0);
  const CMatrix mid = embed(GateOp::make("y", pauli_y(), {kC3}));
  EXPECT_EQ(max_abs(mid - kron(kron(identity(4), pauli_y()), identity(2))), 0.0);
}

TEST(Embed, ControlledGateUsesProjectors) {
  CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  // Control C4, target C3: I4 (x) (I (x) P0 + X (x) P1).
  const CMatrix expected = kron(identity(4), kron(identity(2), p0) + kron(pauli_x(), p1));
  EXPECT_EQ(max_abs(embed(GateOp::make("cx", pauli_x(), {kC3}, Control{kC4, 1})) - expected), 0.0);
  const CMatrix expected0 = kron(kron(p0, pauli_z()) + kron(p1, identity(2)), identity(4));
  EXPECT_EQ(max_abs(embed(GateOp::make("c0z", pauli_z(), {kC2}, Control{kC1, 0})) - expected0), 0.0);
}

TEST(Embed, TwoTargetOrderFollowsList) {
  const CMatrix xz = kron(pauli_x(), pauli_z());
  const CMatrix a = embed(GateOp::make("xz", xz, {kC1, kC2}));
  EXPECT_EQ(max_abs(a - kron(xz, identity(4))), 0.0);
  const CMatrix b = embed(GateOp::make("zx", xz, {kC2, kC1}));
  EXPECT_EQ(max_abs(b - kron(kron(pauli_z(), pauli_x()), identity(4))), 0.0);
}

TEST(Circuit, BlockLayout) {
  const ProtectionCircuit c = build_protection_circuit(0.1, 0.3, 0.37);
  ASSERT_EQ(c.gates.size(), 10u);
  EXPECT_EQ(c.gates.front().targets, std::vector<int>{kWmAncilla});
  EXPECT_EQ(c.gates[6].label, "CX^AD");
  EXPECT_EQ(c.gates[6].control->wire, kAdAncilla);
  EXPECT_EQ(c.gates.back().targets, std::vector<int>{kMrAncilla});
  EXPECT_EQ(build_protection_circuit(0.0, 0.3, 0.0).gates.size(), 4u);
  EXPECT_TRUE(build_protection_circuit(0.0, 0.0, 0.0).gates.empty());
}

TEST(Circuit, StrengthErrors) {
  EXPECT_THROW(build_protection_circuit(1.0, 0.3, 0.3), DegenerateStrength);
  EXPECT_THROW(build_protection_circuit(0.1, 1.0, 0.3), DegenerateStrength);
  EXPECT_THROW(build_protection_circuit(0.1, 0.3, 1.2), RangeError);
  EXPECT_THROW(run_circuit(build_protection_circuit(0.1, 0.2, 0.3), DensityState::normalized(identity(4) / 4.0)),
               InvalidState);
}

TEST(Circuit, DampingOnlyMarginalIsDampedState) {
  for (const PureQubit& q : bloch_grid()) {
    for (double p : strength_grid_5()) {
      const DensityState sigma = run_circuit(build_protection_circuit(0.0, p, 0.0), q.density());
      EXPECT_NEAR(sigma.trace(), 1.0, 1e-12);
      const DensityState sys = partial_trace(sigma, {kSystem}, {2, 2, 2, 2});
      EXPECT_LT(max_abs(sys.matrix() - rho_ad(q.density(), p).matrix()), 1e-12);
    }
  }
}

TEST(Extraction, MatchesClosedFormOnGrid) {
  for (const PureQubit& q : bloch_grid()) {
    for (double w : strength_grid_5()) {
      for (double p : strength_grid_5()) {
        const ProtectedState sim = extract_protected(protected_register(q, w, p));
        const ProtectedState ref = rho_protect_analytic(q.density(), w, p, reversal_strength(w, p));
        EXPECT_LT(max_abs(sim.state.matrix() - ref.state.matrix()), 1e-10);
        EXPECT_NEAR(sim.n, ref.n, 1e-10);
      }
    }
  }
}

TEST(Extraction, ElementFormula) {
  const DensityState sigma = protected_register(PureQubit{1.2, 0.7}, 0.3, 0.6);
  const CMatrix& s = sigma.matrix();
  const Complex n = s(0, 0) + s(1, 1) + s(2, 2) + s(3, 3);
  const ProtectedState ps = extract_protected(sigma);
  EXPECT_NEAR(ps.n, n.real(), 1e-15);
  EXPECT_NEAR(std::abs(ps.state(0, 0) - (s(0, 0) + s(1, 1)) / n), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ps.state(0, 1) - (s(0, 2) + s(1, 3)) / n), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ps.state(1, 1) - (s(2, 2) + s(3, 3)) / n), 0.0, 1e-14);
}

TEST(Extraction, Phi2AnchorThroughCircuit) {
  const ProtectedState ps = extract_protected(protected_register(PureQubit{kPi / 2, kPi / 2}, 0.1, kP25));
  EXPECT_NEAR(ps.state(0, 0).real(), 0.6461584217527045, 1e-10);
  EXPECT_NEAR(std::abs(ps.state(0, 1)), 0.3538415782472955, 1e-10);
  EXPECT_NEAR(ps.n, 0.10439205466955834, 1e-10);
}

TEST(Extraction, InvariantUnderUnitaryOnDampingAncilla) {
  std::mt19937_64 rng(5);
  const DensityState sigma = protected_register(PureQubit{2.0, 1.0}, 0.4, 0.5);
  const ProtectedState before = extract_protected(sigma);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix u = embed(GateOp::make("u", random_unitary(rng, 2), {kC4}));
    const DensityState rotated = DensityState::normalized(u * sigma.matrix() * u.adjoint());
    const ProtectedState after = extract_protected(rotated);
    EXPECT_LT(max_abs(after.state.matrix() - before.state.matrix()), 1e-12);
    EXPECT_NEAR(after.n, before.n, 1e-12);
  }
}

TEST(Extraction, EmptySubspaceThrows) {
  CMatrix s = CMatrix::Zero(16, 16);
  s(15, 15) = 1.0;
  EXPECT_THROW(extract_protected(DensityState::normalized(s)), ZeroTrace);
  EXPECT_THROW(extract_protected(DensityState::normalized(identity(2) / 2.0)), InvalidState);
}

TEST(Readout, AgreesWithExtractionOnGrid) {
  for (const PureQubit& q : bloch_grid()) {
    for (double w : strength_grid_5()) {
      for (double p : strength_grid_5()) {
        const DensityState sigma = protected_register(q, w, p);
        EXPECT_LT(max_abs(readout_reconstruct(sigma.matrix()).matrix() - extract_protected(sigma).state.matrix()),
                  1e-8);
      }
    }
  }
}

TEST(Readout, GroundRegisterCalibration) {
  CMatrix s = CMatrix::Zero(16, 16);
  s(0, 0) = 1.0;
  const DensityState r = readout_reconstruct(s);
  EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r(1, 1)), 0.0, 1e-12);
}

TEST(Readout, PerturbedInputStaysPhysical) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.02);
  const DensityState sigma = protected_register(PureQubit{kPi, 0.0}, 0.2, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix h(16, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) h(i, j) = Complex(noise(rng), noise(rng));
    const DensityState r = readout_reconstruct(sigma.matrix() + (h + h.adjoint()) / 2.0);
    EXPECT_NEAR(r.trace(), 1.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.matrix());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Readout, PeakAddressing) {
  CMatrix s = CMatrix::Zero(16, 16);
  s(0, 2) = 1.0;  // C3 flips 0 -> 1 with every spectator at 0
  s(1, 3) = 2.0;  // same with C4 = 1
  EXPECT_EQ(coherence_peak(s, kC3, 0), Complex(1.0, 0.0));
  EXPECT_EQ(coherence_peak(s, kC3, 1), Complex(2.0, 0.0));
  s(4, 12) = 3.0;  // C1 flips with C2 = 1
  EXPECT_EQ(coherence_peak(s, kC1, 4), Complex(3.0, 0.0));
  EXPECT_THROW(coherence_peak(s, 4, 0), IndexError);
  EXPECT_THROW(coherence_peak(s, kC1, 8), IndexError);
  EXPECT_THROW(tomo_settings(identity(4)), InvalidState);
}
