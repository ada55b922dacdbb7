#include "wmprotect/dilation.hpp"

#include <cmath>
#include <numbers>

#include "wmprotect/channels.hpp"

namespace wmp {

namespace {

constexpr double kContractionSlack = 1e-8;

CMatrix projector(int bit) {
  CMatrix p = CMatrix::Zero(2, 2);
  p(bit, bit) = 1.0;
  return p;
}

// Residual of b against k after removing the best single global phase.
std::pair<double, Complex> phase_aligned_residual(const CMatrix& b, const CMatrix& k) {
  const Complex overlap = (k.adjoint() * b).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return {max_abs(b - phase * k), phase};
}

}  // namespace

DilationUnitary snd_unitary(const CMatrix& k) {
  if (k.rows() == 0 || k.rows() != k.cols()) throw InvalidState("snd_unitary: K must be square");
  if (!k.allFinite()) throw InvalidState("snd_unitary: K has non-finite entries");
  const Eigen::Index n = k.rows();

  Eigen::JacobiSVD<CMatrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.maxCoeff() > 1.0 + kContractionSlack) {
    throw NotContraction("largest singular value " + std::to_string(sv.maxCoeff()) + " exceeds 1");
  }
  const Eigen::VectorXd defect = (1.0 - sv.cwiseMin(1.0).array().square()).sqrt().matrix();
  const auto d = defect.cast<Complex>().asDiagonal();
  const CMatrix left = svd.matrixU() * d * svd.matrixU().adjoint();
  const CMatrix right = svd.matrixV() * d * svd.matrixV().adjoint();

  CMatrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = k;
  u.topRightCorner(n, n) = left;
  u.bottomLeftCorner(n, n) = right;
  u.bottomRightCorner(n, n) = -k.adjoint();
  return {std::move(u), n};
}

std::pair<DensityState, DensityState> run_dilated(const DensityState& rho_sys, const CMatrix& k) {
  if (!rho_sys.is_normalized()) throw InvalidState("run_dilated expects a normalized state");
  if (k.rows() != rho_sys.dim()) throw InvalidState("run_dilated: dimension mismatch");
  const DilationUnitary dil = snd_unitary(k);
  const Eigen::Index n = dil.k_dim;
  const CMatrix joint = dil.u * kron(projector(0), rho_sys.matrix()) * dil.u.adjoint();
  return {DensityState::unnormalized(joint.topLeftCorner(n, n)),
          DensityState::unnormalized(joint.bottomRightCorner(n, n))};
}

GateSequence gate_sequence(GadgetKind kind, double strength) {
  if (kind == GadgetKind::AD) throw RangeError("gate_sequence covers WM and MR only");
  if (strength == 1.0) throw DegenerateStrength("gate_sequence: strength 1 has no contraction inverse");
  if (!(strength >= 0.0 && strength < 1.0)) throw RangeError("strength must lie in [0, 1)");

  const double theta = std::asin(std::sqrt(strength));
  const int control_state = kind == GadgetKind::WM ? 1 : 0;
  const CMatrix k = kind == GadgetKind::WM ? wm_operator(strength) : mr_operator(strength);

  // Ancilla is the high bit; the rotation fires when the system is |control_state>.
  const CMatrix cy = kron(identity(2), projector(1 - control_state)) +
                     kron(rotation_y(2.0 * theta), projector(control_state));
  const CMatrix z_on_ancilla = kron(rotation_z(std::numbers::pi / 2.0), identity(2));
  const CMatrix z_on_system = kron(identity(2), rotation_z(std::numbers::pi / 2.0));

  const CMatrix target = snd_unitary(k).u;
  const CMatrix via_ancilla = z_on_ancilla * cy;
  const CMatrix via_system = z_on_system * cy;
  const auto [res_a, phase_a] = phase_aligned_residual(via_ancilla.topLeftCorner(2, 2), k);
  const auto [res_s, phase_s] = phase_aligned_residual(via_system.topLeftCorner(2, 2), k);

  constexpr double kTolerance = 1e-12;
  const bool use_ancilla = res_a <= kTolerance || res_a <= res_s;
  const CMatrix& z_gate = use_ancilla ? z_on_ancilla : z_on_system;
  const CMatrix& product = use_ancilla ? via_ancilla : via_system;

  GateSequence seq;
  const std::string cy_name = std::string("C") + std::to_string(control_state) + "Y(" +
                              std::to_string(2.0 * theta) + ")";
  seq.gates.push_back({use_ancilla ? "Z(pi/2) ancilla" : "Z(pi/2) system", z_gate});
  seq.gates.push_back({cy_name, cy});
  seq.product = product;

  GateSequenceReport& r = seq.report;
  r.theta = theta;
  r.z_placement = use_ancilla ? "ancilla" : "system";
  r.success_residual = use_ancilla ? res_a : res_s;
  r.other_placement_residual = use_ancilla ? res_s : res_a;
  r.global_phase = use_ancilla ? phase_a : phase_s;
  r.full_matrix_residual = phase_aligned_residual(product, target).first;
  r.passed = r.success_residual <= kTolerance;
  return seq;
}

}  // namespace wmp
