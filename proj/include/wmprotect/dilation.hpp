#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wmprotect/duality.hpp"
#include "wmprotect/qmat.hpp"

namespace wmp {

// Unitary dilation [[K, sqrt(I - K K^dag)], [sqrt(I - K^dag K), -K^dag]] of a
// contraction K. The block index is the ancilla, so the top-left block is the
// ancilla-|0> success block.
struct DilationUnitary {
  CMatrix u;
  Eigen::Index k_dim;
};

// Throws NotContraction if the largest singular value exceeds 1 + 1e-8.
DilationUnitary snd_unitary(const CMatrix& k);

// Applies the dilation to ancilla|0> (x) rho_sys and projects the ancilla.
// first = K rho K^dag (success), second = complement branch.
std::pair<DensityState, DensityState> run_dilated(const DensityState& rho_sys, const CMatrix& k);

// Two-qubit gate acting on (ancilla, system), ancilla as the high bit.
struct Gate {
  std::string name;
  CMatrix matrix;
};

struct GateSequenceReport {
  double theta = 0.0;                  // asin(sqrt(strength))
  std::string z_placement;             // wire the Z(pi/2) must sit on: "ancilla" or "system"
  double success_residual = 0.0;       // max |B - e^{i phi} K| over the success block
  double other_placement_residual = 0.0;
  double full_matrix_residual = 0.0;   // informational: whole 4x4 vs the dilation, up to phase
  Complex global_phase{1.0, 0.0};
  bool passed = false;
};

struct GateSequence {
  std::vector<Gate> gates;  // operator-product order: gates[0] * gates[1]
  CMatrix product;
  GateSequenceReport report;
};

// Z(pi/2) . C_kY(2 theta) with theta = asin(sqrt(strength)); the controlled
// rotation is controlled by the system (|1> for WM, |0> for MR) and rotates the
// ancilla with Y(phi) = exp(-i phi Y / 2). Z(phi) = exp(-i phi Z / 2).
// Only WM and MR are accepted; strength must lie in [0, 1).
GateSequence gate_sequence(GadgetKind kind, double strength);

}  // namespace wmp
