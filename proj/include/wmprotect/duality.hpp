#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "wmprotect/qmat.hpp"

namespace wmp {

enum class GadgetKind { WM, MR, AD };

std::string_view to_string(GadgetKind kind);

// Coefficients of the two-term unitary expansion a^2 I +/- b^2 Z.
//   a = sqrt((1 + sqrt(1 - alpha)) / 2), |b| = sqrt((1 - sqrt(1 - alpha)) / 2),
//   c = sqrt(alpha) / 2 = a |b|.
// b carries the sign requested by the caller.
struct UESplit {
  double alpha;
  double a;
  double b;
  double c;
  int b_sign;
};

// Throws DegenerateStrength unless alpha is strictly inside (0, 1).
UESplit ue_split(double alpha, int b_sign);

// One-ancilla duality circuit for a Kraus set: V on the ancilla, ancilla-
// controlled U_j on the system (U_0 = I, U_1 = Z), W on the ancilla, and for
// amplitude damping an ancilla-controlled X on the system. The branch with
// ancilla outcome m realizes
//   M_m = sum_j W[m, j] V[j, 0] U_j      (times X on m = 1 when post_x).
struct DualityGadget {
  GadgetKind kind;
  double strength;
  CMatrix v;
  CMatrix w_mat;
  std::array<CMatrix, 2> unitaries;
  bool post_x;
};

// WM: branch 0 = K_WM, branch 1 = diag(0, sqrt(w)).
// MR: branch 0 = K_MR, branch 1 = diag(sqrt(wr), 0).
// AD: branches 0 and 1 = E_0 and E_1.
//
// V = [[a, -b], [b, a]] carries the signed b. W = [[a, |b|], [c/a, -c/|b|]] is
// built from the magnitude, since W[0,1] V[1,0] must equal -b^2 for MR.
DualityGadget build_gadget(GadgetKind kind, double strength);

CMatrix branch_operator(const DualityGadget& g, int m);

// Runs the gadget on ancilla|0> (x) rho_sys as a 4x4 register simulation
// (ancilla most significant) and returns the two unnormalized branches
// obtained by projecting the ancilla onto |0> and |1>.
std::pair<DensityState, DensityState> run_gadget(const DensityState& rho_sys,
                                                 const DualityGadget& g);

// The full 4x4 register unitary of a gadget, ancilla as the high bit.
CMatrix gadget_unitary(const DualityGadget& g);

}  // namespace wmp
