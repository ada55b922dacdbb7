#include "wmprotect/duality.hpp"

#include <cmath>
#include <string>

namespace wmp {

namespace {

CMatrix projector(int bit) {
  CMatrix p = CMatrix::Zero(2, 2);
  p(bit, bit) = 1.0;
  return p;
}

// |0><0| (x) u0 + |1><1| (x) u1 with the ancilla as the high bit.
CMatrix select_on_ancilla(const CMatrix& u0, const CMatrix& u1) {
  return kron(projector(0), u0) + kron(projector(1), u1);
}

}  // namespace

std::string_view to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::WM:
      return "WM";
    case GadgetKind::MR:
      return "MR";
    case GadgetKind::AD:
      return "AD";
  }
  return "?";
}

UESplit ue_split(double alpha, int b_sign) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DegenerateStrength("unitary expansion needs alpha strictly inside (0, 1), got " +
                             std::to_string(alpha));
  }
  if (b_sign != 1 && b_sign != -1) throw RangeError("b_sign must be +1 or -1");
  const double root = std::sqrt(1.0 - alpha);
  const double a = std::sqrt((1.0 + root) / 2.0);
  const double b = std::sqrt((1.0 - root) / 2.0);
  return {alpha, a, b_sign * b, std::sqrt(alpha) / 2.0, b_sign};
}

DualityGadget build_gadget(GadgetKind kind, double strength) {
  const int sign = kind == GadgetKind::MR ? -1 : 1;
  const UESplit s = ue_split(strength, sign);
  const double b_mag = std::abs(s.b);

  CMatrix v(2, 2);
  v << s.a, -s.b, s.b, s.a;
  CMatrix w(2, 2);
  w << s.a, b_mag, s.c / s.a, -s.c / b_mag;

  return DualityGadget{
      .kind = kind,
      .strength = strength,
      .v = std::move(v),
      .w_mat = std::move(w),
      .unitaries = {identity(2), pauli_z()},
      .post_x = kind == GadgetKind::AD,
  };
}

CMatrix branch_operator(const DualityGadget& g, int m) {
  if (m != 0 && m != 1) throw IndexError("branch index must be 0 or 1");
  CMatrix out = CMatrix::Zero(2, 2);
  for (int j = 0; j < 2; ++j) out += g.w_mat(m, j) * g.v(j, 0) * g.unitaries[j];
  if (g.post_x && m == 1) out = pauli_x() * out;
  return out;
}

CMatrix gadget_unitary(const DualityGadget& g) {
  CMatrix u = kron(g.v, identity(2));
  u = select_on_ancilla(g.unitaries[0], g.unitaries[1]) * u;
  u = kron(g.w_mat, identity(2)) * u;
  if (g.post_x) u = select_on_ancilla(identity(2), pauli_x()) * u;
  return u;
}

std::pair<DensityState, DensityState> run_gadget(const DensityState& rho_sys,
                                                 const DualityGadget& g) {
  if (rho_sys.dim() != 2 || !rho_sys.is_normalized()) {
    throw InvalidState("run_gadget expects a normalized single-qubit state");
  }
  const CMatrix u = gadget_unitary(g);
  const CMatrix joint = u * kron(projector(0), rho_sys.matrix()) * u.adjoint();
  return {DensityState::unnormalized(joint.block(0, 0, 2, 2)),
          DensityState::unnormalized(joint.block(2, 2, 2, 2))};
}

}  // namespace wmp
