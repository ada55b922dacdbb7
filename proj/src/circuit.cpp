#include "wmprotect/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmprotect/duality.hpp"

namespace wmp {

namespace {

constexpr double kUnitaryTolerance = 1e-12;

int bit_of(int index, int wire) { return (index >> (kNumWires - 1 - wire)) & 1; }

// Sub-index of `index` restricted to `wires`, first wire most significant.
int sub_index(int index, const std::vector<int>& wires) {
  int out = 0;
  for (int w : wires) out = (out << 1) | bit_of(index, w);
  return out;
}

bool agree_outside(int a, int b, const std::vector<int>& wires) {
  int mask = 0;
  for (int w : wires) mask |= 1 << (kNumWires - 1 - w);
  return (a & ~mask) == (b & ~mask);
}

CMatrix ket0_projector() {
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

void check_block_strength(double s, const char* name) {
  if (s == 1.0) throw DegenerateStrength(std::string(name) + " = 1 has no duality gadget");
  if (!(s >= 0.0 && s < 1.0)) throw RangeError(std::string(name) + " must lie in [0, 1)");
}

void append_block(std::vector<GateOp>& gates, GadgetKind kind, double strength, int ancilla) {
  const DualityGadget g = build_gadget(kind, strength);
  const std::string tag(to_string(kind));
  gates.push_back(GateOp::make("V^" + tag, g.v, {ancilla}));
  gates.push_back(GateOp::make("CZ^" + tag, g.unitaries[1], {kSystem}, Control{ancilla, 1}));
  gates.push_back(GateOp::make("W^" + tag, g.w_mat, {ancilla}));
  if (g.post_x) {
    gates.push_back(GateOp::make("CX^" + tag, pauli_x(), {kSystem}, Control{ancilla, 1}));
  }
}

CMatrix rotate_wire(const CMatrix& sigma, int wire, const CMatrix& r) {
  const CMatrix full = embed(GateOp::make("R", r, {wire}));
  return full * sigma * full.adjoint();
}

// Index of the basis state with `bit` on `wire` and the spectator bits taken
// from `pattern` (ascending wire order, first spectator most significant).
int peak_index(int wire, unsigned pattern, int bit) {
  int index = 0;
  int spectator = 0;
  for (int w = 0; w < kNumWires; ++w) {
    int b;
    if (w == wire) {
      b = bit;
    } else {
      b = (pattern >> (kNumWires - 2 - spectator)) & 1U;
      ++spectator;
    }
    index = (index << 1) | b;
  }
  return index;
}

double absorption(const CMatrix& s, int wire, unsigned pattern) {
  return coherence_peak(s, wire, pattern).real();
}

ReadoutIntensities raw_intensities(const CMatrix& sigma) {
  const auto rotated = tomo_settings(sigma);
  ReadoutIntensities out{0.0, 0.0, 0.0};
  for (unsigned pat = 0; pat < 8; ++pat) out.alpha += absorption(rotated[0], kC1, pat);
  for (unsigned pat = 0; pat < 4; ++pat) out.beta += absorption(rotated[1], kC2, pat);
  out.gamma = absorption(rotated[2], kC3, 0) + absorption(rotated[2], kC3, 1);
  return out;
}

// Intensity scale fixed once so the diagonal readout of |0000><0000| yields
// sigma_11 + sigma_22 = 1.
double calibration_scale() {
  static const double scale = [] {
    CMatrix ref = CMatrix::Zero(kRegisterDim, kRegisterDim);
    ref(0, 0) = 1.0;
    const ReadoutIntensities raw = raw_intensities(ref);
    return 7.0 / (2.0 * raw.alpha + 4.0 * raw.beta + 8.0 * raw.gamma);
  }();
  return scale;
}

}  // namespace

GateOp GateOp::make(std::string label, CMatrix unitary, std::vector<int> targets,
                    std::optional<Control> control) {
  if (targets.empty()) throw InvalidState("gate " + label + " has no targets");
  std::vector<int> wires = targets;
  if (control) {
    if (control->polarity != 0 && control->polarity != 1) {
      throw InvalidState("gate " + label + ": control polarity must be 0 or 1");
    }
    wires.push_back(control->wire);
  }
  for (int w : wires) {
    if (w < 0 || w >= kNumWires) throw IndexError("gate " + label + ": wire out of range");
  }
  std::sort(wires.begin(), wires.end());
  if (std::adjacent_find(wires.begin(), wires.end()) != wires.end()) {
    throw InvalidState("gate " + label + ": wires must be distinct");
  }
  const Eigen::Index dim = Eigen::Index{1} << targets.size();
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw InvalidState("gate " + label + ": matrix size does not match its targets");
  }
  if (unitarity_residual(unitary) > kUnitaryTolerance) {
    throw InvalidState("gate " + label + " is not unitary");
  }
  return GateOp{std::move(label), std::move(unitary), std::move(targets), control};
}

CMatrix embed(const GateOp& gate) {
  CMatrix full = CMatrix::Zero(kRegisterDim, kRegisterDim);
  for (int col = 0; col < kRegisterDim; ++col) {
    if (gate.control && bit_of(col, gate.control->wire) != gate.control->polarity) {
      full(col, col) = 1.0;
      continue;
    }
    for (int row = 0; row < kRegisterDim; ++row) {
      if (!agree_outside(row, col, gate.targets)) continue;
      full(row, col) = gate.unitary(sub_index(row, gate.targets), sub_index(col, gate.targets));
    }
  }
  return full;
}

ProtectionCircuit build_protection_circuit(double w, double p, double wr) {
  check_block_strength(w, "w");
  check_block_strength(p, "p");
  check_block_strength(wr, "wr");
  ProtectionCircuit c{{}, w, p, wr};
  if (w > 0.0) append_block(c.gates, GadgetKind::WM, w, kWmAncilla);
  if (p > 0.0) append_block(c.gates, GadgetKind::AD, p, kAdAncilla);
  if (wr > 0.0) append_block(c.gates, GadgetKind::MR, wr, kMrAncilla);
  return c;
}

DensityState run_circuit(const ProtectionCircuit& c, const DensityState& rho_sys) {
  if (rho_sys.dim() != 2 || !rho_sys.is_normalized()) {
    throw InvalidState("run_circuit expects a normalized single-qubit state");
  }
  const CMatrix zero = ket0_projector();
  CMatrix sigma = kron(kron(kron(zero, zero), rho_sys.matrix()), zero);
  for (const GateOp& g : c.gates) {
    const CMatrix u = embed(g);
    sigma = u * sigma * u.adjoint();
  }
  return DensityState::normalized((sigma + sigma.adjoint()) / 2.0);
}

ProtectedState extract_protected(const DensityState& sigma) {
  if (sigma.dim() != kRegisterDim) throw InvalidState("extract_protected expects a 16x16 state");
  const DensityState reduced = partial_trace(sigma, {kC1, kC2, kC3}, {2, 2, 2, 2});
  DensityState block = DensityState::unnormalized(reduced.matrix().topLeftCorner(2, 2));
  const double n = block.trace();
  return {block.normalize(), n};
}

std::array<CMatrix, 3> tomo_settings(const CMatrix& sigma) {
  if (sigma.rows() != kRegisterDim || sigma.cols() != kRegisterDim) {
    throw InvalidState("tomo_settings expects a 16x16 matrix");
  }
  const CMatrix r = rotation_y(std::numbers::pi / 2.0);
  return {rotate_wire(sigma, kC1, r), rotate_wire(sigma, kC2, r), rotate_wire(sigma, kC3, r)};
}

Complex coherence_peak(const CMatrix& s, int wire, unsigned spectator_pattern) {
  if (wire < 0 || wire >= kNumWires) throw IndexError("coherence_peak: wire out of range");
  if (spectator_pattern >= 8) throw IndexError("coherence_peak: spectator pattern out of range");
  return s(peak_index(wire, spectator_pattern, 0), peak_index(wire, spectator_pattern, 1));
}

ReadoutIntensities readout_intensities(const CMatrix& sigma) {
  const double scale = calibration_scale();
  const ReadoutIntensities raw = raw_intensities(sigma);
  return {scale * raw.alpha, scale * raw.beta, scale * raw.gamma};
}

DensityState readout_reconstruct(const CMatrix& sigma) {
  const ReadoutIntensities in = readout_intensities(sigma);
  const double lower = (1.0 + 2.0 * in.alpha + 4.0 * in.beta + 8.0 * in.gamma) / 8.0;
  const double upper = (1.0 + 2.0 * in.alpha + 4.0 * in.beta - 8.0 * in.gamma) / 8.0;
  // Rightmost C3 peak and its C4 neighbor of the unrotated state: sigma_13 + sigma_24.
  const Complex coherence = coherence_peak(sigma, kC3, 0) + coherence_peak(sigma, kC3, 1);
  const double n = lower + upper;
  if (n < tol::kZeroTrace) throw ZeroTrace("readout_reconstruct: protected subspace is empty");
  CMatrix rho(2, 2);
  rho << lower, coherence, std::conj(coherence), upper;
  return nearest_physical(rho / n);
}

}  // namespace wmp
