#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wmprotect/channels.hpp"
#include "wmprotect/qmat.hpp"

namespace wmp {

// Register wires of the protection circuit. C1 is the most significant bit:
// basis index = 8 b(C1) + 4 b(C2) + 2 b(C3) + b(C4).
enum Wire : int { kC1 = 0, kC2 = 1, kC3 = 2, kC4 = 3 };
inline constexpr int kNumWires = 4;
inline constexpr int kRegisterDim = 1 << kNumWires;

inline constexpr int kMrAncilla = kC1;
inline constexpr int kWmAncilla = kC2;
inline constexpr int kSystem = kC3;
inline constexpr int kAdAncilla = kC4;

struct Control {
  int wire;
  int polarity;  // the gate fires when the control wire is |polarity>
};

struct GateOp {
  std::string label;
  CMatrix unitary;           // 2^targets x 2^targets, first target most significant
  std::vector<int> targets;
  std::optional<Control> control;

  // Validates unitarity (1e-12), wire ranges and distinctness.
  static GateOp make(std::string label, CMatrix unitary, std::vector<int> targets,
                     std::optional<Control> control = std::nullopt);
};

// Full 16x16 operator of a gate on the register.
CMatrix embed(const GateOp& gate);

struct ProtectionCircuit {
  std::vector<GateOp> gates;
  double w;
  double p;
  double wr;
};

// WM block on (C2 -> C3), AD block on (C4 -> C3) with the trailing C4-
// controlled X, MR block on (C1 -> C3). A zero strength drops its block;
// a strength of exactly 1 throws DegenerateStrength.
ProtectionCircuit build_protection_circuit(double w, double p, double wr);

// Runs the circuit on |0>|0>|rho_sys>|0> and returns the 16x16 output.
DensityState run_circuit(const ProtectionCircuit& c, const DensityState& rho_sys);

// Traces out C4 and post-selects C1 = C2 = 0. n is the selected population
// sigma_11 + sigma_22 + sigma_33 + sigma_44.
ProtectedState extract_protected(const DensityState& sigma);

// The three tomography settings: an ideal pi/2 y-rotation exp(-i pi/4 Y) on
// C1, C2 and C3 respectively.
std::array<CMatrix, 3> tomo_settings(const CMatrix& sigma);

// Absorption-mode intensity sums used by the diagonal readout.
struct ReadoutIntensities {
  double alpha;  // all eight C1 peaks of the C1-rotated state
  double beta;   // the four rightmost C2 peaks of the C2-rotated state
  double gamma;  // rightmost C3 peak and its C4 neighbor of the C3-rotated state
};

// A peak of wire q is the coherence <i|s|j> between the basis states that
// differ only in bit q (bit q = 0 in i, 1 in j). The remaining three wires,
// read in ascending wire order with the first most significant, form the
// spectator pattern; pattern 0 is the rightmost peak.
Complex coherence_peak(const CMatrix& s, int wire, unsigned spectator_pattern);

ReadoutIntensities readout_intensities(const CMatrix& sigma);

// Rebuilds the protected qubit from four readouts (the unrotated C3 coherences
// for the off-diagonal, the three rotated settings for the diagonal) and
// repairs the result with nearest_physical.
DensityState readout_reconstruct(const CMatrix& sigma);

}  // namespace wmp
