#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wmprotect/qmat.hpp"

namespace wmp {

// Amplitude-damping strength, stored canonically as p in [0, 1].
class DampingParams {
 public:
  // p = 1 - exp(-gamma * t); gamma in 1/s, t in s.
  static DampingParams from_rate(double gamma, double t);
  static DampingParams from_strength(double p);

  double p() const { return p_; }
  // Present only when constructed from a rate and a time.
  std::optional<double> gamma() const { return gamma_; }
  std::optional<double> t() const { return t_; }

 private:
  DampingParams(double p, std::optional<double> gamma, std::optional<double> t)
      : p_(p), gamma_(gamma), t_(t) {}
  double p_;
  std::optional<double> gamma_;
  std::optional<double> t_;
};

// WM and MR strengths, both in [0, 1).
struct Strengths {
  double w = 0.0;
  double wr = 0.0;

  static Strengths make(double w, double wr);
};

// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct PureQubit {
  double theta = 0.0;
  double phi = 0.0;

  static PureQubit make(double theta, double phi);

  CVector ket() const;
  DensityState density() const;
  double excited_population() const;  // rho_22(0) = sin^2(theta/2)
};

// Named input states of the protection experiments.
PureQubit phi1_state();  // theta = pi/3, phi = pi/2
PureQubit phi2_state();  // theta = pi/2, phi = pi/2
PureQubit phi3_state();  // theta = pi

std::array<CMatrix, 2> ad_kraus(double p);
CMatrix wm_operator(double w);
CMatrix mr_operator(double wr);

// Reversal strength w + p(1 - w); equivalently 1 - wr = (1 - w)(1 - p).
double reversal_strength(double w, double p);

// Sum_k K rho K^dagger; with normalize the result is divided by its trace
// (ZeroTrace below 1e-12). The pre-normalization trace is returned either way.
struct KrausResult {
  DensityState state;
  double trace;
};
KrausResult apply_kraus(const DensityState& rho, std::span<const CMatrix> ks, bool normalize);

DensityState rho_ad(const DensityState& rho0, double p);

// Trace of the WM-filtered state: rho_11 + (1 - w) rho_22.
double wm_trace(const DensityState& rho0, double w);

struct ProtectedState {
  DensityState state;  // normalized
  double n;            // Tr sigma_protect, the success probability
};
ProtectedState rho_protect_analytic(const DensityState& rho0, double w, double p, double wr);

// The N = N1 + N2 split of the success probability with wr = reversal_strength(w, p).
struct SuccessTerms {
  double n1;
  double n2;
  double n;
};
SuccessTerms success_terms(const DensityState& rho0, double w, double p);

// Fidelity of the protected state with a pure input at the reversal strength
// rule: (N1 + N2 cos^2(theta/2)) / (N1 + N2).
double protect_fidelity_pure(const PureQubit& state, double w, double p);

// Diagnostic: fidelity of the protected state against rho0 for each supplied
// reversal strength. Makes no claim about where the maximum lies.
struct ReversalScanPoint {
  double wr;
  double fidelity;
  double n;
};
std::vector<ReversalScanPoint> reversal_scan(const PureQubit& state, double w, double p,
                                             std::span<const double> wr_grid);

}  // namespace wmp
