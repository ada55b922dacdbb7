#include "wmprotect/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wmp {

namespace {

void check_unit_closed(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

void check_unit_half_open(double x, const char* name) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw RangeError(std::string(name) + " must lie in [0, 1), got " + std::to_string(x));
  }
}

void check_qubit_state(const DensityState& rho, const char* what) {
  if (rho.dim() != 2) throw InvalidState(std::string(what) + ": expected a single-qubit state");
  if (!rho.is_normalized()) throw InvalidState(std::string(what) + ": expected a normalized state");
}

}  // namespace

DampingParams DampingParams::from_rate(double gamma, double t) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw RangeError("gamma must be finite and >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw RangeError("t must be finite and >= 0");
  return DampingParams(-std::expm1(-gamma * t), gamma, t);
}

DampingParams DampingParams::from_strength(double p) {
  check_unit_closed(p, "p");
  return DampingParams(p, std::nullopt, std::nullopt);
}

Strengths Strengths::make(double w, double wr) {
  check_unit_half_open(w, "w");
  check_unit_half_open(wr, "wr");
  return {w, wr};
}

PureQubit PureQubit::make(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw RangeError("theta must lie in [0, pi]");
  if (!std::isfinite(phi)) throw RangeError("phi must be finite");
  return {theta, phi};
}

CVector PureQubit::ket() const {
  CVector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return v;
}

DensityState PureQubit::density() const { return DensityState::from_ket(ket()); }

double PureQubit::excited_population() const {
  const double s = std::sin(theta / 2.0);
  return s * s;
}

PureQubit phi1_state() { return {std::numbers::pi / 3.0, std::numbers::pi / 2.0}; }
PureQubit phi2_state() { return {std::numbers::pi / 2.0, std::numbers::pi / 2.0}; }
PureQubit phi3_state() { return {std::numbers::pi, std::numbers::pi / 2.0}; }

std::array<CMatrix, 2> ad_kraus(double p) {
  check_unit_closed(p, "p");
  CMatrix e0 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - p);
  CMatrix e1 = CMatrix::Zero(2, 2);
  e1(0, 1) = std::sqrt(p);
  return {e0, e1};
}

CMatrix wm_operator(double w) {
  check_unit_half_open(w, "w");
  CMatrix k = CMatrix::Zero(2, 2);
  k(0, 0) = 1.0;
  k(1, 1) = std::sqrt(1.0 - w);
  return k;
}

CMatrix mr_operator(double wr) {
  check_unit_half_open(wr, "wr");
  CMatrix k = CMatrix::Zero(2, 2);
  k(0, 0) = std::sqrt(1.0 - wr);
  k(1, 1) = 1.0;
  return k;
}

double reversal_strength(double w, double p) {
  check_unit_half_open(w, "w");
  check_unit_closed(p, "p");
  return w + p * (1.0 - w);
}

KrausResult apply_kraus(const DensityState& rho, std::span<const CMatrix> ks, bool normalize) {
  CMatrix acc = CMatrix::Zero(rho.dim(), rho.dim());
  for (const CMatrix& k : ks) {
    if (k.rows() != rho.dim() || k.cols() != rho.dim()) {
      throw InvalidState("apply_kraus: operator dimension does not match the state");
    }
    acc += k * rho.matrix() * k.adjoint();
  }
  DensityState out = DensityState::unnormalized(std::move(acc));
  const double tr = out.trace();
  if (normalize) return {out.normalize(), tr};
  return {std::move(out), tr};
}

DensityState rho_ad(const DensityState& rho0, double p) {
  check_qubit_state(rho0, "rho_ad");
  check_unit_closed(p, "p");
  const double keep = std::sqrt(1.0 - p);
  CMatrix out(2, 2);
  out(0, 0) = p + (1.0 - p) * rho0(0, 0);
  out(0, 1) = keep * rho0(0, 1);
  out(1, 0) = keep * rho0(1, 0);
  out(1, 1) = (1.0 - p) * rho0(1, 1);
  return DensityState::normalized(std::move(out));
}

double wm_trace(const DensityState& rho0, double w) {
  check_qubit_state(rho0, "wm_trace");
  check_unit_half_open(w, "w");
  return rho0(0, 0).real() + (1.0 - w) * rho0(1, 1).real();
}

ProtectedState rho_protect_analytic(const DensityState& rho0, double w, double p, double wr) {
  check_qubit_state(rho0, "rho_protect_analytic");
  check_unit_half_open(w, "w");
  check_unit_closed(p, "p");
  check_unit_half_open(wr, "wr");
  const double coherence = std::sqrt((1.0 - w) * (1.0 - p) * (1.0 - wr));
  CMatrix sigma(2, 2);
  sigma(0, 0) = (1.0 - wr) * (rho0(0, 0) + p * (1.0 - w) * rho0(1, 1));
  sigma(0, 1) = coherence * rho0(0, 1);
  sigma(1, 0) = coherence * rho0(1, 0);
  sigma(1, 1) = (1.0 - w) * (1.0 - p) * rho0(1, 1);
  DensityState unnormalized = DensityState::unnormalized(std::move(sigma));
  const double n = unnormalized.trace();
  return {unnormalized.normalize(), n};
}

SuccessTerms success_terms(const DensityState& rho0, double w, double p) {
  check_qubit_state(rho0, "success_terms");
  check_unit_half_open(w, "w");
  check_unit_closed(p, "p");
  const double rho22 = rho0(1, 1).real();
  const double n1 = (1.0 - p) * (1.0 - w);
  const double n2 = rho22 * (1.0 - w) * (1.0 - w) * p * (1.0 - p);
  return {n1, n2, n1 + n2};
}

double protect_fidelity_pure(const PureQubit& state, double w, double p) {
  check_unit_half_open(w, "w");
  check_unit_closed(p, "p");
  const SuccessTerms terms = success_terms(state.density(), w, p);
  if (terms.n < tol::kZeroTrace) throw ZeroTrace("protect_fidelity_pure: vanishing success probability");
  const double c = std::cos(state.theta / 2.0);
  return (terms.n1 + terms.n2 * c * c) / terms.n;
}

std::vector<ReversalScanPoint> reversal_scan(const PureQubit& state, double w, double p,
                                             std::span<const double> wr_grid) {
  const DensityState rho0 = state.density();
  std::vector<ReversalScanPoint> out;
  out.reserve(wr_grid.size());
  for (double wr : wr_grid) {
    const ProtectedState prot = rho_protect_analytic(rho0, w, p, wr);
    out.push_back({wr, uhlmann_fidelity(rho0, prot.state), prot.n});
  }
  return out;
}

}  // namespace wmp
