#pragma once

#include <complex>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "wmprotect/errors.hpp"

namespace wmp {

using Complex = std::complex<double>;

// Dense square complex matrix; every operator and density matrix in the
// library is one of these. Row-major indexing with qubit 0 most significant.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;    // eigenvalues in [-kPsd, 0) are rounding noise
inline constexpr double kNotPsd = 1e-8;  // below -kNotPsd the input is rejected
inline constexpr double kTrace = 1e-10;
inline constexpr double kZeroTrace = 1e-12;
}  // namespace tol

CMatrix identity(Eigen::Index dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix dagger(const CMatrix& a);

// exp(-i angle Y / 2) and exp(-i angle Z / 2).
CMatrix rotation_y(double angle);
CMatrix rotation_z(double angle);

// Largest entrywise modulus, the norm used for every residual in this library.
double max_abs(const CMatrix& a);
double unitarity_residual(const CMatrix& u);
double hermiticity_residual(const CMatrix& a);

// Density matrix with its trace cached. A normalized state has unit trace; an
// unnormalized one is a post-selection branch with trace in [0, 1].
class DensityState {
 public:
  static DensityState normalized(CMatrix mat);
  static DensityState unnormalized(CMatrix mat);
  static DensityState from_ket(const CVector& psi);

  const CMatrix& matrix() const { return mat_; }
  double trace() const { return trace_; }
  bool is_normalized() const { return normalized_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

  // Divide by the trace. Throws ZeroTrace for a vanishing branch.
  DensityState normalize() const;

 private:
  DensityState(CMatrix mat, double trace, bool normalized)
      : mat_(std::move(mat)), trace_(trace), normalized_(normalized) {}

  CMatrix mat_;
  double trace_;
  bool normalized_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Reduced state over the wires in `keep` (wire 0 is the most significant
// factor). Kept wires stay in ascending order. The trace is preserved.
DensityState partial_trace(const DensityState& sigma, const std::set<int>& keep,
                           const std::vector<int>& wire_dims);

// Hermitian PSD square root via eigendecomposition. Eigenvalues down to
// -neg_tolerance are clamped to zero; anything more negative throws NotPSD.
CMatrix herm_sqrt(const CMatrix& a, double neg_tolerance = tol::kNotPsd);

// Squared (Jozsa) convention: F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityState& rho, const DensityState& sigma);

// Euclidean projection of v onto {x : x_i >= 0, sum x_i = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

// Closest unit-trace PSD matrix: hermitize, then project the spectrum onto
// the probability simplex while keeping the eigenbasis.
DensityState nearest_physical(const CMatrix& a);

}  // namespace wmp
