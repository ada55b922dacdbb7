#include "wmprotect/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace wmp {

namespace {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidState(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw InvalidState(std::string(what) + ": matrix has non-finite entries");
  }
}

CMatrix hermitize(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  const Complex i(0.0, 1.0);
  CMatrix m(2, 2);
  m << 0.0, -i, i, 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CMatrix dagger(const CMatrix& a) { return a.adjoint(); }

CMatrix rotation_y(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  CMatrix r(2, 2);
  r << c, -s, s, c;
  return r;
}

CMatrix rotation_z(double angle) {
  CMatrix r = CMatrix::Zero(2, 2);
  r(0, 0) = std::polar(1.0, -angle / 2.0);
  r(1, 1) = std::polar(1.0, angle / 2.0);
  return r;
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMatrix& u) {
  return max_abs(u.adjoint() * u - identity(u.cols()));
}

double hermiticity_residual(const CMatrix& a) { return max_abs(a - a.adjoint()); }

DensityState DensityState::normalized(CMatrix mat) {
  DensityState s = unnormalized(std::move(mat));
  if (std::abs(s.trace_ - 1.0) > tol::kTrace) {
    throw InvalidState("normalized state must have unit trace, got " + std::to_string(s.trace_));
  }
  s.normalized_ = true;
  return s;
}

DensityState DensityState::unnormalized(CMatrix mat) {
  require_square(mat, "DensityState");
  require_finite(mat, "DensityState");
  if (hermiticity_residual(mat) > tol::kHermitian) {
    throw InvalidState("density matrix is not Hermitian");
  }
  if (min_eigenvalue(hermitize(mat)) < -tol::kPsd) {
    throw InvalidState("density matrix is not positive semidefinite");
  }
  const double tr = mat.trace().real();
  if (tr < -tol::kTrace || tr > 1.0 + tol::kTrace) {
    throw InvalidState("density matrix trace out of [0, 1]: " + std::to_string(tr));
  }
  return DensityState(std::move(mat), std::max(tr, 0.0), false);
}

DensityState DensityState::from_ket(const CVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidState("zero ket");
  const CVector unit = psi / norm;
  return normalized(unit * unit.adjoint());
}

DensityState DensityState::normalize() const {
  if (trace_ < tol::kZeroTrace) {
    throw ZeroTrace("cannot normalize a branch with trace " + std::to_string(trace_));
  }
  return normalized(mat_ / trace_);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityState partial_trace(const DensityState& sigma, const std::set<int>& keep,
                           const std::vector<int>& wire_dims) {
  const int n_wires = static_cast<int>(wire_dims.size());
  for (int w : keep) {
    if (w < 0 || w >= n_wires) {
      throw IndexError("partial_trace: wire " + std::to_string(w) + " does not exist");
    }
  }
  if (std::any_of(wire_dims.begin(), wire_dims.end(), [](int d) { return d < 1; })) {
    throw RangeError("partial_trace: wire dimensions must be positive");
  }
  const long total = std::accumulate(wire_dims.begin(), wire_dims.end(), 1L, std::multiplies<>());
  if (total != sigma.dim()) {
    throw RangeError("partial_trace: wire dimensions do not match the state dimension");
  }

  // Row-major strides: wire 0 is the most significant digit.
  std::vector<long> stride(n_wires, 1);
  for (int w = n_wires - 2; w >= 0; --w) stride[w] = stride[w + 1] * wire_dims[w + 1];

  std::vector<int> kept(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int w = 0; w < n_wires; ++w) {
    if (!keep.count(w)) traced.push_back(w);
  }
  auto extent = [&](const std::vector<int>& wires) {
    long n = 1;
    for (int w : wires) n *= wire_dims[w];
    return n;
  };
  // Offset in the full index contributed by a mixed-radix counter over `wires`.
  auto offset = [&](const std::vector<int>& wires, long counter) {
    long off = 0;
    for (auto it = wires.rbegin(); it != wires.rend(); ++it) {
      off += (counter % wire_dims[*it]) * stride[*it];
      counter /= wire_dims[*it];
    }
    return off;
  };

  const long kept_dim = extent(kept);
  const long traced_dim = extent(traced);
  CMatrix out = CMatrix::Zero(kept_dim, kept_dim);
  for (long r = 0; r < kept_dim; ++r) {
    const long row_off = offset(kept, r);
    for (long c = 0; c < kept_dim; ++c) {
      const long col_off = offset(kept, c);
      Complex acc = 0.0;
      for (long e = 0; e < traced_dim; ++e) {
        const long env = offset(traced, e);
        acc += sigma(row_off + env, col_off + env);
      }
      out(r, c) = acc;
    }
  }
  return sigma.is_normalized() ? DensityState::normalized(std::move(out))
                               : DensityState::unnormalized(std::move(out));
}

CMatrix herm_sqrt(const CMatrix& a, double neg_tolerance) {
  require_square(a, "herm_sqrt");
  require_finite(a, "herm_sqrt");
  if (hermiticity_residual(a) > tol::kHermitian) {
    throw NotPSD("herm_sqrt: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(a));
  Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() < -neg_tolerance) {
    throw NotPSD("herm_sqrt: eigenvalue " + std::to_string(evals.minCoeff()) + " is negative");
  }
  // Rounding-level eigenvalues are zeroed so rank-deficient inputs keep their
  // rank; otherwise sqrt(1e-17) noise leaks ~1e-9 into the root.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * evals.cwiseAbs().maxCoeff();
  evals = (evals.array() <= floor).select(0.0, evals).cwiseSqrt();
  const CMatrix& vecs = es.eigenvectors();
  return vecs * evals.cast<Complex>().asDiagonal() * vecs.adjoint();
}

double uhlmann_fidelity(const DensityState& rho, const DensityState& sigma) {
  if (!rho.is_normalized() || !sigma.is_normalized()) {
    throw InvalidState("uhlmann_fidelity requires normalized states");
  }
  if (rho.dim() != sigma.dim()) throw InvalidState("uhlmann_fidelity: dimension mismatch");
  const CMatrix s = herm_sqrt(rho.matrix());
  const CMatrix inner = hermitize(s * sigma.matrix() * s);
  const double root_trace = herm_sqrt(inner).trace().real();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw RangeError("project_to_simplex: empty vector");
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0);
}

DensityState nearest_physical(const CMatrix& a) {
  require_square(a, "nearest_physical");
  require_finite(a, "nearest_physical");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(a));
  const Eigen::VectorXd probs = project_to_simplex(es.eigenvalues());
  const CMatrix& vecs = es.eigenvectors();
  CMatrix out = vecs * probs.cast<Complex>().asDiagonal() * vecs.adjoint();
  return DensityState::normalized(hermitize(out));
}

}  // namespace wmp
