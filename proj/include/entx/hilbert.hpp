#pragma once

// Dense complex linear algebra for bipartite pure states.
//
// Amplitudes are stored row-major with subsystem A as the slow index:
// entry (i * dim_b + j) is the coefficient of u_i (x) v_j.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entx {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace tol {
inline constexpr double algebraic = 1e-12;
inline constexpr double eigen = 1e-10;
inline constexpr double psd = 1e-10;
}  // namespace tol

/// Raised for malformed user-facing input (bad dimensions, normalization, orthogonality).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Subsystem { A, B };

inline Subsystem other(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

/// Normalized amplitude vector on C^dim_a (x) C^dim_b.
class PureState {
 public:
  PureState(Index dim_a, Index dim_b, Vector amplitudes)
      : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
    check_shape();
    const double n2 = amplitudes_.squaredNorm();
    if (!(std::abs(n2 - 1.0) <= tol::algebraic)) {
      throw ValidationError("state is not normalized: squared norm = " + std::to_string(n2));
    }
  }

  /// Rescales `raw` to unit norm. Throws if the vector is zero.
  static PureState normalized(Index dim_a, Index dim_b, Vector raw) {
    const double n = raw.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    raw /= n;
    return PureState(dim_a, dim_b, std::move(raw));
  }

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return dim_a_ * dim_b_; }
  const Vector& amplitudes() const { return amplitudes_; }
  cplx operator()(Index i, Index j) const { return amplitudes_[i * dim_b_ + j]; }

  /// dim_a x dim_b coefficient matrix M with M(i, j) = amplitude of u_i (x) v_j.
  RowMajorMatrix coefficients() const {
    return Eigen::Map<const RowMajorMatrix>(amplitudes_.data(), dim_a_, dim_b_);
  }

  bool same_shape(const PureState& o) const { return dim_a_ == o.dim_a_ && dim_b_ == o.dim_b_; }

 private:
  void check_shape() const {
    if (dim_a_ <= 0 || dim_b_ <= 0) {
      throw DimensionError("subsystem dimensions must be positive");
    }
    if (dim_a_ * dim_b_ != amplitudes_.size()) {
      throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) +
                           " does not match dim_a*dim_b = " + std::to_string(dim_a_ * dim_b_));
    }
  }

  Index dim_a_;
  Index dim_b_;
  Vector amplitudes_;
};

inline cplx inner(const PureState& bra, const PureState& ket) {
  return bra.amplitudes().dot(ket.amplitudes());  // Eigen's dot conjugates the left operand
}

/// Hermitian, trace-one, positive semidefinite matrix on one subsystem.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) { validate(); }

  /// Skips the eigenvalue check. Only for matrices that are PSD by construction
  /// (Gram matrices and convex combinations of them).
  static DensityMatrix trusted(Matrix entries) { return DensityMatrix(std::move(entries), 0); }

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  cplx operator()(Index r, Index c) const { return entries_(r, c); }

  Eigen::VectorXd eigenvalues() const {
    return Eigen::SelfAdjointEigenSolver<Matrix>(entries_, Eigen::EigenvaluesOnly).eigenvalues();
  }

  void validate() const {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
      throw DimensionError("density matrix must be square and non-empty");
    }
    if (!((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol::algebraic)) {
      throw ValidationError("density matrix is not Hermitian");
    }
    const cplx tr = entries_.trace();
    if (!(std::abs(tr - 1.0) <= tol::algebraic)) {
      throw ValidationError("density matrix trace differs from 1");
    }
    if (eigenvalues().minCoeff() < -tol::psd) {
      throw ValidationError("density matrix has a negative eigenvalue");
    }
  }

 private:
  DensityMatrix(Matrix entries, int) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Partial trace of |psi_n><psi_m| over the discarded subsystem. Not Hermitian in general.
struct CrossOperator {
  Matrix entries;
  Subsystem kept;

  Index dim() const { return entries.rows(); }
};

struct SchmidtDecomposition {
  std::vector<double> weights;   // descending, strictly positive
  std::vector<Vector> vectors_a;
  std::vector<Vector> vectors_b;

  /// sum_k sqrt(p_k) u_k (x) v_k
  Vector reconstruct() const {
    const Index da = vectors_a.empty() ? 0 : vectors_a.front().size();
    const Index db = vectors_b.empty() ? 0 : vectors_b.front().size();
    RowMajorMatrix m = RowMajorMatrix::Zero(da, db);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      m += std::sqrt(weights[k]) * vectors_a[k] * vectors_b[k].transpose();
    }
    return Eigen::Map<const Vector>(m.data(), m.size());
  }
};

namespace detail {

// Reduced matrices straight from the coefficient matrix M (dim_a x dim_b).
//   rho_A = M M^dagger,  rho_B = M^T conj(M)
template <class Derived>
Matrix reduced_from_coefficients(const Eigen::MatrixBase<Derived>& m, Subsystem keep) {
  if (keep == Subsystem::A) return m * m.adjoint();
  return m.transpose() * m.conjugate();
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

/// Tr(X Y) without forming the product.
template <class DX, class DY>
cplx trace_of_product(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  return x.transpose().cwiseProduct(y).sum();
}

}  // namespace detail

inline PureState tensor(const Vector& a, const Vector& b) {
  if (a.size() == 0 || b.size() == 0) {
    throw DimensionError("tensor factors must be non-empty");
  }
  RowMajorMatrix m = a * b.transpose();
  return PureState(a.size(), b.size(), Eigen::Map<const Vector>(m.data(), m.size()));
}

inline DensityMatrix partial_trace(const PureState& psi, Subsystem keep) {
  const Matrix rho = detail::reduced_from_coefficients(psi.coefficients(), keep);
  return DensityMatrix::trusted(detail::hermitian_part(rho));
}

/// sigma_mn: Tr_A(sigma_mn X) = <psi_m| X (x) I |psi_n>, i.e. the partial trace of |psi_n><psi_m|.
inline CrossOperator cross_operator(const PureState& psi_m, const PureState& psi_n, Subsystem keep) {
  if (!psi_m.same_shape(psi_n)) {
    throw DimensionError("cross operator needs states of identical bipartite shape");
  }
  const RowMajorMatrix mm = psi_m.coefficients();
  const RowMajorMatrix mn = psi_n.coefficients();
  if (keep == Subsystem::A) return {mn * mm.adjoint(), keep};
  return {mn.transpose() * mm.conjugate(), keep};
}

/// Schmidt form via the eigen-decomposition of the smaller reduced matrix.
inline SchmidtDecomposition schmidt(const PureState& psi) {
  constexpr double zero_weight = 1e-14;
  const RowMajorMatrix m = psi.coefficients();
  const bool a_side = psi.dim_a() <= psi.dim_b();
  const Matrix rho = detail::hermitian_part(
      detail::reduced_from_coefficients(m, a_side ? Subsystem::A : Subsystem::B));
  const Eigen::SelfAdjointEigenSolver<Matrix> es(rho);

  SchmidtDecomposition out;
  for (Index k = rho.rows() - 1; k >= 0; --k) {  // eigenvalues come ascending
    const double p = es.eigenvalues()[k];
    if (p <= zero_weight) break;
    const Vector w = es.eigenvectors().col(k);
    out.weights.push_back(p);
    if (a_side) {
      out.vectors_a.push_back(w);
      out.vectors_b.push_back(m.transpose() * w.conjugate() / std::sqrt(p));
    } else {
      out.vectors_a.push_back(m * w.conjugate() / std::sqrt(p));
      out.vectors_b.push_back(w);
    }
  }
  return out;
}

}  // namespace entx
