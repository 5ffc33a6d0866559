#pragma once

#include "entx/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entx {

enum class EntropyKind { Linear, VonNeumann };

inline const char* to_string(EntropyKind k) { return k == EntropyKind::Linear ? "linear" : "von-neumann"; }

class InvalidDensityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

// Tr rho^2 = sum_ij |rho_ij|^2 for Hermitian rho.
inline double purity(const Matrix& rho) { return rho.squaredNorm(); }

inline double linear_entropy(const Matrix& rho) { return std::max(0.0, 1.0 - purity(rho)); }

inline double von_neumann_entropy(const Matrix& rho) {
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Matrix>(rho, Eigen::EigenvaluesOnly).eigenvalues();
  double s = 0.0;
  for (const double raw : ev) {
    if (raw < -tol::psd) {
      throw InvalidDensityError("negative eigenvalue " + std::to_string(raw) + " in density matrix");
    }
    const double l = std::clamp(raw, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log(l);
  }
  return std::max(0.0, s);
}

inline double entropy_of(const Matrix& rho, EntropyKind kind) {
  return kind == EntropyKind::Linear ? linear_entropy(rho) : von_neumann_entropy(rho);
}

}  // namespace detail

/// S_f(rho) = Tr rho f(rho), f(x) = 1 - x (linear) or -ln x (von Neumann, nats).
inline double entropy(const DensityMatrix& rho, EntropyKind kind) {
  return detail::entropy_of(rho.entries(), kind);
}

/// Maximum of the entropy on a dim-dimensional subsystem.
inline double entropy_bound(Index dim, EntropyKind kind) {
  const double d = static_cast<double>(dim);
  return kind == EntropyKind::Linear ? 1.0 - 1.0 / d : std::log(d);
}

/// Entropy of the reduced state of `side`. Both sides give the same value.
inline double entanglement(const PureState& psi, EntropyKind kind, Subsystem side = Subsystem::A) {
  return entropy(partial_trace(psi, side), kind);
}

}  // namespace entx
