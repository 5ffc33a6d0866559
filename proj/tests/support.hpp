#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// library's linear-algebra paths except to construct PureState values.

#include "entx/hilbert.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace entx::testing {

using Rng = std::mt19937_64;

inline Vector random_vector(Rng& rng, Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v;
}

inline Vector random_real_vector(Rng& rng, Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline PureState random_state(Rng& rng, Index da, Index db) {
  Vector v = random_vector(rng, da * db);
  v /= v.norm();
  return PureState(da, db, v);
}

/// k orthonormal states by modified Gram-Schmidt on Gaussian vectors.
inline std::vector<PureState> random_orthonormal(Rng& rng, Index da, Index db, std::size_t k) {
  std::vector<Vector> out;
  while (out.size() < k) {
    Vector v = random_vector(rng, da * db);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) {
        cplx c = 0.0;
        for (Index i = 0; i < v.size(); ++i) c += std::conj(u[i]) * v[i];
        for (Index i = 0; i < v.size(); ++i) v[i] -= c * u[i];
      }
    }
    double n2 = 0.0;
    for (Index i = 0; i < v.size(); ++i) n2 += std::norm(v[i]);
    if (n2 < 1e-6) continue;
    out.push_back(v / std::sqrt(n2));
  }
  std::vector<PureState> states;
  for (auto& v : out) states.emplace_back(da, db, v);
  return states;
}

/// Uniform on the probability simplex.
inline std::vector<double> random_weights(Rng& rng, std::size_t k) {
  std::exponential_distribution<double> ex;
  std::vector<double> p(k);
  double s = 0.0;
  for (auto& x : p) s += (x = ex(rng));
  for (auto& x : p) x /= s;
  return p;
}

/// (rho_A)_{rs} = sum_j psi[r,j] conj(psi[s,j]); (rho_B)_{pq} = sum_i psi[i,p] conj(psi[i,q]).
inline Matrix naive_partial_trace(const PureState& psi, Subsystem keep) {
  const Index da = psi.dim_a(), db = psi.dim_b();
  const Index d = keep == Subsystem::A ? da : db;
  Matrix rho = Matrix::Zero(d, d);
  for (Index r = 0; r < d; ++r) {
    for (Index s = 0; s < d; ++s) {
      cplx acc = 0.0;
      if (keep == Subsystem::A) {
        for (Index j = 0; j < db; ++j) acc += psi.amplitudes()[r * db + j] * std::conj(psi.amplitudes()[s * db + j]);
      } else {
        for (Index i = 0; i < da; ++i) acc += psi.amplitudes()[i * db + r] * std::conj(psi.amplitudes()[i * db + s]);
      }
      rho(r, s) = acc;
    }
  }
  return rho;
}

/// Dense Kronecker product.
inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j) k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return k;
}

/// Cross operator from its defining relation Tr(sigma X) = <psi_m| X (x) I |psi_n>,
/// probing X over matrix units |s><r| (which picks out sigma_{rs}).
inline Matrix cross_operator_by_definition(const PureState& pm, const PureState& pn, Subsystem keep) {
  const Index da = pm.dim_a(), db = pm.dim_b();
  const Index d = keep == Subsystem::A ? da : db;
  Matrix sigma(d, d);
  for (Index r = 0; r < d; ++r) {
    for (Index s = 0; s < d; ++s) {
      Matrix x = Matrix::Zero(d, d);
      x(s, r) = 1.0;
      const Matrix op = keep == Subsystem::A ? kron(x, Matrix::Identity(db, db)) : kron(Matrix::Identity(da, da), x);
      sigma(r, s) = pm.amplitudes().dot(op * pn.amplitudes());
    }
  }
  return sigma;
}

inline cplx naive_trace_product(const Matrix& x, const Matrix& y) {
  cplx t = 0.0;
  for (Index i = 0; i < x.rows(); ++i)
    for (Index k = 0; k < x.cols(); ++k) t += x(i, k) * y(k, i);
  return t;
}

/// Sum_k lambda_k^2 from a full eigen-decomposition.
inline double purity_by_eigenvalues(const Matrix& rho) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(rho).eigenvalues();
  return ev.squaredNorm();
}

inline Matrix random_hermitian(Rng& rng, Index n) {
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = random_vector(rng, n);
  return 0.5 * (m + m.adjoint());
}

}  // namespace entx::testing
