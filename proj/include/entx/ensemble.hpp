#pragma once

// Microcanonical ensembles psi(chi) = sum_n sqrt(p_n) e^{i chi_n} psi_n and
// their phase-averaged entanglement.

#include "entx/entropy.hpp"
#include "entx/hilbert.hpp"
#include "entx/random.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entx {

class MicrocanonicalEnsemble {
 public:
  MicrocanonicalEnsemble(std::vector<double> weights, std::vector<PureState> members)
      : weights_(std::move(weights)), members_(std::move(members)) {
    validate();
  }

  std::size_t size() const { return members_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<PureState>& members() const { return members_; }
  double weight(std::size_t n) const { return weights_[n]; }
  const PureState& member(std::size_t n) const { return members_[n]; }
  Index dim_a() const { return members_.front().dim_a(); }
  Index dim_b() const { return members_.front().dim_b(); }

 private:
  void validate() const {
    if (members_.empty()) throw ValidationError("ensemble has no members");
    if (weights_.size() != members_.size()) {
      throw ValidationError("ensemble has " + std::to_string(weights_.size()) + " weights but " +
                            std::to_string(members_.size()) + " members");
    }
    double total = 0.0;
    for (const double p : weights_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("ensemble weights must be finite and >= 0");
      total += p;
    }
    if (!(std::abs(total - 1.0) <= tol::algebraic)) {
      throw ValidationError("ensemble weights sum to " + std::to_string(total) + ", expected 1");
    }
    for (std::size_t m = 0; m < members_.size(); ++m) {
      if (!members_[m].same_shape(members_.front())) {
        throw DimensionError("ensemble members have different bipartite shapes");
      }
      for (std::size_t n = m; n < members_.size(); ++n) {
        const double expected = m == n ? 1.0 : 0.0;
        if (!(std::abs(inner(members_[m], members_[n]) - expected) < tol::eigen)) {
          throw ValidationError("ensemble members " + std::to_string(m) + " and " + std::to_string(n) +
                                " are not orthonormal");
        }
      }
    }
  }

  std::vector<double> weights_;
  std::vector<PureState> members_;
};

/// Terms of the closed-form mean: mean = s1_sigma + s1_tau - delta.
struct MeanEntanglementReport {
  double s1_sigma = 0.0;
  double s1_tau = 0.0;
  double delta = 0.0;
  double mean = 0.0;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// sigma = sum_n p_n sigma_n (keep = A) or tau = sum_n p_n tau_n (keep = B).
inline DensityMatrix average_reduced(const MicrocanonicalEnsemble& e, Subsystem keep) {
  const Index d = keep == Subsystem::A ? e.dim_a() : e.dim_b();
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t n = 0; n < e.size(); ++n) {
    if (e.weight(n) == 0.0) continue;
    acc += e.weight(n) * partial_trace(e.member(n), keep).entries();
  }
  return DensityMatrix::trusted(detail::hermitian_part(acc));
}

/// Delta = 1 - sum_m p_m^2 Tr sigma_m^2, evaluated on either side.
inline double overlap_correction(const MicrocanonicalEnsemble& e, Subsystem side) {
  double s = 0.0;
  for (std::size_t m = 0; m < e.size(); ++m) {
    const double p = e.weight(m);
    if (p == 0.0) continue;
    s += p * p * detail::purity(partial_trace(e.member(m), side).entries());
  }
  return 1.0 - s;
}

inline MeanEntanglementReport mean_entanglement_closed_form(const MicrocanonicalEnsemble& e) {
  MeanEntanglementReport r;
  r.s1_sigma = 1.0 - detail::purity(average_reduced(e, Subsystem::A).entries());
  r.s1_tau = 1.0 - detail::purity(average_reduced(e, Subsystem::B).entries());
  r.delta = overlap_correction(e, Subsystem::A);
  const double delta_b = overlap_correction(e, Subsystem::B);
  if (!(std::abs(r.delta - delta_b) <= tol::eigen)) {
    throw std::logic_error("overlap correction differs between subsystems: " + std::to_string(r.delta) +
                           " vs " + std::to_string(delta_b));
  }
  r.mean = r.s1_sigma + r.s1_tau - r.delta;
  return r;
}

/// C[m][n] = Tr_A[sigma_mn sigma_nm]. Symmetric, real.
inline Eigen::MatrixXd cross_term_matrix(const MicrocanonicalEnsemble& e) {
  const auto k = static_cast<Index>(e.size());
  Eigen::MatrixXd c(k, k);
  for (Index m = 0; m < k; ++m) {
    for (Index n = m; n < k; ++n) {
      const auto& pm = e.member(static_cast<std::size_t>(m));
      const auto& pn = e.member(static_cast<std::size_t>(n));
      const Matrix smn = cross_operator(pm, pn, Subsystem::A).entries;
      const Matrix snm = cross_operator(pn, pm, Subsystem::A).entries;
      c(m, n) = c(n, m) = detail::trace_of_product(smn, snm).real();
    }
  }
  return c;
}

/// Monte Carlo estimate of the uniform phase average of E(psi(chi)).
inline MonteCarloEstimate phase_average_oracle(const MicrocanonicalEnsemble& e, EntropyKind kind,
                                               std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw ValidationError("phase average needs at least 2 samples");

  // Columns sqrt(p_n) psi_n for members with nonzero weight.
  std::vector<Vector> cols;
  for (std::size_t n = 0; n < e.size(); ++n) {
    if (e.weight(n) > 0.0) cols.push_back(std::sqrt(e.weight(n)) * e.member(n).amplitudes());
  }
  Matrix basis(e.dim_a() * e.dim_b(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<Index>(c)) = cols[c];

  const Index da = e.dim_a();
  const Index db = e.dim_b();
  const Subsystem smaller = da <= db ? Subsystem::A : Subsystem::B;
  Vector phases(basis.cols());
  Vector psi(basis.rows());

  // Welford accumulation in sample order.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto rng = sample_stream(seed, i);
    for (Index c = 0; c < phases.size(); ++c) phases[c] = std::polar(1.0, rng.phase());
    psi.noalias() = basis * phases;
    const Eigen::Map<const RowMajorMatrix> m(psi.data(), da, db);
    const double x = detail::entropy_of(detail::reduced_from_coefficients(m, smaller), kind);
    const double d = x - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (x - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(std::max(0.0, var) / static_cast<double>(samples)), samples, seed};
}

}  // namespace entx
