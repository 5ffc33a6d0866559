#pragma once

// Unitary evolution from a spectral decomposition (hbar = 1, energies are
// angular frequencies), time-averaged entanglement, and the construction of
// the ensemble generated by a wavefunction under degenerate spectra.

#include "entx/ensemble.hpp"
#include "entx/entropy.hpp"
#include "entx/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace entx {

inline constexpr double default_degeneracy_tol = 1e-9;

/// Projection weights below this are treated as unoccupied.
inline constexpr double occupation_floor = 1e-14;

class SpanError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Energies (ascending) with orthonormal eigenvectors, partitioned into
/// degeneracy groups (invariant subspaces).
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<double> energies, std::vector<PureState> eigenvectors,
                        double degeneracy_tol = default_degeneracy_tol)
      : tol_(degeneracy_tol) {
    if (energies.empty() || energies.size() != eigenvectors.size()) {
      throw ValidationError("spectral decomposition needs one eigenvector per energy");
    }
    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return energies[i] < energies[j]; });
    for (const auto i : order) {
      energies_.push_back(energies[i]);
      eigenvectors_.push_back(eigenvectors[i]);
    }
    for (std::size_t m = 0; m < size(); ++m) {
      if (!eigenvectors_[m].same_shape(eigenvectors_.front())) {
        throw DimensionError("eigenvectors have different bipartite shapes");
      }
      for (std::size_t n = m; n < size(); ++n) {
        const double expected = m == n ? 1.0 : 0.0;
        if (!(std::abs(inner(eigenvectors_[m], eigenvectors_[n]) - expected) < tol::eigen)) {
          throw ValidationError("eigenvectors are not orthonormal");
        }
      }
    }
    group_of_.assign(size(), 0);
    groups_.push_back({0});
    for (std::size_t i = 1; i < size(); ++i) {
      const double scale = std::max({1.0, std::abs(energies_[i]), std::abs(energies_[i - 1])});
      if (energies_[i] - energies_[i - 1] > tol_ * scale) groups_.emplace_back();
      groups_.back().push_back(i);
      group_of_[i] = groups_.size() - 1;
    }
  }

  std::size_t size() const { return energies_.size(); }
  Index dim_a() const { return eigenvectors_.front().dim_a(); }
  Index dim_b() const { return eigenvectors_.front().dim_b(); }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<PureState>& eigenvectors() const { return eigenvectors_; }
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  std::size_t group_of(std::size_t n) const { return group_of_[n]; }
  double group_energy(std::size_t g) const { return energies_[groups_[g].front()]; }
  double degeneracy_tol() const { return tol_; }

  /// Columns are the eigenvectors.
  Matrix basis_matrix() const {
    Matrix v(dim_a() * dim_b(), static_cast<Index>(size()));
    for (std::size_t n = 0; n < size(); ++n) v.col(static_cast<Index>(n)) = eigenvectors_[n].amplitudes();
    return v;
  }

 private:
  double tol_;
  std::vector<double> energies_;
  std::vector<PureState> eigenvectors_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::size_t> group_of_;
};

inline SpectralDecomposition spectral(const Matrix& hamiltonian, Index dim_a, Index dim_b,
                                      double degeneracy_tol = default_degeneracy_tol) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() != dim_a * dim_b) {
    throw DimensionError("Hamiltonian must be square with side dim_a*dim_b");
  }
  if (!((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() <= tol::eigen)) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(hamiltonian));
  std::vector<double> energies(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<PureState> vecs;
  for (Index k = 0; k < es.eigenvectors().cols(); ++k) {
    vecs.push_back(PureState::normalized(dim_a, dim_b, es.eigenvectors().col(k)));
  }
  return SpectralDecomposition(std::move(energies), std::move(vecs), degeneracy_tol);
}

/// Expansion psi = sum_n c_n psi_n, evaluated at arbitrary times.
class Propagator {
 public:
  Propagator(const PureState& psi, const SpectralDecomposition& s)
      : dim_a_(psi.dim_a()), dim_b_(psi.dim_b()), basis_(s.basis_matrix()) {
    if (!psi.same_shape(s.eigenvectors().front())) {
      throw DimensionError("state and spectrum live on different bipartite spaces");
    }
    amplitudes_ = basis_.adjoint() * psi.amplitudes();
    const double residual = (psi.amplitudes() - basis_ * amplitudes_).norm();
    if (!(residual < tol::eigen)) {
      throw SpanError("state leaves the span of the eigenvectors (residual " + std::to_string(residual) + ")");
    }
    energies_ = Eigen::Map<const Eigen::VectorXd>(s.energies().data(), static_cast<Index>(s.size()));
  }

  const Vector& amplitudes() const { return amplitudes_; }

  Vector state_vector(double t) const {
    Vector c(amplitudes_.size());
    for (Index n = 0; n < c.size(); ++n) c[n] = amplitudes_[n] * std::polar(1.0, -energies_[n] * t);
    return basis_ * c;
  }

  PureState at(double t) const { return PureState(dim_a_, dim_b_, state_vector(t)); }

  double entanglement_at(double t, EntropyKind kind) const {
    const Vector v = state_vector(t);
    const Eigen::Map<const RowMajorMatrix> m(v.data(), dim_a_, dim_b_);
    return detail::entropy_of(detail::reduced_from_coefficients(m, dim_a_ <= dim_b_ ? Subsystem::A : Subsystem::B),
                              kind);
  }

 private:
  Index dim_a_;
  Index dim_b_;
  Matrix basis_;
  Vector amplitudes_;
  Eigen::VectorXd energies_;
};

/// psi_t = sum_n c_n e^{-i eps_n t} psi_n
inline PureState evolve(const PureState& psi, const SpectralDecomposition& s, double t) {
  return Propagator(psi, s).at(t);
}

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

struct TimeGrid {
  double horizon = 1.0;
  double step = 0.01;
};

/// Energies of the degeneracy groups that psi occupies.
inline std::vector<double> occupied_group_energies(const PureState& psi, const SpectralDecomposition& s) {
  const Propagator prop(psi, s);
  std::vector<double> weight(s.groups().size(), 0.0);
  for (std::size_t n = 0; n < s.size(); ++n) weight[s.group_of(n)] += std::norm(prop.amplitudes()[static_cast<Index>(n)]);
  std::vector<double> out;
  for (std::size_t g = 0; g < weight.size(); ++g) {
    if (weight[g] >= occupation_floor) out.push_back(s.group_energy(g));
  }
  return out;
}

/// horizon = periods * 2pi / smallest occupied gap; step = 0.02 * 2pi / largest gap.
inline TimeGrid default_time_grid(const PureState& psi, const SpectralDecomposition& s, double periods = 200.0) {
  const auto e = occupied_group_energies(psi, s);
  if (e.size() < 2) return {};
  double gap_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < e.size(); ++i) gap_min = std::min(gap_min, e[i] - e[i - 1]);
  const double gap_max = e.back() - e.front();
  const double two_pi = 2.0 * std::numbers::pi;
  return {periods * two_pi / gap_min, 0.02 * two_pi / gap_max};
}

inline std::vector<double> uniform_times(double t_max, double dt) {
  if (!(t_max >= 0.0) || !(dt > 0.0)) throw ValidationError("time grid needs t_max >= 0 and dt > 0");
  const auto n = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = std::min(t_max, static_cast<double>(k) * dt);
  return t;
}

inline TimeSeries entanglement_series(const PureState& psi, const SpectralDecomposition& s, EntropyKind kind,
                                      double t_max, double dt) {
  const Propagator prop(psi, s);
  TimeSeries ts;
  ts.times = uniform_times(t_max, dt);
  ts.values.reserve(ts.times.size());
  for (const double t : ts.times) ts.values.push_back(prop.entanglement_at(t, kind));
  return ts;
}

/// Trapezoidal (1/T) int_0^T E(psi_t) dt with Neumaier-compensated accumulation.
inline double time_average_numeric(const PureState& psi, const SpectralDecomposition& s, EntropyKind kind,
                                   double horizon, double step) {
  if (!(horizon > 0.0) || !(step > 0.0) || !(step < horizon)) {
    throw ValidationError("time average needs horizon > 0 and 0 < step < horizon");
  }
  const Propagator prop(psi, s);
  const auto n = static_cast<std::size_t>(std::ceil(horizon / step));
  const double h = horizon / static_cast<double>(n);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    const double x = w * prop.entanglement_at(static_cast<double>(k) * h, kind);
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return (sum + comp) * h / horizon;
}

inline double time_average_numeric(const PureState& psi, const SpectralDecomposition& s, EntropyKind kind) {
  const auto g = default_time_grid(psi, s);
  return time_average_numeric(psi, s, kind, g.horizon, g.step);
}

struct ExactTimeAverage {
  double value = 0.0;
  /// Some resonant quadruple is not a pairing of degeneracy groups; the time
  /// average may then differ from the ensemble average.
  bool nontrivial_resonances = false;
  std::size_t resonant_terms = 0;
};

/// Infinite-time average of the linear entanglement for a finite spectrum.
///
/// With rho_A(t) = sum_mn conj(c_m) c_n e^{i(eps_m - eps_n)t} sigma_mn, the
/// average purity keeps every quadruple (m,n,r,s) with
/// |eps_m - eps_n + eps_r - eps_s| <= resonance_tol.
/// A negative resonance_tol selects the default 1e-9 * max|eps|.
inline ExactTimeAverage time_average_exact_linear(const PureState& psi, const SpectralDecomposition& s,
                                                  double resonance_tol = -1.0) {
  const Propagator prop(psi, s);
  if (resonance_tol < 0.0) {
    double emax = 0.0;
    for (const double e : s.energies()) emax = std::max(emax, std::abs(e));
    resonance_tol = 1e-9 * emax;
  }

  std::vector<std::size_t> occ;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (std::norm(prop.amplitudes()[static_cast<Index>(n)]) >= occupation_floor) occ.push_back(n);
  }

  struct Pair {
    double freq;
    std::size_t m, n;
    Matrix weighted;  // conj(c_m) c_n sigma_mn
  };
  std::vector<RowMajorMatrix> coeff;
  for (const auto n : occ) coeff.push_back(s.eigenvectors()[n].coefficients());
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (std::size_t j = 0; j < occ.size(); ++j) {
      const auto m = occ[i];
      const auto n = occ[j];
      const cplx w = std::conj(prop.amplitudes()[static_cast<Index>(m)]) * prop.amplitudes()[static_cast<Index>(n)];
      pairs.push_back({s.energies()[m] - s.energies()[n], m, n, w * (coeff[j] * coeff[i].adjoint())});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.freq < y.freq; });

  ExactTimeAverage out;
  cplx purity = 0.0;
  for (const auto& p : pairs) {
    auto lo = std::lower_bound(pairs.begin(), pairs.end(), -p.freq - resonance_tol,
                               [](const Pair& x, double f) { return x.freq < f; });
    for (auto q = lo; q != pairs.end() && q->freq <= -p.freq + resonance_tol; ++q) {
      purity += detail::trace_of_product(p.weighted, q->weighted);
      ++out.resonant_terms;
      const auto gm = s.group_of(p.m), gn = s.group_of(p.n), gr = s.group_of(q->m), gs = s.group_of(q->n);
      const bool trivial = (gm == gn && gr == gs) || (gm == gs && gn == gr);
      if (!trivial) out.nontrivial_resonances = true;
    }
  }
  out.value = 1.0 - purity.real();
  return out;
}

/// Ensemble generated by psi: one member per occupied invariant subspace,
/// psi_g = P_g psi / |P_g psi| with weight |P_g psi|^2.
inline MicrocanonicalEnsemble form_ensemble(const PureState& psi, const SpectralDecomposition& s) {
  const Propagator prop(psi, s);
  std::vector<double> weights;
  std::vector<PureState> members;
  for (const auto& group : s.groups()) {
    Vector proj = Vector::Zero(psi.dim());
    for (const auto n : group) proj += prop.amplitudes()[static_cast<Index>(n)] * s.eigenvectors()[n].amplitudes();
    const double p = proj.squaredNorm();
    if (p < occupation_floor) continue;
    weights.push_back(p);
    members.push_back(PureState::normalized(psi.dim_a(), psi.dim_b(), std::move(proj)));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= total;
  return MicrocanonicalEnsemble(std::move(weights), std::move(members));
}

}  // namespace entx
