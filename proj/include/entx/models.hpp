#pragma once

// Bundled systems: two spins diagonal in a Bell-type basis, and the
// Jaynes-Cummings model truncated at a Fock cutoff.

#include "entx/dynamics.hpp"
#include "entx/hilbert.hpp"

#include <boost/math/tools/minima.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace entx {

// ---------------------------------------------------------------------------
// Two spins. Single-spin basis: index 0 = up, 1 = down; subsystem A is the
// first spin, so |up,down> has amplitude index 1.

namespace spin {
inline constexpr Index up = 0;
inline constexpr Index down = 1;

inline PureState basis_state(Index a, Index b) {
  Vector v = Vector::Zero(4);
  v[a * 2 + b] = 1.0;
  return PureState(2, 2, std::move(v));
}
}  // namespace spin

/// psi_1 = (|uu> + |dd>)/sqrt2, psi_2 = (|uu> - |dd>)/sqrt2,
/// psi_3 = (|ud> + |du>)/sqrt2, psi_4 = (|ud> - |du>)/sqrt2.
inline std::vector<PureState> bell_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  auto make = [h](Index i, Index j, double sign) {
    Vector v = Vector::Zero(4);
    v[i] = h;
    v[j] = sign * h;
    return PureState(2, 2, std::move(v));
  };
  return {make(0, 3, 1.0), make(0, 3, -1.0), make(1, 2, 1.0), make(1, 2, -1.0)};
}

struct TwoSpinModel {
  std::array<double, 4> energies{};
  std::vector<PureState> basis = bell_basis();

  Matrix hamiltonian() const {
    Matrix h = Matrix::Zero(4, 4);
    for (std::size_t m = 0; m < 4; ++m) h += energies[m] * basis[m].amplitudes() * basis[m].amplitudes().adjoint();
    return h;
  }

  /// p_m = |<psi_m|psi>|^2
  std::array<double, 4> bell_weights(const PureState& psi) const {
    std::array<double, 4> p{};
    for (std::size_t m = 0; m < 4; ++m) p[m] = std::norm(inner(basis[m], psi));
    return p;
  }
};

struct TwoSpinSystem {
  SpectralDecomposition spectrum;
  TwoSpinModel model;
};

/// Degenerate energies are allowed; they end up in a shared invariant subspace.
inline TwoSpinSystem two_spin(const std::array<double, 4>& energies,
                              double degeneracy_tol = default_degeneracy_tol) {
  TwoSpinModel model;
  model.energies = energies;
  SpectralDecomposition s(std::vector<double>(energies.begin(), energies.end()), model.basis, degeneracy_tol);
  return {std::move(s), std::move(model)};
}

/// Nondegenerate two-spin mean: (1/2) sum_m p_m^2.
inline double two_spin_mean_reference(const std::array<double, 4>& p) {
  return 0.5 * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
}

/// Parallel/antiparallel degenerate mean: 2 p_uu p_dd + 2 p_ud p_du.
inline double two_spin_degenerate_mean_reference(const PureState& psi) {
  const double puu = std::norm(psi(spin::up, spin::up));
  const double pdd = std::norm(psi(spin::down, spin::down));
  const double pud = std::norm(psi(spin::up, spin::down));
  const double pdu = std::norm(psi(spin::down, spin::up));
  return 2.0 * puu * pdd + 2.0 * pud * pdu;
}

// ---------------------------------------------------------------------------
// Jaynes-Cummings. Subsystem A = oscillator (Fock levels 0..n_max),
// subsystem B = atom (0 = |g>, 1 = |e>). Amplitude index = fock * 2 + atom.

namespace atom {
inline constexpr Index ground = 0;
inline constexpr Index excited = 1;
}  // namespace atom

/// Mixing angle theta_n from tan(theta) = kappa sqrt(n+1) / (detuning/2 + splitting).
inline double jc_mixing_angle(double detuning, double kappa, int n) {
  const double coupling = kappa * std::sqrt(n + 1.0);
  const double splitting = std::sqrt(0.25 * detuning * detuning + coupling * coupling);
  return std::atan2(coupling, 0.5 * detuning + splitting);
}

/// gamma = sin^2(2 theta) / 2
inline double jc_gamma(double theta) {
  const double s = std::sin(2.0 * theta);
  return 0.5 * s * s;
}

struct JaynesCummingsModel {
  double omega = 1.0;
  double omega0 = 1.0;
  double kappa = 0.0;
  int n_max = 1;
  std::vector<double> theta;      // per n in [0, n_max)
  std::vector<double> splitting;  // lambda_n = sqrt((omega-omega0)^2/4 + kappa^2 (n+1))
  std::vector<double> gamma;

  Index fock_dim() const { return n_max + 1; }
  double detuning() const { return omega - omega0; }

  void check_level(int n) const {
    if (n < 0 || n >= n_max) {
      throw ValidationError("Fock level " + std::to_string(n) + " outside [0, " + std::to_string(n_max) + ")");
    }
  }

  PureState product_state(Index atom_level, Index fock) const {
    Vector v = Vector::Zero(2 * fock_dim());
    v[fock * 2 + atom_level] = 1.0;
    return PureState(fock_dim(), 2, std::move(v));
  }

  /// psi_0 = |g,0>
  PureState ground_state() const { return product_state(atom::ground, 0); }

  /// branch 1: cos(theta)|g,n+1> + sin(theta)|e,n>; branch 2: -sin(theta)|g,n+1> + cos(theta)|e,n>.
  PureState dressed_state(int branch, int n) const {
    check_level(n);
    const double c = std::cos(theta[static_cast<std::size_t>(n)]);
    const double s = std::sin(theta[static_cast<std::size_t>(n)]);
    Vector v = Vector::Zero(2 * fock_dim());
    v[(n + 1) * 2 + atom::ground] = branch == 1 ? c : -s;
    v[n * 2 + atom::excited] = branch == 1 ? s : c;
    return PureState(fock_dim(), 2, std::move(v));
  }

  /// omega (n + 1/2) + lambda_n for branch 1, minus for branch 2.
  double dressed_energy(int branch, int n) const {
    check_level(n);
    const double centre = omega * (n + 0.5);
    const double l = splitting[static_cast<std::size_t>(n)];
    return branch == 1 ? centre + l : centre - l;
  }

  /// omega a^dag a + (omega0/2) sigma_z + kappa (a^dag sigma_- + a sigma_+) on the truncated space.
  Matrix hamiltonian() const {
    const Index d = 2 * fock_dim();
    Matrix h = Matrix::Zero(d, d);
    for (Index f = 0; f < fock_dim(); ++f) {
      h(f * 2 + atom::ground, f * 2 + atom::ground) = omega * static_cast<double>(f) - 0.5 * omega0;
      h(f * 2 + atom::excited, f * 2 + atom::excited) = omega * static_cast<double>(f) + 0.5 * omega0;
      if (f + 1 < fock_dim()) {
        const double g = kappa * std::sqrt(static_cast<double>(f + 1));
        h((f + 1) * 2 + atom::ground, f * 2 + atom::excited) = g;
        h(f * 2 + atom::excited, (f + 1) * 2 + atom::ground) = g;
      }
    }
    return h;
  }
};

inline JaynesCummingsModel make_jc_model(double omega, double omega0, double kappa, int n_max) {
  if (n_max < 1) throw ValidationError("Fock cutoff n_max must be >= 1");
  if (!std::isfinite(omega) || !std::isfinite(omega0) || !std::isfinite(kappa)) {
    throw ValidationError("Jaynes-Cummings parameters must be finite");
  }
  JaynesCummingsModel m;
  m.omega = omega;
  m.omega0 = omega0;
  m.kappa = kappa;
  m.n_max = n_max;
  for (int n = 0; n < n_max; ++n) {
    const double d = omega - omega0;
    m.theta.push_back(jc_mixing_angle(d, kappa, n));
    m.splitting.push_back(std::sqrt(0.25 * d * d + kappa * kappa * (n + 1.0)));
    m.gamma.push_back(jc_gamma(m.theta.back()));
  }
  return m;
}

struct JaynesCummingsSystem {
  SpectralDecomposition spectrum;
  JaynesCummingsModel model;
};

/// Analytic eigenbasis psi_0, psi_{1,n}, psi_{2,n} (n < n_max). The state
/// |e, n_max> is left out: it couples past the cutoff.
inline JaynesCummingsSystem jaynes_cummings(double omega, double omega0, double kappa, int n_max,
                                            double degeneracy_tol = default_degeneracy_tol) {
  auto model = make_jc_model(omega, omega0, kappa, n_max);
  std::vector<double> energies{-0.5 * omega0};
  std::vector<PureState> vecs{model.ground_state()};
  for (int n = 0; n < n_max; ++n) {
    for (const int branch : {1, 2}) {
      energies.push_back(model.dressed_energy(branch, n));
      vecs.push_back(model.dressed_state(branch, n));
    }
  }
  SpectralDecomposition s(std::move(energies), std::move(vecs), degeneracy_tol);
  return {std::move(s), std::move(model)};
}

/// |e> (x) |n>
inline PureState jc_excited_fock_state(const JaynesCummingsModel& m, int n) {
  m.check_level(n);
  return m.product_state(atom::excited, n);
}

/// Ground-state population of the atom after starting in |e, n>:
/// 2 gamma_n sin^2(lambda_n t). At resonance lambda_n = kappa sqrt(n+1).
inline double jc_population_w(const JaynesCummingsModel& m, int n, double t) {
  m.check_level(n);
  const double s = std::sin(m.splitting[static_cast<std::size_t>(n)] * t);
  return 2.0 * m.gamma[static_cast<std::size_t>(n)] * s * s;
}

/// Mean linear entanglement of |e, n>: 2 gamma_n - 3 gamma_n^2.
inline double jc_mean_entanglement_reference(const JaynesCummingsModel& m, int n) {
  m.check_level(n);
  const double g = m.gamma[static_cast<std::size_t>(n)];
  return 2.0 * g - 3.0 * g * g;
}

struct DetuningPeak {
  double detuning = 0.0;
  double gamma = 0.0;
  double mean = 0.0;
};

/// Detuning in [0, max_detuning] that maximizes 2 gamma_n - 3 gamma_n^2 for |e, n>.
inline DetuningPeak scan_detuning_for_peak_mean(double kappa, int n, double max_detuning) {
  auto neg_mean = [&](double d) {
    const double g = jc_gamma(jc_mixing_angle(d, kappa, n));
    return -(2.0 * g - 3.0 * g * g);
  };
  std::uintmax_t iters = 500;
  const auto [d, f] = boost::math::tools::brent_find_minima(neg_mean, 0.0, max_detuning,
                                                            std::numeric_limits<double>::digits / 2, iters);
  return {d, jc_gamma(jc_mixing_angle(d, kappa, n)), -f};
}

}  // namespace entx
