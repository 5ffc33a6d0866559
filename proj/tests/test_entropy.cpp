#include "entx/entropy.hpp"
#include "entx/models.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace entx;
using entx::testing::Rng;
using Catch::Matchers::WithinAbs;

TEST_CASE("entropy of simple density matrices", "[entropy]") {
  const DensityMatrix half(0.5 * Matrix::Identity(2, 2));
  CHECK_THAT(entropy(half, EntropyKind::Linear), WithinAbs(0.5, 1e-15));
  CHECK_THAT(entropy(half, EntropyKind::VonNeumann), WithinAbs(std::log(2.0), 1e-15));

  Matrix proj = Matrix::Zero(3, 3);
  proj(1, 1) = 1.0;
  const DensityMatrix pure(proj);
  CHECK_THAT(entropy(pure, EntropyKind::Linear), WithinAbs(0.0, 1e-15));
  CHECK_THAT(entropy(pure, EntropyKind::VonNeumann), WithinAbs(0.0, 1e-15));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = 0.3;
  CHECK_THAT(entropy(DensityMatrix(d), EntropyKind::Linear), WithinAbs(0.42, 1e-15));
}

TEST_CASE("von Neumann entropy rejects negative eigenvalues", "[entropy]") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-6;
  m(1, 1) = -1e-6;
  CHECK_THROWS_AS(entropy(DensityMatrix::trusted(m), EntropyKind::VonNeumann), InvalidDensityError);
  // tiny roundoff negatives are clamped
  m(0, 0) = 1.0 + 1e-13;
  m(1, 1) = -1e-13;
  CHECK_THAT(entropy(DensityMatrix::trusted(m), EntropyKind::VonNeumann), WithinAbs(0.0, 1e-12));
}

TEST_CASE("entanglement of reference states", "[entropy]") {
  CHECK_THAT(entanglement(bell_basis()[0], EntropyKind::Linear), WithinAbs(0.5, 1e-15));
  CHECK_THAT(entanglement(spin::basis_state(spin::up, spin::down), EntropyKind::Linear), WithinAbs(0.0, 1e-15));
  CHECK_THAT(entanglement(spin::basis_state(spin::up, spin::down), EntropyKind::VonNeumann), WithinAbs(0.0, 1e-15));

  // cos(t)|g,n+1> + sin(t)|e,n> with t = pi/6 has Schmidt weights (3/4, 1/4).
  const auto jc = make_jc_model(1.0, 1.0, 0.1, 3);
  const double th = std::numbers::pi / 6.0;
  Vector v = Vector::Zero(8);
  v[2 * 2 + atom::ground] = std::cos(th);
  v[1 * 2 + atom::excited] = std::sin(th);
  const PureState psi(jc.fock_dim(), 2, v);
  CHECK_THAT(entanglement(psi, EntropyKind::Linear), WithinAbs(0.375, 1e-15));
  CHECK_THAT(entanglement(psi, EntropyKind::Linear, Subsystem::B), WithinAbs(0.375, 1e-15));
}

TEST_CASE("entanglement does not depend on the subsystem", "[entropy][property]") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index da = 1 + static_cast<Index>(rng() % 6), db = 1 + static_cast<Index>(rng() % 6);
    const auto psi = testing::random_state(rng, da, db);
    for (auto kind : {EntropyKind::Linear, EntropyKind::VonNeumann}) {
      CHECK(std::abs(entanglement(psi, kind, Subsystem::A) - entanglement(psi, kind, Subsystem::B)) < 1e-10);
    }
  }
}

TEST_CASE("linear entropy equals 1 - sum of squared Schmidt weights", "[entropy][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Index da = 1 + static_cast<Index>(rng() % 5), db = 1 + static_cast<Index>(rng() % 5);
    const auto psi = testing::random_state(rng, da, db);
    double s = 0.0;
    for (double p : schmidt(psi).weights) s += p * p;
    CHECK(std::abs(entanglement(psi, EntropyKind::Linear) - (1.0 - s)) < 1e-10);
    // independent eigenvalue route
    CHECK(std::abs(entanglement(psi, EntropyKind::Linear) -
                   (1.0 - testing::purity_by_eigenvalues(testing::naive_partial_trace(psi, Subsystem::A)))) < 1e-10);
  }
}

TEST_CASE("entropy bounds are attained at the maximally mixed state", "[entropy][property]") {
  Rng rng(99);
  for (Index d = 1; d <= 6; ++d) {
    const DensityMatrix mixed(Matrix::Identity(d, d) / static_cast<double>(d));
    for (auto kind : {EntropyKind::Linear, EntropyKind::VonNeumann}) {
      CHECK(std::abs(entropy(mixed, kind) - entropy_bound(d, kind)) < 1e-12);
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    const Index da = 1 + static_cast<Index>(rng() % 6), db = 1 + static_cast<Index>(rng() % 6);
    const auto rho = partial_trace(testing::random_state(rng, da, db), Subsystem::A);
    for (auto kind : {EntropyKind::Linear, EntropyKind::VonNeumann}) {
      const double s = entropy(rho, kind);
      CHECK(s >= 0.0);
      CHECK(s <= entropy_bound(da, kind) + 1e-12);
    }
  }
}
