#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <random>

#include "qwalk/entanglement.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"
#include "support.hpp"

using namespace qwalk;
using qwalk::testing::kPi;
using qwalk::testing::random_symmetric;

namespace {

// Pure two-qubit negativity from the concurrence: 2 |c00 c11 - c01 c10|.
double two_qubit_negativity(const Eigen::Vector4cd& c) { return 2 * std::abs(c(0) * c(3) - c(1) * c(2)); }

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd m;
  m << cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
  return m.householderQr().householderQ();
}

Eigen::Vector4cd random_qubits(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

// Trace norm of the partial transpose of a|20> + b|11> + c|02>, written out entry by entry.
double mode_negativity_by_hand(cplx a, cplx b, cplx c) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
  v(6) = a;
  v(4) = b;
  v(2) = c;
  const Eigen::MatrixXcd rho = v * v.adjoint();
  Eigen::MatrixXcd pt(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) pt(3 * i + j, 3 * k + l) = rho(3 * i + l, 3 * k + j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
  return es.eigenvalues().cwiseAbs().sum() - 1;
}

TwoParticleField mode_content_at_origin(cplx two_up, cplx one_each, cplx two_down) {
  const auto up = SpinorField::localized(3, 0, Spin::Up);
  const auto down = SpinorField::localized(3, 0, Spin::Down);
  return TwoParticleField::symmetrized({{two_up, up, up}, {one_each * std::sqrt(2.0), up, down}, {two_down, down, down}});
}

}  // namespace

TEST_CASE("negativity_of_standard_states") {
  Eigen::Vector4cd bell(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0));
  CHECK(std::abs(negativity(DensityMatrix::pure(bell, 2, 2)) - 1) < 1e-10);
  CHECK(std::abs(negativity(DensityMatrix::pure(Eigen::Vector4cd(1, 0, 0, 0), 2, 2))) < 1e-10);
  CHECK(std::abs(negativity(DensityMatrix::pure(Eigen::Vector4cd(0.6, 0, 0, 0.8), 2, 2)) - 0.96) < 1e-10);
  CHECK(log_negativity(DensityMatrix::pure(bell, 2, 2)) == doctest::Approx(1.0));
}

TEST_CASE("negativity_matches_two_qubit_formula") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto v = random_qubits(rng);
    CHECK(std::abs(negativity(DensityMatrix::pure(v, 2, 2)) - two_qubit_negativity(v)) < 1e-10);
  }
}

TEST_CASE("negativity_is_invariant_under_local_unitaries") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto v = random_qubits(rng);
    Eigen::Matrix4cd local = Eigen::kroneckerProduct(random_unitary(rng), random_unitary(rng));
    CHECK(std::abs(negativity(DensityMatrix::pure(local * v, 2, 2)) - negativity(DensityMatrix::pure(v, 2, 2))) < 1e-10);
  }
}

TEST_CASE("products_and_maximally_entangled_states") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Vector2cd a = random_unitary(rng).col(0), b = random_unitary(rng).col(0);
    Eigen::Vector4cd product;
    product << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    CHECK(std::abs(negativity(DensityMatrix::pure(product, 2, 2))) < 1e-10);
    const Eigen::Matrix2cd u = random_unitary(rng) / std::sqrt(2.0);
    const Eigen::Vector4cd maximal(u(0, 0), u(0, 1), u(1, 0), u(1, 1));
    CHECK(std::abs(negativity(DensityMatrix::pure(maximal, 2, 2)) - 1) < 1e-10);
  }
}

TEST_CASE("partial_transpose_is_an_involution") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> g;
  for (auto [da, db] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 3}}) {
    Eigen::MatrixXcd m(da * db, da * db);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
    CHECK(partial_transpose(partial_transpose(m, da, db), da, db) == m);
  }
}

TEST_CASE("density_matrix_validation") {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() / 4.0;
  CHECK_NOTHROW(DensityMatrix(m, 2, 2));
  CHECK_THROWS_AS(DensityMatrix(m, 2, 3), std::invalid_argument);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(m, 2, 2), std::invalid_argument);
  Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(Eigen::Matrix4cd::Identity(), 2, 2), std::invalid_argument);
}

TEST_CASE("mode_negativity_of_initial_pairs") {
  CHECK(std::abs(mode_negativity(make_localized_pair(5, SymmetricSpin::BellPhiPlus)) - 1) < 1e-10);
  CHECK(std::abs(mode_negativity(make_localized_pair(5, SymmetricSpin::SymUpDown))) < 1e-10);
  CHECK(std::abs(mode_negativity(make_localized_pair(5, SymmetricSpin::UpUp))) < 1e-10);
}

TEST_CASE("mode_negativity_against_brute_force") {
  const double r = 1 / std::sqrt(2.0);
  const auto f = mode_content_at_origin(r, r, 0.0);
  const double expected = mode_negativity_by_hand(r, r, 0.0);
  CHECK(std::abs(mode_negativity(f) - expected) < 1e-12);
  // Schmidt form: (|a| + |b| + |c|)^2 - 1.
  CHECK(std::abs(expected - (2 * r * 2 * r - 1)) < 1e-12);

  std::mt19937_64 rng(59);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    cplx a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng));
    const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
    a /= n;
    b /= n;
    c /= n;
    const double value = mode_negativity(mode_content_at_origin(a, b, c));
    CHECK(std::abs(value - mode_negativity_by_hand(a, b, c)) < 1e-10);
    const double s = std::abs(a) + std::abs(b) + std::abs(c);
    CHECK(std::abs(value - (s * s - 1)) < 1e-10);
  }
}

TEST_CASE("mode_negativity_does_not_depend_on_basis_order") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  // Relabel n -> 2 - n on both factors; the bipartition is unchanged.
  Eigen::PermutationMatrix<9> perm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) perm.indices()(3 * i + j) = 3 * (2 - i) + (2 - j);
  for (int t = 0; t < 20; ++t) {
    std::array<cplx, 3> a{cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const double n = std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
    for (auto& v : a) v /= n;
    const auto rho = mode_density_matrix(ModeState(a));
    const DensityMatrix relabeled(perm * rho.matrix() * perm.transpose(), 3, 3);
    CHECK(std::abs(negativity(rho) - negativity(relabeled)) < 1e-12);
  }
}

TEST_CASE("antidiagonal_maximum") {
  CHECK_THROWS_AS(antidiagonal_max(make_localized_pair(6, SymmetricSpin::BellPhiPlus)), NoSeparation);

  const int L = 8;
  auto at = [&](int x, Spin s) { return SpinorField::localized(L, x, s); };
  const auto tie = TwoParticleField::symmetrized(
      {{1.0, at(3, Spin::Up), at(-3, Spin::Down)}, {1.0, at(5, Spin::Up), at(-5, Spin::Down)}});
  CHECK(antidiagonal_max(tie) == 3);
  const auto unique = TwoParticleField::symmetrized(
      {{0.6, at(3, Spin::Up), at(-3, Spin::Down)}, {0.8, at(5, Spin::Up), at(-5, Spin::Down)}});
  CHECK(antidiagonal_max(unique) == 5);
}

TEST_CASE("polarization_projection") {
  const int L = 6;
  auto at = [&](int x, Spin s) { return SpinorField::localized(L, x, s); };
  CHECK_THROWS_AS(polarization_density_matrix(make_localized_pair(L, SymmetricSpin::BellPhiPlus), 0, 0), SamePosition);

  // The particle at x = 1 is up, the one at x = -1 is down: no entanglement between the sites.
  const auto product = TwoParticleField::symmetrized({{1.0, at(1, Spin::Up), at(-1, Spin::Down)}});
  const auto p = polarization_density_matrix(product, 1, -1);
  CHECK(p.detection_probability == doctest::Approx(0.5));
  CHECK(std::abs(p.rho.matrix()(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(negativity(p.rho)) < 1e-10);
  CHECK_THROWS_AS(polarization_density_matrix(product, 2, -1), NegligibleOverlap);

  const auto triplet = TwoParticleField::symmetrized(
      {{1.0, at(1, Spin::Up), at(-1, Spin::Down)}, {1.0, at(1, Spin::Down), at(-1, Spin::Up)}});
  const auto t = polarization_density_matrix(triplet, 1, -1);
  CHECK(std::abs(negativity(t.rho) - 1) < 1e-10);

  // Separated wavepackets with factorized spins.
  std::mt19937_64 rng(67);
  std::normal_distribution<double> g;
  std::vector<cplx> left(spinor_dimension(L)), right(spinor_dimension(L));
  const cplx su(g(rng), g(rng)), sd(g(rng), g(rng)), tu(g(rng), g(rng)), td(g(rng), g(rng));
  for (int x = 1; x <= 3; ++x) {
    const double w = g(rng);
    right[spinor_index(L, x, Spin::Up)] = w * su;
    right[spinor_index(L, x, Spin::Down)] = w * sd;
    left[spinor_index(L, -x, Spin::Up)] = w * tu;
    left[spinor_index(L, -x, Spin::Down)] = w * td;
  }
  const auto packets = TwoParticleField::symmetrized(
      {{1.0, SpinorField::normalized(L, right), SpinorField::normalized(L, left)}});
  CHECK(std::abs(negativity(polarization_density_matrix(packets, 2, -1).rho)) < 1e-10);
}

TEST_CASE("detection_probabilities_sum_to_one") {
  std::mt19937_64 rng(71);
  auto f = random_symmetric(rng, 10, 2);
  const auto coins = qwalk::testing::random_profile(rng);
  for (int i = 0; i < 6; ++i) f = step_two(f, coins);
  double total = 0.0;
  for (int x1 = -10; x1 <= 10; ++x1)
    for (int x2 = -10; x2 <= 10; ++x2) {
      try {
        total += x1 == x2 ? to_mode_state(f, x1).detection_probability
                          : polarization_density_matrix(f, x1, x2).detection_probability;
      } catch (const NegligibleOverlap&) {
      }
    }
  CHECK(std::abs(total - 1) < 1e-10);
}
