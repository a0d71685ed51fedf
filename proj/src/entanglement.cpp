#include "qwalk/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kNegativeEigenvalueFloor = -1e-10;
constexpr double kSeparationFloor = 1e-12;

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix, int dim_a, int dim_b)
    : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1 || matrix_.rows() != dim_a * dim_b || matrix_.cols() != dim_a * dim_b) {
    throw std::invalid_argument("density matrix shape does not match the bipartition");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - cplx(1.0)) > kHermitianTolerance) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kNegativeEigenvalueFloor) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi, int dim_a, int dim_b) {
  return DensityMatrix(psi * psi.adjoint(), dim_a, dim_b);
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& matrix, int dim_a, int dim_b) {
  Eigen::MatrixXcd out(matrix.rows(), matrix.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b2 = 0; b2 < dim_b; ++b2) out(a * dim_b + b, a2 * dim_b + b2) = matrix(a * dim_b + b2, a2 * dim_b + b);
  return out;
}

double negativity(const DensityMatrix& rho) {
  const Eigen::MatrixXcd pt = partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  const double n = solver.eigenvalues().cwiseAbs().sum() - 1.0;
  if (n < 0.0 && n >= kNegativeEigenvalueFloor) return 0.0;
  return n;
}

double log_negativity(const DensityMatrix& rho) { return std::log2(negativity(rho) + 1.0); }

int antidiagonal_max(const TwoParticleField& field) {
  int best = 0;
  double best_p = kSeparationFloor;
  for (int x = 1; x <= field.half_width(); ++x) {
    const double p = field.pair_probability(x, -x);
    if (p > best_p) {
      best = x;
      best_p = p;
    }
  }
  if (best == 0) throw NoSeparation("no anti-diagonal probability with the particles apart");
  return best;
}

SpinPairProjection spin_pair_density_matrix(const TwoParticleField& field, int x1, int x2) {
  Eigen::Vector4cd c;
  for (Spin s1 : kSpins)
    for (Spin s2 : kSpins) c(static_cast<int>(s1) * 2 + static_cast<int>(s2)) = field(x1, s1, x2, s2);
  const double p = c.squaredNorm();
  if (p <= kStateTolerance) {
    throw NegligibleOverlap("projected probability at (" + std::to_string(x1) + ", " + std::to_string(x2) +
                            ") is negligible");
  }
  c /= std::sqrt(p);
  return {DensityMatrix::pure(c, 2, 2), p};
}

SpinPairProjection polarization_density_matrix(const TwoParticleField& field, int x1, int x2) {
  if (x1 == x2) throw SamePosition("polarization projection needs distinct sites; use the mode representation");
  return spin_pair_density_matrix(field, x1, x2);
}

DensityMatrix mode_density_matrix(const ModeState& state) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
  v(2 * 3 + 0) = state[ModeState::TwoUp];
  v(1 * 3 + 1) = state[ModeState::OneEach];
  v(0 * 3 + 2) = state[ModeState::TwoDown];
  return DensityMatrix::pure(v, 3, 3);
}

double mode_negativity(const TwoParticleField& field) {
  return negativity(mode_density_matrix(to_mode_state(field).state));
}

}  // namespace qwalk
