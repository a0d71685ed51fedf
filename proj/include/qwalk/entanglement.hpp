#pragma once

#include <Eigen/Dense>

#include "qwalk/state.hpp"

namespace qwalk {

/// Bipartite density matrix on C^dim_a (x) C^dim_b, row index a * dim_b + b.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is Hermitian and has unit
  /// trace within 1e-12 and no eigenvalue below -1e-10.
  DensityMatrix(Eigen::MatrixXcd matrix, int dim_a, int dim_b);

  /// |psi><psi| for a unit vector psi.
  static DensityMatrix pure(const Eigen::VectorXcd& psi, int dim_a, int dim_b);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }

 private:
  Eigen::MatrixXcd matrix_;
  int dim_a_;
  int dim_b_;
};

/// Transposes the second tensor factor.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& matrix, int dim_a, int dim_b);

/// Tr|rho^T_B| - 1, with values in [-1e-10, 0) clamped to 0.
double negativity(const DensityMatrix& rho);
/// log2(N + 1).
double log_negativity(const DensityMatrix& rho);

/// The x >= 1 maximizing the probability at (x, -x) summed over spins; ties go
/// to the smaller x. Throws NoSeparation when all of it is below 1e-12.
int antidiagonal_max(const TwoParticleField& field);

struct SpinPairProjection {
  /// Spin of the particle at x1 (x) spin of the particle at x2.
  DensityMatrix rho;
  /// sum over s1, s2 of |psi(x1, s1; x2, s2)|^2
  double detection_probability;
};

/// Projects onto the ordered position pair (x1, x2) and keeps the 2 x 2 spin
/// content. Throws SamePosition if x1 == x2 and NegligibleOverlap if the
/// projected norm is <= 1e-12.
SpinPairProjection polarization_density_matrix(const TwoParticleField& field, int x1, int x2);

/// Same projection without the x1 != x2 guard.
SpinPairProjection spin_pair_density_matrix(const TwoParticleField& field, int x1, int x2);

/// Rank-1 state in (n_up in 0..2) (x) (n_down in 0..2), index n_up * 3 + n_down.
DensityMatrix mode_density_matrix(const ModeState& state);

/// Negativity of the mode state at the origin, partial transpose over the
/// n_down factor. Throws NegligibleOverlap like to_mode_state.
double mode_negativity(const TwoParticleField& field);

}  // namespace qwalk
