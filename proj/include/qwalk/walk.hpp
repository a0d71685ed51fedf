#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "qwalk/coin_profile.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

/// Amplitudes above this magnitude may not leave (or sit on the edge of) the lattice.
inline constexpr double kBoundaryTolerance = 1e-12;

/// R_y(theta) = exp(-i theta sigma_y / 2) = [[cos, -sin], [sin, cos]] of theta/2.
Eigen::Matrix2d coin_rotation(double theta);

/// Split-step operator T_down R_y(theta2(x)) T_up R_y(theta1) tabulated for one lattice.
///
/// T_up moves spin up one site right and leaves spin down in place; T_down
/// moves spin down one site left. The theta2 coin acts at the site the walker
/// occupies after T_up.
class SplitStep {
 public:
  SplitStep(const CoinProfile& coins, int half_width);

  int half_width() const { return half_width_; }

  /// Applies the step in place to the vector data[k * stride], k < 2(2L+1).
  /// Throws BoundaryOverrun if amplitude sits on an outermost site before or
  /// after the step.
  void apply(cplx* data, std::ptrdiff_t stride = 1) const;

 private:
  int half_width_;
  double cos1_, sin1_;
  std::vector<double> cos2_, sin2_;
};

/// U = T R_y(theta): coin, then up moves right and down moves left.
SpinorField step_simple(const SpinorField& field, double theta);
SpinorField step_split(const SpinorField& field, const CoinProfile& coins);
/// (U (x) U) applied to the dense tensor and, when present, to every factor
/// of the low-rank decomposition.
TwoParticleField step_two(const TwoParticleField& field, const CoinProfile& coins);

/// The split-step operator as a dense 2(2L+1) matrix with the lattice closed
/// into a ring (up leaving site L re-enters at -L and vice versa). On fields
/// that stay clear of the edges it coincides with step_split.
Eigen::MatrixXcd step_matrix(const CoinProfile& coins, int half_width);

/// Element i is the state after i steps; element 0 is the input.
/// Requires n_steps >= 0 and L >= n_steps + 2.
std::vector<SpinorField> evolve(const SpinorField& field, const CoinProfile& coins, int n_steps);
std::vector<TwoParticleField> evolve(const TwoParticleField& field, const CoinProfile& coins, int n_steps);

/// Streaming variant: calls visit(step, state) for steps 0..n_steps and
/// returns the final state.
SpinorField evolve_each(const SpinorField& field, const CoinProfile& coins, int n_steps,
                        const std::function<void(int, const SpinorField&)>& visit);
TwoParticleField evolve_each(const TwoParticleField& field, const CoinProfile& coins, int n_steps,
                             const std::function<void(int, const TwoParticleField&)>& visit);

}  // namespace qwalk
