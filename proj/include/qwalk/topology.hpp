#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

#include "qwalk/coin_profile.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

/// Split-step operator at quasi-momentum k:
/// U(k) = T_down(k) R_y(theta2) T_up(k) R_y(theta1), T_up = diag(e^{ik}, 1), T_down = diag(1, e^{-ik}).
Eigen::Matrix2cd bloch_unitary(double k, double theta1, double theta2);

/// |sin E| below which the Bloch axis n(k) is left undefined.
inline constexpr double kAxisTolerance = 1e-8;
/// Both gaps must exceed this for a winding number to be defined.
inline constexpr double kWindingGapTolerance = 1e-6;
inline constexpr int kDefaultMomentumSamples = 1024;

struct BlochAnalysis {
  double theta1 = 0.0;
  double theta2 = 0.0;
  /// Uniform grid k_j = -pi + 2 pi j / n_k.
  std::vector<double> k;
  /// Upper band E(k) in [0, pi]; the lower band is -E(k), with -pi mapped to pi.
  std::vector<double> energy_plus;
  std::vector<double> energy_minus;
  /// Unit vector n(k) with U(k) = cos E - i sin E n.sigma; empty where |sin E| <= kAxisTolerance.
  std::vector<std::optional<Eigen::Vector3d>> axis;
  double gap0 = 0.0;
  double gap_pi = 0.0;
  /// Set when both gaps exceed kWindingGapTolerance.
  std::optional<int> winding;
};

BlochAnalysis band_structure(double theta1, double theta2, int n_k = kDefaultMomentumSamples);

/// Counts the turns of n(k) around the normal of its best-fit plane over the
/// Brillouin zone. Throws GaplessSpectrum unless both gaps exceed kWindingGapTolerance.
int winding_number(const BlochAnalysis& analysis);

enum class GapClass { GappedW0, GappedW1, GaplessAt0, GaplessAtPi };

std::string_view to_string(GapClass c);
inline bool is_gapless(GapClass c) { return c == GapClass::GaplessAt0 || c == GapClass::GaplessAtPi; }

/// |tan(theta2/2) / tan(theta1/2)| < 1 is W = 1, > 1 is W = 0, and within
/// 1e-6 of 1 the gap closes. When theta1 = 0 mod 2pi (or the ratio is 0/0)
/// the class is read off a 4096-point band structure instead.
GapClass gap_classification(double theta1, double theta2);

struct BoundState {
  double quasi_energy;
  int center;
  /// Amplitude decay length |psi| ~ exp(-|x - center| / decay_length), in sites.
  double decay_length;
  double inverse_participation;
  SpinorField state;
};

struct BoundStateReport {
  int half_width = 0;
  std::vector<BoundState> states;
};

/// Parameters of the real-space search.
struct BoundStateOptions {
  /// Distance of the quasi-energy from 0 or pi.
  double energy_tolerance = 1e-3;
  /// Inverse participation ratio threshold, in units of 1 / (2L+1).
  double ipr_factor = 10.0;
};

/// Diagonalizes the ring-closed step operator on 2(2L+1) states and reports
/// localized eigenstates at quasi-energy 0 or pi centered within |x| <= L/2.
/// Throws AsymptoticGapless if either asymptotic phase of the profile is gapless
/// and std::invalid_argument if theta2(+-L) is not within 1e-6 of its asymptotes.
BoundStateReport find_bound_states(const CoinProfile& coins, int half_width, BoundStateOptions options = {});

/// Quasi-energy branch (-pi, pi] of an eigenvalue e^{-iE}.
double quasi_energy(cplx eigenvalue);

}  // namespace qwalk
