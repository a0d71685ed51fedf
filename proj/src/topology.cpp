#include "qwalk/topology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRatioTolerance = 1e-6;
constexpr int kClassificationSamples = 4096;
constexpr double kGaplessTolerance = 1e-8;

struct SU2Parts {
  double a;           // cos E
  Eigen::Vector3d b;  // sin E * n
};

// U = a I - i b.sigma for U in SU(2).
SU2Parts su2_parts(const Eigen::Matrix2cd& u) {
  const cplx i(0.0, 1.0);
  SU2Parts p;
  p.a = 0.5 * (u(0, 0) + u(1, 1)).real();
  p.b.x() = (0.5 * i * (u(0, 1) + u(1, 0))).real();
  p.b.y() = (0.5 * (u(1, 0) - u(0, 1))).real();
  p.b.z() = (0.5 * i * (u(0, 0) - u(1, 1))).real();
  return p;
}

double distance_to(double energy, double target) {
  return std::abs(std::remainder(energy - target, 2.0 * kPi));
}

}  // namespace

Eigen::Matrix2cd bloch_unitary(double k, double theta1, double theta2) {
  const cplx phase = std::polar(1.0, k);
  Eigen::Matrix2cd shift_up = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd shift_down = Eigen::Matrix2cd::Identity();
  shift_up(0, 0) = phase;
  shift_down(1, 1) = std::conj(phase);
  return shift_down * coin_rotation(theta2).cast<cplx>() * shift_up * coin_rotation(theta1).cast<cplx>();
}

BlochAnalysis band_structure(double theta1, double theta2, int n_k) {
  if (n_k < 3) throw std::invalid_argument("band_structure needs n_k >= 3");
  BlochAnalysis a;
  a.theta1 = theta1;
  a.theta2 = theta2;
  a.k.resize(n_k);
  a.energy_plus.resize(n_k);
  a.energy_minus.resize(n_k);
  a.axis.resize(n_k);
  a.gap0 = std::numeric_limits<double>::infinity();
  a.gap_pi = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_k; ++j) {
    const double k = -kPi + 2.0 * kPi * j / n_k;
    const auto parts = su2_parts(bloch_unitary(k, theta1, theta2));
    const double sin_e = parts.b.norm();
    const double e = std::atan2(sin_e, parts.a);
    a.k[j] = k;
    a.energy_plus[j] = e;
    a.energy_minus[j] = e == kPi ? kPi : -e;
    if (sin_e > kAxisTolerance) a.axis[j] = parts.b / sin_e;
    a.gap0 = std::min(a.gap0, e);
    a.gap_pi = std::min(a.gap_pi, kPi - e);
  }
  if (a.gap0 > kWindingGapTolerance && a.gap_pi > kWindingGapTolerance) a.winding = winding_number(a);
  return a;
}

int winding_number(const BlochAnalysis& analysis) {
  if (!(analysis.gap0 > kWindingGapTolerance && analysis.gap_pi > kWindingGapTolerance)) {
    throw GaplessSpectrum("winding number undefined: spectrum is gapless at quasi-energy 0 or pi");
  }
  const std::size_t n = analysis.axis.size();
  // Best-fit plane through the origin: the normal is the weakest direction of sum n n^T.
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& v : analysis.axis) {
    if (!v) throw GaplessSpectrum("winding number undefined: Bloch axis missing at some k");
    scatter += *v * v->transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
  const Eigen::Vector3d normal = solver.eigenvectors().col(0);
  Eigen::Vector3d e1 = normal.cross(Eigen::Vector3d::UnitX());
  if (e1.norm() < 0.5) e1 = normal.cross(Eigen::Vector3d::UnitY());
  e1.normalize();
  const Eigen::Vector3d e2 = normal.cross(e1);

  double total = 0.0;
  double previous = std::atan2(analysis.axis[0]->dot(e2), analysis.axis[0]->dot(e1));
  for (std::size_t j = 1; j <= n; ++j) {
    const auto& v = *analysis.axis[j % n];
    const double angle = std::atan2(v.dot(e2), v.dot(e1));
    total += std::remainder(angle - previous, 2.0 * kPi);
    previous = angle;
  }
  return static_cast<int>(std::lround(std::abs(total) / (2.0 * kPi)));
}

std::string_view to_string(GapClass c) {
  switch (c) {
    case GapClass::GappedW0:
      return "gapped-W0";
    case GapClass::GappedW1:
      return "gapped-W1";
    case GapClass::GaplessAt0:
      return "gapless-at-0";
    case GapClass::GaplessAtPi:
      return "gapless-at-pi";
  }
  return "unknown";
}

GapClass gap_classification(double theta1, double theta2) {
  const double s1 = std::sin(0.5 * theta1), c1 = std::cos(0.5 * theta1);
  const double s2 = std::sin(0.5 * theta2), c2 = std::cos(0.5 * theta2);
  // |tan(theta2/2) / tan(theta1/2)| = |s2 c1| / |c2 s1|
  const double num = std::abs(s2 * c1);
  const double den = std::abs(c2 * s1);
  const bool theta1_degenerate = std::abs(s1) < 1e-15;
  const bool undefined = den == 0.0 && num == 0.0;

  if (!theta1_degenerate && !undefined) {
    const double ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
    if (std::abs(ratio - 1.0) > kRatioTolerance) return ratio < 1.0 ? GapClass::GappedW1 : GapClass::GappedW0;
    // The gap closes at k = 0 or k = pi; pick whichever quasi-energy it reaches.
    double gap0 = kPi, gap_pi = kPi;
    for (double k : {0.0, kPi}) {
      const auto parts = su2_parts(bloch_unitary(k, theta1, theta2));
      const double e = std::atan2(parts.b.norm(), parts.a);
      gap0 = std::min(gap0, e);
      gap_pi = std::min(gap_pi, kPi - e);
    }
    return gap0 <= gap_pi ? GapClass::GaplessAt0 : GapClass::GaplessAtPi;
  }

  const auto analysis = band_structure(theta1, theta2, kClassificationSamples);
  if (analysis.gap0 < kGaplessTolerance || analysis.gap_pi < kGaplessTolerance) {
    return analysis.gap0 <= analysis.gap_pi ? GapClass::GaplessAt0 : GapClass::GaplessAtPi;
  }
  return winding_number(analysis) == 1 ? GapClass::GappedW1 : GapClass::GappedW0;
}

double quasi_energy(cplx eigenvalue) {
  const double e = -std::arg(eigenvalue);
  return e <= -kPi ? kPi : e;
}

namespace {

double fit_decay_length(const std::vector<double>& probs, int center, int half_width) {
  // ln P(x) = const - 2 |x - c| / xi
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int x = -half_width; x <= half_width; ++x) {
    const int d = std::abs(x - center);
    const double p = probs[x + half_width];
    if (2 * d > half_width || p < 1e-24) continue;
    const double y = std::log(p);
    sx += d;
    sy += y;
    sxx += double(d) * d;
    sxy += d * y;
    ++count;
  }
  if (count < 3) return std::numeric_limits<double>::infinity();
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  if (!(slope < 0.0)) return std::numeric_limits<double>::infinity();
  return -2.0 / slope;
}

SpinorField fix_global_phase(int half_width, const Eigen::VectorXcd& v) {
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  const cplx phase = std::conj(v(big)) / std::abs(v(big));
  std::vector<cplx> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[i] = v(i) * phase;
  return SpinorField::normalized(half_width, std::move(amps));
}

}  // namespace

BoundStateReport find_bound_states(const CoinProfile& coins, int half_width, BoundStateOptions options) {
  if (half_width < 2) throw std::invalid_argument("find_bound_states needs half_width >= 2");
  const auto [minus, plus] = coins.asymptotes();
  if (std::abs(coins.theta2_at(-half_width) - minus) > 1e-6 || std::abs(coins.theta2_at(half_width) - plus) > 1e-6) {
    throw std::invalid_argument("lattice too small: theta2(+-L) has not reached its asymptotes");
  }
  for (double t2 : {minus, plus}) {
    const auto c = gap_classification(coins.theta1(), t2);
    if (is_gapless(c)) {
      throw AsymptoticGapless("asymptotic phase (theta1, theta2) = (" + format_double(coins.theta1()) + ", " +
                              format_double(t2) + ") is " + std::string(to_string(c)));
    }
  }

  const Eigen::MatrixXcd u = step_matrix(coins, half_width);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition of the step operator failed");

  const int sites = 2 * half_width + 1;
  const Eigen::Index n = u.rows();
  // Smooth site weight, largest at the lattice center and smallest across the
  // ring seam; diagonalizing it inside a degenerate cluster separates states
  // living at different walls.
  Eigen::VectorXd weight(n);
  for (int i = 0; i < sites; ++i) weight(2 * i) = weight(2 * i + 1) = std::cos(2.0 * kPi * (i - half_width) / sites);

  BoundStateReport report;
  report.half_width = half_width;
  const double ipr_threshold = options.ipr_factor / sites;

  for (double target : {0.0, kPi}) {
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (distance_to(quasi_energy(solver.eigenvalues()(j)), target) < options.energy_tolerance) cluster.push_back(j);
    }
    if (cluster.empty()) continue;

    Eigen::MatrixXcd vecs(n, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t c = 0; c < cluster.size(); ++c) vecs.col(c) = solver.eigenvectors().col(cluster[c]);
    const Eigen::MatrixXcd q = vecs.householderQr().householderQ() * Eigen::MatrixXcd::Identity(n, vecs.cols());
    const Eigen::MatrixXcd restricted = q.adjoint() * weight.asDiagonal() * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> local(restricted);
    const Eigen::MatrixXcd rotated = q * local.eigenvectors();

    for (Eigen::Index c = rotated.cols() - 1; c >= 0; --c) {
      const Eigen::VectorXcd v = rotated.col(c);
      const double e = quasi_energy(v.dot(u * v));
      if (distance_to(e, target) >= options.energy_tolerance) continue;
      auto state = fix_global_phase(half_width, v);
      const auto probs = state.site_probabilities();
      double ipr = 0.0;
      for (double p : probs) ipr += p * p;
      const int center = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin()) - half_width;
      if (ipr <= ipr_threshold || 2 * std::abs(center) > half_width) continue;
      report.states.push_back(
          {e, center, fit_decay_length(probs, center, half_width), ipr, std::move(state)});
    }
  }
  return report;
}

}  // namespace qwalk
