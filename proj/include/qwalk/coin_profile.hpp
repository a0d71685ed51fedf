#pragma once

#include <optional>
#include <utility>

namespace qwalk {

/// Reduces an angle into (-2pi, 2pi]. R_y(theta) has period 4pi, so the
/// reduction never changes the coin.
double reduce_angle(double theta);

/// theta2(x) = minus + (plus - minus) * (1 + tanh((x - center) / width)) / 2.
/// width == 0 selects the sharp step (minus left of center, plus right of it,
/// their mean exactly at the center).
struct BoundaryShape {
  double minus = 0.0;
  double plus = 0.0;
  double center = 0.0;
  double width = 3.0;
};

/// Split-step coin angles: theta1 is uniform by construction, theta2 may vary
/// with the site.
class CoinProfile {
 public:
  static CoinProfile uniform(double theta1, double theta2 = 0.0);
  static CoinProfile boundary(double theta1, double theta2_minus, double theta2_plus, double center = 0.0,
                              double width = 3.0);

  double theta1() const { return theta1_; }
  double theta2_at(int site) const;

  bool is_uniform() const { return !shape_.has_value(); }
  const std::optional<BoundaryShape>& shape() const { return shape_; }
  /// (theta2 at -infinity, theta2 at +infinity); equal for a uniform profile.
  std::pair<double, double> asymptotes() const;

 private:
  CoinProfile(double theta1, double theta2, std::optional<BoundaryShape> shape);

  double theta1_;
  double theta2_;
  std::optional<BoundaryShape> shape_;
};

}  // namespace qwalk
