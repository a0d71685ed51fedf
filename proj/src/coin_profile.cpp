#include "qwalk/coin_profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk {

double reduce_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double four_pi = 4.0 * std::numbers::pi;
  if (theta > -two_pi && theta <= two_pi) return theta;
  double r = std::fmod(theta, four_pi);
  if (r > two_pi) r -= four_pi;
  if (r <= -two_pi) r += four_pi;
  return r;
}

CoinProfile::CoinProfile(double theta1, double theta2, std::optional<BoundaryShape> shape)
    : theta1_(theta1), theta2_(theta2), shape_(shape) {}

CoinProfile CoinProfile::uniform(double theta1, double theta2) {
  return CoinProfile(reduce_angle(theta1), reduce_angle(theta2), std::nullopt);
}

CoinProfile CoinProfile::boundary(double theta1, double theta2_minus, double theta2_plus, double center,
                                  double width) {
  if (!std::isfinite(center)) throw std::invalid_argument("profile center must be finite");
  if (!std::isfinite(width) || width < 0.0) throw std::invalid_argument("profile width must be >= 0");
  BoundaryShape shape{reduce_angle(theta2_minus), reduce_angle(theta2_plus), center, width};
  return CoinProfile(reduce_angle(theta1), shape.minus, shape);
}

double CoinProfile::theta2_at(int site) const {
  if (!shape_) return theta2_;
  const auto& s = *shape_;
  const double dx = site - s.center;
  double step;
  if (s.width == 0.0) {
    step = dx < 0.0 ? 0.0 : (dx > 0.0 ? 1.0 : 0.5);
  } else {
    step = 0.5 * (1.0 + std::tanh(dx / s.width));
  }
  return s.minus + (s.plus - s.minus) * step;
}

std::pair<double, double> CoinProfile::asymptotes() const {
  if (!shape_) return {theta2_, theta2_};
  return {shape_->minus, shape_->plus};
}

}  // namespace qwalk
