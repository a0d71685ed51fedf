#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwalk/coin_profile.hpp"
#include "qwalk/state.hpp"

namespace qwalk::testing {

inline constexpr double kPi = 3.14159265358979323846;

// Random normalized spinor supported on |x| <= reach.
inline SpinorField random_spinor(std::mt19937_64& rng, int half_width, int reach) {
  std::normal_distribution<double> g;
  std::vector<cplx> amps(spinor_dimension(half_width));
  for (int x = -reach; x <= reach; ++x)
    for (Spin s : kSpins) amps[spinor_index(half_width, x, s)] = {g(rng), g(rng)};
  return SpinorField::normalized(half_width, std::move(amps));
}

// Random exchange-symmetric dense field supported on |x1|, |x2| <= reach.
inline TwoParticleField random_symmetric(std::mt19937_64& rng, int half_width, int reach) {
  std::normal_distribution<double> g;
  const std::size_t n = spinor_dimension(half_width);
  std::vector<cplx> m(n * n);
  const std::size_t lo = spinor_index(half_width, -reach, Spin::Up);
  const std::size_t hi = spinor_index(half_width, reach, Spin::Down);
  for (std::size_t i = lo; i <= hi; ++i)
    for (std::size_t j = lo; j <= i; ++j) m[i * n + j] = m[j * n + i] = {g(rng), g(rng)};
  double norm = 0.0;
  for (const auto& v : m) norm += std::norm(v);
  for (auto& v : m) v /= std::sqrt(norm);
  return TwoParticleField::from_dense(half_width, std::move(m));
}

// Random boundary profile with a random width in [0, 4].
inline CoinProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  std::uniform_real_distribution<double> width(0.0, 4.0);
  std::uniform_real_distribution<double> center(-3.0, 3.0);
  return CoinProfile::boundary(angle(rng), angle(rng), angle(rng), center(rng), width(rng));
}

}  // namespace qwalk::testing
