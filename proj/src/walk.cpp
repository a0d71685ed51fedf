#include "qwalk/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void check_edges(const cplx* data, std::ptrdiff_t stride, std::size_t n, const char* when) {
  for (std::size_t k : {std::size_t{0}, std::size_t{1}, n - 2, n - 1}) {
    if (std::abs(data[static_cast<std::ptrdiff_t>(k) * stride]) > kBoundaryTolerance) {
      throw BoundaryOverrun(std::string("amplitude on the lattice edge ") + when +
                            " a step; increase half_width");
    }
  }
}

void check_steps(int half_width, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
  if (half_width < n_steps + 2) {
    throw std::invalid_argument("half_width " + std::to_string(half_width) + " < n_steps + 2 = " +
                                std::to_string(n_steps + 2));
  }
}

}  // namespace

Eigen::Matrix2d coin_rotation(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

SplitStep::SplitStep(const CoinProfile& coins, int half_width)
    : half_width_(half_width),
      cos1_(std::cos(0.5 * coins.theta1())),
      sin1_(std::sin(0.5 * coins.theta1())) {
  if (half_width < 1) throw std::invalid_argument("half_width must be >= 1");
  const std::size_t sites = 2 * static_cast<std::size_t>(half_width) + 1;
  cos2_.resize(sites);
  sin2_.resize(sites);
  for (int x = -half_width; x <= half_width; ++x) {
    const double t = coins.theta2_at(x);
    cos2_[x + half_width] = std::cos(0.5 * t);
    sin2_[x + half_width] = std::sin(0.5 * t);
  }
}

void SplitStep::apply(cplx* data, std::ptrdiff_t stride) const {
  const std::size_t sites = cos2_.size();
  const std::size_t n = 2 * sites;
  check_edges(data, stride, n, "before");
  auto up = [&](std::size_t i) -> cplx& { return data[static_cast<std::ptrdiff_t>(2 * i) * stride]; };
  auto down = [&](std::size_t i) -> cplx& { return data[static_cast<std::ptrdiff_t>(2 * i + 1) * stride]; };

  for (std::size_t i = 0; i < sites; ++i) {
    const cplx u = up(i), d = down(i);
    up(i) = cos1_ * u - sin1_ * d;
    down(i) = sin1_ * u + cos1_ * d;
  }
  for (std::size_t i = sites - 1; i > 0; --i) up(i) = up(i - 1);
  up(0) = 0.0;
  for (std::size_t i = 0; i < sites; ++i) {
    const cplx u = up(i), d = down(i);
    up(i) = cos2_[i] * u - sin2_[i] * d;
    down(i) = sin2_[i] * u + cos2_[i] * d;
  }
  for (std::size_t i = 0; i + 1 < sites; ++i) down(i) = down(i + 1);
  down(sites - 1) = 0.0;

  check_edges(data, stride, n, "after");
}

SpinorField step_simple(const SpinorField& field, double theta) {
  const int L = field.half_width();
  const std::size_t sites = static_cast<std::size_t>(field.num_sites());
  const auto in = field.amplitudes();
  check_edges(in.data(), 1, in.size(), "before");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  std::vector<cplx> out(in.size());
  for (std::size_t i = 0; i < sites; ++i) {
    const cplx u = in[2 * i], d = in[2 * i + 1];
    if (i + 1 < sites) out[2 * (i + 1)] = c * u - s * d;
    if (i > 0) out[2 * (i - 1) + 1] = s * u + c * d;
  }
  check_edges(out.data(), 1, out.size(), "after");
  return SpinorField(L, std::move(out));
}

SpinorField step_split(const SpinorField& field, const CoinProfile& coins) {
  const SplitStep step(coins, field.half_width());
  std::vector<cplx> amps(field.amplitudes().begin(), field.amplitudes().end());
  step.apply(amps.data());
  return SpinorField(field.half_width(), std::move(amps));
}

namespace {

TwoParticleField apply_two(const TwoParticleField& field, const SplitStep& step, const CoinProfile& coins) {
  const std::size_t n = field.single_dimension();
  std::vector<cplx> amps(field.amplitudes().begin(), field.amplitudes().end());
  for (std::size_t i = 0; i < n; ++i) step.apply(amps.data() + i * n, 1);
  for (std::size_t j = 0; j < n; ++j) step.apply(amps.data() + j, static_cast<std::ptrdiff_t>(n));

  std::optional<std::vector<ProductTerm>> terms;
  if (field.has_terms()) {
    terms.emplace();
    for (const auto& t : field.terms()) {
      terms->push_back({t.weight, step_split(t.first, coins), step_split(t.second, coins)});
    }
  }
  return TwoParticleField::from_parts(field.half_width(), std::move(amps), std::move(terms));
}

}  // namespace

TwoParticleField step_two(const TwoParticleField& field, const CoinProfile& coins) {
  return apply_two(field, SplitStep(coins, field.half_width()), coins);
}

Eigen::MatrixXcd step_matrix(const CoinProfile& coins, int half_width) {
  if (half_width < 1) throw std::invalid_argument("half_width must be >= 1");
  const int sites = 2 * half_width + 1;
  const int n = 2 * sites;
  Eigen::MatrixXcd coin1 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd coin2 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd shift_up = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd shift_down = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::Matrix2d r1 = coin_rotation(coins.theta1());
  for (int i = 0; i < sites; ++i) {
    const Eigen::Matrix2d r2 = coin_rotation(coins.theta2_at(i - half_width));
    coin1.block<2, 2>(2 * i, 2 * i) = r1.cast<cplx>();
    coin2.block<2, 2>(2 * i, 2 * i) = r2.cast<cplx>();
    shift_up(2 * ((i + 1) % sites), 2 * i) = 1.0;
    shift_up(2 * i + 1, 2 * i + 1) = 1.0;
    shift_down(2 * ((i + sites - 1) % sites) + 1, 2 * i + 1) = 1.0;
    shift_down(2 * i, 2 * i) = 1.0;
  }
  return shift_down * coin2 * shift_up * coin1;
}

SpinorField evolve_each(const SpinorField& field, const CoinProfile& coins, int n_steps,
                        const std::function<void(int, const SpinorField&)>& visit) {
  check_steps(field.half_width(), n_steps);
  const SplitStep step(coins, field.half_width());
  std::vector<cplx> amps(field.amplitudes().begin(), field.amplitudes().end());
  SpinorField current = field;
  if (visit) visit(0, current);
  for (int i = 1; i <= n_steps; ++i) {
    step.apply(amps.data());
    current = SpinorField(field.half_width(), amps);
    if (visit) visit(i, current);
  }
  return current;
}

TwoParticleField evolve_each(const TwoParticleField& field, const CoinProfile& coins, int n_steps,
                             const std::function<void(int, const TwoParticleField&)>& visit) {
  check_steps(field.half_width(), n_steps);
  const SplitStep step(coins, field.half_width());
  TwoParticleField current = field;
  if (visit) visit(0, current);
  for (int i = 1; i <= n_steps; ++i) {
    current = apply_two(current, step, coins);
    if (visit) visit(i, current);
  }
  return current;
}

std::vector<SpinorField> evolve(const SpinorField& field, const CoinProfile& coins, int n_steps) {
  std::vector<SpinorField> out;
  out.reserve(static_cast<std::size_t>(std::max(n_steps, 0)) + 1);
  evolve_each(field, coins, n_steps, [&](int, const SpinorField& f) { out.push_back(f); });
  return out;
}

std::vector<TwoParticleField> evolve(const TwoParticleField& field, const CoinProfile& coins, int n_steps) {
  std::vector<TwoParticleField> out;
  out.reserve(static_cast<std::size_t>(std::max(n_steps, 0)) + 1);
  evolve_each(field, coins, n_steps, [&](int, const TwoParticleField& f) { out.push_back(f); });
  return out;
}

}  // namespace qwalk
