#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/state.hpp"
#include "qwalk/walk.hpp"
#include "support.hpp"

using namespace qwalk;
using qwalk::testing::random_profile;
using qwalk::testing::random_spinor;
using qwalk::testing::random_symmetric;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Count of nonzero tensor entries.
int nonzero_entries(const TwoParticleField& f) {
  int n = 0;
  for (const auto& v : f.amplitudes()) n += v != cplx(0.0);
  return n;
}

}  // namespace

TEST_CASE("spinor_field_rejects_bad_size_and_norm") {
  CHECK_THROWS_AS(SpinorField(2, std::vector<cplx>(9)), std::invalid_argument);
  std::vector<cplx> amps(10);
  amps[0] = 0.5;
  CHECK_THROWS_AS(SpinorField(2, amps), std::invalid_argument);
  amps[0] = 1.0;
  CHECK_NOTHROW(SpinorField(2, amps));
}

TEST_CASE("localized_pair_bell_state") {
  const auto f = make_localized_pair(5, SymmetricSpin::BellPhiPlus);
  CHECK(f(0, Spin::Up, 0, Spin::Up) == cplx(kInvSqrt2));
  CHECK(f(0, Spin::Down, 0, Spin::Down) == cplx(kInvSqrt2));
  CHECK(nonzero_entries(f) == 2);
  CHECK(f.max_asymmetry() == 0.0);
  REQUIRE(f.has_terms());
  CHECK(f.terms().size() == 2);
}

TEST_CASE("localized_pair_symmetric_up_down") {
  const auto f = make_localized_pair(5, SymmetricSpin::SymUpDown);
  CHECK(f(0, Spin::Up, 0, Spin::Down) == cplx(kInvSqrt2));
  CHECK(f(0, Spin::Down, 0, Spin::Up) == cplx(kInvSqrt2));
  CHECK(nonzero_entries(f) == 2);
  CHECK(f.terms().size() == 1);
}

TEST_CASE("localized_pair_up_up_and_down_down") {
  const auto uu = make_localized_pair(5, SymmetricSpin::UpUp);
  CHECK(uu(0, Spin::Up, 0, Spin::Up) == cplx(1.0));
  CHECK(nonzero_entries(uu) == 1);
  const auto dd = make_localized_pair(5, SymmetricSpin::DownDown);
  CHECK(dd(0, Spin::Down, 0, Spin::Down) == cplx(1.0));
  CHECK(nonzero_entries(dd) == 1);
}

TEST_CASE("localized_pair_rejects_empty_lattice") {
  CHECK_THROWS_AS(make_localized_pair(0, SymmetricSpin::UpUp), std::invalid_argument);
}

TEST_CASE("decomposition_expands_to_dense_tensor") {
  for (auto s : {SymmetricSpin::UpUp, SymmetricSpin::DownDown, SymmetricSpin::SymUpDown, SymmetricSpin::BellPhiPlus}) {
    const auto f = make_localized_pair(3, s);
    const auto e = f.expand_terms();
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e[i] - f.amplitudes()[i]) < 1e-15);
  }
}

TEST_CASE("from_dense_rejects_asymmetric_tensor") {
  const std::size_t n = spinor_dimension(1);
  std::vector<cplx> m(n * n);
  m[0 * n + 1] = 1.0;
  CHECK_THROWS_AS(TwoParticleField::from_dense(1, m), std::invalid_argument);
  m[0 * n + 1] = m[1 * n + 0] = kInvSqrt2;
  CHECK_NOTHROW(TwoParticleField::from_dense(1, m));
}

TEST_CASE("mode_state_of_initial_pairs") {
  const auto b = to_mode_state(make_localized_pair(5, SymmetricSpin::BellPhiPlus));
  CHECK(b.detection_probability == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(b.state[ModeState::TwoUp] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(b.state[ModeState::OneEach]) < 1e-15);
  CHECK(std::abs(b.state[ModeState::TwoDown] - kInvSqrt2) < 1e-15);

  const auto a = to_mode_state(make_localized_pair(5, SymmetricSpin::SymUpDown));
  CHECK(std::abs(a.state[ModeState::OneEach] - 1.0) < 1e-15);
  CHECK(std::abs(a.state[ModeState::TwoUp]) == 0.0);
  CHECK(std::abs(a.state[ModeState::TwoDown]) == 0.0);

  const auto uu = to_mode_state(make_localized_pair(5, SymmetricSpin::UpUp));
  CHECK(uu.state[ModeState::TwoUp] == cplx(1.0));
}

TEST_CASE("mode_state_needs_amplitude_at_the_origin") {
  const auto f = TwoParticleField::symmetrized(
      {{1.0, SpinorField::localized(4, 1, Spin::Up), SpinorField::localized(4, -1, Spin::Down)}});
  CHECK_THROWS_AS(to_mode_state(f), NegligibleOverlap);
}

TEST_CASE("mode_map_round_trips_random_spin_blocks") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_symmetric(rng, 3, 2);
    const auto p = to_mode_state(f);
    double norm = 0.0;
    for (const auto& v : p.state.amplitudes()) norm += std::norm(v);
    CHECK(std::abs(norm - 1.0) < 1e-12);
    const auto block = p.state.spin_block();
    const double scale = std::sqrt(p.detection_probability);
    for (Spin s1 : kSpins)
      for (Spin s2 : kSpins) {
        const cplx expected = f(0, s1, 0, s2) / scale;
        CHECK(std::abs(block[int(s1) * 2 + int(s2)] - expected) < 1e-12);
      }
  }
}

TEST_CASE("exchange_symmetry_survives_random_split_steps") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_symmetric(rng, 14, 3);
    const auto coins = random_profile(rng);
    for (int i = 0; i < 10; ++i) f = step_two(f, coins);
    CHECK(f.max_asymmetry() < 1e-12);
    CHECK(std::abs(f.norm_squared() - 1.0) < 1e-12);
  }
}

TEST_CASE("factor_evolution_matches_dense_evolution") {
  std::mt19937_64 rng(13);
  const int L = 16;
  std::vector<ProductTerm> terms;
  for (int r = 0; r < 3; ++r) {
    std::normal_distribution<double> g;
    terms.push_back({cplx(g(rng), g(rng)), random_spinor(rng, L, 2), random_spinor(rng, L, 2)});
  }
  const auto coins = random_profile(rng);
  auto f = TwoParticleField::symmetrized(terms);
  for (int i = 0; i < 12; ++i) {
    f = step_two(f, coins);
    const auto e = f.expand_terms();
    double worst = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) worst = std::max(worst, std::abs(e[k] - f.amplitudes()[k]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("csv_round_trip_is_exact") {
  std::mt19937_64 rng(17);
  const auto s = random_spinor(rng, 4, 3);
  std::stringstream a;
  write_csv(a, s);
  const auto s2 = read_spinor_csv(a, 4);
  for (std::size_t i = 0; i < s.dimension(); ++i) CHECK(s.amplitudes()[i] == s2.amplitudes()[i]);

  const auto t = random_symmetric(rng, 2, 2);
  std::stringstream b;
  write_csv(b, t);
  CHECK(b.str().rfind("x1,s1,x2,s2,re,im\n", 0) == 0);
  const auto t2 = read_two_particle_csv(b, 2);
  for (std::size_t i = 0; i < t.amplitudes().size(); ++i) CHECK(t.amplitudes()[i] == t2.amplitudes()[i]);
}

TEST_CASE("csv_uses_spin_letters") {
  std::stringstream out;
  write_csv(out, SpinorField::localized(1, -1, Spin::Down));
  std::string header, first;
  std::getline(out, header);
  std::getline(out, first);
  CHECK(header == "x,s,re,im");
  CHECK(first == "-1,u,0,0");
  CHECK(parse_spin("d") == Spin::Down);
  CHECK_THROWS(parse_spin("x"));
}
