#pragma once

// Single- and two-particle lattice wavefunctions on the sites -L..L.
//
// Spin ordering is (up = 0, down = 1). A single-particle field is stored as a
// flat vector indexed by (site + L) * 2 + spin; a two-particle field as the
// row-major tensor (x1, s1, x2, s2), i.e. an N x N matrix with N = 2(2L+1).

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

enum class Spin : int { Up = 0, Down = 1 };

inline constexpr std::array<Spin, 2> kSpins{Spin::Up, Spin::Down};

/// Tolerance used for the norm and symmetry invariants of every field.
inline constexpr double kStateTolerance = 1e-12;

char spin_label(Spin s);
Spin parse_spin(std::string_view label);

/// Index of (site, spin) in a single-particle amplitude vector.
inline std::size_t spinor_index(int half_width, int site, Spin s) {
  return static_cast<std::size_t>(site + half_width) * 2 + static_cast<std::size_t>(s);
}

inline std::size_t spinor_dimension(int half_width) {
  return 2 * (2 * static_cast<std::size_t>(half_width) + 1);
}

class SpinorField {
 public:
  /// Takes ownership of the amplitudes; throws std::invalid_argument unless the
  /// size matches 2(2L+1) and the squared norm is 1 within kStateTolerance.
  SpinorField(int half_width, std::vector<cplx> amplitudes);

  /// Rescales the amplitudes to unit norm first.
  static SpinorField normalized(int half_width, std::vector<cplx> amplitudes);
  static SpinorField localized(int half_width, int site, Spin s);

  int half_width() const { return half_width_; }
  int num_sites() const { return 2 * half_width_ + 1; }
  std::size_t dimension() const { return amplitudes_.size(); }

  cplx operator()(int site, Spin s) const { return amplitudes_[spinor_index(half_width_, site, s)]; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  double norm_squared() const;
  double site_probability(int site) const;
  /// P(x) summed over spin, indexed by site + L.
  std::vector<double> site_probabilities() const;
  /// Largest amplitude magnitude on the two outermost sites.
  double edge_magnitude() const;

 private:
  int half_width_;
  std::vector<cplx> amplitudes_;
};

cplx inner_product(const SpinorField& a, const SpinorField& b);

/// One term w * Sym(a (x) b) of a low-rank two-particle decomposition, where
/// Sym(a (x) b) = (a (x) b + b (x) a) / 2.
struct ProductTerm {
  cplx weight;
  SpinorField first;
  SpinorField second;
};

class TwoParticleField {
 public:
  /// Dense constructor; validates exchange symmetry and norm within kStateTolerance.
  static TwoParticleField from_dense(int half_width, std::vector<cplx> amplitudes);

  /// Builds the dense tensor from a symmetrized sum of product terms. The
  /// weights are rescaled so the result has unit norm; the decomposition is kept.
  static TwoParticleField symmetrized(std::vector<ProductTerm> terms);

  /// Dense tensor plus an existing decomposition. Validates both, including
  /// agreement of the expansion with the tensor within kStateTolerance.
  static TwoParticleField from_parts(int half_width, std::vector<cplx> amplitudes,
                                     std::optional<std::vector<ProductTerm>> terms);

  int half_width() const { return half_width_; }
  int num_sites() const { return 2 * half_width_ + 1; }
  /// Single-particle dimension N; the tensor holds N * N entries.
  std::size_t single_dimension() const { return spinor_dimension(half_width_); }

  cplx operator()(int x1, Spin s1, int x2, Spin s2) const {
    return amplitudes_[spinor_index(half_width_, x1, s1) * single_dimension() +
                       spinor_index(half_width_, x2, s2)];
  }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  bool has_terms() const { return terms_.has_value(); }
  const std::vector<ProductTerm>& terms() const;
  /// Dense tensor reconstructed from the low-rank decomposition.
  std::vector<cplx> expand_terms() const;

  double norm_squared() const;
  /// max |psi(x1,s1;x2,s2) - psi(x2,s2;x1,s1)|
  double max_asymmetry() const;
  /// Joint position probabilities P(x1, x2), row-major over (x1 + L, x2 + L).
  std::vector<double> joint_probabilities() const;
  /// Probability summed over spins at the ordered position pair (x1, x2).
  double pair_probability(int x1, int x2) const;

 private:
  TwoParticleField(int half_width, std::vector<cplx> amplitudes,
                   std::optional<std::vector<ProductTerm>> terms);

  int half_width_;
  std::vector<cplx> amplitudes_;
  std::optional<std::vector<ProductTerm>> terms_;
};

std::vector<cplx> expand_product_terms(int half_width, std::span<const ProductTerm> terms);

/// The symmetric two-spin states available for a pair localized at one site.
enum class SymmetricSpin {
  UpUp,         // |up up>
  DownDown,     // |down down>
  SymUpDown,    // (|up down> + |down up>) / sqrt 2
  BellPhiPlus,  // (|up up> + |down down>) / sqrt 2
};

/// Both particles at x = 0 with the given spin content; carries a rank <= 2
/// decomposition. Throws std::invalid_argument for L < 1.
TwoParticleField make_localized_pair(int half_width, SymmetricSpin spin);

/// Two bosons in two modes (up, down): amplitudes over |2,0>, |1,1>, |0,2>.
class ModeState {
 public:
  enum Occupation : std::size_t { TwoUp = 0, OneEach = 1, TwoDown = 2 };

  /// Throws std::invalid_argument unless the squared norm is 1 within kStateTolerance.
  explicit ModeState(std::array<cplx, 3> amplitudes);

  cplx operator[](Occupation n) const { return amplitudes_[n]; }
  const std::array<cplx, 3>& amplitudes() const { return amplitudes_; }

  /// First-quantized spin block c(s1, s2) of the same state, indexed [s1 * 2 + s2].
  std::array<cplx, 4> spin_block() const;

 private:
  std::array<cplx, 3> amplitudes_;
};

struct ModeProjection {
  ModeState state;
  /// Squared norm of the projected spin block before renormalization.
  double detection_probability;
};

/// Mode representation of a spin block c(s1, s2) (exchange symmetric) without normalization:
/// c_uu -> |2,0>, sqrt2 c_ud -> |1,1>, c_dd -> |0,2>.
std::array<cplx, 3> spin_block_to_modes(const std::array<cplx, 4>& block);

/// Projects both particles onto `site` (the origin by default) and re-expresses
/// the spin content in the occupation basis. Throws NegligibleOverlap if the
/// projected norm is <= kStateTolerance.
ModeProjection to_mode_state(const TwoParticleField& field, int site = 0);

// CSV serialization: (x, s, re, im) and (x1, s1, x2, s2, re, im), spins as u/d.
void write_csv(std::ostream& out, const SpinorField& field);
void write_csv(std::ostream& out, const TwoParticleField& field);
SpinorField read_spinor_csv(std::istream& in, int half_width);
TwoParticleField read_two_particle_csv(std::istream& in, int half_width);

/// "%.17g" rendering; round-trips every double.
std::string format_double(double value);

}  // namespace qwalk
