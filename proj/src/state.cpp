#include "qwalk/state.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double squared_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

void check_half_width(int half_width) {
  if (half_width < 1) throw std::invalid_argument("half_width must be >= 1");
}

void check_unit_norm(double n2, const char* what) {
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kStateTolerance) {
    throw std::invalid_argument(std::string(what) + ": squared norm " + format_double(n2) +
                                " differs from 1");
  }
}

}  // namespace

char spin_label(Spin s) { return s == Spin::Up ? 'u' : 'd'; }

Spin parse_spin(std::string_view label) {
  if (label == "u") return Spin::Up;
  if (label == "d") return Spin::Down;
  throw std::invalid_argument("unknown spin label '" + std::string(label) + "'");
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// SpinorField

SpinorField::SpinorField(int half_width, std::vector<cplx> amplitudes)
    : half_width_(half_width), amplitudes_(std::move(amplitudes)) {
  check_half_width(half_width_);
  if (amplitudes_.size() != spinor_dimension(half_width_)) {
    throw std::invalid_argument("SpinorField: amplitude count does not match 2(2L+1)");
  }
  check_unit_norm(norm_squared(), "SpinorField");
}

SpinorField SpinorField::normalized(int half_width, std::vector<cplx> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0)) throw std::invalid_argument("SpinorField::normalized: zero vector");
  for (auto& a : amplitudes) a /= n;
  return SpinorField(half_width, std::move(amplitudes));
}

SpinorField SpinorField::localized(int half_width, int site, Spin s) {
  check_half_width(half_width);
  if (site < -half_width || site > half_width) {
    throw std::invalid_argument("SpinorField::localized: site outside lattice");
  }
  std::vector<cplx> amps(spinor_dimension(half_width));
  amps[spinor_index(half_width, site, s)] = 1.0;
  return SpinorField(half_width, std::move(amps));
}

double SpinorField::norm_squared() const { return squared_norm(amplitudes_); }

double SpinorField::site_probability(int site) const {
  return std::norm((*this)(site, Spin::Up)) + std::norm((*this)(site, Spin::Down));
}

std::vector<double> SpinorField::site_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(num_sites()));
  for (int x = -half_width_; x <= half_width_; ++x) p[x + half_width_] = site_probability(x);
  return p;
}

double SpinorField::edge_magnitude() const {
  double m = 0.0;
  for (int x : {-half_width_, half_width_}) {
    for (Spin s : kSpins) m = std::max(m, std::abs((*this)(x, s)));
  }
  return m;
}

cplx inner_product(const SpinorField& a, const SpinorField& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("inner_product: lattice mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return s;
}

// ---------------------------------------------------------------------------
// TwoParticleField

std::vector<cplx> expand_product_terms(int half_width, std::span<const ProductTerm> terms) {
  const std::size_t n = spinor_dimension(half_width);
  std::vector<cplx> dense(n * n);
  for (const auto& t : terms) {
    if (t.first.half_width() != half_width || t.second.half_width() != half_width) {
      throw std::invalid_argument("product term lattice mismatch");
    }
    const auto a = t.first.amplitudes();
    const auto b = t.second.amplitudes();
    const cplx w = 0.5 * t.weight;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0.0 && b[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) dense[i * n + j] += w * (a[i] * b[j] + b[i] * a[j]);
    }
  }
  return dense;
}

TwoParticleField::TwoParticleField(int half_width, std::vector<cplx> amplitudes,
                                   std::optional<std::vector<ProductTerm>> terms)
    : half_width_(half_width), amplitudes_(std::move(amplitudes)), terms_(std::move(terms)) {}

TwoParticleField TwoParticleField::from_parts(int half_width, std::vector<cplx> amplitudes,
                                              std::optional<std::vector<ProductTerm>> terms) {
  check_half_width(half_width);
  const std::size_t n = spinor_dimension(half_width);
  if (amplitudes.size() != n * n) {
    throw std::invalid_argument("TwoParticleField: tensor size does not match (2(2L+1))^2");
  }
  TwoParticleField f(half_width, std::move(amplitudes), std::move(terms));
  check_unit_norm(f.norm_squared(), "TwoParticleField");
  if (f.max_asymmetry() > kStateTolerance) {
    throw std::invalid_argument("TwoParticleField: tensor is not exchange symmetric");
  }
  if (f.terms_) {
    const auto expanded = f.expand_terms();
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      if (std::abs(expanded[i] - f.amplitudes_[i]) > kStateTolerance) {
        throw std::invalid_argument("TwoParticleField: decomposition does not match tensor");
      }
    }
  }
  return f;
}

TwoParticleField TwoParticleField::from_dense(int half_width, std::vector<cplx> amplitudes) {
  return from_parts(half_width, std::move(amplitudes), std::nullopt);
}

TwoParticleField TwoParticleField::symmetrized(std::vector<ProductTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("symmetrized: no product terms");
  const int half_width = terms.front().first.half_width();
  auto dense = expand_product_terms(half_width, terms);
  const double n = std::sqrt(squared_norm(dense));
  if (!(n > 0.0)) throw std::invalid_argument("symmetrized: terms cancel to zero");
  for (auto& a : dense) a /= n;
  for (auto& t : terms) t.weight /= n;
  return from_parts(half_width, std::move(dense), std::move(terms));
}

const std::vector<ProductTerm>& TwoParticleField::terms() const {
  if (!terms_) throw std::logic_error("TwoParticleField has no product decomposition");
  return *terms_;
}

std::vector<cplx> TwoParticleField::expand_terms() const { return expand_product_terms(half_width_, terms()); }

double TwoParticleField::norm_squared() const { return squared_norm(amplitudes_); }

double TwoParticleField::max_asymmetry() const {
  const std::size_t n = single_dimension();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m = std::max(m, std::abs(amplitudes_[i * n + j] - amplitudes_[j * n + i]));
    }
  }
  return m;
}

double TwoParticleField::pair_probability(int x1, int x2) const {
  double p = 0.0;
  for (Spin s1 : kSpins) {
    for (Spin s2 : kSpins) p += std::norm((*this)(x1, s1, x2, s2));
  }
  return p;
}

std::vector<double> TwoParticleField::joint_probabilities() const {
  const int sites = num_sites();
  std::vector<double> p(static_cast<std::size_t>(sites) * sites);
  for (int x1 = -half_width_; x1 <= half_width_; ++x1) {
    for (int x2 = -half_width_; x2 <= half_width_; ++x2) {
      p[static_cast<std::size_t>(x1 + half_width_) * sites + (x2 + half_width_)] = pair_probability(x1, x2);
    }
  }
  return p;
}

TwoParticleField make_localized_pair(int half_width, SymmetricSpin spin) {
  check_half_width(half_width);
  const auto up = SpinorField::localized(half_width, 0, Spin::Up);
  const auto down = SpinorField::localized(half_width, 0, Spin::Down);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ProductTerm> terms;
  switch (spin) {
    case SymmetricSpin::UpUp:
      terms.push_back({1.0, up, up});
      break;
    case SymmetricSpin::DownDown:
      terms.push_back({1.0, down, down});
      break;
    case SymmetricSpin::SymUpDown:
      terms.push_back({std::sqrt(2.0), up, down});
      break;
    case SymmetricSpin::BellPhiPlus:
      terms.push_back({r, up, up});
      terms.push_back({r, down, down});
      break;
  }
  // Entries are set directly so the tensor is exactly symmetric.
  const std::size_t n = spinor_dimension(half_width);
  std::vector<cplx> dense(n * n);
  const std::size_t iu = spinor_index(half_width, 0, Spin::Up);
  const std::size_t id = spinor_index(half_width, 0, Spin::Down);
  switch (spin) {
    case SymmetricSpin::UpUp:
      dense[iu * n + iu] = 1.0;
      break;
    case SymmetricSpin::DownDown:
      dense[id * n + id] = 1.0;
      break;
    case SymmetricSpin::SymUpDown:
      dense[iu * n + id] = dense[id * n + iu] = r;
      break;
    case SymmetricSpin::BellPhiPlus:
      dense[iu * n + iu] = dense[id * n + id] = r;
      break;
  }
  return TwoParticleField::from_parts(half_width, std::move(dense), std::move(terms));
}

// ---------------------------------------------------------------------------
// Mode representation

ModeState::ModeState(std::array<cplx, 3> amplitudes) : amplitudes_(amplitudes) {
  check_unit_norm(squared_norm(amplitudes_), "ModeState");
}

std::array<cplx, 4> ModeState::spin_block() const {
  const cplx ud = amplitudes_[OneEach] / std::sqrt(2.0);
  return {amplitudes_[TwoUp], ud, ud, amplitudes_[TwoDown]};
}

std::array<cplx, 3> spin_block_to_modes(const std::array<cplx, 4>& block) {
  const cplx ud = 0.5 * (block[1] + block[2]);
  return {block[0], std::sqrt(2.0) * ud, block[3]};
}

ModeProjection to_mode_state(const TwoParticleField& field, int site) {
  if (site < -field.half_width() || site > field.half_width()) {
    throw std::invalid_argument("to_mode_state: site outside lattice");
  }
  const std::array<cplx, 4> block{field(site, Spin::Up, site, Spin::Up), field(site, Spin::Up, site, Spin::Down),
                                  field(site, Spin::Down, site, Spin::Up),
                                  field(site, Spin::Down, site, Spin::Down)};
  const double p = squared_norm(block);
  if (!(p > kStateTolerance)) {
    throw NegligibleOverlap("projection onto x1 = x2 = " + std::to_string(site) + " has negligible norm");
  }
  auto modes = spin_block_to_modes(block);
  const double n = std::sqrt(squared_norm(modes));
  for (auto& m : modes) m /= n;
  return {ModeState(modes), p};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

int parse_site(const std::string& s, int half_width) {
  const int x = std::stoi(s);
  if (x < -half_width || x > half_width) throw std::invalid_argument("CSV site outside lattice: " + s);
  return x;
}

}  // namespace

void write_csv(std::ostream& out, const SpinorField& field) {
  const int L = field.half_width();
  out << "x,s,re,im\n";
  for (int x = -L; x <= L; ++x) {
    for (Spin s : kSpins) {
      const cplx a = field(x, s);
      out << x << ',' << spin_label(s) << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << '\n';
    }
  }
}

void write_csv(std::ostream& out, const TwoParticleField& field) {
  const int L = field.half_width();
  out << "x1,s1,x2,s2,re,im\n";
  for (int x1 = -L; x1 <= L; ++x1) {
    for (Spin s1 : kSpins) {
      for (int x2 = -L; x2 <= L; ++x2) {
        for (Spin s2 : kSpins) {
          const cplx a = field(x1, s1, x2, s2);
          out << x1 << ',' << spin_label(s1) << ',' << x2 << ',' << spin_label(s2) << ','
              << format_double(a.real()) << ',' << format_double(a.imag()) << '\n';
        }
      }
    }
  }
}

SpinorField read_spinor_csv(std::istream& in, int half_width) {
  check_half_width(half_width);
  std::string line;
  if (!std::getline(in, line) || line != "x,s,re,im") throw std::invalid_argument("spinor CSV: bad header");
  std::vector<cplx> amps(spinor_dimension(half_width));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 4) throw std::invalid_argument("spinor CSV: expected 4 columns");
    amps[spinor_index(half_width, parse_site(c[0], half_width), parse_spin(c[1]))] = {std::stod(c[2]),
                                                                                      std::stod(c[3])};
  }
  return SpinorField(half_width, std::move(amps));
}

TwoParticleField read_two_particle_csv(std::istream& in, int half_width) {
  check_half_width(half_width);
  std::string line;
  if (!std::getline(in, line) || line != "x1,s1,x2,s2,re,im") {
    throw std::invalid_argument("two-particle CSV: bad header");
  }
  const std::size_t n = spinor_dimension(half_width);
  std::vector<cplx> amps(n * n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 6) throw std::invalid_argument("two-particle CSV: expected 6 columns");
    const std::size_t i = spinor_index(half_width, parse_site(c[0], half_width), parse_spin(c[1]));
    const std::size_t j = spinor_index(half_width, parse_site(c[2], half_width), parse_spin(c[3]));
    amps[i * n + j] = {std::stod(c[4]), std::stod(c[5])};
  }
  return TwoParticleField::from_dense(half_width, std::move(amps));
}

}  // namespace qwalk
