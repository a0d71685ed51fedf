#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for numerical guards tripped during a simulation.
class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonzero amplitude would leave the finite lattice.
class BoundaryOverrun : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// A projection produced a vector whose norm is below the detection floor.
class NegligibleOverlap : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// No anti-diagonal probability with the particles on distinct sites.
class NoSeparation : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Polarization projection requested with both particles on the same site.
class SamePosition : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Winding number requested for a spectrum without a gap at 0 and pi.
class GaplessSpectrum : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// One of the asymptotic phases of an inhomogeneous coin profile is gapless.
class AsymptoticGapless : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// Invalid experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
