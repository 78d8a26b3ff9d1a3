#pragma once

#include "moduli/hyperbolic.hpp"

namespace moduli {

/// The affine map z -> a z + b conj(z); orientation-preserving and invertible
/// when |a| > |b|.
struct AffineMap {
  Complex a;
  Complex b;

  Complex apply(Complex z) const { return a * z + b * std::conj(z); }
};

/// The least-distortion map commuting with the lattices of i and tau:
/// a = (1 - i tau)/2, b = (1 + i tau)/2, so f(1) = 1 and f(i) = tau.
AffineMap extremal_map(const HPoint& tau);

/// Distortion K = (|a| + |b|)/(|a| - |b|) >= 1; for the extremal map,
/// log K = dist_h2(i, tau).
double distortion(const AffineMap& m);

/// Distortion of the extremal map between the tori of tau1 and tau2: the
/// exponential of the quotient distance, computed by orbit minimization.
double extremal_distortion_between(const HPoint& tau1, const HPoint& tau2,
                                   int orbit_depth = 8);

}  // namespace moduli
