#include "moduli/qc_maps.hpp"

#include <cmath>
#include <limits>

#include "moduli/modular.hpp"

namespace moduli {

AffineMap extremal_map(const HPoint& tau) {
  const Complex itau(-tau.y, tau.x);  // i * tau
  return {0.5 * (1.0 - itau), 0.5 * (1.0 + itau)};
}

double distortion(const AffineMap& m) {
  const double na = std::abs(m.a), nb = std::abs(m.b);
  if (!(na > nb))
    throw std::domain_error("distortion: map not invertible (|a| <= |b|)");
  return (na + nb) / (na - nb);
}

double extremal_distortion_between(const HPoint& tau1, const HPoint& tau2,
                                   int orbit_depth) {
  const HPoint p = reduce(tau1).reduced.point;
  const HPoint q = reduce(tau2).reduced.point;
  double best = std::numeric_limits<double>::infinity();
  for (const HPoint& img : orbit_points(q, orbit_depth))
    best = std::min(best, dist_h2(p, img));
  return std::exp(best);
}

}  // namespace moduli
