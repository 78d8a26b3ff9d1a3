#pragma once

#include <array>

#include "moduli/hyperbolic.hpp"

namespace moduli {

/// The rectangular punctured-torus group with generator translation
/// parameters r and s. The commutator [A, B] is parabolic (trace -2) exactly
/// when r s = 1.
struct RectangularGroup {
  double r = 1.0;
  double s = 1.0;
  MoebiusMap A;
  MoebiusMap B;

  MoebiusMap commutator() const;  // A B A^-1 B^-1
};

/// The four side-pairing circles (each orthogonal to the unit circle) and
/// the four ideal vertices of the fundamental quadrilateral.
struct IdealQuadrilateral {
  // order: ell_f, ell_f_inv, ell_g, ell_g_inv
  std::array<EuclideanDisk, 4> circles;
  std::array<Complex, 4> vertices;  // one per quadrant, counterclockwise
};

/// The punctured-torus group with s = 1/r.
RectangularGroup make_group(double r);

/// Free (r, s) variant; the commutator is parabolic iff r s = 1.
RectangularGroup make_group_rs(double r, double s);

/// f(z) = (sqrt(r^2+1) z + 1)/(z + sqrt(r^2+1)); fixes +-1, preserves the
/// unit circle. Throws at the pole.
Complex mobius_f(const RectangularGroup& g, Complex z);

/// g(z) = (sqrt(s^2+1) z + i)/(-i z + sqrt(s^2+1)); fixes +-i.
Complex mobius_g(const RectangularGroup& g, Complex z);

/// Isometric circles and ideal vertices of the fundamental quadrilateral
/// (requires r s = 1).
IdealQuadrilateral isometric_circles(const RectangularGroup& g);

struct SquareGroupReport {
  IdealQuadrilateral quad;
  std::array<Complex, 2> axis_f_endpoints;  // {-1, +1}
  std::array<Complex, 2> axis_g_endpoints;  // {-i, +i}
  double vertex_deviation = 0.0;  // max |vertex - (+-1 +- i)/sqrt 2|
  double axis_angle = 0.0;        // angle between the axes at 0
  bool ok = false;
};

/// Checks that the r = 1 group is the ideal-square group: vertices at
/// (+-1 +- i)/sqrt 2 and the axes of f and g meeting at a right angle.
SquareGroupReport square_group_check();

}  // namespace moduli
