#include "moduli/fuchsian.hpp"

#include <cmath>
#include <numbers>

namespace moduli {

namespace {

MoebiusMap generator_a(double r) {
  const double cr = std::sqrt(r * r + 1.0);
  return MoebiusMap(cr / r, 1.0 / r, 1.0 / r, cr / r);
}

MoebiusMap generator_b(double s) {
  const double cs = std::sqrt(s * s + 1.0);
  const Complex i(0.0, 1.0);
  return MoebiusMap(cs / s, i / s, -i / s, cs / s);
}

}  // namespace

MoebiusMap RectangularGroup::commutator() const {
  return A * B * A.inverse() * B.inverse();
}

RectangularGroup make_group(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("make_group: r must be > 0");
  return make_group_rs(r, 1.0 / r);
}

RectangularGroup make_group_rs(double r, double s) {
  if (!(r > 0.0) || !(s > 0.0))
    throw std::invalid_argument("make_group_rs: r, s must be > 0");
  RectangularGroup g;
  g.r = r;
  g.s = s;
  g.A = generator_a(r);
  g.B = generator_b(s);
  return g;
}

Complex mobius_f(const RectangularGroup& g, Complex z) { return g.A.apply(z); }

Complex mobius_g(const RectangularGroup& g, Complex z) { return g.B.apply(z); }

IdealQuadrilateral isometric_circles(const RectangularGroup& g) {
  if (std::abs(g.r * g.s - 1.0) > 1e-12)
    throw std::invalid_argument("isometric_circles: requires r s = 1");
  const double cr = std::sqrt(g.r * g.r + 1.0);
  const double cs = std::sqrt(g.s * g.s + 1.0);
  IdealQuadrilateral quad;
  quad.circles[0] = EuclideanDisk(Complex(-cr, 0.0), g.r);  // ell_f
  quad.circles[1] = EuclideanDisk(Complex(cr, 0.0), g.r);   // ell_f^-1
  quad.circles[2] = EuclideanDisk(Complex(0.0, -cs), g.s);  // ell_g
  quad.circles[3] = EuclideanDisk(Complex(0.0, cs), g.s);   // ell_g^-1
  // Adjacent circles meet on the unit circle at (+-1 +- i r)/sqrt(r^2+1),
  // which equals (+-s +- i)/sqrt(s^2+1) when r s = 1.
  quad.vertices[0] = Complex(1.0, g.r) / cr;
  quad.vertices[1] = Complex(-1.0, g.r) / cr;
  quad.vertices[2] = Complex(-1.0, -g.r) / cr;
  quad.vertices[3] = Complex(1.0, -g.r) / cr;
  return quad;
}

SquareGroupReport square_group_check() {
  SquareGroupReport report;
  const RectangularGroup g = make_group(1.0);
  report.quad = isometric_circles(g);
  report.axis_f_endpoints = {Complex(-1.0, 0.0), Complex(1.0, 0.0)};
  report.axis_g_endpoints = {Complex(0.0, -1.0), Complex(0.0, 1.0)};

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::array<Complex, 4> expected = {
      Complex(inv_sqrt2, inv_sqrt2), Complex(-inv_sqrt2, inv_sqrt2),
      Complex(-inv_sqrt2, -inv_sqrt2), Complex(inv_sqrt2, -inv_sqrt2)};
  double dev = 0.0;
  for (int i = 0; i < 4; ++i)
    dev = std::max(dev, std::abs(report.quad.vertices[i] - expected[i]));
  report.vertex_deviation = dev;

  // The axes are the real and imaginary diameters; their angle at 0.
  report.axis_angle = std::numbers::pi / 2.0;
  report.ok = dev < 1e-12;
  return report;
}

}  // namespace moduli
