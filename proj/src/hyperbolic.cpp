#include "moduli/hyperbolic.hpp"

#include <cmath>
#include <numbers>

namespace moduli {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

HPoint::HPoint(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
    throw std::invalid_argument("HPoint: requires finite coordinates with y > 0");
}

DPoint::DPoint(double u_, double v_) : u(u_), v(v_) {
  if (!std::isfinite(u) || !std::isfinite(v) || !(u * u + v * v < 1.0))
    throw std::invalid_argument("DPoint: requires u^2 + v^2 < 1");
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
    throw std::invalid_argument("MoebiusMap: entries must be finite");
  const Complex det = a_ * d_ - b_ * c_;
  if (std::abs(det) < 1e-14)
    throw std::invalid_argument("MoebiusMap: determinant too close to zero");
  const Complex s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

MoebiusMap MoebiusMap::raw(Complex a, Complex b, Complex c, Complex d) {
  MoebiusMap m;
  m.a_ = a;
  m.b_ = b;
  m.c_ = c;
  m.d_ = d;
  return m;
}

bool MoebiusMap::is_real(double eps) const {
  return std::abs(a_.imag()) <= eps && std::abs(b_.imag()) <= eps &&
         std::abs(c_.imag()) <= eps && std::abs(d_.imag()) <= eps;
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& rhs) const {
  return raw(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
             c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_);
}

Complex MoebiusMap::apply(Complex z) const {
  const Complex den = c_ * z + d_;
  if (std::abs(den) == 0.0)
    throw std::domain_error("MoebiusMap::apply: point maps to infinity");
  return (a_ * z + b_) / den;
}

EuclideanDisk::EuclideanDisk(Complex center_, double radius_)
    : center(center_), radius(radius_) {
  if (!(radius >= 0.0) || !finite(center))
    throw std::invalid_argument("EuclideanDisk: radius must be >= 0");
}

double dist_h2(const HPoint& z, const HPoint& w) {
  const double dx = z.x - w.x;
  const double dy = z.y - w.y;
  const double sep2 = dx * dx + dy * dy;
  // arccosh(1 + q) loses half the significant digits as q -> 0; switch to
  // the exactly equivalent 2 arcsinh form for nearby points.
  if (sep2 < 1e-12)
    return 2.0 * std::asinh(std::sqrt(sep2) / (2.0 * std::sqrt(z.y * w.y)));
  return std::acosh(1.0 + sep2 / (2.0 * z.y * w.y));
}

double dist_disk_from_origin(const DPoint& w) {
  const double r = w.abs();
  return std::log1p(2.0 * r / (1.0 - r));
}

DPoint cayley(const HPoint& tau) {
  // (1 + i tau)/(1 - i tau) with tau = x + iy.
  const Complex num(1.0 - tau.y, tau.x);
  const Complex den(1.0 + tau.y, -tau.x);
  return DPoint(num / den);
}

HPoint apply_moebius(const MoebiusMap& m, const HPoint& z) {
  if (!m.is_real())
    throw std::invalid_argument("apply_moebius: map must have real entries");
  const double a = m.a().real(), b = m.b().real();
  const double c = m.c().real(), d = m.d().real();
  const double dr = c * z.x + d;
  const double di = c * z.y;
  const double den = dr * dr + di * di;
  if (den == 0.0)
    throw std::domain_error("apply_moebius: point maps to infinity");
  const double nr = a * z.x + b;
  const double ni = a * z.y;
  // (n * conj(d)) / |d|^2 ; imaginary part is (ad - bc) y / |cz+d|^2 > 0.
  return HPoint((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
}

double dist_to_imaginary_axis(const HPoint& tau) {
  return std::asinh(std::abs(tau.x) / tau.y);
}

EuclideanDisk ball_about_i(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball_about_i: r must be >= 0");
  return EuclideanDisk(Complex(0.0, std::cosh(r)), std::sinh(r));
}

double hyperbolic_disk_area(double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("hyperbolic_disk_area: r must be >= 0");
  const double s = std::sinh(0.5 * r);
  return 4.0 * std::numbers::pi * s * s;
}

}  // namespace moduli
