#pragma once

#include <complex>
#include <stdexcept>

namespace moduli {

using Complex = std::complex<double>;

/// A point of the upper half-plane model, z = x + iy with y > 0.
struct HPoint {
  double x = 0.0;
  double y = 1.0;

  HPoint() = default;
  HPoint(double x_, double y_);
  explicit HPoint(Complex z) : HPoint(z.real(), z.imag()) {}

  Complex value() const { return {x, y}; }
};

/// A point of the unit-disk model, |u + iv| < 1.
struct DPoint {
  double u = 0.0;
  double v = 0.0;

  DPoint() = default;
  DPoint(double u_, double v_);
  explicit DPoint(Complex w) : DPoint(w.real(), w.imag()) {}

  Complex value() const { return {u, v}; }
  double abs() const { return std::hypot(u, v); }
};

/// A Moebius transformation z -> (az+b)/(cz+d), normalized to det = 1 on
/// construction. The action is projective, so the +/- matrix ambiguity is
/// irrelevant and ignored throughout.
class MoebiusMap {
 public:
  MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex det() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }
  bool is_real(double eps = 1e-12) const;

  MoebiusMap inverse() const { return raw(d_, -b_, -c_, a_); }
  MoebiusMap operator*(const MoebiusMap& rhs) const;

  /// Action on the Riemann sphere; throws std::domain_error at the pole.
  Complex apply(Complex z) const;

  static MoebiusMap identity() { return {}; }
  static MoebiusMap modular_S() { return raw(0, -1, 1, 0); }
  static MoebiusMap modular_T() { return raw(1, 1, 0, 1); }
  /// T^n : z -> z + n.
  static MoebiusMap translation(double n) { return raw(1, n, 0, 1); }

 private:
  static MoebiusMap raw(Complex a, Complex b, Complex c, Complex d);
  Complex a_, b_, c_, d_;
};

struct EuclideanDisk {
  Complex center;
  double radius = 0.0;

  EuclideanDisk() = default;
  EuclideanDisk(Complex center_, double radius_);

  bool contains(Complex z) const { return std::abs(z - center) <= radius; }
};

/// Hyperbolic distance (curvature -1) between two half-plane points:
/// cosh d = 1 + |z-w|^2 / (2 y_z y_w).
double dist_h2(const HPoint& z, const HPoint& w);

/// Hyperbolic distance from the disk origin: log((1+|w|)/(1-|w|)).
double dist_disk_from_origin(const DPoint& w);

/// The Cayley map tau -> (1+i tau)/(1-i tau); sends i to 0 and conjugates
/// the half-plane metric to the disk metric.
DPoint cayley(const HPoint& tau);

/// (az+b)/(cz+d) for a real-entried map preserving the half-plane.
HPoint apply_moebius(const MoebiusMap& m, const HPoint& z);

/// Distance from tau to the geodesic {Re z = 0}: arcsinh(|x|/y).
double dist_to_imaginary_axis(const HPoint& tau);

/// The hyperbolic ball about i of radius r as a Euclidean disk:
/// center i cosh r, radius sinh r.
EuclideanDisk ball_about_i(double r);

/// Area of a hyperbolic disk of radius r: 4 pi sinh^2(r/2).
double hyperbolic_disk_area(double r);

}  // namespace moduli
