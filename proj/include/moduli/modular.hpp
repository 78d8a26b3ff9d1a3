#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "moduli/hyperbolic.hpp"

namespace moduli {

/// Thrown when the S/T reduction fails to terminate (numerically degenerate
/// input near the real axis).
class reduction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point certified to lie in the fundamental domain
///   Omega = { |tau| >= 1, -1/2 < Re tau <= 1/2 },
/// with Re tau >= 0 kept on the |tau| = 1 boundary arc. Validation uses a
/// 1e-12 band on the two boundary curves so that points produced by exact
/// samplers land inside without special casing.
struct FundamentalPoint {
  HPoint point;

  FundamentalPoint() = default;
  explicit FundamentalPoint(const HPoint& p);

  static bool is_reduced(const HPoint& p, double eps = 1e-12);
};

struct ReductionResult {
  FundamentalPoint reduced;
  MoebiusMap word;  // integer-entried; word * input = reduced
  int steps = 0;    // number of S / T^n applications
};

/// Move tau into the fundamental domain by the usual translate-and-invert
/// loop. Idempotent on reduced inputs (identity word).
ReductionResult reduce(const HPoint& tau);

/// All distinct images of `base` under modular-group words of length at most
/// `max_word_len` in {S, T, T^-1}, deduplicated within 1e-9.
std::vector<HPoint> orbit_points(const HPoint& base, int max_word_len);

/// Distance in the quotient orbifold to the square point i*.
double quotient_dist_to_square(const HPoint& tau);

/// Distance in the quotient orbifold to the rectangular locus (the image of
/// the imaginary axis); always <= artanh(1/2).
double quotient_dist_to_rect(const HPoint& tau);

/// h-Area of the r-ball about i* intersected with Omega. Three regimes split
/// at arcsinh(1/2) and arcsinh(1/sqrt 3); tends to pi/3.
double area_ball_cap(double r);

/// h-Area of { z in Omega : d(z, iR) <= r }; equals pi/3 once tanh r >= 1/2.
double area_cone_strip(double r);

struct Rect {
  double xlo, xhi;
  double ylo, yhi;  // requires 0 < ylo < yhi
};

struct AreaRegionOptions {
  double tol = 1e-9;
  std::uint64_t max_evaluations = 100'000'000;
  // Per-slice scan resolution before bisection; features narrower than one
  // scan cell in t = 1/y can be missed, with mass shrinking like cells^-3.
  int scan_cells = 1024;
};

/// Independent quadrature oracle for hyperbolic areas of indicator-defined
/// regions. Each vertical slice is measured exactly in the t = 1/y coordinate
/// (where the area element is plain Lebesgue measure), with indicator flips
/// located by bisection; the slice masses are then integrated adaptively in x.
/// The caller truncates unbounded regions: the mass above height Y is at most
/// width / Y.
double area_region(const std::function<bool(const HPoint&)>& indicator,
                   const Rect& bounds, double tol);
double area_region(const std::function<bool(const HPoint&)>& indicator,
                   const Rect& bounds, const AreaRegionOptions& opts);

}  // namespace moduli
