#pragma once

#include <functional>
#include <string>
#include <vector>

namespace moduli {

struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> pdf;
  bool log_singular_lo = false;  // integrable log blow-up at the left end
};

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double quadrature_tolerance = 0.0;
};

/// A probability density with ordered breakpoints, per-piece closed-form
/// evaluators and a closed-form c.d.f.
class PiecewiseDensity {
 public:
  PiecewiseDensity(std::string name, std::vector<DensityPiece> pieces,
                   std::function<double(double)> cdf);

  const std::string& name() const { return name_; }
  double support_lo() const { return pieces_.front().lo; }
  double support_hi() const { return pieces_.back().hi; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  std::vector<double> interior_breakpoints() const;

  double pdf(double r) const;  // 0 outside the support
  double cdf(double r) const;

 private:
  std::string name_;
  std::vector<DensityPiece> pieces_;
  std::function<double(double)> cdf_;
};

// ---- Teichmueller distance to the square point --------------------------

/// C.d.f. of the distance to the square point: area_ball_cap(r) / (pi/3).
double cdf_square_distance(double r);

/// P.d.f. of the distance to the square point (three pieces, continuous).
double pdf_square_distance(double r);

/// One-sided piece evaluators (piece = 0, 1, 2) for breakpoint checks.
double pdf_square_distance_piece(int piece, double r);

/// Large-r tail (3/pi) e^{-r}; agrees with the p.d.f. to 1e-6 once r >= 5.
double tail_square(double r);

/// P.d.f. of K = exp(distance to the square point); ~ 3/(pi K^2), no moments.
double pdf_distortion_square(double K);

/// P(distortion to the square torus <= K).
double prob_distortion_square_le(double K);

// ---- distance to the rectangular locus ----------------------------------

/// P.d.f. (6/pi) cosh(r) log(coth(r)/2) on (0, artanh(1/2)], else 0.
double pdf_rect_distance(double r);

/// C.d.f. of the distance to the rectangular locus: area_cone_strip / (pi/3).
double cdf_rect_distance(double r);

/// P.d.f. of the distortion of the extremal map to a rectangular torus,
/// supported on [1, sqrt 3].
double pdf_distortion_rect(double K);

// ---- shortest geodesic of a random ideal quadrilateral ------------------

/// Supported on (0, log(3 + 2 sqrt 2)].
double pdf_shortest_geodesic_quadrilateral(double ell);

// ---- densities as objects ------------------------------------------------

PiecewiseDensity square_distance_density();
PiecewiseDensity rect_distance_density();
PiecewiseDensity square_distortion_density();
PiecewiseDensity rect_distortion_density();
PiecewiseDensity quadrilateral_length_density();

/// First and second moments by adaptive quadrature (tails and endpoint
/// singularities handled per piece).
MomentReport moments(const PiecewiseDensity& density, double tol);

// ---- closed-form expectations --------------------------------------------

/// E[distance to the rectangular locus] via Catalan's constant, the Lerch
/// value and elementary logs; equals the quadrature moment to 1e-8.
double expected_rect_distance_closed();

/// E[distortion to the rectangular torus] via dilogarithms.
double expected_distortion_closed();

}  // namespace moduli
