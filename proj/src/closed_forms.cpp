#include "moduli/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moduli/modular.hpp"
#include "moduli/special_functions.hpp"

namespace moduli {

namespace {

constexpr double kPi = std::numbers::pi;
const double kR1 = std::asinh(0.5);
const double kR2 = std::asinh(1.0 / std::sqrt(3.0));
const double kRectMax = std::atanh(0.5);          // = kR2
const double kSqrt3 = std::sqrt(3.0);
const double kQuadMax = std::log(3.0 + 2.0 * std::sqrt(2.0));
constexpr double kSquareTailCut = 40.0;  // (3/pi) e^{-40} < 1e-18

}  // namespace

PiecewiseDensity::PiecewiseDensity(std::string name,
                                   std::vector<DensityPiece> pieces,
                                   std::function<double(double)> cdf)
    : name_(std::move(name)), pieces_(std::move(pieces)), cdf_(std::move(cdf)) {
  if (pieces_.empty())
    throw std::invalid_argument("PiecewiseDensity: needs at least one piece");
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].lo < pieces_[i].hi))
      throw std::invalid_argument("PiecewiseDensity: empty piece");
    if (i > 0 && pieces_[i].lo != pieces_[i - 1].hi)
      throw std::invalid_argument("PiecewiseDensity: pieces must be contiguous");
  }
}

std::vector<double> PiecewiseDensity::interior_breakpoints() const {
  std::vector<double> bps;
  for (size_t i = 1; i < pieces_.size(); ++i) bps.push_back(pieces_[i].lo);
  return bps;
}

double PiecewiseDensity::pdf(double r) const {
  if (r < support_lo() || r > support_hi()) return 0.0;
  for (const auto& p : pieces_)
    if (r <= p.hi) return p.pdf(r);
  return 0.0;
}

double PiecewiseDensity::cdf(double r) const { return cdf_(r); }

// ---- square-distance distribution ----------------------------------------

double cdf_square_distance(double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("cdf_square_distance: r must be >= 0");
  return std::min(1.0, area_ball_cap(r) * (3.0 / kPi));
}

double pdf_square_distance_piece(int piece, double r) {
  switch (piece) {
    case 0:
      return 3.0 * std::sinh(r);
    case 1: {
      const double c = std::cosh(r), c2 = std::cosh(2.0 * r);
      const double q = std::sqrt(std::max(2.0 * c2 - 3.0, 0.0));
      return std::sinh(r) *
             (3.0 - (6.0 / kPi) * std::atan(4.0 * c * q / (7.0 - 3.0 * c2)));
    }
    case 2: {
      if (r >= kSquareTailCut) return tail_square(r);
      const double c = std::cosh(r), s = std::sinh(r);
      const double c2 = std::cosh(2.0 * r), c4 = std::cosh(4.0 * r);
      const double q = std::sqrt(std::max(2.0 * c2 - 3.0, 0.0));
      const double num = 4.0 * (1.0 - c2 - c * q);
      const double den = 5.0 * c2 - 2.0 * c4 - 8.0 * s * s * c * q + 1.0;
      return (3.0 / kPi) * s * std::atan(num / den);
    }
    default:
      throw std::invalid_argument("pdf_square_distance_piece: piece in {0,1,2}");
  }
}

double pdf_square_distance(double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("pdf_square_distance: r must be >= 0");
  if (r <= kR1) return pdf_square_distance_piece(0, r);
  if (r <= kR2) return pdf_square_distance_piece(1, r);
  return pdf_square_distance_piece(2, r);
}

double tail_square(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("tail_square: r must be > 0");
  return (3.0 / kPi) * std::exp(-r);
}

double pdf_distortion_square(double K) {
  if (!(K >= 1.0))
    throw std::invalid_argument("pdf_distortion_square: K must be >= 1");
  return pdf_square_distance(std::log(K)) / K;
}

double prob_distortion_square_le(double K) {
  if (!(K >= 1.0))
    throw std::invalid_argument("prob_distortion_square_le: K must be >= 1");
  return cdf_square_distance(std::log(K));
}

// ---- rectangular-locus distribution ---------------------------------------

double pdf_rect_distance(double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("pdf_rect_distance: r must be >= 0");
  if (r >= kRectMax) return 0.0;
  return (6.0 / kPi) * std::cosh(r) * std::log(1.0 / (2.0 * std::tanh(r)));
}

double cdf_rect_distance(double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("cdf_rect_distance: r must be >= 0");
  return std::min(1.0, area_cone_strip(r) * (3.0 / kPi));
}

double pdf_distortion_rect(double K) {
  if (!(K >= 1.0))
    throw std::invalid_argument("pdf_distortion_rect: K must be >= 1");
  if (K >= kSqrt3) return 0.0;
  const double K2 = K * K;
  return 3.0 / (kPi * K2) * (K2 + 1.0) *
         std::log(0.5 * (K2 + 1.0) / (K2 - 1.0));
}

// ---- random ideal quadrilateral: shortest geodesic ------------------------

double pdf_shortest_geodesic_quadrilateral(double ell) {
  if (!(ell > 0.0))
    throw std::invalid_argument(
        "pdf_shortest_geodesic_quadrilateral: ell must be > 0");
  if (ell > kQuadMax) return 0.0;
  const double sh = std::sinh(0.5 * ell);
  const double cosh_m1 = 2.0 * sh * sh;  // cosh(ell) - 1 without cancellation
  return (6.0 / (kPi * kPi)) / std::sinh(ell) *
         (4.0 * std::log(std::cosh(0.5 * ell)) +
          2.0 * cosh_m1 * std::log(1.0 / std::tanh(0.5 * ell)));
}

// ---- density objects -------------------------------------------------------

PiecewiseDensity square_distance_density() {
  std::vector<DensityPiece> pieces = {
      {0.0, kR1, [](double r) { return pdf_square_distance_piece(0, r); }, false},
      {kR1, kR2, [](double r) { return pdf_square_distance_piece(1, r); }, false},
      {kR2, kSquareTailCut,
       [](double r) { return pdf_square_distance_piece(2, r); }, false}};
  return PiecewiseDensity("square", std::move(pieces), cdf_square_distance);
}

PiecewiseDensity rect_distance_density() {
  std::vector<DensityPiece> pieces = {
      {0.0, kRectMax, pdf_rect_distance, true}};
  return PiecewiseDensity("rect", std::move(pieces), cdf_rect_distance);
}

PiecewiseDensity square_distortion_density() {
  // K = e^r; kinks at e^{r1}, e^{r2}, truncation at e^40.
  std::vector<DensityPiece> pieces = {
      {1.0, std::exp(kR1), pdf_distortion_square, false},
      {std::exp(kR1), std::exp(kR2), pdf_distortion_square, false},
      {std::exp(kR2), std::exp(kSquareTailCut), pdf_distortion_square, false}};
  return PiecewiseDensity("distortion-square", std::move(pieces),
                          [](double K) { return prob_distortion_square_le(K); });
}

PiecewiseDensity rect_distortion_density() {
  std::vector<DensityPiece> pieces = {
      {1.0, kSqrt3, pdf_distortion_rect, true}};
  return PiecewiseDensity("distortion-rect", std::move(pieces), [](double K) {
    return cdf_rect_distance(std::log(std::max(K, 1.0)));
  });
}

PiecewiseDensity quadrilateral_length_density() {
  std::vector<DensityPiece> pieces = {
      {0.0, kQuadMax, pdf_shortest_geodesic_quadrilateral, false}};
  // No closed-form c.d.f. in the source material; integrate the p.d.f.
  return PiecewiseDensity("quadrilateral", std::move(pieces), [](double ell) {
    if (ell <= 0.0) return 0.0;
    if (ell >= kQuadMax) return 1.0;
    return integrate(pdf_shortest_geodesic_quadrilateral, 1e-14, ell, 1e-10)
        .value;
  });
}

// ---- moments ---------------------------------------------------------------

MomentReport moments(const PiecewiseDensity& density, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("moments: tol must be > 0");
  const auto& pieces = density.pieces();
  const double per_piece_tol = tol / (3.0 * static_cast<double>(pieces.size()));
  double m1 = 0.0, m2 = 0.0;
  for (const auto& piece : pieces) {
    QuadratureOptions opts;
    opts.tol = per_piece_tol;
    opts.log_singular_left = piece.log_singular_lo;
    m1 += integrate([&](double r) { return r * piece.pdf(r); }, piece.lo,
                    piece.hi, opts)
              .value;
    m2 += integrate([&](double r) { return r * r * piece.pdf(r); }, piece.lo,
                    piece.hi, opts)
              .value;
  }
  MomentReport report;
  report.mean = m1;
  report.variance = m2 - m1 * m1;
  report.quadrature_tolerance = tol;
  return report;
}

// ---- closed-form expectations ----------------------------------------------

double expected_rect_distance_closed() {
  const double lerch_sum = 0.25 * lerch_special();  // sum (-1)^n/(3^n (2n+1)^2)
  return (12.0 * catalan_constant() - 4.0 * kSqrt3 * lerch_sum -
          kPi * std::log(3.0) +
          12.0 * std::log((kSqrt3 + 1.0) / (2.0 * std::sqrt(2.0)))) /
         kPi;
}

double expected_distortion_closed() {
  return (3.0 / kPi) *
         (0.25 * dilog(1.0 / 9.0) - dilog(1.0 / 3.0) + kPi * kPi / 8.0 +
          std::log(2.0) * (1.0 - std::log(kSqrt3)));
}

}  // namespace moduli
