#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "moduli/closed_forms.hpp"
#include "moduli/modular.hpp"
#include "moduli/special_functions.hpp"

using namespace moduli;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR1 = std::asinh(0.5);
const double kR2 = std::asinh(1.0 / std::sqrt(3.0));
const double kRectMax = std::atanh(0.5);
const double kQuadMax = std::log(3.0 + 2.0 * std::sqrt(2.0));

std::mt19937_64 rng(424242);

// mass of a density via per-piece quadrature with singularity handling
double density_mass(const PiecewiseDensity& d, double tol = 1e-10) {
  double total = 0.0;
  for (const auto& piece : d.pieces()) {
    QuadratureOptions opts;
    opts.tol = tol;
    opts.log_singular_left = piece.log_singular_lo;
    total += integrate(piece.pdf, piece.lo, piece.hi, opts).value;
  }
  return total;
}

}  // namespace

TEST_CASE("cdf_square_distance: probabilities of the square-distortion bound") {
  const double logphi = std::log(0.5 * (1.0 + std::sqrt(5.0)));
  CHECK(std::abs(cdf_square_distance(logphi) -
                 1.5 * (std::sqrt(5.0) - 2.0)) <= 1e-12);
  CHECK(cdf_square_distance(std::log(2.0)) ==
        doctest::Approx(0.507349).epsilon(2e-5));
  CHECK(cdf_square_distance(std::log(10.0)) ==
        doctest::Approx(0.904426).epsilon(2e-5));
  CHECK(cdf_square_distance(0.0) == 0.0);
  CHECK(cdf_square_distance(50.0) == doctest::Approx(1.0).epsilon(1e-15));

  // nondecreasing and continuous on a grid
  double prev = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double v = cdf_square_distance(0.005 * i);
    CHECK(v >= prev);
    CHECK(v - prev < 0.01);
    prev = v;
  }
}

TEST_CASE("pdf_square_distance: breakpoint continuity (one-sided values)") {
  CHECK(std::abs(pdf_square_distance_piece(0, kR1) - 1.5) <= 1e-10);
  CHECK(std::abs(pdf_square_distance_piece(1, kR1) - 1.5) <= 1e-10);
  const double v2 = std::sqrt(3.0) / kPi * std::atan(24.0 / 7.0);
  CHECK(std::abs(pdf_square_distance_piece(1, kR2) - v2) <= 1e-10);
  CHECK(std::abs(pdf_square_distance_piece(2, kR2) - v2) <= 1e-10);
  CHECK(v2 == doctest::Approx(0.70956).epsilon(1e-4));
  CHECK(pdf_square_distance(0.0) == 0.0);
  CHECK_THROWS_AS(pdf_square_distance_piece(3, 1.0), std::invalid_argument);
}

TEST_CASE("pdf_square_distance: first piece is 3 sinh r") {
  for (double r : {0.05, 0.2, 0.4, kR1})
    CHECK(pdf_square_distance(r) ==
          doctest::Approx(3.0 * std::sinh(r)).epsilon(1e-15));
}

TEST_CASE("pdf_square_distance: nonnegative, derivative of the cdf") {
  for (int i = 0; i <= 10'000; ++i) {
    const double r = 12.0 * i / 10'000.0;
    CHECK(pdf_square_distance(r) >= 0.0);
  }
  const double h = 1e-5;
  for (int i = 1; i <= 1000; ++i) {
    const double r = 0.004 * i;
    if (std::abs(r - kR1) < 1e-3 || std::abs(r - kR2) < 1e-3) continue;
    const double der =
        (cdf_square_distance(r + h) - cdf_square_distance(r - h)) / (2.0 * h);
    CHECK(std::abs(der - pdf_square_distance(r)) <= 1e-6);
  }
}

TEST_CASE("tail_square: asymptotic regime") {
  CHECK(std::abs(pdf_square_distance(5.0) - tail_square(5.0)) < 1e-6);
  CHECK(std::abs(pdf_square_distance(10.0) - tail_square(10.0)) < 1e-8);
  CHECK(std::abs(pdf_square_distance(1.0) - tail_square(1.0)) > 1e-3);
  CHECK_THROWS_AS(tail_square(0.0), std::invalid_argument);
}

TEST_CASE("pdf_distortion_square: tail and unit mass") {
  CHECK(pdf_distortion_square(1.0) == 0.0);

  // unit mass over [1, e^40] in dyadic panels plus the analytic 3/(pi K) tail
  double mass = 0.0;
  double lo = 1.0;
  const double hi = std::exp(40.0);
  while (lo < hi) {
    const double up = std::min(lo * 2.0, hi);
    mass += integrate(pdf_distortion_square, lo, up, 1e-11).value;
    lo = up;
  }
  CHECK(std::abs(mass + (3.0 / kPi) * std::exp(-40.0) - 1.0) <= 1e-8);

  // K * P(distortion > K) -> 3/pi
  const double K = 100.0;
  double tail_mass = 0.0;
  lo = K;
  while (lo < hi) {
    const double up = std::min(lo * 2.0, hi);
    tail_mass += integrate(pdf_distortion_square, lo, up, 1e-12).value;
    lo = up;
  }
  CHECK(K * tail_mass == doctest::Approx(3.0 / kPi).epsilon(0.01));
}

TEST_CASE("prob_distortion_square_le: anchors") {
  CHECK(prob_distortion_square_le(1.0) == 0.0);
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK(std::abs(prob_distortion_square_le(phi) -
                 1.5 * (std::sqrt(5.0) - 2.0)) <= 1e-12);
  CHECK(prob_distortion_square_le(2.0) == doctest::Approx(0.507349).epsilon(2e-5));
  CHECK_THROWS_AS(prob_distortion_square_le(0.5), std::invalid_argument);
}

TEST_CASE("pdf_rect_distance: support and cone-strip derivative") {
  CHECK(pdf_rect_distance(kRectMax) == 0.0);
  CHECK(pdf_rect_distance(0.7) == 0.0);

  // matches the central-difference derivative of area_cone_strip/(pi/3)
  const double h = 1e-6;
  for (double r : {0.05, 0.2, 0.35, 0.5}) {
    const double der =
        (area_cone_strip(r + h) - area_cone_strip(r - h)) / (2.0 * h) *
        (3.0 / kPi);
    CHECK(std::abs(pdf_rect_distance(r) - der) <= 1e-6);
  }

  CHECK(density_mass(rect_distance_density()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("pdf_distortion_rect: support, change of variables, unit mass") {
  CHECK(pdf_distortion_rect(std::sqrt(3.0)) == 0.0);
  CHECK(pdf_distortion_rect(2.0) == 0.0);

  // pdf_K(K) = pdf_rect(log K)/K pointwise
  std::uniform_real_distribution<double> uk(1.0 + 1e-9, std::sqrt(3.0) - 1e-9);
  for (int i = 0; i < 100; ++i) {
    const double K = uk(rng);
    const double via_r = pdf_rect_distance(std::log(K)) / K;
    CHECK(std::abs(pdf_distortion_rect(K) - via_r) <=
          1e-12 * (1.0 + via_r));
  }

  CHECK(density_mass(rect_distortion_density()) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("quadrilateral length density: support, mass, mean") {
  CHECK(pdf_shortest_geodesic_quadrilateral(kQuadMax) > 0.0);
  CHECK(pdf_shortest_geodesic_quadrilateral(kQuadMax + 1e-9) == 0.0);
  CHECK(density_mass(quadrilateral_length_density()) ==
        doctest::Approx(1.0).epsilon(1e-8));
  const MomentReport m = moments(quadrilateral_length_density(), 1e-8);
  CHECK(std::abs(m.mean - 0.984154) <= 1e-4);
}

TEST_CASE("moments: quoted values") {
  const MomentReport sq = moments(square_distance_density(), 1e-7);
  CHECK(std::abs(sq.mean - 1.02498) <= 1e-4);
  CHECK(std::abs(sq.variance - 0.903471) <= 1e-4);

  const MomentReport re = moments(rect_distance_density(), 1e-8);
  CHECK(std::abs(re.mean - 0.135648) <= 1e-5);
  CHECK(std::abs(re.variance - 0.0145996) <= 1e-5);

  const MomentReport kd = moments(rect_distortion_density(), 1e-8);
  CHECK(std::abs(kd.mean - 1.15401) <= 1e-5);
  CHECK(std::abs(kd.variance - 0.0219564) <= 1e-5);

  CHECK(sq.quadrature_tolerance == 1e-7);
  CHECK_THROWS_AS(moments(rect_distance_density(), -1.0), std::invalid_argument);
}

TEST_CASE("closed-form expectations agree with quadrature and sub-terms") {
  const double es = expected_rect_distance_closed();
  CHECK(es == doctest::Approx(0.13564848401739735).epsilon(1e-12));
  CHECK(std::abs(es - moments(rect_distance_density(), 1e-9).mean) <= 1e-8);
  CHECK(std::abs(catalan_constant() - 0.915966) < 5e-7);
  // the Lerch sum is Phi(-1/3, 2, 1/2) = 4 sum (-1)^n/(3^n (2n+1)^2)
  double s = 0.0, p3 = 1.0;
  for (int n = 0; n < 40; ++n) {
    s += (n % 2 ? -1.0 : 1.0) / (p3 * (2 * n + 1) * (2 * n + 1));
    p3 *= 3.0;
  }
  CHECK(lerch_special() == doctest::Approx(4.0 * s).epsilon(1e-15));

  const double ek = expected_distortion_closed();
  CHECK(ek == doctest::Approx(1.1540081867775482).epsilon(1e-12));
  CHECK(std::abs(ek - moments(rect_distortion_density(), 1e-9).mean) <= 1e-8);

  // with Li2 replaced by its defining series (200 terms)
  auto dilog_series = [](double x) {
    double sum = 0.0, p = 1.0;
    for (int n = 1; n <= 200; ++n) {
      p *= x;
      sum += p / (static_cast<double>(n) * n);
    }
    return sum;
  };
  const double ek_series =
      (3.0 / kPi) * (0.25 * dilog_series(1.0 / 9.0) - dilog_series(1.0 / 3.0) +
                     kPi * kPi / 8.0 +
                     std::log(2.0) * (1.0 - std::log(std::sqrt(3.0))));
  CHECK(ek == doctest::Approx(ek_series).epsilon(1e-12));
}

TEST_CASE("every density: nonnegative on its support, nondecreasing cdf") {
  const PiecewiseDensity densities[] = {
      square_distance_density(), rect_distance_density(),
      square_distortion_density(), rect_distortion_density(),
      quadrilateral_length_density()};
  for (const auto& d : densities) {
    const double lo = d.support_lo(), hi = std::min(d.support_hi(), 50.0);
    for (int i = 1; i < 10'000; ++i) {
      const double r = lo + (hi - lo) * i / 10'000.0;
      CHECK(d.pdf(r) >= 0.0);
    }
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double v = d.cdf(lo + (hi - lo) * i / 50.0);
      CHECK(v >= prev - 1e-10);
      CHECK(v <= 1.0 + 1e-10);
      prev = v;
    }
  }
}

TEST_CASE("PiecewiseDensity: structure and evaluation") {
  const PiecewiseDensity sq = square_distance_density();
  CHECK(sq.name() == "square");
  CHECK(sq.pieces().size() == 3);
  const auto bps = sq.interior_breakpoints();
  REQUIRE(bps.size() == 2);
  CHECK(bps[0] == doctest::Approx(kR1));
  CHECK(bps[1] == doctest::Approx(kR2));
  CHECK(sq.pdf(-1.0) == 0.0);
  CHECK(sq.pdf(0.3) == doctest::Approx(pdf_square_distance(0.3)));
  CHECK(sq.cdf(0.3) == doctest::Approx(cdf_square_distance(0.3)));

  // quadrilateral cdf (numeric) is a proper cdf
  const PiecewiseDensity q = quadrilateral_length_density();
  CHECK(q.cdf(0.0) == 0.0);
  CHECK(q.cdf(kQuadMax) == doctest::Approx(1.0).epsilon(1e-8));
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = q.cdf(kQuadMax * i / 20.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}
