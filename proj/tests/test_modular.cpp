#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "moduli/modular.hpp"
#include "moduli/sampler.hpp"
#include "moduli/special_functions.hpp"

using namespace moduli;

namespace {

constexpr double kPi = std::numbers::pi;
const HPoint kI(0.0, 1.0);

std::mt19937_64 rng(777);

HPoint random_point(double xmax = 3.0, double ymin = 0.05, double ymax = 5.0) {
  std::uniform_real_distribution<double> ux(-xmax, xmax), uy(ymin, ymax);
  return HPoint(ux(rng), uy(rng));
}

// ---- test-side oracle: integer matrices of word length <= L ----------------

struct IMat {
  long long a, b, c, d;
  bool operator<(const IMat& o) const {
    return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
  }
};

IMat canon(IMat m) {
  // projective sign normalization
  if (m.a < 0 || (m.a == 0 && m.c < 0)) {
    m.a = -m.a;
    m.b = -m.b;
    m.c = -m.c;
    m.d = -m.d;
  }
  return m;
}

IMat mul(const IMat& x, const IMat& y) {
  return canon({x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d});
}

// All elements of PSL(2,Z) expressible as words of length <= L in S, T, T^-1.
std::vector<IMat> group_ball(int L) {
  const IMat S{0, -1, 1, 0}, T{1, 1, 0, 1}, Tinv{1, -1, 0, 1};
  std::set<IMat> seen;
  std::vector<IMat> all, frontier;
  const IMat id = canon({1, 0, 0, 1});
  seen.insert(id);
  all.push_back(id);
  frontier.push_back(id);
  for (int level = 0; level < L; ++level) {
    std::vector<IMat> next;
    for (const IMat& g : frontier)
      for (const IMat& h : {S, T, Tinv}) {
        const IMat gh = mul(h, g);
        if (seen.insert(gh).second) {
          all.push_back(gh);
          next.push_back(gh);
        }
      }
    frontier = std::move(next);
  }
  return all;
}

HPoint apply_imat(const IMat& m, const HPoint& z) {
  return apply_moebius(
      MoebiusMap(static_cast<double>(m.a), static_cast<double>(m.b),
                 static_cast<double>(m.c), static_cast<double>(m.d)),
      z);
}

bool contains_point(const std::vector<HPoint>& pts, double x, double y,
                    double tol = 1e-9) {
  return std::any_of(pts.begin(), pts.end(), [&](const HPoint& p) {
    return std::abs(p.x - x) <= tol && std::abs(p.y - y) <= tol;
  });
}

}  // namespace

TEST_CASE("reduce: translation example i + 5") {
  const ReductionResult res = reduce(HPoint(5.0, 1.0));
  CHECK(res.reduced.point.x == doctest::Approx(0.0));
  CHECK(res.reduced.point.y == doctest::Approx(1.0).epsilon(1e-15));
  // word is T^-5
  CHECK(res.word.a().real() == doctest::Approx(1.0));
  CHECK(res.word.b().real() == doctest::Approx(-5.0));
  CHECK(res.word.c().real() == doctest::Approx(0.0));
  CHECK(res.word.d().real() == doctest::Approx(1.0));
  CHECK(res.steps >= 1);
}

TEST_CASE("reduce: interior example 0.3 + 0.4i") {
  const ReductionResult res = reduce(HPoint(0.3, 0.4));
  CHECK(res.reduced.point.x == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(res.reduced.point.y == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("reduce: boundary convention on |tau| = 1") {
  // e^{2 pi i/3} is T-equivalent to e^{i pi/3}; Re >= 0 is kept on the circle
  const HPoint left(-0.5, std::sqrt(3.0) / 2.0);
  const ReductionResult res = reduce(left);
  CHECK(res.reduced.point.x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.reduced.point.y ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("reduce: idempotent with identity word") {
  for (int i = 0; i < 200; ++i) {
    const ReductionResult first = reduce(random_point());
    const ReductionResult again = reduce(first.reduced.point);
    CHECK(again.steps == 0);
    CHECK(again.reduced.point.x == first.reduced.point.x);
    CHECK(again.reduced.point.y == first.reduced.point.y);
    CHECK(std::abs(again.word.b().real()) == 0.0);
    CHECK(std::abs(again.word.c().real()) == 0.0);
  }
}

TEST_CASE("reduce: word maps input to reduced point, integer entries") {
  for (int i = 0; i < 2000; ++i) {
    const HPoint tau = random_point();
    const ReductionResult res = reduce(tau);
    const HPoint image = apply_moebius(res.word, tau);
    CHECK(std::abs(image.x - res.reduced.point.x) <= 1e-10);
    CHECK(std::abs(image.y - res.reduced.point.y) <= 1e-10);
    for (Complex e : {res.word.a(), res.word.b(), res.word.c(), res.word.d()}) {
      CHECK(e.imag() == 0.0);
      CHECK(e.real() == std::round(e.real()));
    }
  }
}

TEST_CASE("reduce: orbit invariance under random words") {
  const std::vector<IMat> ball = group_ball(10);
  std::uniform_int_distribution<size_t> pick(0, ball.size() - 1);
  for (int i = 0; i < 10'000; ++i) {
    const HPoint tau = random_point(1.0, 0.3, 3.0);
    const HPoint moved = apply_imat(ball[pick(rng)], tau);
    const ReductionResult a = reduce(tau), b = reduce(moved);
    CHECK(std::abs(a.reduced.point.x - b.reduced.point.x) <= 1e-10);
    CHECK(std::abs(a.reduced.point.y - b.reduced.point.y) <= 1e-10);
  }
}

TEST_CASE("orbit_points: generator images") {
  const std::vector<HPoint> o0 = orbit_points(kI, 0);
  CHECK(o0.size() == 1);

  const std::vector<HPoint> o1 = orbit_points(kI, 1);
  CHECK(contains_point(o1, 0.0, 1.0));   // S fixes i
  CHECK(contains_point(o1, 1.0, 1.0));   // T i
  CHECK(contains_point(o1, -1.0, 1.0));  // T^-1 i
  CHECK(o1.size() == 3);

  const std::vector<HPoint> o2 = orbit_points(HPoint(0, 2), 2);
  CHECK(contains_point(o2, 0.0, 2.0));
  CHECK(contains_point(o2, 1.0, 2.0));
  CHECK(contains_point(o2, -1.0, 2.0));
  CHECK(contains_point(o2, 2.0, 2.0));
  CHECK(contains_point(o2, -2.0, 2.0));
  CHECK(contains_point(o2, 0.0, 0.5));  // S (2i)

  // no duplicates within the dedup tolerance
  for (size_t a = 0; a < o2.size(); ++a)
    for (size_t b = a + 1; b < o2.size(); ++b)
      CHECK(std::hypot(o2[a].x - o2[b].x, o2[a].y - o2[b].y) > 1e-9);

  CHECK_THROWS_AS(orbit_points(kI, -1), std::invalid_argument);
}

TEST_CASE("quotient_dist_to_square: anchors") {
  CHECK(quotient_dist_to_square(kI) == 0.0);
  // i/2 is orbit-equivalent to 2i
  CHECK(quotient_dist_to_square(HPoint(0.0, 0.5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("quotient_dist_to_square: orbit brute force at depth 8") {
  const std::vector<HPoint> orbit = orbit_points(kI, 8);
  const SampleBatch batch = sample_uniform({12345, 1000});
  for (const auto& fp : batch.points) {
    double best = 1e300;
    for (const HPoint& q : orbit) best = std::min(best, dist_h2(fp.point, q));
    CHECK(std::abs(quotient_dist_to_square(fp.point) - best) <= 1e-9);
  }
}

TEST_CASE("quotient_dist_to_rect: anchors and bound") {
  CHECK(quotient_dist_to_rect(HPoint(0, 3)) == 0.0);
  const HPoint hex(0.5, std::sqrt(3.0) / 2.0);
  const double bound = std::atanh(0.5);
  CHECK(quotient_dist_to_rect(hex) == doctest::Approx(bound).epsilon(1e-14));

  const SampleBatch batch = sample_uniform({5, 5000});
  for (const auto& fp : batch.points) {
    const double d = quotient_dist_to_rect(fp.point);
    CHECK(d >= 0.0);
    CHECK(d <= bound + 1e-15);
  }
}

TEST_CASE("quotient_dist_to_rect: geodesic-translate brute force at depth 6") {
  const std::vector<IMat> ball = group_ball(6);
  const SampleBatch batch = sample_uniform({54321, 1000});
  for (const auto& fp : batch.points) {
    double best = 1e300;
    for (const IMat& g : ball)
      best = std::min(best, dist_to_imaginary_axis(apply_imat(g, fp.point)));
    CHECK(std::abs(quotient_dist_to_rect(fp.point) - best) <= 1e-9);
  }
}

TEST_CASE("area_ball_cap: anchors and regime continuity") {
  CHECK(area_ball_cap(0.0) == 0.0);
  const double r1 = std::asinh(0.5), r2 = std::asinh(1.0 / std::sqrt(3.0));

  CHECK(area_ball_cap(r1) ==
        doctest::Approx(kPi * (std::sqrt(5.0) / 2.0 - 1.0)).epsilon(1e-14));

  for (double b : {r1, r2}) {
    const double eps = 1e-12;
    CHECK(std::abs(area_ball_cap(b - eps) - area_ball_cap(b + eps)) <= 1e-10);
  }

  // nondecreasing, bounded by pi/3, tends to pi/3
  double prev = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double v = area_ball_cap(0.02 * i);
    CHECK(v >= prev - 1e-14);
    CHECK(v <= kPi / 3.0 + 1e-14);
    prev = v;
  }
  CHECK(area_ball_cap(45.0) == doctest::Approx(kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("area_ball_cap: quadrature oracle at r = 3") {
  const double r = 3.0;
  const double c = std::cosh(r), s = std::sinh(r);
  auto indicator = [&](const HPoint& p) {
    if (std::abs(p.x) > 0.5 || p.x * p.x + p.y * p.y < 1.0) return false;
    const double dy = p.y - c;
    return p.x * p.x + dy * dy <= s * s;
  };
  const double oracle =
      area_region(indicator, Rect{-0.5, 0.5, 0.5, c + s + 0.1}, 1e-10);
  CHECK(std::abs(area_ball_cap(r) - oracle) <= 1e-8);
}

TEST_CASE("area_cone_strip: anchors") {
  CHECK(area_cone_strip(0.0) == 0.0);
  const double rb = std::atanh(0.5);
  CHECK(area_cone_strip(rb) == doctest::Approx(kPi / 3.0).epsilon(1e-15));
  CHECK(area_cone_strip(rb + 0.5) == kPi / 3.0);

  // closed form matches the quadrature oracle at r = 0.3
  const double r = 0.3;
  auto indicator = [&](const HPoint& p) {
    if (std::abs(p.x) > 0.5 || p.x * p.x + p.y * p.y < 1.0) return false;
    return std::asinh(std::abs(p.x) / p.y) <= r;
  };
  const double Y = 1.0 / std::sinh(r);
  const double oracle =
      area_region(indicator, Rect{-0.5, 0.5, 0.5, Y}, 1e-10) + 1.0 / Y;
  CHECK(std::abs(area_cone_strip(r) - oracle) <= 1e-8);
}

TEST_CASE("area_region: fundamental domain, full ball, empty region") {
  auto omega = [](const HPoint& p) {
    return std::abs(p.x) <= 0.5 && p.x * p.x + p.y * p.y >= 1.0;
  };
  const double v = area_region(omega, Rect{-0.5, 0.5, 0.5, 1e6}, 1e-7);
  CHECK(std::abs(v - kPi / 3.0) <= 2e-6);  // 1/y^2 tail above 1e6 is 1e-6

  const EuclideanDisk ball = ball_about_i(1.0);
  auto ball_ind = [&](const HPoint& p) {
    return ball.contains(Complex(p.x, p.y));
  };
  const double s = ball.radius;
  // the full disk pinches to zero-width slices at x = +-sinh r; resolve the
  // slivers with a finer slice scan
  AreaRegionOptions opts;
  opts.tol = 1e-9;
  opts.scan_cells = 4096;
  const double area = area_region(
      ball_ind, Rect{-s - 0.05, s + 0.05, 0.3, ball.center.imag() + s + 0.05},
      opts);
  CHECK(std::abs(area - hyperbolic_disk_area(1.0)) <= 1e-8);

  auto empty = [](const HPoint&) { return false; };
  CHECK(area_region(empty, Rect{0, 1, 1, 2}, 1e-9) == 0.0);
}

TEST_CASE("area_region: budget exhaustion and validation") {
  auto omega = [](const HPoint& p) {
    return std::abs(p.x) <= 0.5 && p.x * p.x + p.y * p.y >= 1.0;
  };
  AreaRegionOptions opts;
  opts.tol = 1e-12;
  opts.max_evaluations = 2000;
  CHECK_THROWS_AS(area_region(omega, Rect{-0.5, 0.5, 0.5, 100.0}, opts),
                  quadrature_budget_error);
  CHECK_THROWS_AS(area_region(omega, Rect{0.5, -0.5, 0.5, 1.0}, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(area_region(omega, Rect{-0.5, 0.5, -1.0, 1.0}, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("FundamentalPoint: validation") {
  CHECK_NOTHROW(FundamentalPoint(HPoint(0.5, 2.0)));
  CHECK_NOTHROW(FundamentalPoint(HPoint(0.0, 1.0)));
  CHECK_THROWS_AS(FundamentalPoint(HPoint(0.0, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(FundamentalPoint(HPoint(0.7, 2.0)), std::invalid_argument);
  CHECK(FundamentalPoint::is_reduced(HPoint(0.2, 1.5)));
  CHECK_FALSE(FundamentalPoint::is_reduced(HPoint(0.49, 0.85)));
}
