#include "moduli/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "moduli/special_functions.hpp"

namespace moduli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCircleBand = 1e-13;  // relative band around |tau| = 1

const double kR1 = std::asinh(0.5);            // first breakpoint
const double kR2 = std::asinh(1.0 / std::sqrt(3.0));  // == artanh(1/2)

}  // namespace

bool FundamentalPoint::is_reduced(const HPoint& p, double eps) {
  if (!(p.y > 0.0)) return false;
  if (!(p.x > -0.5 - eps && p.x <= 0.5 + eps)) return false;
  const double r2 = p.x * p.x + p.y * p.y;
  return r2 >= 1.0 - eps;
}

FundamentalPoint::FundamentalPoint(const HPoint& p) : point(p) {
  if (!is_reduced(p))
    throw std::invalid_argument(
        "FundamentalPoint: point is not in the fundamental domain");
}

ReductionResult reduce(const HPoint& tau) {
  double x = tau.x, y = tau.y;
  MoebiusMap word = MoebiusMap::identity();
  int steps = 0;
  constexpr int kMaxSteps = 10'000;

  auto invert = [&] {  // tau -> -1/tau, word <- S * word
    const double r2 = x * x + y * y;
    x = -x / r2;
    y = y / r2;
    word = MoebiusMap::modular_S() * word;
    ++steps;
  };

  for (;;) {
    if (steps > kMaxSteps)
      throw reduction_error("reduce: did not terminate (input degenerate near the real axis)");
    // Shift Re into (-1/2, 1/2]; ceil(x - 1/2) lands ties on +1/2.
    const double n = std::ceil(x - 0.5);
    if (n != 0.0) {
      x -= n;
      word = MoebiusMap::translation(-n) * word;
      ++steps;
    }
    const double r2 = x * x + y * y;
    if (r2 < 1.0 - kCircleBand) {
      invert();
      continue;
    }
    // On the unit circle keep the Re >= 0 representative.
    if (r2 <= 1.0 + kCircleBand && x < 0.0) invert();
    break;
  }
  ReductionResult res;
  res.reduced = FundamentalPoint(HPoint(x, y));
  res.word = word;
  res.steps = steps;
  return res;
}

std::vector<HPoint> orbit_points(const HPoint& base, int max_word_len) {
  if (max_word_len < 0)
    throw std::invalid_argument("orbit_points: max_word_len must be >= 0");
  constexpr double kTol = 1e-9;

  std::set<std::pair<double, double>> seen;
  auto lookup_insert = [&](double x, double y) {
    auto it = seen.lower_bound({x - kTol, -1e308});
    for (; it != seen.end() && it->first <= x + kTol; ++it)
      if (std::abs(it->second - y) <= kTol) return false;
    seen.insert({x, y});
    return true;
  };

  std::vector<HPoint> points;
  std::vector<HPoint> frontier;
  lookup_insert(base.x, base.y);
  points.push_back(base);
  frontier.push_back(base);

  const MoebiusMap gens[3] = {MoebiusMap::modular_S(), MoebiusMap::modular_T(),
                              MoebiusMap::modular_T().inverse()};
  for (int level = 0; level < max_word_len; ++level) {
    std::vector<HPoint> next;
    for (const HPoint& p : frontier)
      for (const MoebiusMap& g : gens) {
        const HPoint q = apply_moebius(g, p);
        if (lookup_insert(q.x, q.y)) {
          points.push_back(q);
          next.push_back(q);
        }
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return points;
}

double quotient_dist_to_square(const HPoint& tau) {
  return dist_h2(reduce(tau).reduced.point, HPoint(0.0, 1.0));
}

double quotient_dist_to_rect(const HPoint& tau) {
  const HPoint p = reduce(tau).reduced.point;
  return std::asinh(std::abs(p.x) / p.y);
}

double area_ball_cap(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("area_ball_cap: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double sh = std::sinh(0.5 * r);
  const double half_disk = 2.0 * kPi * sh * sh;
  if (r <= kR1) return half_disk;
  const double c = std::cosh(r);
  if (r <= kR2) {
    // subtract the two side lobes beyond |Re z| = 1/2
    const double c2 = std::cosh(2.0 * r);
    const double q = std::sqrt(std::max(2.0 * c2 - 3.0, 0.0));
    const double lobes =
        2.0 * c * std::atan(4.0 * c * q / (7.0 - 3.0 * c2)) - 4.0 * std::atan(q);
    return half_disk - lobes;
  }
  // pi/3 minus the cusp region above the ball:
  //   2 * int_0^{1/2} dx / (cosh r + sqrt(sinh^2 r - x^2))
  // evaluated in closed form. Beyond r = 40 the remainder equals e^{-r} to
  // double precision.
  if (r >= 40.0) return kPi / 3.0 - std::exp(-r);
  const double s = std::sinh(r);
  const double t0 = std::asin(1.0 / (2.0 * s));
  return kPi / 3.0 - 2.0 * t0 +
         4.0 * c * std::atan(std::exp(-r) * std::tan(0.5 * t0));
}

double area_cone_strip(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("area_cone_strip: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double t = std::tanh(r);
  if (t >= 0.5) return kPi / 3.0;
  const double s = std::sinh(r);
  return 2.0 * std::atan(s) + 2.0 * s * std::log(1.0 / (2.0 * t));
}

namespace {

// Measure (in t = 1/y) of the indicator's true set along one vertical slice.
class SliceMeasure {
 public:
  SliceMeasure(const std::function<bool(const HPoint&)>& indicator,
               const Rect& bounds, const AreaRegionOptions& opts,
               std::uint64_t* evals)
      : indicator_(indicator), opts_(opts), evals_(evals) {
    tlo_ = 1.0 / bounds.yhi;
    thi_ = 1.0 / bounds.ylo;
  }

  double operator()(double x) const {
    const int n = opts_.scan_cells;
    const double dt = (thi_ - tlo_) / n;
    double measure = 0.0;
    bool prev = probe(x, tlo_);
    double run_start = prev ? tlo_ : 0.0;
    for (int i = 1; i <= n; ++i) {
      const double t = (i == n) ? thi_ : tlo_ + i * dt;
      const bool cur = probe(x, t);
      if (cur != prev) {
        const double tc = bisect(x, t - dt, t, prev);
        if (prev)
          measure += tc - run_start;
        else
          run_start = tc;
        prev = cur;
      }
    }
    if (prev) measure += thi_ - run_start;
    return measure;
  }

 private:
  bool probe(double x, double t) const {
    if (++*evals_ > opts_.max_evaluations)
      throw quadrature_budget_error("area_region: evaluation budget exhausted");
    return indicator_(HPoint(x, 1.0 / t));
  }

  // Refine one indicator flip inside (ta, tb] down to the last bit.
  double bisect(double x, double ta, double tb, bool va) const {
    for (int i = 0; i < 80; ++i) {
      const double tm = 0.5 * (ta + tb);
      if (tm <= ta || tm >= tb) break;
      if (probe(x, tm) == va)
        ta = tm;
      else
        tb = tm;
    }
    return 0.5 * (ta + tb);
  }

  const std::function<bool(const HPoint&)>& indicator_;
  const AreaRegionOptions& opts_;
  std::uint64_t* evals_;
  double tlo_, thi_;
};

}  // namespace

double area_region(const std::function<bool(const HPoint&)>& indicator,
                   const Rect& bounds, const AreaRegionOptions& opts) {
  if (!(bounds.xlo < bounds.xhi) || !(bounds.ylo > 0.0) ||
      !(bounds.ylo < bounds.yhi))
    throw std::invalid_argument("area_region: invalid bounds rectangle");
  if (!(opts.tol > 0)) throw std::invalid_argument("area_region: tol must be > 0");

  std::uint64_t evals = 0;
  SliceMeasure slice(indicator, bounds, opts, &evals);

  QuadratureOptions qopts;
  qopts.tol = 0.5 * opts.tol;
  qopts.max_evaluations = 4'000'000;  // slice evaluations, not indicator calls
  const QuadratureResult res = integrate(
      [&](double x) { return slice(x); }, bounds.xlo, bounds.xhi, qopts);
  return res.value;
}

double area_region(const std::function<bool(const HPoint&)>& indicator,
                   const Rect& bounds, double tol) {
  AreaRegionOptions opts;
  opts.tol = tol;
  return area_region(indicator, bounds, opts);
}

}  // namespace moduli
