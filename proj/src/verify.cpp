#include "moduli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "moduli/closed_forms.hpp"
#include "moduli/hyperbolic.hpp"
#include "moduli/modular.hpp"
#include "moduli/qc_maps.hpp"
#include "moduli/sampler.hpp"
#include "moduli/special_functions.hpp"

namespace moduli {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty())
    throw std::invalid_argument("EmpiricalCdf: needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& samples,
                   const std::function<double(double)>& cdf) {
  const auto& xs = samples.sorted();
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    worst = std::max(worst, std::abs((static_cast<double>(i) + 1.0) / n - F));
    worst = std::max(worst, std::abs(F - static_cast<double>(i) / n));
  }
  return worst;
}

double ks_distance_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto& xa = a.sorted();
  const auto& xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double t = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= t) ++i;
    while (j < xb.size() && xb[j] <= t) ++j;
    worst = std::max(worst,
                     std::abs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return worst;
}

std::string VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["n"] = n;
  doc["all_pass"] = all_pass;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name},
                    {"target", c.target},
                    {"value", c.value},
                    {"tol", c.tol},
                    {"pass", c.pass},
                    {"provenance", c.provenance}});
  doc["checks"] = std::move(list);
  return doc.dump(2);
}

void VerificationReport::print_table(std::ostream& out) const {
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %16s %16s %10s %6s  %s", "check",
                "target", "value", "tol", "pass", "provenance");
  out << line << '\n';
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-34s %16.9g %16.9g %10.3g %6s  %s",
                  c.name.c_str(), c.target, c.value, c.tol,
                  c.pass ? "ok" : "FAIL", c.provenance.c_str());
    out << line << '\n';
  }
  out << (all_pass ? "all checks passed" : "SOME CHECKS FAILED") << '\n';
}

namespace {

struct Campaign {
  VerificationReport report;

  void add(const std::string& name, double target, double value, double tol,
           const std::string& provenance) {
    VerificationCheck c;
    c.name = name;
    c.target = target;
    c.value = value;
    c.tol = tol;
    c.pass = std::isfinite(value) && std::abs(value - target) <= tol;
    c.provenance = provenance;
    report.checks.push_back(std::move(c));
  }

  void add_upper(const std::string& name, double bound, double value,
                 const std::string& provenance) {
    VerificationCheck c;
    c.name = name;
    c.target = bound;
    c.value = value;
    c.tol = 0.0;
    c.pass = std::isfinite(value) && value <= bound;
    c.provenance = provenance;
    report.checks.push_back(std::move(c));
  }
};

double binom3(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace

VerificationReport run_verification(std::uint64_t seed, std::uint64_t n) {
  if (n < 10'000)
    throw std::invalid_argument("run_verification: n must be >= 10^4");
  Campaign cam;
  cam.report.seed = seed;
  cam.report.n = n;
  const double dn = static_cast<double>(n);
  const double ks_tol = 2.5 / std::sqrt(dn);  // == 0.0025 at n = 10^6

  // ---- Monte Carlo side ----
  const SampleBatch batch = sample_uniform({seed, n});
  const BatchStatistics stats = compute_statistics(batch);

  {
    EmpiricalCdf ecdf(stats.d_square);
    cam.add("ks_square_distance", 0.0,
            ks_distance(ecdf, [](double r) { return cdf_square_distance(r); }),
            ks_tol, "oracle");
  }
  {
    EmpiricalCdf ecdf(stats.d_rect);
    cam.add("ks_rect_distance", 0.0,
            ks_distance(ecdf, [](double r) { return cdf_rect_distance(r); }),
            ks_tol, "oracle");
  }
  cam.add_upper("max_k_rect_le_sqrt3", std::sqrt(3.0) + 1e-12,
                *std::max_element(stats.k_rect.begin(), stats.k_rect.end()),
                "reference");

  {
    double re_pos = 0.0;
    double im_gt[3] = {0, 0, 0};
    const double ts[3] = {1.0, 2.0, 5.0};
    for (const auto& fp : batch.points) {
      if (fp.point.x > 0) re_pos += 1.0;
      for (int i = 0; i < 3; ++i)
        if (fp.point.y > ts[i]) im_gt[i] += 1.0;
    }
    cam.add("frac_re_positive", 0.5, re_pos / dn, binom3(0.5, dn), "oracle");
    for (int i = 0; i < 3; ++i) {
      const double p = 3.0 / (kPi * ts[i]);
      char name[48];
      std::snprintf(name, sizeof name, "frac_im_gt_%g", ts[i]);
      cam.add(name, p, im_gt[i] / dn, binom3(p, dn), "oracle");
    }
  }

  {
    const double p = 1.5 * (std::sqrt(5.0) - 2.0);
    const double logphi = std::log(0.5 * (1.0 + std::sqrt(5.0)));
    double hits = 0.0;
    for (double d : stats.d_square)
      if (d <= logphi) hits += 1.0;
    cam.add("frac_d_square_le_log_phi", p, hits / dn, binom3(p, dn), "reference");
  }

  for (double r : {0.3, 0.7, 1.5}) {
    double hits = 0.0;
    for (double d : stats.d_square)
      if (d <= r) hits += 1.0;
    const double p = cdf_square_distance(r);
    char name[48];
    std::snprintf(name, sizeof name, "cdf_square_mc_r_%g", r);
    cam.add(name, p, hits / dn, binom3(p, dn), "oracle");
  }

  {
    double mean = 0.0;
    for (double d : stats.d_square) mean += d;
    mean /= dn;
    cam.add("mean_d_square", 1.02498, mean,
            3.0 * std::sqrt(0.903471) / std::sqrt(dn), "reference");
  }

  {
    const SampleBatch rej = sample_rejection({seed, n});
    cam.add("rejection_acceptance_rate", kPi * std::sqrt(3.0) / 6.0,
            rej.acceptance_rate(), 0.001 * std::sqrt(1e6 / dn), "oracle");

    const std::size_t m = std::min<std::size_t>(n, 100'000);
    std::vector<double> ya(m), yb(m);
    for (std::size_t i = 0; i < m; ++i) {
      ya[i] = batch.points[i].point.y;
      yb[i] = rej.points[i].point.y;
    }
    const double crit =
        1.628 * std::sqrt((2.0 * m) / (static_cast<double>(m) * m));
    EmpiricalCdf ea(std::move(ya)), eb(std::move(yb));
    cam.add("ks_two_sampler_im", 0.0, ks_distance_two_sample(ea, eb), crit,
            "oracle");
  }

  {
    // log K of the extremal map equals the hyperbolic distance to i.
    const HPoint origin(0.0, 1.0);
    double worst = 0.0;
    const std::size_t m = std::min<std::size_t>(n, 1000);
    for (std::size_t i = 0; i < m; ++i) {
      const HPoint& tau = batch.points[i].point;
      const double lhs = std::log(distortion(extremal_map(tau)));
      worst = std::max(worst, std::abs(lhs - dist_h2(origin, tau)));
    }
    cam.add_upper("extremal_identity_max_err", 1e-12, worst, "reference");
  }

  // ---- quadrature side ----
  const double r1 = std::asinh(0.5);
  const double r2 = std::asinh(1.0 / std::sqrt(3.0));

  cam.add("cdf_square_at_log_phi", 1.5 * (std::sqrt(5.0) - 2.0),
          cdf_square_distance(std::log(0.5 * (1.0 + std::sqrt(5.0)))), 1e-12,
          "reference");
  cam.add("cdf_square_at_log_2", 0.507349, cdf_square_distance(std::log(2.0)),
          1e-5, "reference");
  cam.add("cdf_square_at_log_10", 0.904426,
          cdf_square_distance(std::log(10.0)), 1e-5, "reference");

  cam.add("pdf_square_left_at_r1", 1.5, pdf_square_distance_piece(0, r1),
          1e-10, "reference");
  cam.add("pdf_square_right_at_r1", 1.5, pdf_square_distance_piece(1, r1),
          1e-10, "reference");
  const double bp2 = std::sqrt(3.0) / kPi * std::atan(24.0 / 7.0);
  cam.add("pdf_square_left_at_r2", bp2, pdf_square_distance_piece(1, r2),
          1e-10, "reference");
  cam.add("pdf_square_right_at_r2", bp2, pdf_square_distance_piece(2, r2),
          1e-10, "reference");

  for (double r : {5.0, 6.0, 8.0, 10.0}) {
    char name[48];
    std::snprintf(name, sizeof name, "tail_square_r_%g", r);
    cam.add(name, tail_square(r), pdf_square_distance(r), 1e-6, "reference");
  }

  {
    // derivative of the normalized-area cdf against the printed pdf
    double worst = 0.0;
    const double h = 1e-5;
    for (int i = 0; i <= 60; ++i) {
      const double r = 0.02 + i * 0.05;
      if (std::abs(r - r1) < 1e-3 || std::abs(r - r2) < 1e-3) continue;
      const double der =
          (cdf_square_distance(r + h) - cdf_square_distance(r - h)) / (2 * h);
      worst = std::max(worst, std::abs(der - pdf_square_distance(r)));
    }
    cam.add_upper("cdf_derivative_matches_pdf", 1e-6, worst, "oracle");
  }

  {
    const MomentReport sq = moments(square_distance_density(), 1e-7);
    cam.add("mean_square_quadrature", 1.02498, sq.mean, 1e-4, "reference");
    cam.add("var_square_quadrature", 0.903471, sq.variance, 1e-4, "reference");
    const MomentReport re = moments(rect_distance_density(), 1e-8);
    cam.add("mean_rect_quadrature", 0.135648, re.mean, 1e-5, "reference");
    cam.add("var_rect_quadrature", 0.0145996, re.variance, 1e-5, "reference");
    const MomentReport kd = moments(rect_distortion_density(), 1e-8);
    cam.add("mean_distortion_quadrature", 1.15401, kd.mean, 1e-5, "reference");
    cam.add("var_distortion_quadrature", 0.0219564, kd.variance, 1e-5,
            "reference");
    const MomentReport ql = moments(quadrilateral_length_density(), 1e-8);
    cam.add("mean_quadrilateral", 0.984154, ql.mean, 1e-4, "reference");

    cam.add("closed_rect_mean_vs_quadrature", re.mean,
            expected_rect_distance_closed(), 1e-8, "oracle");
    cam.add("closed_distortion_mean_vs_quadrature", kd.mean,
            expected_distortion_closed(), 1e-8, "oracle");
  }

  {
    auto mass = [](const PiecewiseDensity& d) {
      double total = 0.0;
      for (const auto& piece : d.pieces()) {
        QuadratureOptions opts;
        opts.tol = 1e-10;
        opts.log_singular_left = piece.log_singular_lo;
        total += integrate(piece.pdf, piece.lo, piece.hi, opts).value;
      }
      return total;
    };
    cam.add("mass_square", 1.0, mass(square_distance_density()), 1e-8,
            "oracle");
    cam.add("mass_rect", 1.0, mass(rect_distance_density()), 1e-8, "oracle");
    cam.add("mass_distortion_rect", 1.0, mass(rect_distortion_density()),
            1e-8, "oracle");
    cam.add("mass_quadrilateral", 1.0, mass(quadrilateral_length_density()),
            1e-8, "oracle");
  }

  {
    // closed-form areas against the scanline quadrature oracle
    double worst_ball = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double r = 0.17 * i;
      const double c = std::cosh(r), s = std::sinh(r);
      auto indicator = [&](const HPoint& p) {
        if (std::abs(p.x) > 0.5 || p.x * p.x + p.y * p.y < 1.0) return false;
        const double dx = p.x, dy = p.y - c;
        return dx * dx + dy * dy <= s * s;
      };
      Rect bounds{-0.5, 0.5, 0.5, c + s + 0.1};
      worst_ball = std::max(
          worst_ball, std::abs(area_region(indicator, bounds, 1e-10) -
                               area_ball_cap(r)));
    }
    cam.add_upper("area_ball_cap_vs_oracle", 1e-8, worst_ball, "oracle");

    double worst_strip = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double r = 0.03 * i;  // crosses the artanh(1/2) cutoff
      const double s = std::sinh(r);
      auto indicator = [&](const HPoint& p) {
        if (std::abs(p.x) > 0.5 || p.x * p.x + p.y * p.y < 1.0) return false;
        return std::asinh(std::abs(p.x) / p.y) <= r;
      };
      const double Y = std::max(1e4, 1.0 / s);
      Rect bounds{-0.5, 0.5, 0.5, Y};
      // above Y the cone covers the whole width; add the exact cusp tail
      const double oracle = area_region(indicator, bounds, 1e-10) + 1.0 / Y;
      worst_strip = std::max(worst_strip, std::abs(oracle - area_cone_strip(r)));
    }
    cam.add_upper("area_cone_strip_vs_oracle", 1e-8, worst_strip, "oracle");
  }

  cam.report.all_pass = std::all_of(cam.report.checks.begin(),
                                    cam.report.checks.end(),
                                    [](const auto& c) { return c.pass; });
  return cam.report;
}

}  // namespace moduli
