// moduli: sampling, evaluation and verification of random-lattice statistics.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid options,
// 3 I/O failure, 4 quadrature budget exhausted.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "moduli/closed_forms.hpp"
#include "moduli/fuchsian.hpp"
#include "moduli/sampler.hpp"
#include "moduli/special_functions.hpp"
#include "moduli/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadOptions = 2;
constexpr int kExitIo = 3;
constexpr int kExitBudget = 4;

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Grid {
  double lo = 0.0, hi = 0.0;
  int n = 0;  // n+1 points inclusive
};

Grid parse_grid(const std::string& text) {
  Grid g;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.n) || colon1 != ':' ||
      colon2 != ':' || g.n < 1 || !(g.lo <= g.hi))
    throw CLI::ValidationError("--grid", "expected A:B:N with A <= B, N >= 1");
  return g;
}

moduli::PiecewiseDensity density_by_name(const std::string& name) {
  if (name == "square") return moduli::square_distance_density();
  if (name == "rect") return moduli::rect_distance_density();
  if (name == "distortion-square") return moduli::square_distortion_density();
  if (name == "distortion-rect") return moduli::rect_distortion_density();
  if (name == "quadrilateral") return moduli::quadrilateral_length_density();
  throw CLI::ValidationError("--dist", "unknown distribution: " + name);
}

// Clamp a grid to the density support, warning on stderr.
Grid clamp_grid(Grid g, const moduli::PiecewiseDensity& d) {
  const double lo = d.support_lo(), hi = d.support_hi();
  if (g.lo < lo || g.hi > hi) {
    std::cerr << "warning: grid clamped to support [" << fmt12(lo) << ", "
              << fmt12(hi) << "] of '" << d.name() << "'\n";
    g.lo = std::max(g.lo, lo);
    g.hi = std::min(g.hi, hi);
  }
  return g;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  return out;
}

int run_sample(std::uint64_t n, std::uint64_t seed, const std::string& method,
               const std::string& format, const std::string& out_path) {
  moduli::SamplerConfig config;
  config.seed = seed;
  config.count = n;
  config.method = moduli::method_from_name(method);
  const moduli::SampleBatch batch = moduli::sample(config);
  const moduli::BatchStatistics stats = moduli::compute_statistics(batch);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  if (format == "csv")
    moduli::write_csv(batch, stats, *out);
  else
    moduli::write_json(batch, stats, *out);
  out->flush();
  if (!*out) throw std::ios_base::failure("write failed");
  return kExitOk;
}

int run_eval(const std::string& dist, const std::string& what,
             std::optional<double> r, std::optional<std::string> grid_text,
             const std::string& out_path) {
  const moduli::PiecewiseDensity density = density_by_name(dist);
  auto eval = [&](double v) {
    return what == "pdf" ? density.pdf(v) : density.cdf(v);
  };
  if (r && grid_text)
    throw CLI::ValidationError("--r", "give either --r or --grid, not both");
  if (r) {
    std::cout << fmt12(eval(*r)) << '\n';
    return kExitOk;
  }
  if (!grid_text)
    throw CLI::ValidationError("--r", "one of --r or --grid is required");
  const Grid g = clamp_grid(parse_grid(*grid_text), density);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "r," << what << '\n';
  for (int i = 0; i <= g.n; ++i) {
    const double x = g.lo + (g.hi - g.lo) * i / g.n;
    *out << fmt12(x) << ',' << fmt12(eval(x)) << '\n';
  }
  out->flush();
  if (!*out) throw std::ios_base::failure("write failed");
  return kExitOk;
}

int run_table(const std::string& dist, const std::string& grid_text,
              const std::string& out_path) {
  const moduli::PiecewiseDensity density = density_by_name(dist);
  const Grid g = clamp_grid(parse_grid(grid_text), density);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "r,pdf,cdf\n";
  for (int i = 0; i <= g.n; ++i) {
    const double x = g.lo + (g.hi - g.lo) * i / g.n;
    *out << fmt12(x) << ',' << fmt12(density.pdf(x)) << ','
         << fmt12(density.cdf(x)) << '\n';
  }
  out->flush();
  if (!*out) throw std::ios_base::failure("write failed");
  return kExitOk;
}

int run_moments(const std::string& dist, double tol) {
  if (dist == "distortion-square")
    throw CLI::ValidationError(
        "--dist", "the square-distortion density has no moments (K^-2 tail)");
  const moduli::PiecewiseDensity density = density_by_name(dist);
  const moduli::MomentReport report = moduli::moments(density, tol);
  std::cout << "mean " << fmt12(report.mean) << '\n'
            << "variance " << fmt12(report.variance) << '\n'
            << "quadrature_tolerance " << fmt12(report.quadrature_tolerance)
            << '\n';
  return kExitOk;
}

int run_verify(std::uint64_t n, std::uint64_t seed,
               const std::string& report_path) {
  const moduli::VerificationReport report = moduli::run_verification(seed, n);
  report.print_table(std::cout);
  if (!report_path.empty()) {
    std::ofstream out = open_out(report_path);
    out << report.to_json() << '\n';
    if (!out) throw std::ios_base::failure("write failed");
  }
  return report.all_pass ? kExitOk : kExitVerifyFailed;
}

nlohmann::json complex_json(moduli::Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

int run_group(double r, const std::string& out_path) {
  const moduli::RectangularGroup group = moduli::make_group(r);
  const moduli::IdealQuadrilateral quad = moduli::isometric_circles(group);
  nlohmann::json doc;
  doc["r"] = group.r;
  doc["s"] = group.s;
  auto matrix_json = [](const moduli::MoebiusMap& m) {
    return nlohmann::json::array({complex_json(m.a()), complex_json(m.b()),
                                  complex_json(m.c()), complex_json(m.d())});
  };
  doc["A"] = matrix_json(group.A);
  doc["B"] = matrix_json(group.B);
  doc["commutator_trace"] = complex_json(group.commutator().trace());
  static const char* names[4] = {"ell_f", "ell_f_inv", "ell_g", "ell_g_inv"};
  nlohmann::json circles = nlohmann::json::array();
  for (int i = 0; i < 4; ++i)
    circles.push_back({{"name", names[i]},
                       {"center", complex_json(quad.circles[i].center)},
                       {"radius", quad.circles[i].radius}});
  doc["circles"] = std::move(circles);
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : quad.vertices) vertices.push_back(complex_json(v));
  doc["vertices"] = std::move(vertices);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << doc.dump(2) << '\n';
  out->flush();
  if (!*out) throw std::ios_base::failure("write failed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistics of random lattices and punctured tori"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "draw a reproducible batch");
  std::uint64_t n = 1000, seed = 1;
  std::string method = "inverse-transform", format = "csv", out_path;
  sample->add_option("--n", n, "sample count")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "64-bit seed");
  sample->add_option("--method", method)
      ->check(CLI::IsMember({"inverse-transform", "rejection"}));
  sample->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", out_path, "output path (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a pdf/cdf");
  std::string dist = "square", what = "pdf";
  std::optional<double> r_value;
  std::optional<std::string> grid_text;
  std::string eval_out;
  eval->add_option("--dist", dist)
      ->check(CLI::IsMember({"square", "rect", "distortion-square",
                             "distortion-rect", "quadrilateral"}));
  eval->add_option("--what", what)->check(CLI::IsMember({"pdf", "cdf"}));
  eval->add_option("--r", r_value, "evaluation point");
  eval->add_option("--grid", grid_text, "grid A:B:N (N+1 points inclusive)");
  eval->add_option("--out", eval_out, "CSV output path (grid mode)");

  // moments
  auto* mom = app.add_subcommand("moments", "mean/variance by quadrature");
  std::string mom_dist = "square";
  double mom_tol = 1e-8;
  mom->add_option("--dist", mom_dist)
      ->check(CLI::IsMember(
          {"square", "rect", "distortion-square", "distortion-rect",
           "quadrilateral"}));
  mom->add_option("--tol", mom_tol)->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification campaign");
  std::uint64_t verify_n = 1'000'000, verify_seed = 1;
  std::string report_path;
  verify->add_option("--n", verify_n, "sample count (>= 10^4)");
  verify->add_option("--seed", verify_seed);
  verify->add_option("--report", report_path, "write the JSON report here");

  // group
  auto* group = app.add_subcommand("group", "emit a punctured-torus group");
  double group_r = 1.0;
  std::string group_out;
  group->add_option("--r", group_r, "generator parameter (> 0)");
  group->add_option("--out", group_out, "output path (default stdout)");

  // table
  auto* table = app.add_subcommand("table", "export r,pdf,cdf samples");
  std::string table_dist = "square", table_grid = "0:3:600", table_out;
  table->add_option("--dist", table_dist)
      ->check(CLI::IsMember({"square", "rect", "distortion-square",
                             "distortion-rect", "quadrilateral"}));
  table->add_option("--grid", table_grid, "grid A:B:N");
  table->add_option("--out", table_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadOptions;
  }

  try {
    if (sample->parsed())
      return run_sample(n, seed, method, format, out_path);
    if (eval->parsed())
      return run_eval(dist, what, r_value, grid_text, eval_out);
    if (mom->parsed()) return run_moments(mom_dist, mom_tol);
    if (verify->parsed())
      return run_verify(verify_n, verify_seed, report_path);
    if (group->parsed()) {
      if (!(group_r > 0.0)) {
        std::cerr << "error: --r must be > 0\n";
        return kExitBadOptions;
      }
      return run_group(group_r, group_out);
    }
    if (table->parsed()) return run_table(table_dist, table_grid, table_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadOptions;
  } catch (const moduli::quadrature_budget_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadOptions;
  }
  return kExitBadOptions;
}
