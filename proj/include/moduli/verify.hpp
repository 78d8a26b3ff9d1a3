#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace moduli {

/// Right-continuous empirical c.d.f. over a sorted copy of the samples.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double t) const;  // #{x_i <= t} / n
  std::size_t count() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// Two-sided Kolmogorov-Smirnov distance sup |F_n - F|, evaluated at the
/// step jumps.
double ks_distance(const EmpiricalCdf& samples,
                   const std::function<double(double)>& cdf);

/// Two-sample KS distance between two empirical c.d.f.s.
double ks_distance_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

struct VerificationCheck {
  std::string name;
  double target = 0.0;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string provenance;  // "reference" (quoted value) or "oracle" (computed)
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<VerificationCheck> checks;
  bool all_pass = false;

  std::string to_json() const;
  void print_table(std::ostream& out) const;
};

/// Runs every Monte Carlo and quadrature check of the verification campaign
/// at sample size n (>= 10^4). Statistical tolerances scale as sqrt(10^6/n).
/// Individual failures are recorded in the report, never thrown.
VerificationReport run_verification(std::uint64_t seed, std::uint64_t n);

}  // namespace moduli
