#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "moduli/modular.hpp"

namespace moduli {

enum class SampleMethod { inverse_transform, rejection };

const char* method_name(SampleMethod m);
SampleMethod method_from_name(const std::string& name);  // throws on unknown

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::uint64_t count = 1;
  SampleMethod method = SampleMethod::inverse_transform;
};

/// A reproducible batch: sample j depends only on (seed, j), so batches are
/// bit-identical across runs, thread counts and kernel backends.
struct SampleBatch {
  SamplerConfig config;
  std::vector<FundamentalPoint> points;
  std::uint64_t proposals = 0;  // proposals consumed (== count for inverse)

  double acceptance_rate() const {
    return static_cast<double>(points.size()) / static_cast<double>(proposals);
  }
};

/// Per-sample derived statistics (kernel-accelerated).
struct BatchStatistics {
  std::vector<double> d_square;  // distance to the square point
  std::vector<double> d_rect;    // distance to the rectangular locus
  std::vector<double> k_square;  // exp(d_square)
  std::vector<double> k_rect;    // exp(d_rect), always <= sqrt 3
};

/// Draw per config.method; workers = 0 means auto (hardware_concurrency,
/// capped by the MODULI_THREADS environment variable).
SampleBatch sample(const SamplerConfig& config, unsigned workers = 0);

/// Exact inverse-transform sampler for the density (3/pi) / y^2 on Omega.
SampleBatch sample_uniform(SamplerConfig config, unsigned workers = 0);

/// Independent oracle: uniform proposals on the strip y > sqrt(3)/2 accepted
/// on |tau| >= 1; acceptance rate tends to pi sqrt(3)/6.
SampleBatch sample_rejection(SamplerConfig config, unsigned workers = 0);

BatchStatistics compute_statistics(const SampleBatch& batch);

/// CSV columns: index, x, y, d_square, d_rect, K_square, K_rect (12
/// significant digits, LF line endings, header row).
void write_csv(const SampleBatch& batch, const BatchStatistics& stats,
               std::ostream& out);

void write_json(const SampleBatch& batch, const BatchStatistics& stats,
                std::ostream& out);

}  // namespace moduli
