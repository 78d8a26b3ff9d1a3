#include "moduli/sampler.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "moduli/kernels/batch_kernels.hpp"

namespace moduli {

namespace {

unsigned env_thread_cap() {
  const char* env = std::getenv("MODULI_THREADS");
  if (!env) return 0;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 1;
}

unsigned resolve_workers(unsigned requested, std::uint64_t n) {
  unsigned w = requested ? requested : std::thread::hardware_concurrency();
  if (w == 0) w = 1;
  if (const unsigned cap = env_thread_cap(); cap && !requested) w = std::min(w, cap);
  constexpr std::uint64_t kMinChunk = 1 << 16;
  const std::uint64_t max_useful = (n + kMinChunk - 1) / kMinChunk;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, max_useful));
}

// Partition [0, n) and run fn(first, count) on each part.
template <typename Fn>
void parallel_chunks(std::uint64_t n, unsigned workers, Fn fn) {
  if (workers <= 1) {
    fn(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = n / workers;
  const std::uint64_t rem = n % workers;
  std::uint64_t first = 0;
  for (unsigned t = 0; t < workers; ++t) {
    const std::uint64_t len = chunk + (t < rem ? 1 : 0);
    pool.emplace_back([=] { fn(first, len); });
    first += len;
  }
  for (auto& th : pool) th.join();
}

SampleBatch generate(const SamplerConfig& config, unsigned workers) {
  if (config.count < 1)
    throw std::invalid_argument("sample: count must be >= 1");
  const std::uint64_t n = config.count;
  std::vector<double> xs(n), ys(n);
  std::atomic<std::uint64_t> proposals{0};
  const unsigned nw = resolve_workers(workers, n);

  if (config.method == SampleMethod::inverse_transform) {
    parallel_chunks(n, nw, [&](std::uint64_t first, std::uint64_t len) {
      kernels::generate_inverse(config.seed, first, len, xs.data() + first,
                                ys.data() + first);
    });
    proposals = n;
  } else {
    parallel_chunks(n, nw, [&](std::uint64_t first, std::uint64_t len) {
      proposals += kernels::generate_rejection(config.seed, first, len,
                                               xs.data() + first,
                                               ys.data() + first);
    });
  }

  SampleBatch batch;
  batch.config = config;
  batch.proposals = proposals;
  batch.points.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j)
    batch.points.emplace_back(HPoint(xs[j], ys[j]));
  return batch;
}

}  // namespace

const char* method_name(SampleMethod m) {
  return m == SampleMethod::inverse_transform ? "inverse-transform"
                                              : "rejection";
}

SampleMethod method_from_name(const std::string& name) {
  if (name == "inverse-transform") return SampleMethod::inverse_transform;
  if (name == "rejection") return SampleMethod::rejection;
  throw std::invalid_argument("unknown sampling method: " + name);
}

SampleBatch sample(const SamplerConfig& config, unsigned workers) {
  return generate(config, workers);
}

SampleBatch sample_uniform(SamplerConfig config, unsigned workers) {
  config.method = SampleMethod::inverse_transform;
  return generate(config, workers);
}

SampleBatch sample_rejection(SamplerConfig config, unsigned workers) {
  config.method = SampleMethod::rejection;
  return generate(config, workers);
}

BatchStatistics compute_statistics(const SampleBatch& batch) {
  const std::size_t n = batch.points.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = batch.points[j].point.x;
    ys[j] = batch.points[j].point.y;
  }
  BatchStatistics stats;
  stats.d_square.resize(n);
  stats.d_rect.resize(n);
  stats.k_square.resize(n);
  stats.k_rect.resize(n);
  kernels::stats_square(xs.data(), ys.data(), n, stats.d_square.data(),
                        stats.k_square.data());
  kernels::stats_rect(xs.data(), ys.data(), n, stats.d_rect.data(),
                      stats.k_rect.data());
  return stats;
}

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(const SampleBatch& batch, const BatchStatistics& stats,
               std::ostream& out) {
  out << "index,x,y,d_square,d_rect,K_square,K_rect\n";
  for (std::size_t j = 0; j < batch.points.size(); ++j) {
    out << j << ',' << fmt12(batch.points[j].point.x) << ','
        << fmt12(batch.points[j].point.y) << ',' << fmt12(stats.d_square[j])
        << ',' << fmt12(stats.d_rect[j]) << ',' << fmt12(stats.k_square[j])
        << ',' << fmt12(stats.k_rect[j]) << '\n';
  }
}

void write_json(const SampleBatch& batch, const BatchStatistics& stats,
                std::ostream& out) {
  nlohmann::json doc;
  doc["config"] = {{"seed", batch.config.seed},
                   {"count", batch.config.count},
                   {"method", method_name(batch.config.method)}};
  doc["proposals"] = batch.proposals;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t j = 0; j < batch.points.size(); ++j) {
    rows.push_back({{"index", j},
                    {"x", batch.points[j].point.x},
                    {"y", batch.points[j].point.y},
                    {"d_square", stats.d_square[j]},
                    {"d_rect", stats.d_rect[j]},
                    {"K_square", stats.k_square[j]},
                    {"K_rect", stats.k_rect[j]}});
  }
  doc["samples"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace moduli
