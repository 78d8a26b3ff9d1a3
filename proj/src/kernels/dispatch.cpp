#include <atomic>
#include <stdexcept>

#include "moduli/kernels/batch_kernels.hpp"
#include "moduli/kernels/kernel_table.hpp"

namespace moduli::kernels {

namespace {

bool cpu_has_avx2() {
#ifdef MODULI_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* avx2_table() {
#ifdef MODULI_HAVE_AVX2
  return &kAvx2Kernels;
#else
  return nullptr;
#endif
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const KernelTable* table() {
  const KernelTable* t = g_table.load(std::memory_order_acquire);
  if (t) return t;
  if (cpu_has_avx2()) {
    g_backend.store(Backend::avx2);
    g_table.store(avx2_table(), std::memory_order_release);
    return avx2_table();
  }
  g_backend.store(Backend::scalar);
  g_table.store(&kScalarKernels, std::memory_order_release);
  return &kScalarKernels;
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() {
  table();
  return g_backend.load();
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument("set_backend: backend not supported on this CPU");
  g_backend.store(b);
  g_table.store(b == Backend::avx2 ? avx2_table() : &kScalarKernels,
                std::memory_order_release);
}

void generate_inverse(std::uint64_t seed, std::uint64_t first, std::size_t n,
                      double* x, double* y) {
  table()->generate_inverse(seed, first, n, x, y);
}

std::uint64_t generate_rejection(std::uint64_t seed, std::uint64_t first,
                                 std::size_t n, double* x, double* y) {
  return table()->generate_rejection(seed, first, n, x, y);
}

void stats_square(const double* x, const double* y, std::size_t n, double* d,
                  double* k) {
  table()->stats_square(x, y, n, d, k);
}

void stats_rect(const double* x, const double* y, std::size_t n, double* d,
                double* k) {
  table()->stats_rect(x, y, n, d, k);
}

}  // namespace moduli::kernels
