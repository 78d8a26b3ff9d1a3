#pragma once

// Internal: the per-backend function table. Each backend translation unit
// defines one of these; dispatch.cpp selects between them.

#include <cstddef>
#include <cstdint>

namespace moduli::kernels {

struct KernelTable {
  void (*generate_inverse)(std::uint64_t seed, std::uint64_t first,
                           std::size_t n, double* x, double* y);
  std::uint64_t (*generate_rejection)(std::uint64_t seed, std::uint64_t first,
                                      std::size_t n, double* x, double* y);
  void (*stats_square)(const double* x, const double* y, std::size_t n,
                       double* d, double* k);
  void (*stats_rect)(const double* x, const double* y, std::size_t n,
                     double* d, double* k);
};

extern const KernelTable kScalarKernels;
extern const KernelTable kAvx2Kernels;

}  // namespace moduli::kernels
