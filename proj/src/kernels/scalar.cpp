#include "moduli/kernels/kernel_table.hpp"
#include "moduli/kernels/vmath.hpp"

namespace moduli::kernels {

namespace {

void generate_inverse_scalar(std::uint64_t seed, std::uint64_t first,
                             std::size_t n, double* x, double* y) {
  for (std::size_t j = 0; j < n; ++j)
    vm::inverse_point(seed, first + j, x + j, y + j);
}

std::uint64_t generate_rejection_scalar(std::uint64_t seed, std::uint64_t first,
                                        std::size_t n, double* x, double* y) {
  std::uint64_t proposals = 0;
  for (std::size_t j = 0; j < n; ++j)
    proposals += vm::rejection_point(seed, first + j, x + j, y + j);
  return proposals;
}

void stats_square_scalar(const double* x, const double* y, std::size_t n,
                         double* d, double* k) {
  for (std::size_t j = 0; j < n; ++j) vm::square_stat(x[j], y[j], d + j, k + j);
}

void stats_rect_scalar(const double* x, const double* y, std::size_t n,
                       double* d, double* k) {
  for (std::size_t j = 0; j < n; ++j) vm::rect_stat(x[j], y[j], d + j, k + j);
}

}  // namespace

const KernelTable kScalarKernels = {
    &generate_inverse_scalar,
    &generate_rejection_scalar,
    &stats_square_scalar,
    &stats_rect_scalar,
};

}  // namespace moduli::kernels
