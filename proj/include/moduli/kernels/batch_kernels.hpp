#pragma once

#include <cstddef>
#include <cstdint>

namespace moduli::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_supported(Backend b);

/// The backend in use; auto-detected (best supported) on first call.
Backend active_backend();

/// Override the backend (tests, benchmarking). Throws std::invalid_argument
/// if unsupported on this CPU. All backends are bit-identical, so this never
/// changes results.
void set_backend(Backend b);

// Batch sample generation. Sample j of the output arrays is a pure function
// of (seed, first_index + j), so any partition over threads or lanes yields
// identical batches.
void generate_inverse(std::uint64_t seed, std::uint64_t first_index,
                      std::size_t n, double* x, double* y);

/// Returns the total number of proposals consumed.
std::uint64_t generate_rejection(std::uint64_t seed, std::uint64_t first_index,
                                 std::size_t n, double* x, double* y);

// Per-sample derived statistics: distance to the square point / rectangular
// locus and the corresponding extremal distortions K = exp(distance).
void stats_square(const double* x, const double* y, std::size_t n, double* d,
                  double* k);
void stats_rect(const double* x, const double* y, std::size_t n, double* d,
                double* k);

}  // namespace moduli::kernels
