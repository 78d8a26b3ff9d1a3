// AVX2 lane-parallel variants of the batch kernels. Each arithmetic step
// mirrors the scalar sequence in vmath.hpp exactly (same correctly-rounded
// ops in the same order), so outputs are bit-identical to the scalar path.

#include <immintrin.h>

#include "moduli/kernels/kernel_table.hpp"
#include "moduli/kernels/vmath.hpp"

namespace moduli::kernels {

namespace {

namespace vm = moduli::kernels::vm;

// ---- integer helpers (4 lanes of u32 in __m128i) ---------------------------

// Per-lane 32x32 -> 64 multiply by a broadcast constant; returns lo/hi words.
inline void mul32_lohi(__m128i a, __m128i m, __m128i* lo, __m128i* hi) {
  const __m128i even = _mm_mul_epu32(a, m);
  const __m128i odd = _mm_mul_epu32(_mm_srli_epi64(a, 32), m);
  *lo = _mm_blend_epi16(even, _mm_slli_epi64(odd, 32), 0xCC);
  *hi = _mm_blend_epi16(_mm_srli_epi64(even, 32), odd, 0xCC);
}

struct Philox4 {
  __m128i v0, v1, v2, v3;
};

inline Philox4 philox4x32(__m128i c0, __m128i c1, __m128i c2, __m128i c3,
                          std::uint32_t seed_lo, std::uint32_t seed_hi) {
  const __m128i m0 = _mm_set1_epi32(static_cast<int>(vm::kPhiloxM0));
  const __m128i m1 = _mm_set1_epi32(static_cast<int>(vm::kPhiloxM1));
  __m128i k0 = _mm_set1_epi32(static_cast<int>(seed_lo));
  __m128i k1 = _mm_set1_epi32(static_cast<int>(seed_hi));
  const __m128i w0 = _mm_set1_epi32(static_cast<int>(vm::kPhiloxW0));
  const __m128i w1 = _mm_set1_epi32(static_cast<int>(vm::kPhiloxW1));
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 = _mm_add_epi32(k0, w0);
      k1 = _mm_add_epi32(k1, w1);
    }
    __m128i lo0, hi0, lo1, hi1;
    mul32_lohi(c0, m0, &lo0, &hi0);
    mul32_lohi(c2, m1, &lo1, &hi1);
    const __m128i n0 = _mm_xor_si128(_mm_xor_si128(hi1, c1), k0);
    const __m128i n2 = _mm_xor_si128(_mm_xor_si128(hi0, c3), k1);
    c0 = n0;
    c1 = lo1;
    c2 = n2;
    c3 = lo0;
  }
  return {c0, c1, c2, c3};
}

// (hi << 32) | lo, widened to 4 x u64.
inline __m256i join64(__m128i hi, __m128i lo) {
  return _mm256_or_si256(_mm256_slli_epi64(_mm256_cvtepu32_epi64(hi), 32),
                         _mm256_cvtepu32_epi64(lo));
}

// Exact u64 -> double for values < 2^52.
inline __m256d to_double_52(__m256i k) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(k, magic)),
                       _mm256_set1_pd(0x1p52));
}

inline __m256d u01(__m256i bits) {
  const __m256d k = to_double_52(_mm256_srli_epi64(bits, 12));
  return _mm256_mul_pd(_mm256_add_pd(k, _mm256_set1_pd(0.5)),
                       _mm256_set1_pd(0x1p-52));
}

// ---- double-precision math (4 lanes) ---------------------------------------

inline __m256d sin_mpi6(__m256d u) {
  const __m256d t = _mm256_mul_pd(u, u);
  __m256d p = _mm256_set1_pd(-7.647163731819816e-13);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.6059043836821613e-10));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(-2.505210838544172e-8));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(2.7557319223985893e-6));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(-1.984126984126984e-4));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(8.333333333333333e-3));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(-0.16666666666666666));
  return _mm256_fmadd_pd(_mm256_mul_pd(u, t), p, u);
}

inline __m256d log_pos(__m256d w) {
  const __m256i bits = _mm256_castpd_si256(w);
  __m256d k = _mm256_sub_pd(to_double_52(_mm256_srli_epi64(bits, 52)),
                            _mm256_set1_pd(1023.0));
  const __m256i mant = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant);
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(vm::kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  k = _mm256_blendv_pd(k, _mm256_add_pd(k, _mm256_set1_pd(1.0)), big);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s =
      _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d q = _mm256_set1_pd(2.0 / 19.0);
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 17.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 15.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 13.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 11.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 9.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 7.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 5.0));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0 / 3.0));
  const __m256d t = _mm256_fmadd_pd(_mm256_mul_pd(s, z), q,
                                    _mm256_mul_pd(_mm256_set1_pd(2.0), s));
  return _mm256_fmadd_pd(
      k, _mm256_set1_pd(vm::kLn2Hi),
      _mm256_fmadd_pd(k, _mm256_set1_pd(vm::kLn2Lo), t));
}

// ---- batch kernels ----------------------------------------------------------

struct IndexLanes {
  __m128i lo, hi;
};

inline IndexLanes index_lanes(std::uint64_t first) {
  alignas(16) std::uint32_t lo[4], hi[4];
  for (int j = 0; j < 4; ++j) {
    const std::uint64_t idx = first + static_cast<std::uint64_t>(j);
    lo[j] = static_cast<std::uint32_t>(idx);
    hi[j] = static_cast<std::uint32_t>(idx >> 32);
  }
  return {_mm_load_si128(reinterpret_cast<const __m128i*>(lo)),
          _mm_load_si128(reinterpret_cast<const __m128i*>(hi))};
}

void generate_inverse_avx2(std::uint64_t seed, std::uint64_t first,
                           std::size_t n, double* x, double* y) {
  const std::uint32_t slo = static_cast<std::uint32_t>(seed);
  const std::uint32_t shi = static_cast<std::uint32_t>(seed >> 32);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const IndexLanes idx = index_lanes(first + j);
    const Philox4 blk =
        philox4x32(idx.lo, idx.hi, _mm_setzero_si128(),
                   _mm_set1_epi32(static_cast<int>(vm::kPurposeInverse)), slo,
                   shi);
    const __m256d ua = u01(join64(blk.v0, blk.v1));
    const __m256d ub = u01(join64(blk.v2, blk.v3));
    const __m256d u = _mm256_fmadd_pd(ua, _mm256_set1_pd(vm::kPi3),
                                      _mm256_set1_pd(vm::kNegPi6));
    __m256d sx = sin_mpi6(u);
    const __m256d at_edge =
        _mm256_cmp_pd(sx, _mm256_set1_pd(-0.5), _CMP_EQ_OQ);
    sx = _mm256_blendv_pd(sx, _mm256_set1_pd(0.5), at_edge);
    const __m256d ys =
        _mm256_div_pd(_mm256_sqrt_pd(_mm256_fnmadd_pd(sx, sx, one)), ub);
    _mm256_storeu_pd(x + j, sx);
    _mm256_storeu_pd(y + j, ys);
  }
  for (; j < n; ++j) vm::inverse_point(seed, first + j, x + j, y + j);
}

std::uint64_t generate_rejection_avx2(std::uint64_t seed, std::uint64_t first,
                                      std::size_t n, double* x, double* y) {
  const std::uint32_t slo = static_cast<std::uint32_t>(seed);
  const std::uint32_t shi = static_cast<std::uint32_t>(seed >> 32);
  const __m256d one = _mm256_set1_pd(1.0);
  std::uint64_t proposals = 0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const IndexLanes idx = index_lanes(first + j);
    __m128i attempt = _mm_setzero_si128();
    __m256i active = _mm256_set1_epi64x(-1);
    __m256i counts = _mm256_setzero_si256();
    __m256d xs = _mm256_setzero_pd(), ys = _mm256_setzero_pd();
    for (;;) {
      const Philox4 blk = philox4x32(
          idx.lo, idx.hi, attempt,
          _mm_set1_epi32(static_cast<int>(vm::kPurposeRejection)), slo, shi);
      const __m256d px =
          _mm256_sub_pd(u01(join64(blk.v0, blk.v1)), _mm256_set1_pd(0.5));
      const __m256d py = _mm256_div_pd(_mm256_set1_pd(vm::kHalfSqrt3),
                                       u01(join64(blk.v2, blk.v3)));
      const __m256d accept = _mm256_cmp_pd(
          _mm256_fmadd_pd(px, px, _mm256_mul_pd(py, py)), one, _CMP_GE_OQ);
      const __m256d newly =
          _mm256_and_pd(_mm256_castsi256_pd(active), accept);
      xs = _mm256_blendv_pd(xs, px, newly);
      ys = _mm256_blendv_pd(ys, py, newly);
      // active lanes are all-ones (-1); subtracting adds 1 per attempt
      counts = _mm256_sub_epi64(counts, active);
      active = _mm256_andnot_si256(_mm256_castpd_si256(accept), active);
      if (_mm256_testz_si256(active, active)) break;
      attempt = _mm_add_epi32(attempt, _mm_set1_epi32(1));
    }
    alignas(32) std::uint64_t cnt[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(cnt), counts);
    proposals += cnt[0] + cnt[1] + cnt[2] + cnt[3];
    _mm256_storeu_pd(x + j, xs);
    _mm256_storeu_pd(y + j, ys);
  }
  for (; j < n; ++j)
    proposals += vm::rejection_point(seed, first + j, x + j, y + j);
  return proposals;
}

void stats_square_avx2(const double* x, const double* y, std::size_t n,
                       double* d, double* k) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d xs = _mm256_loadu_pd(x + j);
    const __m256d ys = _mm256_loadu_pd(y + j);
    const __m256d dy = _mm256_sub_pd(ys, one);
    const __m256d n2 = _mm256_fmadd_pd(xs, xs, _mm256_mul_pd(dy, dy));
    const __m256d sy = _mm256_sqrt_pd(ys);
    const __m256d h =
        _mm256_div_pd(_mm256_sqrt_pd(n2), _mm256_add_pd(sy, sy));
    const __m256d t =
        _mm256_add_pd(h, _mm256_sqrt_pd(_mm256_fmadd_pd(h, h, one)));
    _mm256_storeu_pd(d + j, _mm256_mul_pd(_mm256_set1_pd(2.0), log_pos(t)));
    _mm256_storeu_pd(k + j, _mm256_mul_pd(t, t));
  }
  for (; j < n; ++j) vm::square_stat(x[j], y[j], d + j, k + j);
}

void stats_rect_avx2(const double* x, const double* y, std::size_t n,
                     double* d, double* k) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d xs = _mm256_and_pd(_mm256_loadu_pd(x + j), absmask);
    const __m256d ys = _mm256_loadu_pd(y + j);
    const __m256d w = _mm256_div_pd(xs, ys);
    const __m256d t =
        _mm256_add_pd(w, _mm256_sqrt_pd(_mm256_fmadd_pd(w, w, one)));
    _mm256_storeu_pd(d + j, log_pos(t));
    _mm256_storeu_pd(k + j, t);
  }
  for (; j < n; ++j) vm::rect_stat(x[j], y[j], d + j, k + j);
}

}  // namespace

const KernelTable kAvx2Kernels = {
    &generate_inverse_avx2,
    &generate_rejection_avx2,
    &stats_square_avx2,
    &stats_rect_avx2,
};

}  // namespace moduli::kernels
