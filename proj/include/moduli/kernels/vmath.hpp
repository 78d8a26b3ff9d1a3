#pragma once

// Scalar reference math for the batch kernels. Every function here is a
// fixed sequence of correctly-rounded operations (+, -, *, /, sqrt, fma) so
// the AVX2 variants can replay the identical sequence lane-wise and produce
// bit-identical results. Do not "simplify" expressions into forms the vector
// code cannot mirror (and keep -ffp-contract=off).

#include <bit>
#include <cmath>
#include <cstdint>

namespace moduli::kernels::vm {

// ---- Philox 4x32-10 counter-based generator --------------------------------

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

struct PhiloxBlock {
  std::uint32_t v0, v1, v2, v3;
};

inline PhiloxBlock philox4x32(std::uint32_t c0, std::uint32_t c1,
                              std::uint32_t c2, std::uint32_t c3,
                              std::uint32_t k0, std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kPhiloxW0;
      k1 += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c2;
    const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
    const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
    const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
  }
  return {c0, c1, c2, c3};
}

// Stream layout: counter = (index lo, index hi, attempt, purpose).
inline constexpr std::uint32_t kPurposeInverse = 0;
inline constexpr std::uint32_t kPurposeRejection = 1;

inline PhiloxBlock sample_block(std::uint64_t seed, std::uint64_t index,
                                std::uint32_t attempt, std::uint32_t purpose) {
  return philox4x32(static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), attempt, purpose,
                    static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32));
}

// ---- uniform (0,1) ----------------------------------------------------------

// (k + 1/2) * 2^-52 with k the top 52 bits: open at both ends, exact ops.
inline double u01(std::uint64_t bits) {
  const double k = static_cast<double>(bits >> 12);
  return (k + 0.5) * 0x1p-52;
}

inline std::uint64_t join64(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

// ---- polynomials -------------------------------------------------------------

// sin(u) for |u| <= pi/6, Taylor through u^15 (relative error ~1 ulp).
inline double sin_mpi6(double u) {
  const double t = u * u;
  double p = -7.647163731819816e-13;
  p = std::fma(p, t, 1.6059043836821613e-10);
  p = std::fma(p, t, -2.505210838544172e-8);
  p = std::fma(p, t, 2.7557319223985893e-6);
  p = std::fma(p, t, -1.984126984126984e-4);
  p = std::fma(p, t, 8.333333333333333e-3);
  p = std::fma(p, t, -0.16666666666666666);
  return std::fma(u * t, p, u);
}

inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // low bits zero
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kSqrt2 = 1.4142135623730951;

// log(w) for w >= 1 (normal): exponent split plus atanh series through s^19.
inline double log_pos(double w) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(w);
  double k = static_cast<double>((bits >> 52)) - 1023.0;
  double m = std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFull) |
                                   0x3FF0000000000000ull);
  if (m > kSqrt2) {
    m = m * 0.5;
    k = k + 1.0;
  }
  const double s = (m - 1.0) / (m + 1.0);
  const double z = s * s;
  double q = 2.0 / 19.0;
  q = std::fma(q, z, 2.0 / 17.0);
  q = std::fma(q, z, 2.0 / 15.0);
  q = std::fma(q, z, 2.0 / 13.0);
  q = std::fma(q, z, 2.0 / 11.0);
  q = std::fma(q, z, 2.0 / 9.0);
  q = std::fma(q, z, 2.0 / 7.0);
  q = std::fma(q, z, 2.0 / 5.0);
  q = std::fma(q, z, 2.0 / 3.0);
  const double t = std::fma(s * z, q, 2.0 * s);
  return std::fma(k, kLn2Hi, std::fma(k, kLn2Lo, t));
}

// ---- per-sample pieces --------------------------------------------------------

inline constexpr double kPi3 = 1.0471975511965976;   // pi/3 rounded
inline constexpr double kNegPi6 = -0.5235987755982988;
inline constexpr double kHalfSqrt3 = 0.8660254037844386;

// Inverse-transform draw: x = sin(u), u uniform on (-pi/6, pi/6);
// y = sqrt(1 - x^2) / v, v uniform on (0, 1).
inline void inverse_point(std::uint64_t seed, std::uint64_t index, double* x,
                          double* y) {
  const PhiloxBlock blk = sample_block(seed, index, 0, kPurposeInverse);
  const double ua = u01(join64(blk.v0, blk.v1));
  const double ub = u01(join64(blk.v2, blk.v3));
  const double u = std::fma(ua, kPi3, kNegPi6);
  double sx = sin_mpi6(u);
  if (sx == -0.5) sx = 0.5;  // keep Re on the (+1/2] side of the convention
  *x = sx;
  *y = std::sqrt(std::fma(-sx, sx, 1.0)) / ub;
}

// Rejection draw on the strip y > sqrt(3)/2; returns the attempt count.
inline std::uint32_t rejection_point(std::uint64_t seed, std::uint64_t index,
                                     double* x, double* y) {
  for (std::uint32_t attempt = 0;; ++attempt) {
    const PhiloxBlock blk =
        sample_block(seed, index, attempt, kPurposeRejection);
    const double px = u01(join64(blk.v0, blk.v1)) - 0.5;
    const double py = kHalfSqrt3 / u01(join64(blk.v2, blk.v3));
    if (std::fma(px, px, py * py) >= 1.0) {
      *x = px;
      *y = py;
      return attempt + 1;
    }
  }
}

// d(tau, i) = 2 asinh(|tau - i| / (2 sqrt(y))) and K = exp(d).
inline void square_stat(double x, double y, double* d, double* k) {
  const double dy = y - 1.0;
  const double n2 = std::fma(x, x, dy * dy);
  const double sy = std::sqrt(y);
  const double h = std::sqrt(n2) / (sy + sy);
  const double t = h + std::sqrt(std::fma(h, h, 1.0));
  *d = 2.0 * log_pos(t);
  *k = t * t;
}

// d(tau, iR) = asinh(|x|/y) and K = exp(d) = |x|/y + sqrt((x/y)^2 + 1).
inline void rect_stat(double x, double y, double* d, double* k) {
  const double w = std::fabs(x) / y;
  const double t = w + std::sqrt(std::fma(w, w, 1.0));
  *d = log_pos(t);
  *k = t;
}

}  // namespace moduli::kernels::vm
