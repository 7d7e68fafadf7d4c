// AVX2 variants of the mask kernels. Compiled with -mavx2 in this one
// translation unit; callers reach it through the runtime dispatch table.
// Floating-point paths use plain mul/add (no FMA) so results match the
// scalar reference bit for bit.

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "pvol/kernels.hpp"

namespace pvol::kernels {
namespace {

inline std::uint32_t nonzero_bits(__m256i v) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i is_zero = _mm256_cmpeq_epi8(v, zero);
  return ~static_cast<std::uint32_t>(_mm256_movemask_epi8(is_zero));
}

std::size_t count_nonzero_avx2(const std::uint8_t* p, std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    count += std::popcount(nonzero_bits(v));
  }
  for (; i < n; ++i) count += p[i] != 0;
  return count;
}

std::size_t count_both_avx2(const std::uint8_t* a, const std::uint8_t* b,
                            std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    count += std::popcount(nonzero_bits(va) & nonzero_bits(vb));
  }
  for (; i < n; ++i) count += (a[i] != 0) & (b[i] != 0);
  return count;
}

inline std::uint8_t boundary_at(const std::uint8_t* above,
                                const std::uint8_t* row,
                                const std::uint8_t* below, std::size_t n,
                                std::size_t i) {
  if (!row[i]) return 0;
  const bool up = above ? above[i] != 0 : false;
  const bool down = below ? below[i] != 0 : false;
  const bool left = i > 0 ? row[i - 1] != 0 : false;
  const bool right = i + 1 < n ? row[i + 1] != 0 : false;
  return (up && down && left && right) ? 0 : 1;
}

void boundary_row_avx2(const std::uint8_t* above, const std::uint8_t* row,
                       const std::uint8_t* below, std::size_t n,
                       std::uint8_t* out) {
  if (n == 0) return;
  out[0] = boundary_at(above, row, below, n, 0);
  if (n == 1) return;

  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 1;
  // Interior positions may read row[i-1] and row[i+1] directly.
  for (; above && below && i + 33 <= n; i += 32) {
    const __m256i is_bg = _mm256_cmpeq_epi8(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i)), zero);
    const __m256i up = _mm256_cmpeq_epi8(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above + i)), zero);
    const __m256i down = _mm256_cmpeq_epi8(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(below + i)), zero);
    const __m256i left = _mm256_cmpeq_epi8(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i - 1)),
        zero);
    const __m256i right = _mm256_cmpeq_epi8(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i + 1)),
        zero);
    // any 4-neighbour background <=> or of the "is zero" masks
    const __m256i any_bg = _mm256_or_si256(_mm256_or_si256(up, down),
                                           _mm256_or_si256(left, right));
    const __m256i boundary = _mm256_andnot_si256(is_bg, any_bg);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_and_si256(boundary, one));
  }
  for (; i + 1 < n; ++i) out[i] = boundary_at(above, row, below, n, i);
  if (i < n) out[i] = boundary_at(above, row, below, n, i);
}

void ellipse_inside_row_avx2(std::size_t n, double dx_mm, double cx,
                             double inv_rx, double ny2, std::uint8_t* out) {
  const __m256d dx_v = _mm256_set1_pd(dx_mm);
  const __m256d cx_v = _mm256_set1_pd(cx);
  const __m256d inv_v = _mm256_set1_pd(inv_rx);
  const __m256d ny2_v = _mm256_set1_pd(ny2);
  const __m256d one_v = _mm256_set1_pd(1.0);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // double(i) + lane is exact for integer i, matching double(i + k).
    const __m256d idx =
        _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    const __m256d x = _mm256_mul_pd(idx, dx_v);
    const __m256d t = _mm256_mul_pd(_mm256_sub_pd(x, cx_v), inv_v);
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(t, t), ny2_v);
    const int m = _mm256_movemask_pd(_mm256_cmp_pd(v, one_v, _CMP_LE_OQ));
    out[i + 0] = (m >> 0) & 1;
    out[i + 1] = (m >> 1) & 1;
    out[i + 2] = (m >> 2) & 1;
    out[i + 3] = (m >> 3) & 1;
  }
  for (; i < n; ++i) {
    const double x = static_cast<double>(i) * dx_mm;
    const double t = (x - cx) * inv_rx;
    out[i] = (t * t + ny2 <= 1.0) ? 1 : 0;
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{count_nonzero_avx2, count_both_avx2,
                             boundary_row_avx2, ellipse_inside_row_avx2};
}  // namespace detail

}  // namespace pvol::kernels
