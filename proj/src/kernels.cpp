#include "pvol/kernels.hpp"

#include <atomic>

#include "pvol/errors.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#define PVOL_X86 1
#else
#define PVOL_X86 0
#endif

namespace pvol::kernels {
namespace {

std::size_t count_nonzero_scalar(const std::uint8_t* p, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += p[i] != 0;
  return count;
}

std::size_t count_both_scalar(const std::uint8_t* a, const std::uint8_t* b,
                              std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (a[i] != 0) & (b[i] != 0);
  return count;
}

void boundary_row_scalar(const std::uint8_t* above, const std::uint8_t* row,
                         const std::uint8_t* below, std::size_t n,
                         std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!row[i]) {
      out[i] = 0;
      continue;
    }
    const bool up = above ? above[i] != 0 : false;
    const bool down = below ? below[i] != 0 : false;
    const bool left = i > 0 ? row[i - 1] != 0 : false;
    const bool right = i + 1 < n ? row[i + 1] != 0 : false;
    out[i] = (up && down && left && right) ? 0 : 1;
  }
}

void ellipse_inside_row_scalar(std::size_t n, double dx_mm, double cx,
                               double inv_rx, double ny2, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * dx_mm;
    const double t = (x - cx) * inv_rx;
    out[i] = (t * t + ny2 <= 1.0) ? 1 : 0;
  }
}

bool cpu_has_avx2() {
#if PVOL_X86
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx))
    return (ebx & (1u << 5)) != 0;
#endif
  return false;
}

std::atomic<const detail::KernelTable*> g_active{nullptr};

const detail::KernelTable* pick_default() {
#if defined(PVOL_KERNELS_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table;
#endif
  return &detail::scalar_table;
}

const detail::KernelTable& table() {
  const detail::KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{count_nonzero_scalar, count_both_scalar,
                               boundary_row_scalar, ellipse_inside_row_scalar};
}  // namespace detail

Backend active_backend() {
  return &table() == &detail::scalar_table ? Backend::Scalar : Backend::Avx2;
}

bool backend_supported(Backend backend) {
  if (backend == Backend::Scalar) return true;
#if defined(PVOL_KERNELS_AVX2)
  return cpu_has_avx2();
#else
  return false;
#endif
}

void set_backend(Backend backend) {
  if (!backend_supported(backend))
    throw InputError("requested kernel backend is not available on this CPU");
  if (backend == Backend::Scalar) {
    g_active.store(&detail::scalar_table, std::memory_order_release);
    return;
  }
#if defined(PVOL_KERNELS_AVX2)
  g_active.store(&detail::avx2_table, std::memory_order_release);
#endif
}

std::size_t count_nonzero(const std::uint8_t* p, std::size_t n) {
  return table().count_nonzero(p, n);
}

std::size_t count_both(const std::uint8_t* a, const std::uint8_t* b,
                       std::size_t n) {
  return table().count_both(a, b, n);
}

void boundary_row(const std::uint8_t* above, const std::uint8_t* row,
                  const std::uint8_t* below, std::size_t n,
                  std::uint8_t* out) {
  table().boundary_row(above, row, below, n, out);
}

void ellipse_inside_row(std::size_t n, double dx_mm, double cx, double inv_rx,
                        double ny2, std::uint8_t* out) {
  table().ellipse_inside_row(n, dx_mm, cx, inv_rx, ny2, out);
}

}  // namespace pvol::kernels
