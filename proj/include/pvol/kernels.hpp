#pragma once

#include <cstddef>
#include <cstdint>

namespace pvol::kernels {

/// Inner loops over mask rows exist twice: a scalar reference and an AVX2
/// variant picked at runtime. Both produce bit-identical results; the test
/// suite asserts equivalence on random inputs.
enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_supported(Backend backend);

/// Force a backend (tests use this to compare variants). Throws InputError
/// if the CPU lacks the requested instruction set.
void set_backend(Backend backend);

/// Number of nonzero bytes in [p, p+n).
std::size_t count_nonzero(const std::uint8_t* p, std::size_t n);

/// Number of positions where both inputs are nonzero.
std::size_t count_both(const std::uint8_t* a, const std::uint8_t* b,
                       std::size_t n);

/// Boundary test for one mask row: out[i] = 1 iff row[i] is foreground and at
/// least one 4-neighbour is background. `above`/`below` may be null (image
/// edge); out-of-image counts as background. Inputs hold 0/1 bytes.
void boundary_row(const std::uint8_t* above, const std::uint8_t* row,
                  const std::uint8_t* below, std::size_t n, std::uint8_t* out);

/// Inside-ellipse test for one raster row of pixel centers x_c = c * dx_mm:
/// out[c] = ((x_c - cx) * inv_rx)^2 + ny2 <= 1. ny2 carries the row's
/// vertical term. Evaluation order is fixed so scalar and SIMD agree bitwise.
void ellipse_inside_row(std::size_t n, double dx_mm, double cx, double inv_rx,
                        double ny2, std::uint8_t* out);

namespace detail {

struct KernelTable {
  std::size_t (*count_nonzero)(const std::uint8_t*, std::size_t);
  std::size_t (*count_both)(const std::uint8_t*, const std::uint8_t*,
                            std::size_t);
  void (*boundary_row)(const std::uint8_t*, const std::uint8_t*,
                       const std::uint8_t*, std::size_t, std::uint8_t*);
  void (*ellipse_inside_row)(std::size_t, double, double, double, double,
                             std::uint8_t*);
};

extern const KernelTable scalar_table;
#if defined(PVOL_KERNELS_AVX2)
extern const KernelTable avx2_table;
#endif

}  // namespace detail

}  // namespace pvol::kernels
