#include <doctest.h>

#include <random>
#include <vector>

#include "pvol/kernels.hpp"
#include "support.hpp"

using namespace pvol;

namespace {

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n,
                                       bool binary) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out)
    b = binary ? static_cast<std::uint8_t>(rng() & 1)
               : static_cast<std::uint8_t>(rng() & 0xff);
  return out;
}

}  // namespace

TEST_CASE("count kernels match a naive loop") {
  std::mt19937_64 rng(1);
  for (const std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(31),
                              std::size_t(32), std::size_t(33),
                              std::size_t(100), std::size_t(1000)}) {
    const auto a = random_bytes(rng, n, false);
    const auto b = random_bytes(rng, n, false);
    std::size_t nz = 0, both = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nz += a[i] != 0;
      both += (a[i] != 0) && (b[i] != 0);
    }
    CHECK(kernels::count_nonzero(a.data(), n) == nz);
    CHECK(kernels::count_both(a.data(), b.data(), n) == both);
  }
}

TEST_CASE("ellipse row kernel matches the direct expression") {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 1 + rng() % 200;
    const double dx = test::uniform(rng, 0.1, 1.5);
    const double cx = test::uniform(rng, 0.0, n * dx);
    const double inv_rx = 1.0 / test::uniform(rng, 1.0, 40.0);
    const double ny2 = test::uniform(rng, 0.0, 1.5);
    std::vector<std::uint8_t> out(n, 9);
    kernels::ellipse_inside_row(n, dx, cx, inv_rx, ny2, out.data());
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (static_cast<double>(i) * dx - cx) * inv_rx;
      CHECK(out[i] == ((t * t + ny2 <= 1.0) ? 1 : 0));
    }
  }
}

TEST_CASE("scalar and AVX2 backends agree bit for bit") {
  if (!kernels::backend_supported(kernels::Backend::Avx2)) {
    MESSAGE("AVX2 unavailable; skipping equivalence check");
    return;
  }
  BackendGuard guard;
  std::mt19937_64 rng(3);

  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t n = rng() % 500;
    const auto a = random_bytes(rng, n, iter % 2 == 0);
    const auto b = random_bytes(rng, n, iter % 2 == 0);
    const auto above = random_bytes(rng, n, true);
    const auto below = random_bytes(rng, n, true);
    const double dx = test::uniform(rng, 0.1, 1.2);
    const double cx = test::uniform(rng, 0.0, n * dx);
    const double inv_rx = 1.0 / test::uniform(rng, 0.5, 50.0);
    const double ny2 = test::uniform(rng, 0.0, 2.0);

    kernels::set_backend(kernels::Backend::Scalar);
    const std::size_t nz_s = kernels::count_nonzero(a.data(), n);
    const std::size_t both_s = kernels::count_both(a.data(), b.data(), n);
    std::vector<std::uint8_t> boundary_s(n), inside_s(n);
    kernels::boundary_row(iter % 3 ? above.data() : nullptr, a.data(),
                          iter % 4 ? below.data() : nullptr, n,
                          boundary_s.data());
    kernels::ellipse_inside_row(n, dx, cx, inv_rx, ny2, inside_s.data());

    kernels::set_backend(kernels::Backend::Avx2);
    std::vector<std::uint8_t> boundary_v(n), inside_v(n);
    CHECK(kernels::count_nonzero(a.data(), n) == nz_s);
    CHECK(kernels::count_both(a.data(), b.data(), n) == both_s);
    kernels::boundary_row(iter % 3 ? above.data() : nullptr, a.data(),
                          iter % 4 ? below.data() : nullptr, n,
                          boundary_v.data());
    kernels::ellipse_inside_row(n, dx, cx, inv_rx, ny2, inside_v.data());
    CHECK(boundary_v == boundary_s);
    CHECK(inside_v == inside_s);
  }
}
