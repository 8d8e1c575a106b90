#include "burnlink/gfp_kernels.hpp"

#include <atomic>
#include <cassert>

namespace burnlink::kernels {

namespace scalar {

void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p) {
  assert(dst.size() == src.size());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    unsigned s = dst[i] + src[i];
    dst[i] = static_cast<std::uint8_t>(s >= p ? s - p : s);
  }
}

void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p) {
  assert(dst.size() == src.size());
  a %= p;
  if (a == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = static_cast<std::uint8_t>((dst[i] + a * src[i]) % p);
}

void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p) {
  a %= p;
  for (auto& x : v) x = static_cast<std::uint8_t>((a * x) % p);
}

bool is_zero(std::span<const std::uint8_t> v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

}  // namespace scalar

namespace {

Isa probe() {
#if defined(BURNLINK_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  active().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#ifdef BURNLINK_HAVE_AVX2_KERNELS
#define BURNLINK_DISPATCH(fn, ...)                             \
  do {                                                         \
    if (active_isa() == Isa::Avx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                            \
  } while (0)
#else
#define BURNLINK_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p) {
  BURNLINK_DISPATCH(add_mod, dst, src, p);
}

void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p) {
  BURNLINK_DISPATCH(axpy_mod, dst, a, src, p);
}

void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p) {
  BURNLINK_DISPATCH(scale_mod, v, a, p);
}

bool is_zero(std::span<const std::uint8_t> v) { BURNLINK_DISPATCH(is_zero, v); }

}  // namespace burnlink::kernels
