#pragma once
// Vector arithmetic over GF(p) on byte lanes, p < 16.
//
// Each entry is a residue in [0, p).  Every kernel has a portable scalar
// reference and, on x86-64, an AVX2 variant selected at runtime.  The two
// are required to agree bit for bit (see the kernel tests).

#include <cstdint>
#include <span>
#include <string_view>

namespace burnlink::kernels {

enum class Isa { Scalar, Avx2 };

/// Best instruction set supported by the running CPU.
Isa detected_isa();
/// Instruction set currently used by the dispatching entry points.
Isa active_isa();
/// Override dispatch (tests and benchmarks).  Requesting an unsupported ISA
/// falls back to Scalar.
void set_active_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// dst[i] = (dst[i] + src[i]) mod p
void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p);
/// dst[i] = (dst[i] + a * src[i]) mod p
void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p);
/// v[i] = (a * v[i]) mod p
void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p);
bool is_zero(std::span<const std::uint8_t> v);

namespace scalar {
void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p);
void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p);
void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p);
bool is_zero(std::span<const std::uint8_t> v);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define BURNLINK_HAVE_AVX2_KERNELS 1
namespace avx2 {
void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p);
void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p);
void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p);
bool is_zero(std::span<const std::uint8_t> v);
}  // namespace avx2
#endif

}  // namespace burnlink::kernels
