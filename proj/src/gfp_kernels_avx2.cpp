// AVX2 variants of the GF(p) byte kernels.  This translation unit is built
// with -mavx2 and must only be entered after a runtime CPU check.
#include "burnlink/gfp_kernels.hpp"

#include <immintrin.h>

#include <array>
#include <cassert>

namespace burnlink::kernels::avx2 {

namespace {

// x -> x mod p for lanes holding x < 2p.
inline __m256i reduce_once(__m256i x, __m256i vp) {
  return _mm256_min_epu8(x, _mm256_sub_epi8(x, vp));
}

// Lookup table of a*x mod p for x in [0, 16), broadcast to both 128-bit halves
// so that vpshufb can multiply 32 residues at once.
inline __m256i product_table(unsigned a, unsigned p) {
  alignas(32) std::array<std::uint8_t, 32> t{};
  for (unsigned x = 0; x < 16; ++x) {
    auto v = static_cast<std::uint8_t>((a * x) % p);
    t[x] = v;
    t[x + 16] = v;
  }
  return _mm256_load_si256(reinterpret_cast<const __m256i*>(t.data()));
}

}  // namespace

void add_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, unsigned p) {
  assert(dst.size() == src.size() && p < 128);
  const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
  std::size_t i = 0;
  for (; i + 32 <= dst.size(); i += 32) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    auto s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(d, reduce_once(_mm256_add_epi8(_mm256_loadu_si256(d), s), vp));
  }
  if (i < dst.size()) scalar::add_mod(dst.subspan(i), src.subspan(i), p);
}

void axpy_mod(std::span<std::uint8_t> dst, unsigned a, std::span<const std::uint8_t> src,
              unsigned p) {
  assert(dst.size() == src.size() && p < 16);
  a %= p;
  if (a == 0) return;
  const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
  const __m256i table = product_table(a, p);
  std::size_t i = 0;
  for (; i + 32 <= dst.size(); i += 32) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    auto s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    auto prod = _mm256_shuffle_epi8(table, s);
    _mm256_storeu_si256(d, reduce_once(_mm256_add_epi8(_mm256_loadu_si256(d), prod), vp));
  }
  if (i < dst.size()) scalar::axpy_mod(dst.subspan(i), a, src.subspan(i), p);
}

void scale_mod(std::span<std::uint8_t> v, unsigned a, unsigned p) {
  assert(p < 16);
  a %= p;
  const __m256i table = product_table(a, p);
  std::size_t i = 0;
  for (; i + 32 <= v.size(); i += 32) {
    auto* d = reinterpret_cast<__m256i*>(v.data() + i);
    _mm256_storeu_si256(d, _mm256_shuffle_epi8(table, _mm256_loadu_si256(d)));
  }
  if (i < v.size()) scalar::scale_mod(v.subspan(i), a, p);
}

bool is_zero(std::span<const std::uint8_t> v) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 32 <= v.size(); i += 32)
    acc = _mm256_or_si256(acc,
                          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + i)));
  if (!_mm256_testz_si256(acc, acc)) return false;
  return scalar::is_zero(v.subspan(i));
}

}  // namespace burnlink::kernels::avx2
