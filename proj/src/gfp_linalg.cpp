#include "burnlink/gfp_linalg.hpp"

#include <algorithm>
#include <cassert>

#include "burnlink/error.hpp"
#include "burnlink/gfp_kernels.hpp"

namespace burnlink::gfp {

unsigned inverse(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) throw InvalidArgument("zero has no inverse mod p");
  unsigned r = 1;
  for (unsigned e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

EchelonBasis::EchelonBasis(std::size_t dim, unsigned p) : dim_(dim), p_(p) {}

void EchelonBasis::reduce(std::span<std::uint8_t> v) const {
  assert(v.size() == dim_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = v[pivots_[r]];
    if (c) kernels::axpy_mod(v, p_ - c, rows_[r], p_);
  }
}

bool EchelonBasis::contains(std::span<const std::uint8_t> v) const {
  std::vector<std::uint8_t> w(v.begin(), v.end());
  reduce(w);
  return kernels::is_zero(w);
}

bool EchelonBasis::insert(std::vector<std::uint8_t> v) {
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
  if (it == v.end()) return false;
  std::size_t col = static_cast<std::size_t>(it - v.begin());
  kernels::scale_mod(v, inverse(v[col], p_), p_);
  // keep earlier rows reduced in the new pivot column
  for (auto& row : rows_) {
    unsigned c = row[col];
    if (c) kernels::axpy_mod(row, p_ - c, v, p_);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(col);
  return true;
}

}  // namespace burnlink::gfp
