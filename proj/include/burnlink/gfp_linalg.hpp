#pragma once
// Small dense linear algebra over GF(p) on byte rows.

#include <cstdint>
#include <span>
#include <vector>

namespace burnlink::gfp {

unsigned inverse(unsigned a, unsigned p);

/// Row-echelon basis of a subspace of GF(p)^dim.  Rows are kept with a
/// leading 1 in their pivot column and are reduced against earlier pivots.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, unsigned p);

  /// Reduce v against the basis in place.  v is zero afterwards iff it lay
  /// in the span.
  void reduce(std::span<std::uint8_t> v) const;
  bool contains(std::span<const std::uint8_t> v) const;
  /// Add v to the span; returns false if it was already contained.
  bool insert(std::vector<std::uint8_t> v);

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  unsigned prime() const { return p_; }
  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t dim_;
  unsigned p_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace burnlink::gfp
