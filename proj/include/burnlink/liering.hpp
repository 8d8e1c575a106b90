#pragma once
// Free Lie algebra over GF(p) truncated at a class bound, Hall basis,
// truncated Magnus expansion and Engel-quotient certificates.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "burnlink/gfp_linalg.hpp"
#include "burnlink/presentation.hpp"

namespace burnlink {

struct HallElement {
  int weight = 1;
  int generator = -1;  // 0-based, weight-1 elements only
  int left = -1;       // basis indices of [left, right], left > right
  int right = -1;
};

/// Hall set ordered by weight, then by construction order.
class HallBasis {
 public:
  HallBasis(int r, int c);

  int rank() const { return r_; }
  int class_bound() const { return c_; }
  std::size_t size() const { return elems_.size(); }
  const HallElement& operator[](std::size_t i) const { return elems_[i]; }
  /// Index range [first, last) of the weight-w elements.
  std::pair<std::size_t, std::size_t> weight_range(int w) const;
  /// Index of the basic commutator [a, b], or -1.
  int find(int a, int b) const;
  std::string to_string(std::size_t i) const;

 private:
  int r_, c_;
  std::vector<HallElement> elems_;
  std::vector<std::size_t> starts_;
  std::map<std::pair<int, int>, int> index_;
};

/// Number of Hall basis elements of weight w on r generators.
std::uint64_t witt_number(int r, int w);

/// Sparse GF(p) combination of Hall basis elements; zero coefficients absent.
struct LieElement {
  std::map<int, unsigned> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const LieElement&) const = default;
};

/// Element of the free associative algebra truncated above degree c,
/// stored densely: words of length l occupy a block of r^l coefficients.
struct AssocElement {
  int r = 0;
  int c = 0;
  std::vector<std::uint8_t> coef;

  bool operator==(const AssocElement&) const = default;
};

class LieAlgebra {
 public:
  LieAlgebra(int r, int c, unsigned p);

  const HallBasis& basis() const { return basis_; }
  unsigned prime() const { return p_; }
  int rank() const { return basis_.rank(); }
  int class_bound() const { return basis_.class_bound(); }

  LieElement generator(int g) const;
  LieElement add(const LieElement& a, const LieElement& b) const;
  LieElement scale(const LieElement& a, unsigned k) const;
  LieElement sub(const LieElement& a, const LieElement& b) const;
  /// Hall-normal-form bracket; components above the class bound vanish.
  LieElement bracket(const LieElement& a, const LieElement& b) const;
  /// Weight-w part as a dense vector over the weight-w basis block.
  std::vector<std::uint8_t> component(const LieElement& a, int w) const;
  int min_weight(const LieElement& a) const;

  AssocElement assoc_zero() const;
  AssocElement assoc_one() const;
  AssocElement assoc_mul(const AssocElement& a, const AssocElement& b) const;
  AssocElement to_assoc(const LieElement& a) const;
  /// Image of a group word under x_g -> exp(x_g).
  AssocElement magnus(const Word& w) const;
  AssocElement log(const AssocElement& a) const;
  /// Sum over degrees n of theta(L_n)/n, theta the left-normed bracketing.
  LieElement dynkin(const AssocElement& a) const;
  LieElement magnus_log(const Word& w) const;
  /// Associative coefficient of a word given as 0-based letters.
  std::uint8_t coefficient(const AssocElement& a, const std::vector<int>& word) const;

 private:
  LieElement basis_bracket(int u, int v) const;
  LieElement bracket_basis_right(const LieElement& a, int v) const;
  std::size_t word_offset(int len) const { return offsets_[len]; }

  HallBasis basis_;
  unsigned p_;
  std::vector<std::size_t> offsets_;  // offsets_[l] = start of length-l block
  std::vector<std::size_t> pow_r_;
  std::vector<unsigned> inv_;  // multiplicative inverses mod p
  mutable std::mutex memo_mu_;
  mutable std::map<std::pair<int, int>, LieElement> memo_;
};

/// Convenience wrapper; requires c < p.
LieElement magnus_log(const Word& w, int r, unsigned p, int c);

/// Row spans, weight by weight, of the linearized (p-1)-Engel identity
/// instantiated on Hall basis elements with total weight at most c.
struct EngelRelations {
  std::vector<gfp::EchelonBasis> by_weight;  // index w-1

  std::size_t total_rows() const;
};
EngelRelations engel_quotient_matrix(const LieAlgebra& alg);
EngelRelations engel_quotient_matrix(int r, unsigned p, int c);

struct Certificate {
  bool certified = false;
  int weight = 0;  // least weight with a component outside the Engel span
};

std::vector<Certificate> nontriviality_certificate(const std::vector<Word>& relators, int r, unsigned p, int c);

}  // namespace burnlink
