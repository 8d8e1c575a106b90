#pragma once
// Finite p-groups given by consistent power-commutator presentations.
//
// Generators g_0 .. g_{m-1} (0-based in this API, 1-based in data files)
// satisfy g_i^p = power_rhs(i) and [g_i, g_j] = comm_rhs(i, j) for i > j,
// with right-hand sides in normal form over generators of larger index.
// Commutators are [a, b] = a^-1 b^-1 a b.  Products are computed by
// collection from the left.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "burnlink/abelian.hpp"
#include "burnlink/presentation.hpp"

namespace burnlink {

/// Exponent vector, entries in [0, p).
using PcElement = std::vector<std::uint8_t>;

class PcPresentation {
 public:
  static constexpr int kMaxGenerators = 64;

  PcPresentation(std::string name, unsigned prime, int rank, unsigned exponent, std::vector<int> weights,
                 std::vector<PcElement> power_rhs, std::vector<std::vector<PcElement>> comm_rhs);

  /// Text form: `name`, `prime`, `ngens`, `rank`, `exponent`, `weights`
  /// header lines, then `p <i> = <digits>` and `c <i> <j> = <digits>`.
  static PcPresentation parse(std::string_view text);
  /// (Z_p)^rank, the free Burnside group B(rank, 2) when p = 2.
  static PcPresentation elementary_abelian(unsigned prime, int rank);
  std::string to_text() const;

  const std::string& name() const { return name_; }
  unsigned prime() const { return p_; }
  int size() const { return m_; }
  /// Generators 0 .. rank-1 are the images of free generators.
  int rank() const { return rank_; }
  /// Exponent of the group (a power of p).
  unsigned exponent() const { return exponent_; }
  const std::vector<int>& weights() const { return weights_; }
  const PcElement& power_rhs(int i) const { return power_[i]; }
  const PcElement& comm_rhs(int i, int j) const { return comm_[i][j]; }
  /// p^m; throws EngineTooSmall if it does not fit in 64 bits.
  std::uint64_t order() const;

  PcElement identity() const { return PcElement(m_, 0); }
  PcElement generator(int i) const;
  bool is_identity(const PcElement& a) const;
  /// Index of the first nonzero exponent, size() for the identity.
  int depth(const PcElement& a) const;

  PcElement multiply(const PcElement& a, const PcElement& b) const;
  /// acc <- acc * b
  void multiply_into(PcElement& acc, const PcElement& b) const;
  PcElement inverse(const PcElement& a) const;
  PcElement power(const PcElement& a, long long k) const;
  PcElement commutator(const PcElement& a, const PcElement& b) const;
  /// [[..[x_1, x_2], ..], x_k]; needs k >= 2.
  PcElement left_normed(const std::vector<PcElement>& xs) const;
  /// g^-1 a g
  PcElement conjugate(const PcElement& a, const PcElement& g) const;

  /// Fixed-width base-p packing for hashing.
  std::uint64_t pack(const PcElement& a) const;
  PcElement unpack(std::uint64_t key) const;

  PcElement random_element(std::mt19937_64& rng) const;
  /// Upper bound on collection steps per product, guarding against bad data.
  void set_step_budget(std::uint64_t steps) { step_budget_ = steps; }

 private:
  void mul_gen(std::uint8_t* r, int k, std::uint64_t& steps) const;
  void mul_elem(std::uint8_t* r, const PcElement& e, std::uint64_t& steps) const;
  void validate() const;

  std::string name_;
  unsigned p_;
  int m_;
  int rank_;
  unsigned exponent_;
  std::vector<int> weights_;
  std::vector<PcElement> power_;
  std::vector<std::vector<PcElement>> comm_;
  // derived
  std::vector<std::vector<PcElement>> conj_;  // conj_[j][k] = g_j^{g_k}, j > k
  std::vector<bool> commutes_later_;          // g_k commutes with every g_j, j > k
  std::vector<bool> trivial_central_;         // central with trivial p-th power
  int central_from_;                          // g_i trivially central for all i >= central_from_
  int bits_;
  std::uint64_t step_budget_ = 50'000'000;
};

struct ConsistencyReport {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

/// Overlap tests (g_k g_j) g_i = g_k (g_j g_i) for k > j > i,
/// (g_j^p) g_i = g_j^{p-1} (g_j g_i) and g_j (g_i^p) = (g_j g_i^{p-1}) g_i
/// for j > i, and (g_i^p) g_i = g_i (g_i^p).
ConsistencyReport check_consistency(const PcPresentation& g);
/// Number of elements x with x^exponent != 1, over all elements.
std::uint64_t exponent_violations_exhaustive(const PcPresentation& g);
/// Same over `samples` pseudorandom elements.
std::uint64_t exponent_violations_sampled(const PcPresentation& g, std::size_t samples, std::uint64_t seed);

/// Directory holding the vendored .pcp files: $BURNLINK_DATA_DIR or the
/// build-time default.
std::string data_directory();
/// "B23", "B33", "B43" or "B24"; checked for consistency and exponent on
/// first use and cached.
const PcPresentation& load_pcp(std::string_view name);

/// Sifting table of an induced polycyclic generating sequence.
class InducedPcgs {
 public:
  explicit InducedPcgs(const PcPresentation& g);
  /// Reduce x against the table; identity iff x lies in the subgroup.
  PcElement sift(PcElement x) const;
  bool contains(const PcElement& x) const;
  /// Extend to the smallest subgroup containing x, normal if `normal`.
  void add(const PcElement& x, bool normal);
  /// Table entries ordered by depth, each with leading exponent 1.
  std::vector<PcElement> elements() const;
  int length() const;

 private:
  const PcPresentation* g_;
  std::vector<std::optional<PcElement>> table_;
  std::vector<std::vector<PcElement>> powers_;  // powers_[d][c] = table_[d]^c
};

struct ClosureOptions {
  std::uint64_t element_budget = std::uint64_t{1} << 25;
  /// Assert closure under products, inverses and pc-generator conjugation.
  bool verify = true;
};

struct SubgroupEnum {
  std::unordered_set<std::uint64_t> elements;  // packed exponent vectors
  std::uint64_t order = 1;
  std::vector<PcElement> pcgs;
};

/// Induced pcgs of the normal closure (no enumeration).
std::vector<PcElement> normal_closure_pcgs(const PcPresentation& g, const std::vector<PcElement>& gens);
/// Normal closure enumerated by worklist over a hash set.  Throws
/// EngineTooSmall when the closure exceeds the element budget.
SubgroupEnum normal_closure(const PcPresentation& g, const std::vector<PcElement>& gens,
                            const ClosureOptions& opt = {});

/// Induced pcgs of gamma_1, gamma_2, ... down to the trivial group.
std::vector<std::vector<PcElement>> lower_central_series(const PcPresentation& g);
/// dim gamma_i / gamma_{i+1}; throws DataError if the weights disagree.
std::vector<int> lower_central_layers(const PcPresentation& g);

/// images[i] is the image of presentation generator i+1; empty = unassigned.
using Assignment = std::vector<PcElement>;
PcElement eval_word(const PcPresentation& g, const Assignment& images, const Word& w);
std::vector<PcElement> eval_words(const PcPresentation& g, const Assignment& images, const std::vector<Word>& ws);
/// Assignment sending generator i to g_i for i < rank.
Assignment standard_assignment(const PcPresentation& g, int generators);

/// |G| / |normal closure of the evaluated relators|.
std::uint64_t quotient_order(const PcPresentation& g, const std::vector<Word>& relators, const Assignment& images,
                             const ClosureOptions& opt = {});
std::uint64_t quotient_order(const PcPresentation& g, const std::vector<PcElement>& kernel_gens,
                             const ClosureOptions& opt = {});
AbelianType quotient_abelianization(const PcPresentation& g, const std::vector<Word>& relators,
                                    const Assignment& images);
AbelianType quotient_abelianization(const PcPresentation& g, const std::vector<PcElement>& kernel_gens);

}  // namespace burnlink
