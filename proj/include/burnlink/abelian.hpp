#pragma once
// Abelianization of finitely presented groups via Smith normal form.

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "burnlink/presentation.hpp"

namespace burnlink {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> entries;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  mpz_class& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Z_{d_1} + ... + Z_{d_k} + Z^free_rank with 2 <= d_1 | d_2 | ... | d_k.
struct AbelianType {
  std::vector<mpz_class> invariant_factors;
  int free_rank = 0;

  bool operator==(const AbelianType& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_cyclic() const { return invariant_factors.size() + static_cast<std::size_t>(free_rank) <= 1; }
  /// Order of the torsion part (1 for the trivial group).
  mpz_class torsion_order() const;
  /// "Z4+Z4", "Z3+Z", "0" for the trivial group.
  std::string to_string() const;
  /// (Z_n)^k
  static AbelianType elementary(long n, int k);
  /// Canonical form of a direct sum of cyclic groups (0 = infinite cyclic).
  static AbelianType from_cyclic_orders(std::vector<mpz_class> orders);
};

/// Entry (r, g) is the exponent sum of generator g in relator r.
IntMatrix relation_matrix(const Presentation& p);
AbelianType smith_normal_form(const IntMatrix& m);
/// Diagonal of the Smith form (min(rows, cols) entries, nonnegative).
std::vector<mpz_class> smith_diagonal(const IntMatrix& m);
AbelianType abelianization(const Presentation& p);
/// Cokernel of the relation matrix tensored with Z_n.
AbelianType h1_mod_n(const Presentation& p, long n);
bool is_prime_power(long n);
/// True when h1_mod_n is trivial or cyclic.
bool cyclic_screen(const Presentation& p, long n);

}  // namespace burnlink
