#include "burnlink/abelian.hpp"

#include <algorithm>
#include <utility>

#include "burnlink/error.hpp"

namespace burnlink {

mpz_class AbelianType::torsion_order() const {
  mpz_class n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

std::string AbelianType::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  for (const auto& d : invariant_factors) out += (out.empty() ? "Z" : "+Z") + d.get_str();
  for (int i = 0; i < free_rank; ++i) out += out.empty() ? "Z" : "+Z";
  return out;
}

AbelianType AbelianType::elementary(long n, int k) {
  return from_cyclic_orders(std::vector<mpz_class>(static_cast<std::size_t>(k), mpz_class(n)));
}

AbelianType AbelianType::from_cyclic_orders(std::vector<mpz_class> orders) {
  // Build a diagonal matrix and reuse the Smith form for canonicalization.
  IntMatrix m(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) m.at(i, i) = orders[i];
  return smith_normal_form(m);
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), static_cast<std::size_t>(p.generator_count()));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int x : p.relators[r]) {
      if (x == 0 || std::abs(x) > p.generator_count()) throw InvalidArgument("relator letter out of range");
      m.at(r, static_cast<std::size_t>(std::abs(x) - 1)) += x > 0 ? 1 : -1;
    }
  return m;
}

std::vector<mpz_class> smith_diagonal(const IntMatrix& in) {
  IntMatrix a = in;
  const std::size_t R = a.rows, C = a.cols;
  const std::size_t n = std::min(R, C);
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t c = 0; c < C; ++c) std::swap(a.at(i, c), a.at(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t r = 0; r < R; ++r) std::swap(a.at(r, i), a.at(r, j));
  };
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // pivot of least absolute value in the trailing block
      std::size_t pr = R, pc = C;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c)
          if (sgn(a.at(r, c)) != 0 && (pr == R || mpz_cmpabs(a.at(r, c).get_mpz_t(), a.at(pr, pc).get_mpz_t()) < 0)) {
            pr = r;
            pc = c;
          }
      if (pr == R) {
        std::vector<mpz_class> diag(n);
        for (std::size_t i = 0; i < t; ++i) diag[i] = abs(a.at(i, i));
        return diag;
      }
      swap_rows(t, pr);
      swap_cols(t, pc);
      const mpz_class piv = a.at(t, t);
      bool clean = true;
      mpz_class q;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (sgn(a.at(r, t)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a.at(r, t).get_mpz_t(), piv.get_mpz_t());
        for (std::size_t c = t; c < C; ++c) a.at(r, c) -= q * a.at(t, c);
        if (sgn(a.at(r, t)) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (sgn(a.at(t, c)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a.at(t, c).get_mpz_t(), piv.get_mpz_t());
        for (std::size_t r = t; r < R; ++r) a.at(r, c) -= q * a.at(r, t);
        if (sgn(a.at(t, c)) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row
      std::size_t bad = R;
      for (std::size_t r = t + 1; r < R && bad == R; ++r)
        for (std::size_t c = t + 1; c < C; ++c)
          if (!mpz_divisible_p(a.at(r, c).get_mpz_t(), piv.get_mpz_t())) {
            bad = r;
            break;
          }
      if (bad == R) break;
      for (std::size_t c = t; c < C; ++c) a.at(t, c) += a.at(bad, c);
    }
  }
  std::vector<mpz_class> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = abs(a.at(i, i));
  return diag;
}

AbelianType smith_normal_form(const IntMatrix& m) {
  auto diag = smith_diagonal(m);
  AbelianType t;
  std::size_t nonzero = 0;
  for (const auto& d : diag) {
    if (sgn(d) == 0) continue;
    ++nonzero;
    if (d != 1) t.invariant_factors.push_back(d);
  }
  std::sort(t.invariant_factors.begin(), t.invariant_factors.end());
  t.free_rank = static_cast<int>(m.cols - nonzero);
  return t;
}

AbelianType abelianization(const Presentation& p) { return smith_normal_form(relation_matrix(p)); }

AbelianType h1_mod_n(const Presentation& p, long n) {
  if (n < 2) throw InvalidArgument("modulus must be at least 2");
  const AbelianType z = abelianization(p);
  AbelianType out;
  const mpz_class N = n;
  for (const auto& d : z.invariant_factors) {
    mpz_class g = gcd(d, N);
    if (g != 1) out.invariant_factors.push_back(g);
  }
  for (int i = 0; i < z.free_rank; ++i) out.invariant_factors.push_back(N);
  // gcd with n keeps the divisibility chain
  return out;
}

bool is_prime_power(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      return n == 1;
    }
  return true;
}

bool cyclic_screen(const Presentation& p, long n) {
  if (!is_prime_power(n)) throw InvalidArgument(std::to_string(n) + " is not a prime power");
  return h1_mod_n(p, n).is_cyclic();
}

}  // namespace burnlink
