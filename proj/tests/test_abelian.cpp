#include <doctest.h>

#include <numeric>
#include <random>

#include "burnlink/abelian.hpp"
#include "burnlink/diagram.hpp"
#include "burnlink/error.hpp"
#include "burnlink/presentation.hpp"
#include "burnlink/reproduce.hpp"

using namespace burnlink;

namespace {

using Small = std::vector<std::vector<long long>>;

long long det(const Small& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Small minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: D_k = gcd of k x k minors,
// d_k = D_k / D_{k-1}.  Returns the full diagonal (zeros included).
std::vector<long long> determinantal_diagonal(const Small& m, std::size_t rows, std::size_t cols) {
  std::vector<long long> diag;
  long long prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Small sub;
        for (auto i : r) {
          std::vector<long long> row;
          for (auto j : c) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, std::llabs(det(sub)));
      }
    if (g == 0) {
      for (; k <= std::min(rows, cols); ++k) diag.push_back(0);
      break;
    }
    diag.push_back(g / prev);
    prev = g;
  }
  return diag;
}

AbelianType oracle_type(const Small& m, std::size_t rows, std::size_t cols) {
  const auto diag = determinantal_diagonal(m, rows, cols);
  AbelianType t;
  for (long long d : diag)
    if (d >= 2) t.invariant_factors.push_back(static_cast<long>(d));
  t.free_rank = static_cast<int>(cols) - static_cast<int>(std::count_if(diag.begin(), diag.end(), [](long long d) { return d != 0; }));
  return t;
}

IntMatrix to_int(const Small& m, std::size_t rows, std::size_t cols) {
  IntMatrix r(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(i, j) = static_cast<long>(m[i][j]);
  return r;
}

}  // namespace

TEST_CASE("relation matrices") {
  const IntMatrix a = relation_matrix(Presentation{{"x"}, {{1, 1, 1}}});
  CHECK(a.rows == 1);
  CHECK(a.cols == 1);
  CHECK(a.at(0, 0) == 3);
  const Presentation w = whitehead_half_cabling();
  const IntMatrix m = relation_matrix(w);
  CHECK(m.at(0, 0) == 8);
  CHECK(m.at(0, 1) == -8);
  const IntMatrix e = relation_matrix(Presentation{{"a", "b"}, {}});
  CHECK(e.rows == 0);
  CHECK(e.cols == 2);
}

TEST_CASE("smith normal form on fixed matrices") {
  CHECK(smith_normal_form(to_int({{2, 0}, {0, 2}}, 2, 2)).to_string() == "Z2+Z2");
  CHECK(smith_normal_form(to_int({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, 3)).is_trivial());
  CHECK(smith_normal_form(to_int({{2, 4}, {6, 8}}, 2, 2)).to_string() == "Z2+Z4");
  CHECK(smith_normal_form(IntMatrix(0, 2)).to_string() == "Z+Z");
  const Presentation tref = wada_reduce(core_presentation(braid_closure(parse_braid("s1 s1 s1"))));
  CHECK(abelianization(tref).to_string() == "Z3");
  CHECK(AbelianType{}.to_string() == "0");
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 400; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    Small m(rows, std::vector<long long>(cols));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<long long>(rng() % 13) - 6;
    const AbelianType got = smith_normal_form(to_int(m, rows, cols));
    const AbelianType want = oracle_type(m, rows, cols);
    CHECK(got == want);
    for (std::size_t i = 1; i < got.invariant_factors.size(); ++i)
      CHECK(got.invariant_factors[i] % got.invariant_factors[i - 1] == 0);
  }
}

TEST_CASE("smith normal form is invariant under unimodular changes") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 2 + rng() % 3, cols = 2 + rng() % 3;
    IntMatrix m(rows, cols);
    for (auto& x : m.entries) x = static_cast<long>(rng() % 21) - 10;
    const AbelianType base = smith_normal_form(m);
    IntMatrix p = m;
    for (int op = 0; op < 12; ++op) {
      const long k = static_cast<long>(rng() % 7) - 3;
      if (rng() % 2) {
        const std::size_t a = rng() % rows, b = rng() % rows;
        if (a == b) continue;
        for (std::size_t c = 0; c < cols; ++c) p.at(a, c) += k * p.at(b, c);
      } else {
        const std::size_t a = rng() % cols, b = rng() % cols;
        if (a == b) continue;
        for (std::size_t r = 0; r < rows; ++r) p.at(r, a) += k * p.at(r, b);
      }
    }
    CHECK(smith_normal_form(p) == base);
  }
}

TEST_CASE("smith normal form uses exact arithmetic") {
  IntMatrix m(2, 2);
  m.at(0, 0) = mpz_class("123456789012345678901234567890");
  m.at(1, 1) = mpz_class("987654321098765432109876543210");
  const auto diag = smith_diagonal(m);
  REQUIRE(diag.size() == 2);
  // d1 = gcd, d2 = lcm
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), m.at(0, 0).get_mpz_t(), m.at(1, 1).get_mpz_t());
  mpz_lcm(l.get_mpz_t(), m.at(0, 0).get_mpz_t(), m.at(1, 1).get_mpz_t());
  CHECK(diag[0] == g);
  CHECK(diag[1] == l);
}

TEST_CASE("h1 mod n") {
  CHECK(h1_mod_n(whitehead_half_cabling(), 4).to_string() == "Z4+Z4");
  CHECK(h1_mod_n(Presentation{}, 3).is_trivial());
  for (int k = 1; k <= 4; ++k) {
    Presentation free_group;
    for (int i = 0; i < k - 1; ++i) free_group.generator_names.push_back("g" + std::to_string(i));
    CHECK(h1_mod_n(free_group, 3) == AbelianType::elementary(3, k - 1));
  }
  CHECK(h1_mod_n(Presentation{{"a"}, {{1, 1, 1, 1, 1, 1}}}, 4).to_string() == "Z2");
  CHECK(h1_mod_n(Presentation{{"a"}, {{1, 1, 1, 1, 1, 1, 1, 1}}}, 4).to_string() == "Z4");
  CHECK_THROWS_AS(h1_mod_n(Presentation{}, 1), InvalidArgument);
}

TEST_CASE("cyclic screen") {
  for (const char* w : {"s1 s1 s1", "s1 s2^-1 s1 s2^-1"}) {
    const Presentation p = wada_reduce(core_presentation(braid_closure(parse_braid(w))));
    CHECK(abelianization(p).torsion_order() % 2 == 1);
    CHECK(cyclic_screen(p, 4));
  }
  CHECK_FALSE(cyclic_screen(whitehead_half_cabling(), 4));
  const Presentation hopf = wada_reduce(core_presentation(braid_closure(parse_braid("s1 s1"))));
  CHECK(h1_mod_n(hopf, 2).to_string() == "Z2");
  CHECK(cyclic_screen(hopf, 2));
  CHECK_THROWS_AS(cyclic_screen(hopf, 6), InvalidArgument);
  CHECK(is_prime_power(8));
  CHECK(is_prime_power(9));
  CHECK_FALSE(is_prime_power(12));
  CHECK_FALSE(is_prime_power(1));
}

TEST_CASE("abelian type helpers") {
  CHECK(AbelianType::from_cyclic_orders({2, 3}).to_string() == "Z6");
  CHECK(AbelianType::from_cyclic_orders({4, 6, 0}).to_string() == "Z2+Z12+Z");
  CHECK(AbelianType::elementary(4, 2).to_string() == "Z4+Z4");
  CHECK(AbelianType::elementary(4, 2).torsion_order() == 16);
  CHECK(AbelianType::from_cyclic_orders({1}).is_trivial());
}
