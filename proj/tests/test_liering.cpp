#include <doctest.h>

#include <random>

#include "burnlink/diagram.hpp"
#include "burnlink/error.hpp"
#include "burnlink/liering.hpp"
#include "burnlink/pcgroup.hpp"
#include "burnlink/presentation.hpp"
#include "oracles.hpp"

using namespace burnlink;
using namespace oracle;

namespace {

Word random_word(std::mt19937_64& rng, int r, int max_len) {
  Word w;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const int g = 1 + static_cast<int>(rng() % r);
    w.push_back(rng() % 2 ? g : -g);
  }
  return w;
}

LieElement random_lie(std::mt19937_64& rng, const LieAlgebra& alg, int terms) {
  LieElement e;
  for (int i = 0; i < terms; ++i) {
    const unsigned k = static_cast<unsigned>(rng() % alg.prime());
    if (k == 0) continue;
    LieElement b;
    b.coeffs[static_cast<int>(rng() % alg.basis().size())] = k;
    e = alg.add(e, b);
  }
  return e;
}

AssocElement assoc_combine(const AssocElement& a, const AssocElement& b, unsigned kb, unsigned p) {
  AssocElement r = a;
  for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = static_cast<std::uint8_t>((a.coef[i] + kb * b.coef[i]) % p);
  return r;
}

}  // namespace

TEST_CASE("hall basis sizes") {
  CHECK(HallBasis(2, 2).size() == 3);
  CHECK(HallBasis(2, 3).size() == 5);
  CHECK(HallBasis(4, 2).size() == 10);
  const HallBasis h(2, 2);
  CHECK(h[2].weight == 2);
  CHECK(h.find(1, 0) == 2);
  for (int r = 1; r <= 5; ++r)
    for (int c = 1; c <= 6; ++c) {
      const HallBasis b(r, c);
      std::uint64_t total = 0;
      for (int w = 1; w <= c; ++w) {
        const auto [first, last] = b.weight_range(w);
        CHECK(last - first == witt_oracle(r, w));
        CHECK(witt_number(r, w) == witt_oracle(r, w));
        for (std::size_t i = first; i < last; ++i) CHECK(b[i].weight == w);
        total += witt_oracle(r, w);
      }
      CHECK(b.size() == total);
    }
}

TEST_CASE("hall basis elements are independent in the associative algebra") {
  const LieAlgebra L(3, 4, 5);
  const HallBasis& h = L.basis();
  for (int w = 1; w <= 4; ++w) {
    const auto [first, last] = h.weight_range(w);
    std::vector<std::vector<unsigned>> rows;
    for (std::size_t i = first; i < last; ++i) {
      LieElement e;
      e.coeffs[static_cast<int>(i)] = 1;
      const AssocElement a = L.to_assoc(e);
      rows.emplace_back(a.coef.begin(), a.coef.end());
    }
    CHECK(rank_mod_p(rows, 5) == last - first);
  }
}

TEST_CASE("bracket axioms") {
  const LieAlgebra L(3, 4, 7);
  std::mt19937_64 rng(61);
  const LieElement x = L.generator(0), y = L.generator(1);
  CHECK(L.bracket(x, x).is_zero());
  const LieElement yx = L.bracket(y, x);
  REQUIRE(yx.coeffs.size() == 1);
  CHECK(yx.coeffs.begin()->second == 1);
  CHECK(L.basis()[static_cast<std::size_t>(yx.coeffs.begin()->first)].weight == 2);
  for (int t = 0; t < 1000; ++t) {
    const LieElement a = random_lie(rng, L, 3), b = random_lie(rng, L, 3), c = random_lie(rng, L, 3);
    CHECK(L.bracket(a, a).is_zero());
    CHECK(L.add(L.bracket(a, b), L.bracket(b, a)).is_zero());
    const LieElement jac =
        L.add(L.add(L.bracket(a, L.bracket(b, c)), L.bracket(b, L.bracket(c, a))), L.bracket(c, L.bracket(a, b)));
    CHECK(jac.is_zero());
    CHECK(L.bracket(L.add(a, b), c) == L.add(L.bracket(a, c), L.bracket(b, c)));
    // the bracket is the associative commutator
    const AssocElement A = L.to_assoc(a), B = L.to_assoc(b);
    const AssocElement comm = assoc_combine(L.assoc_mul(A, B), L.assoc_mul(B, A), L.prime() - 1, L.prime());
    CHECK(L.to_assoc(L.bracket(a, b)) == comm);
  }
  // truncation above the class bound
  const LieAlgebra S(2, 2, 5);
  CHECK(S.bracket(S.generator(0), S.bracket(S.generator(1), S.generator(0))).is_zero());
}

TEST_CASE("magnus expansion and log") {
  for (unsigned p : {5u, 7u}) {
    const LieAlgebra L(3, 4, p);
    std::mt19937_64 rng(70 + p);
    for (int t = 0; t < 1000; ++t) {
      const Word u = random_word(rng, 3, 10), v = random_word(rng, 3, 10);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      const LieElement lu = L.magnus_log(u), lv = L.magnus_log(v), luv = L.magnus_log(uv);
      CHECK(luv == bch4(L, lu, lv));
      CHECK(L.magnus(uv) == L.assoc_mul(L.magnus(u), L.magnus(v)));
      // degree one is the exponent-sum vector
      const auto d1 = L.component(luv, 1);
      for (int g = 0; g < 3; ++g) {
        const long long s = exponent_sum(uv, g + 1);
        CHECK(d1[static_cast<std::size_t>(g)] == static_cast<unsigned>(((s % p) + p) % p));
      }
      // the Dynkin map fixes Lie elements
      CHECK(L.dynkin(L.to_assoc(luv)) == luv);
      CHECK(L.dynkin(L.log(L.magnus(uv))) == luv);
    }
  }
}

TEST_CASE("magnus_log examples") {
  const LieAlgebra L(2, 4, 5);
  CHECK(L.magnus_log({1}) == L.generator(0));
  const LieElement l3 = L.magnus_log({1, 1, 1});
  CHECK(l3 == L.scale(L.generator(0), 3));
  CHECK(L.component(l3, 2) == std::vector<std::uint8_t>(1, 0));
  // x^-1 y^-1 x y: degree two is xy - yx
  const LieElement c = L.magnus_log({-1, -2, 1, 2});
  CHECK(L.min_weight(c) == 2);
  const AssocElement a = L.to_assoc(c);
  CHECK(L.coefficient(a, {0, 1}) == 1);
  CHECK(L.coefficient(a, {1, 0}) == 4);
  CHECK(L.coefficient(a, {0}) == 0);
  const auto w2 = L.component(c, 2);
  REQUIRE(w2.size() == 1);
  CHECK(w2[0] == 4);  // -[y, x]

  // p-th powers vanish in every weight
  std::mt19937_64 rng(9);
  for (unsigned p : {5u, 7u}) {
    const LieAlgebra M(3, 4, p);
    for (int t = 0; t < 200; ++t) CHECK(M.magnus_log(power_word(random_word(rng, 3, 6), static_cast<int>(p))).is_zero());
  }
  CHECK_THROWS_AS(magnus_log({1}, 2, 5, 5), InvalidArgument);
  CHECK_THROWS_AS(magnus_log({3}, 2, 5, 4), InvalidArgument);
  CHECK(magnus_log({2}, 2, 5, 4) == L.generator(1));
}

TEST_CASE("engel relations below the prime") {
  // an Engel-(p-1) instance has weight at least p, so nothing survives below class p
  CHECK(engel_quotient_matrix(2, 5, 4).total_rows() == 0);
  CHECK(engel_quotient_matrix(3, 5, 4).total_rows() == 0);
  CHECK(engel_quotient_matrix(2, 7, 6).total_rows() == 0);
  CHECK(engel_quotient_matrix(2, 3, 2).total_rows() == 0);
  CHECK(engel_quotient_matrix(2, 7, 6).by_weight.size() == 6);
  CHECK_THROWS_AS(engel_quotient_matrix(2, 5, 5), InvalidArgument);
  CHECK_THROWS_AS(engel_quotient_matrix(2, 3, 3), InvalidArgument);
}

TEST_CASE("nontriviality certificates") {
  const auto one = nontriviality_certificate({{1}}, 2, 5, 4);
  REQUIRE(one.size() == 1);
  CHECK(one[0].certified);
  CHECK(one[0].weight == 1);
  const auto pw = nontriviality_certificate({power_word({1, 2}, 5)}, 2, 5, 4);
  CHECK_FALSE(pw[0].certified);
  const auto comm = nontriviality_certificate({{-1, -2, 1, 2}}, 2, 5, 4);
  CHECK(comm[0].certified);
  CHECK(comm[0].weight == 2);
  CHECK(nontriviality_certificate({}, 2, 5, 4).empty());
  CHECK_THROWS_AS(nontriviality_certificate({{1}}, 2, 5, 5), InvalidArgument);

  BraidWord b{3, {}};
  for (int k = 0; k < 6; ++k) {
    b.letters.push_back(1);
    b.letters.push_back(2);
  }
  const Presentation d = wada_reduce(core_presentation(braid_closure(b)));
  const auto certs = nontriviality_certificate(d.relators, d.generator_count(), 5, 4);
  bool any = false;
  for (const auto& c : certs) {
    any = any || c.certified;
    if (c.certified) CHECK(c.weight >= 1);
  }
  CHECK(any);
}

TEST_CASE("certificates at p = 3 agree with the exact engines") {
  std::mt19937_64 rng(13);
  std::vector<std::pair<int, Word>> corpus;
  for (const char* w : {"s1 s1 s1", "s1 s2^-1 s1 s2^-1", "s1 s2 s1 s2 s1 s2", "s1 s1 s2^-1 s1 s2^-1",
                        "s1 s2 s3 s1 s2 s3^-1 s2", "s1 s2 s1 s2 s1 s2 s1 s2 s1 s2 s1 s2"}) {
    const Presentation p = wada_reduce(core_presentation(braid_closure(parse_braid(w))));
    if (p.generator_count() > 4) continue;
    for (const auto& r : p.relators) corpus.emplace_back(p.generator_count(), r);
  }
  for (int t = 0; t < 300; ++t) {
    const int r = 2 + static_cast<int>(rng() % 3);
    corpus.emplace_back(r, random_word(rng, r, 12));
  }
  int certified = 0;
  for (const auto& [r, w] : corpus) {
    const auto c = nontriviality_certificate({w}, r, 3, 2);
    if (!c[0].certified) continue;
    ++certified;
    const PcPresentation& g = load_pcp(r == 2 ? "B23" : r == 3 ? "B33" : "B43");
    CHECK_FALSE(g.is_identity(eval_word(g, standard_assignment(g, r), w)));
  }
  CHECK(certified > 100);
}
