#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "burnlink/abelian.hpp"
#include "burnlink/diagram.hpp"
#include "burnlink/error.hpp"
#include "burnlink/presentation.hpp"
#include "oracles.hpp"

using namespace burnlink;
using namespace oracle;

namespace {

// Cycle count of the strand permutation, composing one transposition per letter.
int permutation_cycles(const BraidWord& b) {
  std::vector<int> pos(b.strands);
  std::iota(pos.begin(), pos.end(), 0);  // pos[strand] = current position
  for (int l : b.letters) {
    const int i = std::abs(l) - 1;
    for (int& p : pos) {
      if (p == i)
        p = i + 1;
      else if (p == i + 1)
        p = i;
    }
  }
  std::vector<bool> seen(b.strands, false);
  int cycles = 0;
  for (int s = 0; s < b.strands; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int x = s; !seen[x]; x = pos[x]) seen[x] = true;
  }
  return cycles;
}

void check_arc_incidence(const LinkDiagram& d) {
  std::map<int, int> ins, outs;
  for (const auto& c : d.crossings()) {
    ++ins[c.under_in];
    ++outs[c.under_out];
    CHECK(c.over >= 1);
    CHECK(c.over <= d.arc_count());
  }
  for (int a = 1; a <= d.arc_count(); ++a) {
    CHECK(ins[a] <= 1);
    CHECK(outs[a] <= 1);
    CHECK(ins[a] == outs[a]);
  }
}

}  // namespace

TEST_CASE("braid parsing") {
  const BraidWord d34 = parse_braid("s1 s2 s1 s2 s1 s2 s1 s2 s1 s2 s1 s2", 3);
  CHECK(d34.strands == 3);
  CHECK(d34.letters == std::vector<int>{1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2});
  const BraidWord id = parse_braid("", 2);
  CHECK(id.strands == 2);
  CHECK(id.letters.empty());
  const BraidWord lit = parse_braid("s1^-1 s1");
  CHECK(lit.strands == 2);
  CHECK(lit.letters == std::vector<int>{-1, 1});
  CHECK(parse_braid("strands=4\ns1 s3^-1").strands == 4);
  CHECK_THROWS_AS(parse_braid("s0"), ParseError);
  CHECK_THROWS_AS(parse_braid("s1 t2"), ParseError);
  CHECK_THROWS_AS(parse_braid("s1^2"), ParseError);
  CHECK_THROWS(parse_braid("strands=2 s3"));
  CHECK_THROWS(parse_braid("strands=3 s1", 4));
}

TEST_CASE("braid print/parse round trip") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    BraidWord b;
    b.strands = 2 + static_cast<int>(rng() % 5);
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      const int g = 1 + static_cast<int>(rng() % (b.strands - 1));
      b.letters.push_back(rng() % 2 ? g : -g);
    }
    CHECK(parse_braid(print_braid(b)) == b);
  }
}

TEST_CASE("braid closure crossing and component counts") {
  BraidWord d54{5, {}};
  for (int k = 0; k < 10; ++k)
    for (int g = 1; g <= 4; ++g) d54.letters.push_back(g);
  const LinkDiagram c = braid_closure(d54);
  CHECK(c.crossing_count() == 40);
  CHECK(permutation_cycles(d54) == 5);
  CHECK(component_count(c) == 5);

  const LinkDiagram u2 = braid_closure(BraidWord{2, {}});
  CHECK(u2.crossing_count() == 0);
  CHECK(component_count(u2) == 2);

  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    BraidWord b;
    b.strands = 1 + static_cast<int>(rng() % 6);
    const int len = b.strands == 1 ? 0 : static_cast<int>(rng() % 15);
    for (int i = 0; i < len; ++i) {
      const int g = 1 + static_cast<int>(rng() % (b.strands - 1));
      b.letters.push_back(rng() % 2 ? g : -g);
    }
    const LinkDiagram d = braid_closure(b, t % 2 == 0);
    CHECK(d.crossing_count() == static_cast<int>(b.letters.size()));
    CHECK(component_count(d) == permutation_cycles(b));
    check_arc_incidence(d);
  }
}

TEST_CASE("standard small diagrams") {
  const LinkDiagram hopf = braid_closure(parse_braid("s1 s1"));
  CHECK(component_count(hopf) == 2);
  CHECK(hopf.crossing_count() == 2);
  const LinkDiagram trefoil = braid_closure(parse_braid("s1 s1 s1"));
  CHECK(component_count(trefoil) == 1);
  CHECK(trefoil.arc_count() == 3);
}

TEST_CASE("PD parse/print round trip keeps sites and group") {
  std::mt19937_64 rng(23);
  for (const char* w : {"s1 s2^-1 s1 s2^-1 s1 s2^-1", "s1 s1 s1", "s1 s1", "s1 s2 s1 s2 s1 s2"}) {
    LinkDiagram d = braid_closure(parse_braid(w), true);
    for (int step = 0; step < 6; ++step) {
      const LinkDiagram back = parse_pd(print_pd(d));
      CHECK(print_pd(back) == print_pd(d));
      CHECK(back.marked_sites() == d.marked_sites());
      CHECK(core_presentation(back) == core_presentation(d));
      const auto& sites = d.marked_sites();
      const MoveSite s = sites[rng() % sites.size()];
      d = apply_pq_move(d, s, 2 + static_cast<long long>(rng() % 3), 1);
    }
  }
}

TEST_CASE("PD parser rejects malformed input") {
  CHECK_THROWS_AS(parse_pd(R"({"arc_count":1,"crossings":[],"bogus":1})"), ParseError);
  CHECK_THROWS(parse_pd(R"({"arc_count":2,"crossings":[[1,2,3]]})"));
  CHECK_THROWS(parse_pd(R"({"arc_count":2,"crossings":[[1,1,2],[2,1,2]]})"));
  CHECK_THROWS(parse_pd("not json"));
  const LinkDiagram u = parse_pd(R"({"arc_count":0,"crossings":[],"free_components":2})");
  CHECK(component_count(u) == 2);
  CHECK(u.generator_count() == 2);
}

TEST_CASE("slopes of Conway tangles") {
  CHECK(conway_slope(RationalTangleSpec{{2, 1, 1}}) == Slope::make(5, 3));
  CHECK_FALSE(tangles_equivalent(RationalTangleSpec{{2, 1, 1}}, RationalTangleSpec{{5, 3}}));
  CHECK(tangles_equivalent(RationalTangleSpec{{1, 1}}, RationalTangleSpec{{2}}));
  CHECK(pq_tangle_from_slope(7, 1) == RationalTangleSpec{{7}});
  CHECK(conway_slope(pq_tangle_from_slope(1, 0)).infinite());
  CHECK(to_string(Slope::make(6, -4)) == "-3/2");
}

TEST_CASE("slope round trip is exhaustive on small coprime pairs") {
  int pairs = 0;
  for (long long p = -50; p <= 50; ++p)
    for (long long q = -50; q <= 50; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++pairs;
      const RationalTangleSpec t = pq_tangle_from_slope(p, q);
      const Frac f = evaluate(t.coeffs);
      const Frac want = normalize(p, q);
      CHECK(f.p == want.p);
      CHECK(f.q == want.q);
      const Slope s = conway_slope(t);
      CHECK(s == Slope::make(p, q));
    }
  CHECK(pairs > 6000);
}

TEST_CASE("tangle equivalence matches slope equality") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 2000; ++t) {
    auto draw = [&] {
      RationalTangleSpec s;
      const int n = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < n; ++i) s.coeffs.push_back(static_cast<long long>(rng() % 7) - 3);
      return s;
    };
    const auto a = draw(), b = draw();
    const Frac fa = evaluate(a.coeffs), fb = evaluate(b.coeffs);
    CHECK(tangles_equivalent(a, b) == (fa.p == fb.p && fa.q == fb.q));
  }
}

TEST_CASE("n-moves on the crossingless 2-component diagram give torus links") {
  const LinkDiagram u2 = parse_pd(R"({"arc_count":0,"crossings":[],"free_components":2})");
  const auto sites = u2.candidate_sites();
  REQUIRE_FALSE(sites.empty());
  for (long long n = 1; n <= 6; ++n) {
    const LinkDiagram t = apply_pq_move(u2, sites.front(), n, 1);
    CHECK(t.crossing_count() == n);
    CHECK(component_count(t) == (n % 2 == 0 ? 2 : 1));
    check_arc_incidence(t);
    // T(2,n): determinant n, so h1 of the Wada-reduced core group is Z_n
    if (n >= 2) CHECK(abelianization(wada_reduce(core_presentation(t))).to_string() == "Z" + std::to_string(n));
  }
  const LinkDiagram hopf = apply_pq_move(u2, sites.front(), 2, 1);
  const Presentation p = core_presentation(hopf);
  std::set<Word> got;
  for (const auto& r : p.relators) got.insert(cyclic_canonical(r));
  const std::set<Word> want{cyclic_canonical({1, -2, 1, -2}), cyclic_canonical({2, -1, 2, -1})};
  CHECK(got == want);
}

TEST_CASE("0/1 move leaves the diagram unchanged up to relabelling") {
  std::mt19937_64 rng(25);
  for (const char* w : {"s1 s2^-1 s1 s2^-1", "s1 s1 s1", "s1 s2 s1 s2 s1 s2"}) {
    const LinkDiagram d = braid_closure(parse_braid(w), true);
    for (const auto& s : d.marked_sites()) {
      const LinkDiagram e = apply_pq_move(d, s, 0, 1);
      CHECK(e.crossing_count() == d.crossing_count());
      CHECK(component_count(e) == component_count(d));
      CHECK(abelianization(core_presentation(e)) == abelianization(core_presentation(d)));
    }
  }
}

TEST_CASE("p/q moves add the tangle's crossings") {
  const LinkDiagram d = braid_closure(parse_braid("s1 s2^-1 s1 s2^-1 s1 s2^-1"), true);
  for (auto [p, q] : {std::pair{5LL, 3LL}, {4LL, 1LL}, {-7LL, 2LL}, {3LL, -2LL}}) {
    long long sum = 0;
    for (long long a : pq_tangle_from_slope(p, q).coeffs) sum += std::abs(a);
    const LinkDiagram e = apply_pq_move(d, d.marked_sites()[3], p, q);
    CHECK(e.crossing_count() == d.crossing_count() + sum);
    check_arc_incidence(e);
  }
}

TEST_CASE("candidate sites are valid and with_site marks them") {
  const LinkDiagram d = braid_closure(parse_braid("s1 s1 s1"));
  const auto cands = d.candidate_sites();
  CHECK_FALSE(cands.empty());
  for (const auto& s : cands) CHECK(d.site_valid(s));
  const LinkDiagram m = d.with_site(cands.back());
  CHECK(std::find(m.marked_sites().begin(), m.marked_sites().end(), cands.back()) != m.marked_sites().end());
  CHECK_FALSE(d.site_valid(MoveSite{99, 0, 1, 0, SiteOrientation::Parallel}));
}
