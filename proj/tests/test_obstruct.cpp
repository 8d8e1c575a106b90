#include <doctest.h>

#include <numeric>

#include "burnlink/abelian.hpp"
#include "burnlink/diagram.hpp"
#include "burnlink/error.hpp"
#include "burnlink/obstruct.hpp"
#include "burnlink/reproduce.hpp"

using namespace burnlink;

namespace {

LinkInput data_link(const std::string& file) { return load_link(data_directory() + "/" + file); }

LinkInput braid_link(const std::string& id, const std::string& w) {
  return LinkInput::from_diagram(id, braid_closure(parse_braid(w)));
}

LinkInput whitehead() { return LinkInput::from_presentation("W", whitehead_half_cabling()); }

std::vector<LinkInput> corpus() {
  std::vector<LinkInput> out;
  for (const char* f : {"trefoil.pd", "hopf.pd", "figure8.pd", "unknot.pd", "unlink2.pd", "borromean.pd",
                        "whitehead.braid", "delta34.braid", "trefoil.braid"})
    out.push_back(data_link(f));
  out.push_back(whitehead());
  out.push_back(braid_link("cinquefoil", "s1 s1 s1 s1 s1"));
  out.push_back(braid_link("torus-2-4", "s1 s1 s1 s1"));
  out.push_back(braid_link("torus-2-6", "s1 s1 s1 s1 s1 s1"));
  out.push_back(braid_link("three-twist", "s1 s1 s1 s2^-1 s1 s2^-1"));
  return out;
}

std::uint64_t torsion(const AbelianType& a) {
  std::uint64_t t = 1;
  for (const auto& f : a.invariant_factors) t *= f.get_ui();
  return t;
}

}  // namespace

TEST_CASE("trivial link profiles") {
  const auto p4 = trivial_profiles(4, 3);
  REQUIRE(p4.size() == 3);
  CHECK(p4[0].components == 1);
  CHECK(p4[0].order == std::uint64_t{1});
  CHECK(p4[1].order == std::uint64_t{4});
  CHECK(p4[2].order == std::uint64_t{4096});
  CHECK(p4[2].abelianization.to_string() == "Z4+Z4");
  const auto p3 = trivial_profiles(3, 5);
  CHECK(p3[0].abelianization.is_trivial());
  CHECK(p3[2].order == std::uint64_t{27});
  CHECK(p3[3].order == std::uint64_t{2187});
  CHECK(p3[4].order == std::uint64_t{4782969});
  CHECK(p3[4].abelianization == AbelianType::elementary(3, 4));
  const auto p2 = trivial_profiles(2, 4);
  CHECK(p2[3].order == std::uint64_t{8});
  const auto p5 = trivial_profiles(5, 3);
  CHECK(p5[1].order == std::uint64_t{5});
  CHECK_FALSE(p5[2].order.has_value());
  CHECK(p5[2].abelianization == AbelianType::elementary(5, 2));
}

TEST_CASE("engine abelianization equals h1 mod n on the corpus") {
  for (const LinkInput& l : corpus()) {
    CAPTURE(l.id);
    const Presentation p = reduced_presentation(l);
    for (long n : {2L, 3L, 4L}) {
      CAPTURE(n);
      EngineResult e;
      try {
        e = burnside_quotient(engine_presentation(l, p), n);
      } catch (const EngineTooSmall&) {
        continue;
      }
      CHECK(e.abelianization == h1_mod_n(p, n));
      if (l.diagram && l.diagram->arc_count() > 0)
        CHECK(e.abelianization == h1_mod_n(wada_reduce(core_presentation(*l.diagram), 1), n));
    }
  }
}

TEST_CASE("cyclic h1 forces a cyclic Burnside quotient") {
  int checked = 0;
  for (const LinkInput& l : corpus()) {
    const Presentation p = reduced_presentation(l);
    for (long n : {2L, 3L, 4L}) {
      const AbelianType h1 = h1_mod_n(p, n);
      if (!h1.is_cyclic()) continue;
      CAPTURE(l.id);
      CAPTURE(n);
      const EngineResult e = burnside_quotient(engine_presentation(l, p), n);
      CHECK(e.order == torsion(h1));
      CHECK(e.abelianization == h1);
      ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("knots at n = 4 are out of reach") {
  for (const LinkInput& l : corpus()) {
    if (!l.diagram || l.diagram->component_count() != 1) continue;
    CAPTURE(l.id);
    CHECK(verdict(l, 4).verdict == Verdict::MethodInapplicable);
  }
}

TEST_CASE("verdicts") {
  const ObstructionReport w = verdict(whitehead(), 4);
  CHECK(w.verdict == Verdict::Obstructed);
  CHECK(w.invariants["burnside_order"] == 1024);
  CHECK(w.invariants["profile"]["order"] == "2^12");
  CHECK(w.invariants["quotient_abelianization"] == "Z4+Z4");
  CHECK(revalidate(w));
  bool cited = false;
  for (const auto& e : w.evidence) cited = cited || (!e.holds && e.computed == "2^10" && e.expected == "2^12");
  CHECK(cited);

  const ObstructionReport br = verdict(data_link("borromean.pd"), 4);
  CHECK(br.verdict == Verdict::Obstructed);
  CHECK(br.invariants["burnside_order"] == 32);
  CHECK(revalidate(br));

  const ObstructionReport un = verdict(data_link("unlink2.pd"), 4);
  CHECK(un.verdict == Verdict::MethodInapplicable);
  const ObstructionReport un3 = verdict(data_link("unlink2.pd"), 3);
  CHECK(un3.verdict == Verdict::MethodInapplicable);

  const ObstructionReport hopf3 = verdict(data_link("hopf.pd"), 3);
  CHECK(hopf3.verdict == Verdict::MethodInapplicable);

  const ObstructionReport d34 = verdict(data_link("delta34.braid"), 5);
  CHECK(d34.invariants["h1_mod_n"] == "Z5+Z5");
  CHECK(d34.verdict == Verdict::Obstructed);
  CHECK(d34.invariants.contains("certificates"));
  CHECK(revalidate(d34));

  CHECK_THROWS_AS(verdict(whitehead(), 4, 2), InvalidArgument);
  CHECK_THROWS_AS(verdict(whitehead(), 1), InvalidArgument);

  // deterministic output
  CHECK(verdict(whitehead(), 4).to_json().dump() == w.to_json().dump());
  const auto j = w.to_json();
  for (const char* k : {"schema", "link", "move", "verdict", "invariants", "evidence"}) CHECK(j.contains(k));
  CHECK(j["verdict"] == "OBSTRUCTED");
}

TEST_CASE("revalidation rejects tampered reports") {
  ObstructionReport w = verdict(whitehead(), 4);
  REQUIRE(revalidate(w));
  ObstructionReport t = w;
  t.invariants["burnside_order"] = 4096;
  CHECK_FALSE(revalidate(t));
  ObstructionReport u = w;
  u.invariants["quotient_abelianization"] = "Z4";
  CHECK_FALSE(revalidate(u));
  ObstructionReport c = verdict(data_link("trefoil.pd"), 4);
  CHECK_FALSE(revalidate(c));
}

TEST_CASE("comparisons") {
  const ComparisonReport a = compare_links(whitehead(), data_link("borromean.pd"), 4);
  CHECK(a.result == Comparison::Distinguished);
  const ComparisonReport b = compare_links(data_link("trefoil.pd"), data_link("trefoil.braid"), 3);
  CHECK(b.result == Comparison::NotDistinguished);
  const ComparisonReport c = compare_links(data_link("trefoil.pd"), data_link("figure8.pd"), 3);
  CHECK(c.result == Comparison::Distinguished);
  CHECK(a.to_json()["result"] == "DISTINGUISHED");
}

TEST_CASE("seed plans evaluate consistently") {
  for (const LinkInput& l : corpus()) {
    CAPTURE(l.id);
    const Presentation p = engine_presentation(l, reduced_presentation(l));
    const SeedPlan plan = plan_seeds(p);
    std::vector<bool> covered(static_cast<std::size_t>(p.generator_count()) + 1, false);
    for (int s : plan.seeds) covered[static_cast<std::size_t>(s)] = true;
    for (const auto& [g, r] : plan.solved) {
      CHECK_FALSE(covered[static_cast<std::size_t>(g)]);
      covered[static_cast<std::size_t>(g)] = true;
    }
    for (int g = 1; g <= p.generator_count(); ++g) CHECK(covered[static_cast<std::size_t>(g)]);
    if (plan.seeds.size() > 2) continue;
    const PcPresentation& eng = load_pcp("B24");
    const Assignment a = assign_images(eng, p, plan);
    for (const auto& [g, r] : plan.solved) CHECK(eng.is_identity(eval_word(eng, a, p.relators[r])));
  }
}

TEST_CASE("Delta_5^4 at n = 3") {
  const LinkInput d = data_link("delta54.braid");
  const ObstructionReport r = verdict(d, 3);
  CHECK(r.verdict == Verdict::Obstructed);
  CHECK(r.invariants["h1_mod_n"] == "Z3+Z3+Z3+Z3");
  CHECK(revalidate(r));
}

TEST_CASE("invariance audits") {
  struct Case {
    const char* file;
    long n;
    std::uint64_t order;
  };
  for (const Case& c : {Case{"trefoil.pd", 3, 3}, Case{"hopf.pd", 2, 2}, Case{"borromean.pd", 4, 32},
                        Case{"unlink2.pd", 4, 4}}) {
    CAPTURE(c.file);
    const LinkInput l = data_link(c.file);
    const AuditResult a = invariance_audit(*l.diagram, c.n, 20, 1);
    CHECK(a.pass);
    CHECK(a.order == c.order);
    CHECK(a.trials.size() == 20);
    for (const auto& t : a.trials) {
      CHECK(t.ok);
      CHECK(t.order == c.order);
    }
  }
}

TEST_CASE("moves at every marked site preserve B_L(n)") {
  struct Case {
    const char* file;
    long n;
  };
  for (const Case& c : {Case{"trefoil.pd", 3}, Case{"figure8.pd", 3}, Case{"hopf.pd", 2}, Case{"hopf.pd", 4},
                        Case{"borromean.pd", 4}, Case{"unlink2.pd", 4}, Case{"unlink2.pd", 3}}) {
    CAPTURE(c.file);
    CAPTURE(c.n);
    const LinkInput l = data_link(c.file);
    const EngineResult base = burnside_quotient(engine_presentation(l, reduced_presentation(l)), c.n);
    const auto sites = l.diagram->marked_sites().empty() ? l.diagram->candidate_sites() : l.diagram->marked_sites();
    REQUIRE_FALSE(sites.empty());
    for (const MoveSite& s : sites)
      for (long long q : {1LL, -1LL, 2LL}) {
        if (std::gcd(static_cast<long long>(c.n), q) != 1) continue;
        const LinkInput m = LinkInput::from_diagram("moved", apply_pq_move(*l.diagram, s, c.n, q));
        const EngineResult e = burnside_quotient(engine_presentation(m, reduced_presentation(m)), c.n);
        CHECK(e.order == base.order);
        CHECK(e.abelianization == base.abelianization);
      }
  }
}
