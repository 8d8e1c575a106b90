#include "burnlink/reproduce.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "burnlink/error.hpp"

namespace burnlink {

namespace {

std::string pow_str(unsigned p, std::uint64_t order) {
  int e = 0;
  while (order > 1 && order % p == 0) {
    order /= p;
    ++e;
  }
  return order == 1 ? std::to_string(p) + "^" + std::to_string(e) : "?";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

LinkInput data_link(const std::string& file) { return load_link(data_directory() + "/" + file); }

std::set<Word> canonical_set(const std::vector<Word>& ws) {
  std::set<Word> out;
  for (const auto& w : ws) out.insert(cyclic_canonical(w));
  return out;
}

ReproTable montesinos_nakanishi(const Config& cfg) {
  ReproTable t{"montesinos-nakanishi", {}};
  const LinkInput d54 = data_link("delta54.braid");
  t.rows.push_back({"crossings", "40", std::to_string(d54.diagram->crossing_count()),
                    d54.diagram->crossing_count() == 40});
  const Presentation simp = tietze_simplify(core_presentation(*d54.diagram), cfg.tietze);
  t.rows.push_back({"generators after simplification", "5", std::to_string(simp.generator_count()),
                    simp.generator_count() == 5});
  const bool pattern = matches_q_pattern(simp);
  t.rows.push_back({"relators match Q_i x_i^-1", "true", yes_no(pattern), pattern});

  const PcPresentation& b43 = load_pcp("B43");
  Presentation q;
  q.generator_names = {"x1", "x2", "x3", "x4", "x5"};
  q.relators = q_relators();
  const Presentation killed = wada_reduce(q, 5);
  const Assignment images = standard_assignment(b43, 4);
  for (std::size_t i = 0; i < q.relators.size(); ++i) {
    const Word w = word_eval_free([&] {
      Word r;
      for (int x : q.relators[i])
        if (std::abs(x) != 5) r.push_back(x);
      return r;
    }());
    const bool nontrivial = !b43.is_identity(eval_word(b43, images, w));
    t.rows.push_back({"Q_" + std::to_string(i + 1) + " x_" + std::to_string(i + 1) + "^-1 nonidentity in B43", "true",
                      yes_no(nontrivial), nontrivial});
  }
  const ObstructionReport r = verdict(d54, 3, 1, cfg);
  t.rows.push_back({"verdict at n=3", "OBSTRUCTED", to_string(r.verdict), r.verdict == Verdict::Obstructed});
  const std::string order = r.invariants.value("burnside_order_factored", std::string("-"));
  t.rows.push_back({"|B_L(3)| (recorded)", "-", order, true});
  const EngineResult direct = burnside_quotient(killed, 3, cfg);
  t.rows.push_back({"|B(4,3)/<<Q_i x_i^-1>>|", order, pow_str(3, direct.order),
                    pow_str(3, direct.order) == order});
  return t;
}

ReproTable kawauchi(const Config& cfg) {
  ReproTable t{"kawauchi", {}};
  const Presentation w = whitehead_half_cabling();
  const PcPresentation& b24 = load_pcp("B24");
  const Assignment images = standard_assignment(b24, 2);
  const PcElement x = b24.generator(0), y = b24.generator(1);
  const PcElement r1 = eval_word(b24, images, w.relators[0]);
  const PcElement r2 = eval_word(b24, images, w.relators[1]);
  const bool e1 = r1 == b24.left_normed({x, y, x, y, x});
  const PcElement c2 = b24.left_normed({y, x, y, x, y});
  InducedPcgs mod_r1(b24);
  mod_r1.add(r1, true);
  const bool e2 = mod_r1.contains(b24.multiply(b24.inverse(c2), r2));
  const bool e2_exact = r2 == b24.multiply(r1, c2);
  t.rows.push_back({"R1 = [x,y,x,y,x]", "true", yes_no(e1), e1});
  t.rows.push_back({"R2 = [y,x,y,x,y] mod <<R1>>", "true", yes_no(e2), e2});
  t.rows.push_back({"R2 = [x,y,x,y,x][y,x,y,x,y]", "true", yes_no(e2_exact), e2_exact});
  const bool nt = !b24.is_identity(r1) && !b24.is_identity(r2);
  t.rows.push_back({"R1, R2 nonidentity", "true", yes_no(nt), nt});
  ClosureOptions opt;
  opt.element_budget = cfg.element_budget;
  const std::uint64_t closure = normal_closure(b24, {r1, r2}, opt).order;
  t.rows.push_back({"|<<R1, R2>>|", "4", std::to_string(closure), closure == 4});
  const LinkInput in = LinkInput::from_presentation("whitehead_half_cabling", w);
  const ObstructionReport r = verdict(in, 4, 1, cfg);
  const std::uint64_t order = r.invariants.value("burnside_order", std::uint64_t{0});
  t.rows.push_back({"|B_W(4)|", "2^10", pow_str(2, order), order == 1024});
  const std::string ab = r.invariants.value("quotient_abelianization", std::string("-"));
  t.rows.push_back({"B_W(4) abelianization", "Z4+Z4", ab, ab == "Z4+Z4"});
  t.rows.push_back({"3-component profile order", "2^12", r.invariants["profile"].value("order", std::string("-")),
                    r.invariants["profile"].value("order", std::string()) == "2^12"});
  t.rows.push_back({"verdict at n=4", "OBSTRUCTED", to_string(r.verdict), r.verdict == Verdict::Obstructed});
  return t;
}

ReproTable borromean(const Config& cfg) {
  ReproTable t{"borromean", {}};
  const LinkInput br = data_link("borromean.pd");
  t.rows.push_back({"crossings", "6", std::to_string(br.diagram->crossing_count()), br.diagram->crossing_count() == 6});
  t.rows.push_back({"components", "3", std::to_string(br.diagram->component_count()),
                    br.diagram->component_count() == 3});
  const EngineResult e = burnside_quotient(reduced_presentation(br, cfg.tietze), 4, cfg);
  t.rows.push_back({"|B_BR(4)|", "2^5", pow_str(2, e.order), e.order == 32});
  const LinkInput w = LinkInput::from_presentation("whitehead_half_cabling", whitehead_half_cabling());
  const ComparisonReport c = compare_links(w, br, 4, cfg);
  t.rows.push_back({"compare(W, BR, 4)", "DISTINGUISHED", to_string(c.result), c.result == Comparison::Distinguished});
  return t;
}

ReproTable slopes() {
  ReproTable t{"slopes", {}};
  std::size_t pairs = 0, failures = 0;
  for (long long p = -50; p <= 50; ++p)
    for (long long q = -50; q <= 50; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++pairs;
      if (!(conway_slope(pq_tangle_from_slope(p, q)) == Slope::make(p, q))) ++failures;
    }
  t.rows.push_back({"coprime pairs |p|,|q| <= 50", "-", std::to_string(pairs), true});
  t.rows.push_back({"round-trip failures", "0", std::to_string(failures), failures == 0});
  const Slope a = conway_slope({{2, 1, 1}}), b = conway_slope({{2, 3, 2}});
  t.rows.push_back({"slope T(2,1,1)", "5/3", to_string(a), to_string(a) == "5/3"});
  t.rows.push_back({"slope T(2,3,2)", "16/7", to_string(b), to_string(b) == "16/7"});
  const bool eq = tangles_equivalent({{1, 1}}, {{2}});
  t.rows.push_back({"T(1,1) ~ T(2)", "true", yes_no(eq), eq});
  return t;
}

ReproTable engine_selftest() {
  ReproTable t{"engine-selftest", {}};
  for (const char* name : {"B23", "B33", "B43", "B24"}) {
    const PcPresentation& g = load_pcp(name);
    const std::string n = name;
    t.rows.push_back({n + " order", n == "B24" ? "2^12" : n == "B23" ? "3^3" : n == "B33" ? "3^7" : "3^14",
                      pow_str(g.prime(), g.order()),
                      pow_str(g.prime(), g.order()) ==
                          (n == "B24" ? "2^12" : n == "B23" ? "3^3" : n == "B33" ? "3^7" : "3^14")});
    const auto cons = check_consistency(g);
    t.rows.push_back({n + " consistency checks", "0 failures",
                      std::to_string(cons.failures.size()) + " failures / " + std::to_string(cons.checks), cons.ok});
    const bool exhaustive = g.order() <= (std::uint64_t{1} << 22);
    const std::uint64_t bad =
        exhaustive ? exponent_violations_exhaustive(g) : exponent_violations_sampled(g, 100000, 1);
    t.rows.push_back({n + (exhaustive ? " exponent (exhaustive)" : " exponent (100000 samples)"), "0",
                      std::to_string(bad), bad == 0});
    const auto layers = lower_central_layers(g);
    std::string ls;
    for (int l : layers) ls += (ls.empty() ? "" : ",") + std::to_string(l);
    std::string want;
    if (n == "B24") {
      want = "4,1,2,3,2";
    } else {
      const int r = g.rank();
      want = std::to_string(r) + "," + std::to_string(r * (r - 1) / 2);
      if (r >= 3) want += "," + std::to_string(r * (r - 1) * (r - 2) / 6);
    }
    t.rows.push_back({n + " lower central layers", want, ls, ls == want});
  }
  return t;
}

}  // namespace

bool ReproTable::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.ok; });
}

std::string ReproTable::render() const {
  std::size_t wq = 8, we = 8, wc = 8;
  for (const auto& r : rows) {
    wq = std::max(wq, r.quantity.size());
    we = std::max(we, r.expected.size());
    wc = std::max(wc, r.computed.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  out << "target: " << target << '\n';
  out << pad("quantity", wq) << "  " << pad("expected", we) << "  " << pad("computed", wc) << "  status\n";
  for (const auto& r : rows)
    out << pad(r.quantity, wq) << "  " << pad(r.expected, we) << "  " << pad(r.computed, wc) << "  "
        << (r.ok ? "ok" : "MISMATCH") << '\n';
  out << "result: " << (pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> t{"montesinos-nakanishi", "kawauchi", "borromean", "slopes",
                                          "engine-selftest"};
  return t;
}

ReproTable reproduce(const std::string& target, const Config& cfg) {
  if (target == "montesinos-nakanishi") return montesinos_nakanishi(cfg);
  if (target == "kawauchi") return kawauchi(cfg);
  if (target == "borromean") return borromean(cfg);
  if (target == "slopes") return slopes();
  if (target == "engine-selftest") return engine_selftest();
  throw InvalidArgument("unknown target '" + target + "'");
}

std::vector<Word> q_relators() {
  const Word u{1, -2, 3, -4, 5, -1, 2, -3, 4, -5};
  const Word v(u.rbegin(), u.rend());
  std::vector<Word> out;
  for (int i = 1; i <= 5; ++i) {
    Word w = u;
    w.push_back(i);
    w.insert(w.end(), v.begin(), v.end());
    w.push_back(-i);
    out.push_back(w);
  }
  return out;
}

bool matches_q_pattern(const Presentation& p) {
  if (p.generator_count() != 5 || p.relators.size() != 5) return false;
  const std::set<Word> target = canonical_set(q_relators());
  std::vector<int> perm{1, 2, 3, 4, 5};
  do {
    for (int sign : {1, -1}) {
      std::vector<Word> mapped;
      for (const auto& r : p.relators) {
        Word w;
        for (int x : r) w.push_back(sign * (x > 0 ? perm[x - 1] : -perm[-x - 1]));
        mapped.push_back(w);
      }
      if (canonical_set(mapped) == target) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Presentation whitehead_half_cabling() {
  Presentation p;
  p.generator_names = {"x", "y"};
  p.relators.push_back(parse_word("x y^-2 x^2 y^-2 x^3 y^-2 x^2 y^-2", p.generator_names));
  p.relators.push_back(parse_word("y x y^-2 x^2 y^-2 x y x^-2 y^2 x^-2", p.generator_names));
  return p;
}

}  // namespace burnlink
