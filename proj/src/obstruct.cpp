#include "burnlink/obstruct.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "burnlink/error.hpp"
#include "burnlink/liering.hpp"

namespace burnlink {

namespace {

using ojson = nlohmann::ordered_json;

std::string power_string(std::uint64_t order) {
  if (order <= 1) return std::to_string(order);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    std::uint64_t x = order;
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (x == 1) return std::to_string(p) + "^" + std::to_string(e);
  }
  return std::to_string(order);
}

std::optional<std::uint64_t> burnside_order(long n, int rank) {
  if (rank == 0) return 1;
  if (rank == 1) return static_cast<std::uint64_t>(n);
  if (n == 2 && rank < 64) return std::uint64_t{1} << rank;
  if (n == 3) {
    static const std::uint64_t b3[] = {0, 3, 27, 2187, 4782969};
    if (rank <= 4) return b3[rank];
  }
  if (n == 4 && rank == 2) return std::uint64_t{4096};
  return std::nullopt;
}

// (Z_n)^j with j >= 0, or -1.
int elementary_rank(const AbelianType& a, long n) {
  if (a.free_rank != 0) return -1;
  for (const auto& d : a.invariant_factors)
    if (d != n) return -1;
  return static_cast<int>(a.invariant_factors.size());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const PcPresentation& engine_for(long n, int seeds, std::optional<PcPresentation>& owned) {
  if (n == 2) {
    owned = PcPresentation::elementary_abelian(2, std::max(seeds, 1));
    return *owned;
  }
  if (n == 3) {
    if (seeds <= 2) return load_pcp("B23");
    if (seeds <= 3) return load_pcp("B33");
    if (seeds <= 4) return load_pcp("B43");
    throw EngineTooSmall(std::to_string(seeds) + " seed generators exceed the exponent-3 engines (rank <= 4)");
  }
  if (n == 4) {
    if (seeds <= 2) return load_pcp("B24");
    throw EngineTooSmall(std::to_string(seeds) + " seed generators exceed the exponent-4 engine (rank 2)");
  }
  throw EngineTooSmall("no finite engine for exponent " + std::to_string(n));
}

ojson evidence_json(const std::vector<Evidence>& ev) {
  ojson a = ojson::array();
  for (const auto& e : ev)
    a.push_back({{"check", e.check}, {"computed", e.computed}, {"expected", e.expected}, {"holds", e.holds}});
  return a;
}

int occurrences(const Word& w, int g) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [g](int x) { return std::abs(x) == g; }));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "OBSTRUCTED";
    case Verdict::ConsistentWithReducible: return "CONSISTENT_WITH_REDUCIBLE";
    case Verdict::MethodInapplicable: return "METHOD_INAPPLICABLE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Distinguished: return "DISTINGUISHED";
    case Comparison::NotDistinguished: return "NOT_DISTINGUISHED";
    case Comparison::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::vector<TrivialLinkProfile> trivial_profiles(long n, int max_components) {
  if (n < 2) throw InvalidArgument("exponent must be at least 2");
  std::vector<TrivialLinkProfile> out;
  for (int k = 1; k <= max_components; ++k)
    out.push_back({k, n, burnside_order(n, k - 1), AbelianType::elementary(n, k - 1)});
  return out;
}

LinkInput LinkInput::from_diagram(std::string id, LinkDiagram d) {
  LinkInput in;
  in.id = std::move(id);
  in.diagram = std::move(d);
  return in;
}

LinkInput LinkInput::from_presentation(std::string id, Presentation p) {
  LinkInput in;
  in.id = std::move(id);
  in.presentation = std::move(p);
  return in;
}

LinkInput load_link(const std::string& path, InputFormat fmt) {
  const std::filesystem::path fp(path);
  if (fmt == InputFormat::Auto) {
    const auto ext = fp.extension().string();
    if (ext == ".braid")
      fmt = InputFormat::Braid;
    else if (ext == ".pd")
      fmt = InputFormat::Pd;
    else if (ext == ".pres")
      fmt = InputFormat::Presentation;
    else
      throw InvalidArgument("cannot infer input format of '" + path + "'; use --format");
  }
  const std::string text = read_file(path);
  const std::string id = fp.filename().string();
  switch (fmt) {
    case InputFormat::Braid: return LinkInput::from_diagram(id, braid_closure(parse_braid(text)));
    case InputFormat::Pd: return LinkInput::from_diagram(id, parse_pd(text));
    default: return LinkInput::from_presentation(id, parse_presentation(text));
  }
}

Presentation reduced_presentation(const LinkDiagram& d, const TietzeOptions& opt) {
  Presentation p = tietze_simplify(core_presentation(d), opt);
  if (p.generator_count() == 0) return p;
  return tietze_simplify(wada_reduce(p), opt);
}

Presentation reduced_presentation(const LinkInput& in, const TietzeOptions& opt) {
  if (in.diagram) return reduced_presentation(*in.diagram, opt);
  return in.presentation;
}

namespace {

struct Propagation {
  const Presentation* p;
  const std::vector<std::vector<std::size_t>>* touching;  // generator -> relators containing it
  std::vector<bool> known, used;
  std::vector<int> unknown;  // distinct unknown generators per relator
  int remaining;
  SeedPlan plan;
  std::vector<std::size_t> ready;

  static std::vector<std::vector<std::size_t>> index(const Presentation& p) {
    std::vector<std::vector<std::size_t>> t(p.generator_count() + 1);
    for (std::size_t i = 0; i < p.relators.size(); ++i)
      for (int x : p.relators[i])
        if (t[std::abs(x)].empty() || t[std::abs(x)].back() != i) t[std::abs(x)].push_back(i);
    for (auto& v : t) v.erase(std::unique(v.begin(), v.end()), v.end());
    return t;
  }

  Propagation(const Presentation& pr, const std::vector<std::vector<std::size_t>>& t)
      : p(&pr), touching(&t), known(pr.generator_count() + 1, false), used(pr.relators.size(), false),
        unknown(pr.relators.size(), 0), remaining(pr.generator_count()) {
    for (int g = 1; g <= pr.generator_count(); ++g)
      for (std::size_t i : t[g]) ++unknown[i];
    for (std::size_t i = 0; i < pr.relators.size(); ++i)
      if (unknown[i] <= 1) ready.push_back(i);
  }

  void learn(int g) {
    known[g] = true;
    --remaining;
    for (std::size_t i : (*touching)[g])
      if (--unknown[i] <= 1) ready.push_back(i);
  }

  void run() {
    while (!ready.empty()) {
      const std::size_t i = ready.back();
      ready.pop_back();
      if (used[i] || unknown[i] > 1) continue;
      int g = 0;
      for (int x : p->relators[i])
        if (!known[std::abs(x)]) {
          g = std::abs(x);
          break;
        }
      if (g != 0 && occurrences(p->relators[i], g) != 1) continue;
      used[i] = true;
      if (g == 0) continue;
      plan.solved.emplace_back(g, i);
      learn(g);
    }
  }
  void seed(int g) {
    plan.seeds.push_back(g);
    learn(g);
  }
};

}  // namespace

namespace {

std::optional<SeedPlan> plan_within(const Presentation& p, const std::vector<std::vector<std::size_t>>& touching,
                                    int limit) {
  const int k = p.generator_count();
  Propagation st(p, touching);
  st.run();
  if (st.remaining == 0) return st.plan;
  if (limit < 1) return std::nullopt;
  std::vector<Propagation> ones;
  for (int g = 1; g <= k; ++g) {
    if (st.known[g]) continue;
    Propagation one = st;
    one.seed(g);
    one.run();
    if (one.remaining == 0) return one.plan;
    if (limit >= 2) ones.push_back(std::move(one));
  }
  for (const Propagation& one : ones) {
    for (int h = one.plan.seeds.front() + 1; h <= k; ++h) {
      if (one.known[h]) continue;
      Propagation two = one;
      two.seed(h);
      two.run();
      if (two.remaining == 0) return two.plan;
    }
  }
  return std::nullopt;
}

}  // namespace

SeedPlan plan_seeds(const Presentation& p) {
  const int k = p.generator_count();
  const auto touching = Propagation::index(p);
  if (auto small = plan_within(p, touching, 2)) return *small;
  Propagation st(p, touching);
  st.run();
  while (st.remaining > 0) {
    int best = 0, best_left = k + 1;
    for (int g = 1; g <= k; ++g) {
      if (st.known[g]) continue;
      Propagation trial = st;
      trial.seed(g);
      trial.run();
      if (trial.remaining < best_left) {
        best = g;
        best_left = trial.remaining;
      }
    }
    st.seed(best);
    st.run();
  }
  return st.plan;
}

Assignment assign_images(const PcPresentation& g, const Presentation& p, const SeedPlan& plan) {
  if (static_cast<int>(plan.seeds.size()) > g.rank())
    throw EngineTooSmall(std::to_string(plan.seeds.size()) + " seeds exceed the rank of " + g.name());
  Assignment images(p.generator_count());
  for (std::size_t s = 0; s < plan.seeds.size(); ++s) images[plan.seeds[s] - 1] = g.generator(static_cast<int>(s));
  for (const auto& [gen, ri] : plan.solved) {
    const Word& r = p.relators[ri];
    const auto pos = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(), [gen = gen](int x) { return std::abs(x) == gen; }) - r.begin());
    Word v(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
    v.insert(v.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
    const PcElement val = eval_word(g, images, v);
    images[gen - 1] = r[pos] > 0 ? g.inverse(val) : val;
  }
  return images;
}

Presentation engine_presentation(const LinkInput& in, const Presentation& reduced) {
  if (!in.diagram || in.diagram->generator_count() == 0) return reduced;
  std::size_t best_seeds = plan_seeds(reduced).seeds.size();
  if (best_seeds <= 2) return reduced;
  const Presentation core = core_presentation(*in.diagram);
  for (int kill = core.generator_count(); kill >= 1; --kill) {
    Presentation raw = wada_reduce(core, kill);
    if (plan_within(raw, Propagation::index(raw), 2)) return raw;
  }
  return reduced;
}

EngineResult burnside_quotient(const Presentation& reduced, long n, const Config& cfg) {
  const SeedPlan plan = plan_seeds(reduced);
  const int s = static_cast<int>(plan.seeds.size());
  std::optional<PcPresentation> owned;
  const PcPresentation& g = engine_for(n, s, owned);
  const Assignment images = assign_images(g, reduced, plan);
  EngineResult out;
  out.engine = g.name();
  out.seeds = s;
  out.kernel_generators = eval_words(g, images, reduced.relators);
  for (int i = s; i < g.rank(); ++i) out.kernel_generators.push_back(g.generator(i));
  ClosureOptions opt;
  opt.element_budget = cfg.element_budget;
  out.order = quotient_order(g, out.kernel_generators, opt);
  out.abelianization = quotient_abelianization(g, out.kernel_generators);
  return out;
}

ojson ObstructionReport::to_json() const {
  ojson j;
  j["schema"] = kReportSchema;
  j["link"] = link;
  j["move"] = {{"family", "n/q"}, {"n", n}, {"q", q}};
  j["verdict"] = to_string(verdict);
  j["invariants"] = invariants;
  j["evidence"] = evidence_json(evidence);
  return j;
}

ojson ComparisonReport::to_json() const {
  ojson j;
  j["schema"] = kReportSchema;
  j["links"] = {a, b};
  j["move"] = {{"family", "n"}, {"n", n}};
  j["result"] = to_string(result);
  j["invariants"] = invariants;
  j["evidence"] = evidence_json(evidence);
  return j;
}

ObstructionReport verdict(const LinkInput& link, long n, long q, const Config& cfg) {
  if (n < 2) throw InvalidArgument("exponent must be at least 2");
  if (std::gcd(n, q) != 1) throw InvalidArgument("q must be coprime to n");
  ObstructionReport r;
  r.link = link.id;
  r.n = n;
  r.q = q;
  const Presentation p = reduced_presentation(link, cfg.tietze);
  r.invariants["presentation"] = ojson::parse(print_presentation(p));
  if (link.diagram) {
    r.invariants["components"] = link.diagram->component_count();
    r.invariants["crossings"] = link.diagram->crossing_count();
  }
  const AbelianType h1 = h1_mod_n(p, n);
  r.invariants["h1_mod_n"] = h1.to_string();

  if (is_prime_power(n) && h1.is_cyclic()) {
    r.evidence.push_back({"h1_mod_n cyclic", h1.to_string(), "non-cyclic", false});
    r.verdict = Verdict::MethodInapplicable;
    return r;
  }
  const int j = elementary_rank(h1, n);
  if (j < 0) {
    r.evidence.push_back({"h1_mod_n is (Z_n)^j for some j", h1.to_string(), "(Z" + std::to_string(n) + ")^j", false});
    r.verdict = Verdict::Obstructed;
    return r;
  }
  const TrivialLinkProfile prof = trivial_profiles(n, j + 1).back();
  r.invariants["profile"] = {{"components", prof.components},
                             {"abelianization", prof.abelianization.to_string()}};
  if (prof.order) r.invariants["profile"]["order"] = power_string(*prof.order);
  r.evidence.push_back({"h1_mod_n matches profile k=" + std::to_string(prof.components), h1.to_string(),
                        prof.abelianization.to_string(), true});

  if (n == 2 || n == 3 || n == 4) {
    EngineResult e;
    const Presentation ep = engine_presentation(link, p);
    if (!(ep == p)) r.invariants["engine_presentation"] = ojson::parse(print_presentation(ep));
    try {
      e = burnside_quotient(ep, n, cfg);
    } catch (const EngineTooSmall& ex) {
      r.invariants["reason"] = ex.what();
      r.verdict = Verdict::Inconclusive;
      return r;
    }
    r.invariants["engine"] = e.engine;
    r.invariants["seeds"] = e.seeds;
    r.invariants["burnside_order"] = e.order;
    r.invariants["burnside_order_factored"] = power_string(e.order);
    r.invariants["quotient_abelianization"] = e.abelianization.to_string();
    if (!(e.abelianization == h1)) throw Error("engine abelianization disagrees with h1_mod_n");
    if (!prof.order) {
      r.invariants["reason"] = "no profile order for this rank";
      r.verdict = Verdict::Inconclusive;
      return r;
    }
    const bool same = e.order == *prof.order;
    r.evidence.push_back({"|B_L(" + std::to_string(n) + ")| against profile k=" + std::to_string(prof.components),
                          power_string(e.order), power_string(*prof.order), same});
    r.verdict = same ? Verdict::ConsistentWithReducible : Verdict::Obstructed;
    return r;
  }

  const bool prime = n >= 5 && is_prime_power(n) && [&] {
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }();
  if (!prime || p.generator_count() != j) {
    r.invariants["reason"] = prime ? "presentation rank differs from profile rank" : "no engine for this exponent";
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  const int c = std::min<int>(cfg.lie_class, static_cast<int>(n) - 1);
  const auto certs = nontriviality_certificate(p.relators, j, static_cast<unsigned>(n), c);
  ojson cj = ojson::array();
  bool any = false;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    cj.push_back({{"relator", i + 1}, {"certified", certs[i].certified}, {"weight", certs[i].weight}});
    if (certs[i].certified) {
      any = true;
      r.evidence.push_back({"relator " + std::to_string(i + 1) + " nontrivial in B(" + std::to_string(j) + "," +
                                std::to_string(n) + ") at class " + std::to_string(c),
                            "certified at weight " + std::to_string(certs[i].weight), "trivial", true});
    }
  }
  r.invariants["lie_class"] = c;
  r.invariants["certificates"] = cj;
  if (any) {
    r.verdict = Verdict::Obstructed;
  } else {
    r.invariants["reason"] = "no relator certified nontrivial";
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

bool revalidate(const ObstructionReport& r, const Config& cfg) {
  if (r.verdict != Verdict::Obstructed) return false;
  const Presentation p = parse_presentation(r.invariants.at("presentation").dump());
  const AbelianType h1 = abelianization(p);
  // h1 mod n from the integral invariants
  std::vector<mpz_class> orders;
  for (const auto& d : h1.invariant_factors) {
    mpz_class g;
    mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(r.n));
    if (g > 1) orders.push_back(g);
  }
  for (int i = 0; i < h1.free_rank; ++i) orders.push_back(r.n);
  const AbelianType h1n = AbelianType::from_cyclic_orders(orders);
  if (h1n.to_string() != r.invariants.at("h1_mod_n").get<std::string>()) return false;
  const int j = elementary_rank(h1n, r.n);
  if (j < 0) return true;
  if (r.invariants.contains("quotient_abelianization") &&
      r.invariants.at("quotient_abelianization").get<std::string>() != h1n.to_string())
    return false;
  if (r.invariants.contains("burnside_order")) {
    const Presentation ep = r.invariants.contains("engine_presentation")
                                ? parse_presentation(r.invariants.at("engine_presentation").dump())
                                : p;
    std::optional<PcPresentation> owned;
    const SeedPlan plan = plan_seeds(ep);
    const PcPresentation& g = engine_for(r.n, static_cast<int>(plan.seeds.size()), owned);
    auto kernel = eval_words(g, assign_images(g, ep, plan), ep.relators);
    for (int i = static_cast<int>(plan.seeds.size()); i < g.rank(); ++i) kernel.push_back(g.generator(i));
    const int len = static_cast<int>(normal_closure_pcgs(g, kernel).size());
    std::uint64_t order = 1;
    for (int i = len; i < g.size(); ++i) order *= g.prime();
    const auto prof = burnside_order(r.n, j);
    return order == r.invariants.at("burnside_order").get<std::uint64_t>() && prof && order != *prof;
  }
  if (r.invariants.contains("certificates")) {
    const int c = r.invariants.at("lie_class").get<int>();
    const auto certs = nontriviality_certificate(p.relators, j, static_cast<unsigned>(r.n), c);
    return std::any_of(certs.begin(), certs.end(), [](const Certificate& x) { return x.certified; });
  }
  (void)cfg;
  return false;
}

ComparisonReport compare_links(const LinkInput& a, const LinkInput& b, long n, const Config& cfg) {
  ComparisonReport r;
  r.a = a.id;
  r.b = b.id;
  r.n = n;
  const Presentation pa = reduced_presentation(a, cfg.tietze);
  const Presentation pb = reduced_presentation(b, cfg.tietze);
  const AbelianType ha = h1_mod_n(pa, n), hb = h1_mod_n(pb, n);
  r.invariants["h1_mod_n"] = {ha.to_string(), hb.to_string()};
  const bool ab_same = ha == hb;
  r.evidence.push_back({"h1_mod_n equal", ha.to_string() + " vs " + hb.to_string(), "equal", ab_same});
  try {
    const EngineResult ea = burnside_quotient(engine_presentation(a, pa), n, cfg);
    const EngineResult eb = burnside_quotient(engine_presentation(b, pb), n, cfg);
    r.invariants["burnside_order"] = {power_string(ea.order), power_string(eb.order)};
    r.invariants["quotient_abelianization"] = {ea.abelianization.to_string(), eb.abelianization.to_string()};
    const bool same = ea.order == eb.order;
    r.evidence.push_back({"|B_L(" + std::to_string(n) + ")| equal",
                          power_string(ea.order) + " vs " + power_string(eb.order), "equal", same});
    r.result = same && ab_same ? Comparison::NotDistinguished : Comparison::Distinguished;
  } catch (const EngineTooSmall& ex) {
    r.invariants["reason"] = ex.what();
    r.result = ab_same ? Comparison::Inconclusive : Comparison::Distinguished;
  }
  return r;
}

AuditResult invariance_audit(const LinkDiagram& d, long n, int trials, std::uint64_t seed, const Config& cfg) {
  AuditResult out;
  auto engine = [&](const LinkDiagram& x) {
    const LinkInput in = LinkInput::from_diagram("", x);
    return burnside_quotient(engine_presentation(in, reduced_presentation(x, cfg.tietze)), n, cfg);
  };
  const EngineResult base = engine(d);
  out.order = base.order;
  out.abelianization = base.abelianization;
  std::vector<long long> qs;
  for (long long q : {1LL, -1LL, 2LL})
    if (std::gcd(static_cast<long long>(n), q) == 1) qs.push_back(q);
  std::mt19937_64 rng(seed);
  LinkDiagram cur = d;
  out.pass = true;
  for (int t = 0; t < trials; ++t) {
    const auto sites = cur.marked_sites().empty() ? cur.candidate_sites() : cur.marked_sites();
    if (sites.empty()) throw InvalidArgument("diagram has no admissible move site");
    AuditTrial tr;
    tr.site = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    tr.q = qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(rng)];
    LinkDiagram moved = apply_pq_move(cur, tr.site, n, tr.q);
    tr.crossings = moved.crossing_count();
    const EngineResult e = engine(moved);
    if (tr.q == 1 || tr.q == -1) cur = std::move(moved);
    tr.order = e.order;
    tr.abelianization = e.abelianization;
    tr.ok = e.order == base.order && e.abelianization == base.abelianization;
    out.pass = out.pass && tr.ok;
    out.trials.push_back(std::move(tr));
  }
  return out;
}

}  // namespace burnlink
