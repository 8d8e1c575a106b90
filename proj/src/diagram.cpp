#include "burnlink/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "burnlink/error.hpp"

namespace burnlink {

using Item = LinkDiagram::Item;
using Kind = LinkDiagram::Item::Kind;

// ---------------------------------------------------------------- braids

namespace {

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  BraidWord b;
  std::optional<int> header;
  int max_index = 0;
  bool first = true;
  for (auto tok : split_ws(text)) {
    if (first && tok.starts_with("strands=")) {
      header = parse_int(tok.substr(8), "strand count");
      first = false;
      continue;
    }
    first = false;
    if (tok.size() < 2 || tok[0] != 's') throw ParseError("malformed braid token '" + std::string(tok) + "'");
    bool inverse = false;
    auto body = tok.substr(1);
    if (body.ends_with("^-1")) {
      inverse = true;
      body.remove_suffix(3);
    }
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("malformed braid token '" + std::string(tok) + "'");
    int idx = parse_int(body, "generator index");
    if (idx == 0) throw ParseError("braid generator index 0");
    max_index = std::max(max_index, idx);
    b.letters.push_back(inverse ? -idx : idx);
  }
  if (header && strands && *header != *strands)
    throw ParseError("strand count given twice with different values");
  int n = strands ? *strands : header ? *header : max_index + 1;
  if (n < 1) throw ParseError("strand count must be positive");
  if (max_index >= n)
    throw ParseError("generator index " + std::to_string(max_index) + " needs more than " +
                     std::to_string(n) + " strands");
  b.strands = n;
  return b;
}

std::string print_braid(const BraidWord& b) {
  std::string out = "strands=" + std::to_string(b.strands);
  for (int l : b.letters) {
    out += " s" + std::to_string(std::abs(l));
    if (l < 0) out += "^-1";
  }
  return out;
}

std::vector<int> braid_permutation(const BraidWord& b) {
  std::vector<int> at(b.strands);  // at[pos] = strand
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters) {
    int i = std::abs(l) - 1;
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(b.strands);
  for (int pos = 0; pos < b.strands; ++pos) perm[at[pos]] = pos;
  return perm;
}

// ---------------------------------------------------------------- diagrams

LinkDiagram::LinkDiagram(std::vector<LinkDiagram::Component> components, int crossing_count,
                         std::vector<SiteOrientation> orientations)
    : components_(std::move(components)), orientations_(std::move(orientations)) {
  crossings_.assign(crossing_count, {});
  derive();
}

void LinkDiagram::derive() {
  const int n_cross = static_cast<int>(crossings_.size());
  const int n_sites = static_cast<int>(orientations_.size());
  std::vector<int> over_seen(n_cross, 0), under_seen(n_cross, 0);
  std::vector<std::array<int, 2>> mark_seen(n_sites, {0, 0});
  for (const auto& comp : components_)
    for (const auto& it : comp) {
      switch (it.kind) {
        case Kind::Over:
        case Kind::Under:
          if (it.index < 0 || it.index >= n_cross) throw InvalidArgument("crossing index out of range");
          ++(it.kind == Kind::Over ? over_seen : under_seen)[it.index];
          break;
        case Kind::Mark:
          if (it.index < 0 || it.index >= n_sites || it.side < 0 || it.side > 1)
            throw InvalidArgument("site mark out of range");
          ++mark_seen[it.index][it.side];
          break;
      }
    }
  for (int c = 0; c < n_cross; ++c)
    if (over_seen[c] != 1 || under_seen[c] != 1)
      throw InvalidArgument("crossing " + std::to_string(c) + " must be passed once over and once under");
  for (int s = 0; s < n_sites; ++s)
    if (mark_seen[s][0] != 1 || mark_seen[s][1] != 1)
      throw InvalidArgument("site " + std::to_string(s) + " must have exactly one mark per side");

  // Provisional arcs, one per Under item (the arc that starts after it) and
  // one per over-only loop.
  const int nc = static_cast<int>(components_.size());
  std::vector<std::vector<int>> arc_of(nc);  // provisional arc containing item i (Under: the arc it ends)
  std::vector<int> tmp_start_comp, tmp_start_pos;
  std::vector<int> over_tmp(n_cross), in_tmp(n_cross), out_tmp(n_cross);
  std::vector<int> comp_kind(nc);  // 0 free, 1 loop, 2 arcs
  for (int ci = 0; ci < nc; ++ci) {
    const auto& comp = components_[ci];
    const int len = static_cast<int>(comp.size());
    arc_of[ci].assign(len, -1);
    std::vector<int> unders;
    bool any_over = false;
    for (int i = 0; i < len; ++i) {
      if (comp[i].kind == Kind::Under) unders.push_back(i);
      if (comp[i].kind == Kind::Over) any_over = true;
    }
    if (unders.empty()) {
      if (!any_over) continue;
      comp_kind[ci] = 1;
      int id = static_cast<int>(tmp_start_comp.size());
      tmp_start_comp.push_back(ci);
      tmp_start_pos.push_back(0);
      std::fill(arc_of[ci].begin(), arc_of[ci].end(), id);
    } else {
      comp_kind[ci] = 2;
      const int first = static_cast<int>(tmp_start_comp.size());
      const int k = static_cast<int>(unders.size());
      for (int u = 0; u < k; ++u) {
        tmp_start_comp.push_back(ci);
        tmp_start_pos.push_back((unders[u] + 1) % len);
      }
      // items before the first Under belong to the arc started by the last Under
      int cur = first + k - 1;
      for (int i = 0; i < len; ++i) {
        arc_of[ci][i] = cur;
        if (comp[i].kind == Kind::Under) {
          const int started = first + static_cast<int>(std::find(unders.begin(), unders.end(), i) - unders.begin());
          in_tmp[comp[i].index] = cur;
          out_tmp[comp[i].index] = started;
          cur = started;
        }
      }
    }
    for (int i = 0; i < len; ++i)
      if (comp[i].kind == Kind::Over) over_tmp[comp[i].index] = arc_of[ci][i];
  }

  // Canonical numbering: first appearance scanning (over, under_in, under_out).
  const int n_tmp = static_cast<int>(tmp_start_comp.size());
  std::vector<int> canon(n_tmp, 0);
  int next = 0;
  auto number = [&](int t) {
    if (canon[t] == 0) canon[t] = ++next;
    return canon[t];
  };
  for (int c = 0; c < n_cross; ++c) {
    crossings_[c].over = number(over_tmp[c]);
    crossings_[c].under_in = number(in_tmp[c]);
    crossings_[c].under_out = number(out_tmp[c]);
  }
  arc_count_ = next;
  free_components_ = static_cast<int>(std::count(comp_kind.begin(), comp_kind.end(), 0));

  const int n_gen = arc_count_ + free_components_;
  gen_component_.assign(n_gen, 0);
  gen_start_.assign(n_gen, 0);
  gen_overs_.assign(n_gen, 0);
  gen_loop_.assign(n_gen, false);
  for (int t = 0; t < n_tmp; ++t) {
    const int g = canon[t] - 1;
    gen_component_[g] = tmp_start_comp[t];
    gen_start_[g] = tmp_start_pos[t];
    gen_loop_[g] = comp_kind[tmp_start_comp[t]] == 1;
  }
  std::vector<int> free_gen(nc, -1);
  for (int ci = 0, g = arc_count_; ci < nc; ++ci)
    if (comp_kind[ci] == 0) {
      free_gen[ci] = g;
      gen_component_[g++] = ci;
    }
  for (int c = 0; c < n_cross; ++c) ++gen_overs_[crossings_[c].over - 1];

  // Sites in (generator, segment) form.
  sites_.assign(n_sites, {});
  for (int s = 0; s < n_sites; ++s) sites_[s].orientation = orientations_[s];
  for (int ci = 0; ci < nc; ++ci) {
    const auto& comp = components_[ci];
    const int len = static_cast<int>(comp.size());
    for (int i = 0; i < len; ++i) {
      if (comp[i].kind != Kind::Mark) continue;
      int g, seg = 0;
      if (comp_kind[ci] == 0) {
        g = free_gen[ci];
      } else {
        g = canon[arc_of[ci][i]] - 1;
        for (int j = gen_start_[g]; j != i; j = (j + 1) % len)
          if (comp[j].kind == Kind::Over) ++seg;
        if (gen_loop_[g]) seg %= gen_overs_[g];
      }
      auto& site = sites_[comp[i].index];
      (comp[i].side == 0 ? site.arc_a : site.arc_b) = g + 1;
      (comp[i].side == 0 ? site.segment_a : site.segment_b) = seg;
    }
  }
}

std::vector<std::array<int, 2>> LinkDiagram::mark_ranks() const {
  std::vector<std::array<int, 2>> r(sites_.size(), {0, 0});
  for (const auto& comp : components_) {
    const int len = static_cast<int>(comp.size());
    int start = 0;
    for (int i = 0; i < len; ++i)
      if (comp[i].kind != Kind::Mark) {
        start = (i + 1) % len;
        break;
      }
    int run = 0;
    for (int k = 0; k < len; ++k) {
      const Item& it = comp[(start + k) % len];
      if (it.kind != Kind::Mark) {
        run = 0;
        continue;
      }
      r[it.index][it.side] = run++;
    }
  }
  return r;
}

std::map<int, std::vector<int>> LinkDiagram::over_order() const {
  std::map<int, std::vector<int>> out;
  for (int g = 0; g < arc_count_; ++g) {
    const auto& comp = components_[gen_component_[g]];
    const int len = static_cast<int>(comp.size());
    std::vector<int> order;
    for (int i = gen_start_[g], k = 0; k < len; ++k, i = (i + 1) % len) {
      if (comp[i].kind == Kind::Under) break;
      if (comp[i].kind == Kind::Over) order.push_back(comp[i].index);
    }
    if (!std::is_sorted(order.begin(), order.end())) out[g + 1] = std::move(order);
  }
  return out;
}

int LinkDiagram::segment_count(int generator) const {
  if (generator < 1 || generator > generator_count()) throw InvalidArgument("generator out of range");
  const int g = generator - 1;
  if (g >= arc_count_) return 1;
  return gen_loop_[g] ? gen_overs_[g] : gen_overs_[g] + 1;
}

bool LinkDiagram::site_valid(const MoveSite& s) const {
  auto ok = [&](int g, int seg) {
    return g >= 1 && g <= generator_count() && seg >= 0 && seg < segment_count(g);
  };
  if (!ok(s.arc_a, s.segment_a) || !ok(s.arc_b, s.segment_b)) return false;
  return s.arc_a != s.arc_b || s.segment_a != s.segment_b;
}

std::vector<MoveSite> LinkDiagram::candidate_sites() const {
  std::vector<MoveSite> out;
  const int n = generator_count();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int sa = 0; sa < segment_count(a); ++sa)
        for (int sb = 0; sb < segment_count(b); ++sb)
          for (auto o : {SiteOrientation::Parallel, SiteOrientation::Antiparallel})
            out.push_back({a, sa, b, sb, o});
  return out;
}

LinkDiagram::Position LinkDiagram::locate(int generator, int segment) const {
  const int g = generator - 1;
  const int ci = gen_component_[g];
  const auto& comp = components_[ci];
  const int len = static_cast<int>(comp.size());
  if (g >= arc_count_ || segment == 0) return {ci, g >= arc_count_ ? 0 : gen_start_[g]};
  int seen = 0;
  for (int i = gen_start_[g];; i = (i + 1) % len)
    if (comp[i].kind == Kind::Over && ++seen == segment) return {ci, i + 1};
}

LinkDiagram LinkDiagram::with_site(const MoveSite& s) const {
  if (!site_valid(s)) throw InvalidArgument("invalid move site");
  auto comps = components_;
  auto orients = orientations_;
  const int id = static_cast<int>(orients.size());
  orients.push_back(s.orientation);
  Position pa = locate(s.arc_a, s.segment_a), pb = locate(s.arc_b, s.segment_b);
  // insert the later position first so the earlier offset stays valid
  if (pa.component == pb.component && pa.offset >= pb.offset) {
    comps[pa.component].insert(comps[pa.component].begin() + pa.offset, Item{Kind::Mark, id, 0});
    comps[pb.component].insert(comps[pb.component].begin() + pb.offset, Item{Kind::Mark, id, 1});
  } else {
    comps[pb.component].insert(comps[pb.component].begin() + pb.offset, Item{Kind::Mark, id, 1});
    comps[pa.component].insert(comps[pa.component].begin() + pa.offset, Item{Kind::Mark, id, 0});
  }
  return LinkDiagram(std::move(comps), crossing_count(), std::move(orients));
}

LinkDiagram LinkDiagram::from_pd(int arc_count, const std::vector<Crossing>& crossings,
                                 int free_components, const std::vector<MoveSite>& sites,
                                 const std::map<int, std::vector<int>>& over_order,
                                 const std::vector<std::array<int, 2>>& mark_ranks) {
  if (arc_count < 0 || free_components < 0) throw InvalidArgument("negative counts in PD data");
  const int n = static_cast<int>(crossings.size());
  std::vector<int> ends_at(arc_count + 1, -1), starts_at(arc_count + 1, -1);
  std::vector<std::vector<int>> overs(arc_count + 1);
  for (int c = 0; c < n; ++c) {
    const auto& x = crossings[c];
    for (int a : {x.over, x.under_in, x.under_out})
      if (a < 1 || a > arc_count) throw InvalidArgument("arc id out of range in crossing " + std::to_string(c + 1));
    if (ends_at[x.under_in] != -1) throw InvalidArgument("arc " + std::to_string(x.under_in) + " ends at two crossings");
    if (starts_at[x.under_out] != -1)
      throw InvalidArgument("arc " + std::to_string(x.under_out) + " starts at two crossings");
    ends_at[x.under_in] = c;
    starts_at[x.under_out] = c;
    overs[x.over].push_back(c);
  }
  for (const auto& [a, order] : over_order) {
    if (a < 1 || a > arc_count) throw InvalidArgument("over order given for unknown arc " + std::to_string(a));
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != overs[a]) throw InvalidArgument("over order of arc " + std::to_string(a) + " is not a permutation of its over-crossings");
    overs[a] = order;
  }
  for (int a = 1; a <= arc_count; ++a) {
    if ((ends_at[a] == -1) != (starts_at[a] == -1))
      throw InvalidArgument("arc " + std::to_string(a) + " has only one under-crossing end");
    if (ends_at[a] == -1 && overs[a].empty())
      throw InvalidArgument("arc " + std::to_string(a) + " appears in no crossing");
  }
  const int n_gen = arc_count + free_components;
  std::vector<int> n_segments(n_gen + 1, 1);
  for (int a = 1; a <= arc_count; ++a)
    n_segments[a] = static_cast<int>(overs[a].size()) + (ends_at[a] == -1 ? 0 : 1);
  if (!mark_ranks.empty() && mark_ranks.size() != sites.size())
    throw InvalidArgument("mark ranks must be given for every marked site");
  // marks[(generator, segment)] as (rank, item)
  std::map<std::pair<int, int>, std::vector<std::pair<int, Item>>> marks;
  std::vector<SiteOrientation> orients;
  for (const auto& s : sites) {
    for (auto [g, seg] : {std::pair{s.arc_a, s.segment_a}, std::pair{s.arc_b, s.segment_b}})
      if (g < 1 || g > n_gen || seg < 0 || seg >= n_segments[g])
        throw InvalidArgument("marked site position out of range");
    if (s.arc_a == s.arc_b && s.segment_a == s.segment_b) throw InvalidArgument("marked site uses one position twice");
    const int id = static_cast<int>(orients.size());
    orients.push_back(s.orientation);
    auto& ba = marks[{s.arc_a, s.segment_a}];
    ba.emplace_back(mark_ranks.empty() ? static_cast<int>(ba.size()) : mark_ranks[id][0], Item{Kind::Mark, id, 0});
    auto& bb = marks[{s.arc_b, s.segment_b}];
    bb.emplace_back(mark_ranks.empty() ? static_cast<int>(bb.size()) : mark_ranks[id][1], Item{Kind::Mark, id, 1});
  }
  for (auto& [key, bucket] : marks) {
    std::stable_sort(bucket.begin(), bucket.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < bucket.size(); ++i)
      if (bucket[i].first == bucket[i - 1].first) throw InvalidArgument("two marks share a rank on one segment");
  }
  auto emit_marks = [&](Component& comp, int g, int seg) {
    auto it = marks.find({g, seg});
    if (it != marks.end())
      for (const auto& m : it->second) comp.push_back(m.second);
  };
  auto emit_arc = [&](Component& comp, int a) {
    emit_marks(comp, a, 0);
    for (std::size_t k = 0; k < overs[a].size(); ++k) {
      comp.push_back({Kind::Over, overs[a][k], 0});
      if (ends_at[a] != -1 || k + 1 < overs[a].size()) emit_marks(comp, a, static_cast<int>(k) + 1);
    }
  };

  std::vector<LinkDiagram::Component> comps;
  std::vector<bool> done(arc_count + 1, false);
  for (int a0 = 1; a0 <= arc_count; ++a0) {
    if (done[a0]) continue;
    LinkDiagram::Component comp;
    if (ends_at[a0] == -1) {
      emit_arc(comp, a0);
      done[a0] = true;
    } else {
      int a = a0;
      do {
        if (done[a]) throw InvalidArgument("under-arc chain does not close into a cycle");
        done[a] = true;
        emit_arc(comp, a);
        comp.push_back({Kind::Under, ends_at[a], 0});
        a = crossings[ends_at[a]].under_out;
      } while (a != a0);
    }
    comps.push_back(std::move(comp));
  }
  for (int f = 0; f < free_components; ++f) {
    LinkDiagram::Component comp;
    emit_marks(comp, arc_count + f + 1, 0);
    comps.push_back(std::move(comp));
  }
  return LinkDiagram(std::move(comps), n, std::move(orients));
}

LinkDiagram braid_closure(const BraidWord& b, bool mark_every_level) {
  const int n = b.strands;
  int sites = std::max(0, n - 1);
  std::vector<LinkDiagram::Component> pieces(n);  // items along the strand starting at top position i
  for (int i = 0; i < n; ++i) {
    if (i > 0) pieces[i].push_back({Kind::Mark, i - 1, 1});
    if (i + 1 < n) pieces[i].push_back({Kind::Mark, i, 0});
  }
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  for (int c = 0; c < static_cast<int>(b.letters.size()); ++c) {
    const int l = b.letters[c];
    const int i = std::abs(l) - 1;
    const int left = at[i], right = at[i + 1];
    const int over = l > 0 ? left : right;
    pieces[over].push_back({Kind::Over, c, 0});
    pieces[over == left ? right : left].push_back({Kind::Under, c, 0});
    std::swap(at[i], at[i + 1]);
    if (!mark_every_level) continue;
    for (int pos = 0; pos + 1 < n; ++pos, ++sites) {
      pieces[at[pos]].push_back({Kind::Mark, sites, 0});
      pieces[at[pos + 1]].push_back({Kind::Mark, sites, 1});
    }
  }
  // strand at[pos] continues with the strand starting at top position pos
  std::vector<int> succ(n);
  for (int pos = 0; pos < n; ++pos) succ[at[pos]] = pos;
  std::vector<LinkDiagram::Component> comps;
  std::vector<bool> seen(n, false);
  for (int s0 = 0; s0 < n; ++s0) {
    if (seen[s0]) continue;
    LinkDiagram::Component comp;
    for (int s = s0; !seen[s]; s = succ[s]) {
      seen[s] = true;
      comp.insert(comp.end(), pieces[s].begin(), pieces[s].end());
    }
    comps.push_back(std::move(comp));
  }
  std::vector<SiteOrientation> orients(sites, SiteOrientation::Parallel);
  return LinkDiagram(std::move(comps), static_cast<int>(b.letters.size()), std::move(orients));
}

int component_count(const LinkDiagram& d) { return d.component_count(); }

// ---------------------------------------------------------------- PD text

namespace {

const char* orientation_name(SiteOrientation o) {
  return o == SiteOrientation::Parallel ? "parallel" : "antiparallel";
}

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("PD file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("PD file must hold one object");
  static const std::set<std::string> known{"arc_count", "crossings", "free_components", "marked_sites",
                                           "over_order"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ParseError("unknown PD field '" + it.key() + "'");
  try {
    const int arc_count = j.at("arc_count").get<int>();
    std::vector<Crossing> crossings;
    for (const auto& c : j.value("crossings", json::array())) {
      if (!c.is_array() || c.size() != 3) throw ParseError("crossing must be [over, under_in, under_out]");
      crossings.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
    }
    const int free_components = j.value("free_components", 0);
    std::vector<MoveSite> sites;
    std::vector<std::array<int, 2>> ranks;
    for (const auto& s : j.value("marked_sites", json::array())) {
      for (auto it = s.begin(); it != s.end(); ++it)
        if (it.key() != "arcs" && it.key() != "segments" && it.key() != "orientation" && it.key() != "ranks")
          throw ParseError("unknown marked-site field '" + it.key() + "'");
      MoveSite m;
      const auto& arcs = s.at("arcs");
      if (!arcs.is_array() || arcs.size() != 2) throw ParseError("marked site needs two arcs");
      m.arc_a = arcs[0].get<int>();
      m.arc_b = arcs[1].get<int>();
      if (s.contains("segments")) {
        const auto& seg = s.at("segments");
        if (!seg.is_array() || seg.size() != 2) throw ParseError("marked site needs two segments");
        m.segment_a = seg[0].get<int>();
        m.segment_b = seg[1].get<int>();
      }
      const auto o = s.value("orientation", std::string("parallel"));
      if (o == "parallel")
        m.orientation = SiteOrientation::Parallel;
      else if (o == "antiparallel")
        m.orientation = SiteOrientation::Antiparallel;
      else
        throw ParseError("unknown site orientation '" + o + "'");
      if (s.contains("ranks")) {
        const auto& rk = s.at("ranks");
        if (!rk.is_array() || rk.size() != 2) throw ParseError("marked site ranks must be [a, b]");
        if (ranks.size() != sites.size()) throw ParseError("ranks must be given for all marked sites or none");
        ranks.push_back({rk[0].get<int>(), rk[1].get<int>()});
      } else if (!ranks.empty()) {
        throw ParseError("ranks must be given for all marked sites or none");
      }
      sites.push_back(m);
    }
    if (!ranks.empty() && ranks.size() != sites.size())
      throw ParseError("ranks must be given for all marked sites or none");
    std::map<int, std::vector<int>> order;
    for (const auto& o : j.value("over_order", json::array())) {
      if (!o.is_array() || o.size() != 2) throw ParseError("over_order entries are [arc, [crossings]]");
      std::vector<int> cs;
      for (const auto& c : o[1]) cs.push_back(c.get<int>() - 1);
      if (!order.emplace(o[0].get<int>(), std::move(cs)).second) throw ParseError("over_order repeats an arc");
    }
    return LinkDiagram::from_pd(arc_count, crossings, free_components, sites, order, ranks);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad PD field: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string print_pd(const LinkDiagram& d) {
  using nlohmann::json;
  json j;
  j["arc_count"] = d.arc_count();
  json cs = json::array();
  for (const auto& c : d.crossings()) cs.push_back({c.over, c.under_in, c.under_out});
  j["crossings"] = cs;
  j["free_components"] = d.free_component_count();
  json ss = json::array();
  const auto ranks = d.mark_ranks();
  const bool ranked = std::any_of(ranks.begin(), ranks.end(), [](const auto& r) { return r[0] != 0 || r[1] != 0; });
  for (std::size_t i = 0; i < d.marked_sites().size(); ++i) {
    const MoveSite& s = d.marked_sites()[i];
    json site = {{"arcs", {s.arc_a, s.arc_b}},
                 {"segments", {s.segment_a, s.segment_b}},
                 {"orientation", orientation_name(s.orientation)}};
    if (ranked) site["ranks"] = {ranks[i][0], ranks[i][1]};
    ss.push_back(site);
  }
  j["marked_sites"] = ss;
  const auto order = d.over_order();
  if (!order.empty()) {
    json os = json::array();
    for (const auto& [a, cs] : order) {
      json c1 = json::array();
      for (int c : cs) c1.push_back(c + 1);
      os.push_back({a, c1});
    }
    j["over_order"] = os;
  }
  return j.dump();
}

// ---------------------------------------------------------------- tangles

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidArgument("slope arithmetic overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw InvalidArgument("slope arithmetic overflow");
  return r;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Slope Slope::make(long long p, long long q) {
  if (p == 0 && q == 0) throw InvalidArgument("slope 0/0");
  if (q == 0) return infinity();
  long long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::string to_string(const Slope& s) {
  if (s.infinite()) return "inf";
  return std::to_string(s.p) + "/" + std::to_string(s.q);
}

std::string to_string(const RationalTangleSpec& t) {
  std::string out = "T(";
  for (std::size_t i = 0; i < t.coeffs.size(); ++i) out += (i ? "," : "") + std::to_string(t.coeffs[i]);
  return out + ")";
}

Slope conway_slope(const RationalTangleSpec& t) {
  if (t.coeffs.empty()) throw InvalidArgument("empty tangle specification");
  long long p = t.coeffs[0], q = 1;
  for (std::size_t k = 1; k < t.coeffs.size(); ++k) {
    // a + 1/(p/q) = (a p + q) / p
    long long np = checked_add(checked_mul(t.coeffs[k], p), q);
    q = p;
    p = np;
  }
  return Slope::make(p, q);
}

bool tangles_equivalent(const RationalTangleSpec& a, const RationalTangleSpec& b) {
  return conway_slope(a) == conway_slope(b);
}

RationalTangleSpec pq_tangle_from_slope(long long p, long long q) {
  Slope s = Slope::make(p, q);
  if (s.infinite()) return {{0, 0}};
  std::vector<long long> cf;
  long long a = s.p, b = s.q;
  while (b != 0) {
    long long k = floor_div(a, b);
    cf.push_back(k);
    long long r = a - k * b;
    a = b;
    b = r;
  }
  std::reverse(cf.begin(), cf.end());
  return {cf};
}

namespace {

struct TangleStrand {
  std::array<int, 2> ends;  // boundary positions 0..3
  std::vector<Item> items;  // from ends[0] to ends[1]
};

// Four boundary points on a line, closed underneath by two caps and braided
// upward: H twists act on positions 1,2 and V twists on positions 0,1.
std::array<TangleStrand, 2> build_tangle(const RationalTangleSpec& t, int base, int& n_crossings) {
  const int n = static_cast<int>(t.coeffs.size());
  std::array<std::pair<int, int>, 2> caps =
      n % 2 == 1 ? std::array{std::pair{0, 1}, std::pair{2, 3}} : std::array{std::pair{0, 3}, std::pair{1, 2}};
  std::array<int, 4> end_at{};
  for (int c = 0; c < 2; ++c) {
    end_at[caps[c].first] = 2 * c;
    end_at[caps[c].second] = 2 * c + 1;
  }
  std::array<std::vector<Item>, 4> climb;
  int made = 0;
  for (int k = 0; k < n; ++k) {
    const bool horizontal = (n - 1 - k) % 2 == 0;
    const int pos = horizontal ? 1 : 0;
    const long long e = horizontal ? t.coeffs[k] : -t.coeffs[k];
    for (long long r = 0; r < std::abs(e); ++r) {
      const int idx = base + made++;
      const int left = end_at[pos], right = end_at[pos + 1];
      const int over = e > 0 ? left : right;
      climb[over].push_back({Kind::Over, idx, 0});
      climb[over == left ? right : left].push_back({Kind::Under, idx, 0});
      std::swap(end_at[pos], end_at[pos + 1]);
    }
  }
  std::array<int, 4> top{};
  for (int pos = 0; pos < 4; ++pos) top[end_at[pos]] = pos;
  std::array<TangleStrand, 2> out;
  for (int c = 0; c < 2; ++c) {
    out[c].ends = {top[2 * c], top[2 * c + 1]};
    out[c].items.assign(climb[2 * c].rbegin(), climb[2 * c].rend());
    out[c].items.insert(out[c].items.end(), climb[2 * c + 1].begin(), climb[2 * c + 1].end());
  }
  n_crossings = made;
  return out;
}

// Cut-point labels of the two site strands.
enum Label { AIn = 0, AOut = 1, BIn = 2, BOut = 3 };

struct Path {
  std::vector<Item> items;
  int start;  // label at the first item
  int end;    // label after the last item
};

}  // namespace

LinkDiagram apply_pq_move(const LinkDiagram& d, const MoveSite& site, long long p, long long q) {
  const RationalTangleSpec spec = pq_tangle_from_slope(p, q);

  // Resolve the site to an index with marks present in the sequences.
  int sid = -1;
  for (int s = 0; s < static_cast<int>(d.sites_.size()); ++s)
    if (d.sites_[s] == site) {
      sid = s;
      break;
    }
  const LinkDiagram work = sid >= 0 ? d : d.with_site(site);
  if (sid < 0) sid = static_cast<int>(work.orientations_.size()) - 1;
  const SiteOrientation orient = work.orientations_[sid];

  std::array<std::pair<int, int>, 2> mark_pos{};  // (component, index) per side
  for (int ci = 0; ci < static_cast<int>(work.components_.size()); ++ci)
    for (int i = 0; i < static_cast<int>(work.components_[ci].size()); ++i) {
      const auto& it = work.components_[ci][i];
      if (it.kind == Kind::Mark && it.index == sid) mark_pos[it.side] = {ci, i};
    }

  // Cut the marked components into paths.
  std::vector<Path> paths;
  auto slice = [&](int ci, int from, int to) {  // items strictly between from and to, cyclically
    const auto& comp = work.components_[ci];
    const int len = static_cast<int>(comp.size());
    std::vector<Item> out;
    for (int i = (from + 1) % len; i != to; i = (i + 1) % len) out.push_back(comp[i]);
    return out;
  };
  const auto [ca, ia] = mark_pos[0];
  const auto [cb, ib] = mark_pos[1];
  if (ca == cb) {
    paths.push_back({slice(ca, ia, ib), AOut, BIn});
    paths.push_back({slice(ca, ib, ia), BOut, AIn});
  } else {
    paths.push_back({slice(ca, ia, ia), AOut, AIn});
    paths.push_back({slice(cb, ib, ib), BOut, BIn});
  }

  int added = 0;
  const auto strands = build_tangle(spec, work.crossing_count(), added);
  const std::array<int, 4> label_at_pos = orient == SiteOrientation::Parallel
                                              ? std::array<int, 4>{BIn, BOut, AOut, AIn}
                                              : std::array<int, 4>{BOut, BIn, AOut, AIn};

  // label -> (path, is_start); label -> (strand, end)
  std::array<std::pair<int, bool>, 4> path_end{};
  for (int k = 0; k < static_cast<int>(paths.size()); ++k) {
    path_end[paths[k].start] = {k, true};
    path_end[paths[k].end] = {k, false};
  }
  std::array<std::pair<int, int>, 4> strand_end{};
  for (int s = 0; s < 2; ++s)
    for (int e = 0; e < 2; ++e) strand_end[label_at_pos[strands[s].ends[e]]] = {s, e};

  const int mark_a_label = AOut;
  const int mark_b_label = orient == SiteOrientation::Parallel ? BOut : BIn;
  std::vector<bool> path_reversed(paths.size(), false);
  std::vector<bool> visited(paths.size(), false);
  std::array<bool, 2> away{};  // does traversal leave the tangle at the kept marks
  std::vector<LinkDiagram::Component> fresh;
  for (int p0 = 0; p0 < static_cast<int>(paths.size()); ++p0) {
    if (visited[p0]) continue;
    LinkDiagram::Component comp;
    int cur = p0;
    bool forward = true;
    while (!visited[cur]) {
      visited[cur] = true;
      path_reversed[cur] = !forward;
      const Path& path = paths[cur];
      const int entry = forward ? path.start : path.end;
      const int exit = forward ? path.end : path.start;
      auto place_mark = [&](int label, bool entering) {
        if (label == mark_a_label) {
          comp.push_back({Kind::Mark, sid, 0});
          away[0] = entering;
        }
        if (label == mark_b_label) {
          comp.push_back({Kind::Mark, sid, 1});
          away[1] = entering;
        }
      };
      place_mark(entry, true);
      if (forward)
        comp.insert(comp.end(), path.items.begin(), path.items.end());
      else
        comp.insert(comp.end(), path.items.rbegin(), path.items.rend());
      place_mark(exit, false);
      const auto [s, e] = strand_end[exit];
      const auto& st = strands[s];
      if (e == 0)
        comp.insert(comp.end(), st.items.begin(), st.items.end());
      else
        comp.insert(comp.end(), st.items.rbegin(), st.items.rend());
      const int other = label_at_pos[st.ends[1 - e]];
      cur = path_end[other].first;
      forward = path_end[other].second;
    }
    fresh.push_back(std::move(comp));
  }

  auto orients = work.orientations_;
  orients[sid] = away[0] == away[1] ? SiteOrientation::Parallel : SiteOrientation::Antiparallel;
  std::vector<int> flips(orients.size(), 0);
  for (std::size_t k = 0; k < paths.size(); ++k)
    if (path_reversed[k])
      for (const auto& it : paths[k].items)
        if (it.kind == Kind::Mark) flips[it.index] ^= 1;
  for (std::size_t s = 0; s < orients.size(); ++s)
    if (static_cast<int>(s) != sid && flips[s])
      orients[s] = orients[s] == SiteOrientation::Parallel ? SiteOrientation::Antiparallel
                                                            : SiteOrientation::Parallel;

  std::vector<LinkDiagram::Component> comps;
  bool placed = false;
  for (int ci = 0; ci < static_cast<int>(work.components_.size()); ++ci) {
    if (ci == ca || ci == cb) {
      if (!placed) {
        for (auto& f : fresh) comps.push_back(std::move(f));
        placed = true;
      }
      continue;
    }
    comps.push_back(work.components_[ci]);
  }
  return LinkDiagram(std::move(comps), work.crossing_count() + added, std::move(orients));
}

}  // namespace burnlink
