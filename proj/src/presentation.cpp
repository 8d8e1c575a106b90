#include "burnlink/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include <json.hpp>

#include "burnlink/error.hpp"

namespace burnlink {

Word word_eval_free(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = word_eval_free(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

int exponent_sum(const Word& w, int g) {
  int s = 0;
  for (int x : w) {
    if (x == g) ++s;
    if (x == -g) --s;
  }
  return s;
}

namespace {

// Booth's algorithm: start of the lexicographically least rotation.
std::size_t least_rotation(const Word& s) {
  const std::size_t n = s.size();
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = s[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

Word rotated(const Word& w, std::size_t k) {
  Word r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

}  // namespace

Word cyclic_canonical(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  const Word inv = word_inverse(r);
  Word a = rotated(r, least_rotation(r));
  Word b = rotated(inv, least_rotation(inv));
  return b < a ? b : a;
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    int power = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      auto e = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), power);
      if (ec != std::errc{} || ptr != e.data() + e.size() || e.empty())
        throw ParseError("bad exponent in token '" + std::string(tok) + "'");
      tok = tok.substr(0, caret);
    }
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw ParseError("unknown generator '" + std::string(tok) + "'");
    const int g = static_cast<int>(it - names.begin()) + 1;
    for (int k = 0; k < std::abs(power); ++k) w.push_back(power > 0 ? g : -g);
  }
  return w;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const int run = static_cast<int>(j - i);
    const int g = std::abs(w[i]);
    if (!out.empty()) out += ' ';
    out += g <= static_cast<int>(names.size()) ? names[g - 1] : "g" + std::to_string(g);
    const int e = w[i] > 0 ? run : -run;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("presentation file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("presentation file must hold one object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "generators" && it.key() != "relators")
      throw ParseError("unknown presentation field '" + it.key() + "'");
  Presentation p;
  try {
    p.generator_names = j.at("generators").get<std::vector<std::string>>();
    std::set<std::string> seen;
    for (const auto& n : p.generator_names) {
      if (n.empty() || n.find('^') != std::string::npos ||
          std::any_of(n.begin(), n.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        throw ParseError("invalid generator name '" + n + "'");
      if (!seen.insert(n).second) throw ParseError("duplicate generator name '" + n + "'");
    }
    for (const auto& r : j.value("relators", json::array())) p.relators.push_back(parse_word(r.get<std::string>(), p.generator_names));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad presentation field: ") + e.what());
  }
  return p;
}

std::string print_presentation(const Presentation& p) {
  nlohmann::json j;
  j["generators"] = p.generator_names;
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relators) rels.push_back(word_to_string(r, p.generator_names));
  j["relators"] = rels;
  return j.dump();
}

Presentation core_presentation(const LinkDiagram& d) {
  Presentation p;
  for (int g = 1; g <= d.generator_count(); ++g) p.generator_names.push_back("y" + std::to_string(g));
  for (const auto& c : d.crossings()) p.relators.push_back({c.over, -c.under_in, c.over, -c.under_out});
  return p;
}

Presentation drop_redundant_relator(const Presentation& p) {
  if (p.relators.empty()) throw InvalidArgument("no relator to drop");
  Presentation out = p;
  out.relators.pop_back();
  return out;
}

namespace {

// Remove generator g, shifting higher indices down.
void remove_generator(Presentation& p, int g) {
  p.generator_names.erase(p.generator_names.begin() + (g - 1));
  for (auto& r : p.relators)
    for (int& x : r)
      if (std::abs(x) > g) x += x > 0 ? -1 : 1;
}

}  // namespace

Presentation wada_reduce(const Presentation& p, int kill) {
  if (kill < 1 || kill > p.generator_count())
    throw InvalidArgument("generator " + std::to_string(kill) + " out of range");
  Presentation out;
  out.generator_names = p.generator_names;
  for (const auto& r : p.relators) {
    Word w;
    for (int x : r)
      if (std::abs(x) != kill) w.push_back(x);
    w = word_eval_free(w);
    if (!w.empty()) out.relators.push_back(std::move(w));
  }
  remove_generator(out, kill);
  return out;
}

Presentation wada_reduce(const Presentation& p) {
  if (p.generator_count() == 0) throw InvalidArgument("presentation has no generators");
  return wada_reduce(p, p.generator_count());
}

namespace {

void normalize(Presentation& p) {
  std::vector<Word> kept;
  std::set<Word> keys;
  for (auto& r : p.relators) {
    Word w = cyclic_reduce(r);
    if (w.empty()) continue;
    if (!keys.insert(cyclic_canonical(w)).second) continue;
    kept.push_back(std::move(w));
  }
  p.relators = std::move(kept);
}

struct Elimination {
  std::size_t relator;
  int generator;
};

int occurrences(const Word& w, int g) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [g](int x) { return std::abs(x) == g; }));
}

std::optional<Elimination> pick(const Presentation& p, std::size_t cap, bool ordered_only) {
  std::optional<Elimination> best;
  std::size_t best_len = 0;
  std::vector<int> count(static_cast<std::size_t>(p.generator_count()) + 1, 0);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const Word& r = p.relators[i];
    if (r.size() - 1 > cap) continue;
    int top = 0;
    for (int x : r) {
      top = std::max(top, std::abs(x));
      ++count[std::abs(x)];
    }
    std::vector<int> singles;
    for (int x : r)
      if (count[std::abs(x)] == 1) singles.push_back(std::abs(x));
    for (int x : r) count[std::abs(x)] = 0;
    std::sort(singles.begin(), singles.end());
    for (int g : singles) {
      if (ordered_only && g != top) continue;
      bool better;
      if (!best)
        better = true;
      else if (ordered_only)
        better = g > best->generator || (g == best->generator && r.size() < best_len);
      else
        better = r.size() < best_len || (r.size() == best_len && g > best->generator);
      if (better) {
        best = Elimination{i, g};
        best_len = r.size();
      }
    }
  }
  return best;
}

void eliminate(Presentation& p, const Elimination& e) {
  const Word r = p.relators[e.relator];
  const int g = e.generator;
  auto pos = static_cast<std::size_t>(
      std::find_if(r.begin(), r.end(), [g](int x) { return std::abs(x) == g; }) - r.begin());
  // r ~ g^s v  =>  g = v^-1 (s = 1) or v (s = -1)
  Word v(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
  v.insert(v.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
  const Word sub = r[pos] > 0 ? word_inverse(v) : v;
  const Word sub_inv = word_inverse(sub);
  p.relators.erase(p.relators.begin() + static_cast<std::ptrdiff_t>(e.relator));
  for (auto& rel : p.relators) {
    if (occurrences(rel, g) == 0) continue;
    Word w;
    for (int x : rel) {
      if (x == g)
        w.insert(w.end(), sub.begin(), sub.end());
      else if (x == -g)
        w.insert(w.end(), sub_inv.begin(), sub_inv.end());
      else
        w.push_back(x);
    }
    rel = cyclic_reduce(w);
  }
  remove_generator(p, g);
}

}  // namespace

Presentation tietze_simplify(const Presentation& in, const TietzeOptions& opt) {
  Presentation p = in;
  normalize(p);
  for (bool ordered : {true, false}) {
    while (auto e = pick(p, opt.max_substitution_length, ordered)) {
      eliminate(p, *e);
      normalize(p);
    }
  }
  return p;
}

}  // namespace burnlink
