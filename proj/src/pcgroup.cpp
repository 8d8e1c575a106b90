#include "burnlink/pcgroup.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "burnlink/error.hpp"
#include "burnlink/gfp_kernels.hpp"
#include "burnlink/gfp_linalg.hpp"

#ifndef BURNLINK_DEFAULT_DATA_DIR
#define BURNLINK_DEFAULT_DATA_DIR "data"
#endif

namespace burnlink {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> parse_int_list(std::string_view s, std::string_view what) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string_view::npos) j = s.size();
    auto tok = s.substr(i, j - i);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("malformed " + std::string(what) + " '" + std::string(s) + "'");
    out.push_back(v);
    i = j + 1;
  }
  return out;
}

}  // namespace

PcPresentation::PcPresentation(std::string name, unsigned prime, int rank, unsigned exponent,
                               std::vector<int> weights, std::vector<PcElement> power_rhs,
                               std::vector<std::vector<PcElement>> comm_rhs)
    : name_(std::move(name)),
      p_(prime),
      m_(static_cast<int>(weights.size())),
      rank_(rank),
      exponent_(exponent),
      weights_(std::move(weights)),
      power_(std::move(power_rhs)),
      comm_(std::move(comm_rhs)) {
  validate();
  bits_ = p_ <= 3 ? 2 : 0;
  if (bits_ == 0)
    while ((1u << bits_) < p_) ++bits_;

  conj_.assign(m_, {});
  commutes_later_.assign(m_, true);
  trivial_central_.assign(m_, false);
  for (int j = 0; j < m_; ++j) {
    conj_[j].assign(j, {});
    for (int k = 0; k < j; ++k) {
      PcElement c = comm_[j][k];
      c[j] = 1;  // g_j^{g_k} = g_j [g_j, g_k], the tail lives beyond j
      conj_[j][k] = std::move(c);
      if (!is_identity(comm_[j][k])) commutes_later_[k] = false;
    }
  }
  for (int k = 0; k < m_; ++k) {
    bool central = commutes_later_[k] && is_identity(power_[k]);
    for (int i = 0; i < k && central; ++i) central = is_identity(comm_[k][i]);
    trivial_central_[k] = central;
  }
  central_from_ = m_;
  while (central_from_ > 0 && trivial_central_[central_from_ - 1]) --central_from_;
}

void PcPresentation::validate() const {
  if (!is_prime(p_) || p_ >= 16) throw DataError("pc presentation prime must be a prime below 16");
  if (m_ > kMaxGenerators) throw DataError("too many pc generators");
  if (rank_ < 0 || rank_ > m_) throw DataError("rank out of range");
  for (int i = 0; i < m_; ++i) {
    if (weights_[i] < 1 || (i > 0 && weights_[i] < weights_[i - 1])) throw DataError("weights must be positive and nondecreasing");
  }
  if (static_cast<int>(power_.size()) != m_ || static_cast<int>(comm_.size()) != m_)
    throw DataError("relation tables have the wrong size");
  auto check_vec = [&](const PcElement& v, int above, int min_weight, const std::string& what) {
    if (static_cast<int>(v.size()) != m_) throw DataError(what + ": wrong length");
    for (int t = 0; t < m_; ++t) {
      if (v[t] >= p_) throw DataError(what + ": digit out of range");
      if (v[t] && (t <= above || weights_[t] < min_weight))
        throw DataError(what + ": right side uses generator " + std::to_string(t + 1) + " of too small index or weight");
    }
  };
  for (int i = 0; i < m_; ++i) {
    check_vec(power_[i], i, weights_[i], "power relation " + std::to_string(i + 1));
    if (static_cast<int>(comm_[i].size()) < i) throw DataError("commutator table has the wrong size");
    for (int j = 0; j < i; ++j)
      check_vec(comm_[i][j], i, weights_[i] + weights_[j],
                "commutator relation " + std::to_string(i + 1) + "," + std::to_string(j + 1));
  }
}

PcPresentation PcPresentation::parse(std::string_view text) {
  std::string name;
  unsigned prime = 0, exponent = 0;
  int m = -1, rank = -1;
  std::vector<int> weights;
  std::map<int, PcElement> powers;
  std::map<std::pair<int, int>, PcElement> comms;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto vec = [&](std::string_view s) {
    if (m < 0) throw ParseError("relation before ngens header");
    auto v = parse_int_list(s, "exponent vector");
    if (static_cast<int>(v.size()) != m) throw ParseError("exponent vector has wrong length at line " + std::to_string(lineno));
    PcElement e(m);
    for (int i = 0; i < m; ++i) {
      if (v[i] < 0 || v[i] > 255) throw ParseError("digit out of range at line " + std::to_string(lineno));
      e[i] = static_cast<std::uint8_t>(v[i]);
    }
    return e;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto trimmed = std::string_view(rest);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    auto one_int = [&] {
      auto v = parse_int_list(trimmed, key);
      if (v.size() != 1) throw ParseError("expected one integer after '" + key + "'");
      return v[0];
    };
    if (key == "name") {
      name = std::string(trimmed);
    } else if (key == "prime") {
      prime = static_cast<unsigned>(one_int());
    } else if (key == "ngens") {
      m = one_int();
    } else if (key == "rank") {
      rank = one_int();
    } else if (key == "exponent") {
      exponent = static_cast<unsigned>(one_int());
    } else if (key == "weights") {
      weights = parse_int_list(trimmed, "weights");
    } else if (key == "p" || key == "c") {
      auto eq = trimmed.find('=');
      if (eq == std::string_view::npos) throw ParseError("missing '=' at line " + std::to_string(lineno));
      std::istringstream idx{std::string(trimmed.substr(0, eq))};
      int i = 0, j = 0;
      if (!(idx >> i)) throw ParseError("missing index at line " + std::to_string(lineno));
      if (key == "c" && !(idx >> j)) throw ParseError("missing second index at line " + std::to_string(lineno));
      std::string extra;
      if (idx >> extra) throw ParseError("unexpected token at line " + std::to_string(lineno));
      auto v = vec(trimmed.substr(eq + 1));
      if (i < 1 || i > m || (key == "c" && (j < 1 || j >= i)))
        throw ParseError("relation index out of range at line " + std::to_string(lineno));
      bool fresh = key == "p" ? powers.emplace(i - 1, v).second : comms.emplace(std::pair{i - 1, j - 1}, v).second;
      if (!fresh) throw ParseError("duplicate relation at line " + std::to_string(lineno));
    } else {
      throw ParseError("unknown key '" + key + "' at line " + std::to_string(lineno));
    }
  }
  if (prime == 0 || m < 0) throw ParseError("missing prime or ngens header");
  if (static_cast<int>(weights.size()) != m) throw ParseError("weights list has wrong length");
  if (rank < 0) rank = static_cast<int>(std::count(weights.begin(), weights.end(), 1));
  if (exponent == 0) exponent = prime;
  std::vector<PcElement> power_rhs(m);
  std::vector<std::vector<PcElement>> comm_rhs(m);
  for (int i = 0; i < m; ++i) {
    auto it = powers.find(i);
    if (it == powers.end()) throw ParseError("missing power relation for generator " + std::to_string(i + 1));
    power_rhs[i] = it->second;
    comm_rhs[i].resize(i);
    for (int j = 0; j < i; ++j) {
      auto c = comms.find({i, j});
      if (c == comms.end())
        throw ParseError("missing commutator relation " + std::to_string(i + 1) + " " + std::to_string(j + 1));
      comm_rhs[i][j] = c->second;
    }
  }
  return PcPresentation(name, prime, rank, exponent, std::move(weights), std::move(power_rhs), std::move(comm_rhs));
}

PcPresentation PcPresentation::elementary_abelian(unsigned prime, int rank) {
  std::vector<PcElement> pw(rank, PcElement(rank, 0));
  std::vector<std::vector<PcElement>> cm(rank);
  for (int i = 0; i < rank; ++i) cm[i].assign(i, PcElement(rank, 0));
  return PcPresentation("E" + std::to_string(prime) + "^" + std::to_string(rank), prime, rank, prime,
                        std::vector<int>(rank, 1), std::move(pw), std::move(cm));
}

std::string PcPresentation::to_text() const {
  auto vec = [&](const PcElement& v) {
    std::string s;
    for (int i = 0; i < m_; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::ostringstream out;
  out << "name " << name_ << "\nprime " << p_ << "\nngens " << m_ << "\nrank " << rank_ << "\nexponent "
      << exponent_ << "\nweights ";
  for (int i = 0; i < m_; ++i) out << (i ? "," : "") << weights_[i];
  out << '\n';
  for (int i = 0; i < m_; ++i) out << "p " << i + 1 << " = " << vec(power_[i]) << '\n';
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < i; ++j) out << "c " << i + 1 << ' ' << j + 1 << " = " << vec(comm_[i][j]) << '\n';
  return out.str();
}

std::uint64_t PcPresentation::order() const {
  std::uint64_t n = 1;
  for (int i = 0; i < m_; ++i) {
    if (n > UINT64_MAX / p_) throw EngineTooSmall("group order exceeds 64 bits");
    n *= p_;
  }
  return n;
}

PcElement PcPresentation::generator(int i) const {
  if (i < 0 || i >= m_) throw InvalidArgument("pc generator index out of range");
  PcElement e(m_, 0);
  e[i] = 1;
  return e;
}

bool PcPresentation::is_identity(const PcElement& a) const {
  return kernels::is_zero(a);
}

int PcPresentation::depth(const PcElement& a) const {
  for (int i = 0; i < m_; ++i)
    if (a[i]) return i;
  return m_;
}

void PcPresentation::mul_gen(std::uint8_t* r, int k, std::uint64_t& steps) const {
  if (++steps > step_budget_) throw DataError("collection step budget exceeded in " + name_);
  if (trivial_central_[k]) {
    r[k] = static_cast<std::uint8_t>(r[k] + 1u == p_ ? 0 : r[k] + 1);
    return;
  }
  if (commutes_later_[k] && r[k] + 1u < p_) {
    ++r[k];
    return;
  }
  std::array<std::uint8_t, kMaxGenerators> saved{};
  int last = k;
  for (int j = k + 1; j < central_from_; ++j) {
    if (r[j] == 0 || trivial_central_[j]) continue;
    saved[j] = r[j];
    r[j] = 0;
    last = j;
  }
  if (++r[k] == p_) {
    r[k] = 0;
    const PcElement& w = power_[k];
    for (int j = k + 1; j < m_; ++j) {
      if (!w[j]) continue;
      r[j] = trivial_central_[j] ? static_cast<std::uint8_t>((r[j] + w[j]) % p_) : w[j];
    }
  }
  for (int j = k + 1; j <= last; ++j)
    for (unsigned t = 0; t < saved[j]; ++t) mul_elem(r, conj_[j][k], steps);
}

void PcPresentation::mul_elem(std::uint8_t* r, const PcElement& e, std::uint64_t& steps) const {
  for (int i = 0; i < central_from_; ++i)
    for (unsigned t = 0; t < e[i]; ++t) mul_gen(r, i, steps);
  if (central_from_ < m_)
    kernels::add_mod(std::span<std::uint8_t>(r + central_from_, m_ - central_from_),
                     std::span<const std::uint8_t>(e.data() + central_from_, m_ - central_from_), p_);
}

void PcPresentation::multiply_into(PcElement& acc, const PcElement& b) const {
  std::uint64_t steps = 0;
  mul_elem(acc.data(), b, steps);
}

PcElement PcPresentation::multiply(const PcElement& a, const PcElement& b) const {
  PcElement r = a;
  multiply_into(r, b);
  return r;
}

PcElement PcPresentation::inverse(const PcElement& a) const {
  PcElement r = a, x(m_, 0);
  std::uint64_t steps = 0;
  for (int i = 0; i < m_; ++i) {
    if (!r[i]) continue;
    const unsigned c = p_ - r[i];
    x[i] = static_cast<std::uint8_t>(c);
    for (unsigned t = 0; t < c; ++t) mul_gen(r.data(), i, steps);
  }
  return x;
}

PcElement PcPresentation::power(const PcElement& a, long long k) const {
  if (k < 0) return power(inverse(a), -k);
  PcElement result = identity(), base = a;
  while (k) {
    if (k & 1) multiply_into(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

PcElement PcPresentation::commutator(const PcElement& a, const PcElement& b) const {
  PcElement r = inverse(a);
  multiply_into(r, inverse(b));
  multiply_into(r, a);
  multiply_into(r, b);
  return r;
}

PcElement PcPresentation::left_normed(const std::vector<PcElement>& xs) const {
  if (xs.size() < 2) throw InvalidArgument("left-normed commutator needs at least two entries");
  PcElement c = commutator(xs[0], xs[1]);
  for (std::size_t i = 2; i < xs.size(); ++i) c = commutator(c, xs[i]);
  return c;
}

PcElement PcPresentation::conjugate(const PcElement& a, const PcElement& g) const {
  PcElement r = inverse(g);
  multiply_into(r, a);
  multiply_into(r, g);
  return r;
}

std::uint64_t PcPresentation::pack(const PcElement& a) const {
  if (m_ * bits_ > 64) throw EngineTooSmall("element does not fit a 64-bit key");
  std::uint64_t key = 0;
  for (int i = 0; i < m_; ++i) key |= static_cast<std::uint64_t>(a[i]) << (i * bits_);
  return key;
}

PcElement PcPresentation::unpack(std::uint64_t key) const {
  PcElement a(m_);
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (int i = 0; i < m_; ++i) a[i] = static_cast<std::uint8_t>((key >> (i * bits_)) & mask);
  return a;
}

PcElement PcPresentation::random_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<unsigned> digit(0, p_ - 1);
  PcElement a(m_);
  for (auto& x : a) x = static_cast<std::uint8_t>(digit(rng));
  return a;
}

// ---------------------------------------------------------------- checks

ConsistencyReport check_consistency(const PcPresentation& g) {
  ConsistencyReport rep;
  const int m = g.size();
  const unsigned p = g.prime();
  auto e = [&](int i) { return g.generator(i); };
  auto pw = [&](int i, unsigned k) {
    PcElement v = g.identity();
    v[i] = static_cast<std::uint8_t>(k);
    return v;
  };
  auto expect = [&](const PcElement& a, const PcElement& b, std::string what) {
    ++rep.checks;
    if (a != b) {
      rep.ok = false;
      rep.failures.push_back(std::move(what));
    }
  };
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i)
        expect(g.multiply(g.multiply(e(k), e(j)), e(i)), g.multiply(e(k), g.multiply(e(j), e(i))),
               "associativity " + std::to_string(k + 1) + "," + std::to_string(j + 1) + "," + std::to_string(i + 1));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) {
      expect(g.multiply(g.power_rhs(j), e(i)), g.multiply(pw(j, p - 1), g.multiply(e(j), e(i))),
             "power overlap g" + std::to_string(j + 1) + "^p g" + std::to_string(i + 1));
      expect(g.multiply(e(j), g.power_rhs(i)), g.multiply(g.multiply(e(j), pw(i, p - 1)), e(i)),
             "power overlap g" + std::to_string(j + 1) + " g" + std::to_string(i + 1) + "^p");
    }
  for (int i = 0; i < m; ++i)
    expect(g.multiply(g.power_rhs(i), e(i)), g.multiply(e(i), g.power_rhs(i)),
           "power overlap g" + std::to_string(i + 1) + "^(p+1)");
  return rep;
}

std::uint64_t exponent_violations_exhaustive(const PcPresentation& g) {
  const std::uint64_t n = g.order();
  if (n > (std::uint64_t{1} << 24)) throw EngineTooSmall("group too large for exhaustive exponent check");
  std::uint64_t bad = 0;
  PcElement x(static_cast<std::size_t>(std::max(g.size(), 0)), 0);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::uint64_t v = idx;
    for (int i = 0; i < g.size(); ++i) {
      x[i] = static_cast<std::uint8_t>(v % g.prime());
      v /= g.prime();
    }
    if (!g.is_identity(g.power(x, g.exponent()))) ++bad;
  }
  return bad;
}

std::uint64_t exponent_violations_sampled(const PcPresentation& g, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t bad = 0;
  for (std::size_t s = 0; s < samples; ++s)
    if (!g.is_identity(g.power(g.random_element(rng), g.exponent()))) ++bad;
  return bad;
}

std::string data_directory() {
  if (const char* env = std::getenv("BURNLINK_DATA_DIR"); env && *env) return env;
  return BURNLINK_DEFAULT_DATA_DIR;
}

const PcPresentation& load_pcp(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<PcPresentation>> cache;
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::toupper(c); });
  static const std::map<std::string, std::string> files{
      {"B23", "b23.pcp"}, {"B33", "b33.pcp"}, {"B43", "b43.pcp"}, {"B24", "b24.pcp"}};
  auto f = files.find(key);
  if (f == files.end()) throw InvalidArgument("unknown pc presentation '" + std::string(name) + "'");
  std::lock_guard lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return *it->second;
  const std::string path = data_directory() + "/" + f->second;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto g = std::make_unique<PcPresentation>(PcPresentation::parse(buf.str()));
  if (g->name() != key) throw DataError(path + " declares name '" + g->name() + "'");
  auto rep = check_consistency(*g);
  if (!rep.ok) throw DataError(path + " is inconsistent: " + rep.failures.front());
  const std::uint64_t bad = g->order() <= (std::uint64_t{1} << 13) ? exponent_violations_exhaustive(*g)
                                                                     : exponent_violations_sampled(*g, 2000, 1);
  if (bad) throw DataError(path + " violates its exponent law");
  return *(cache[key] = std::move(g));
}

// ---------------------------------------------------------------- subgroups

InducedPcgs::InducedPcgs(const PcPresentation& g) : g_(&g), table_(g.size()), powers_(g.size()) {}

PcElement InducedPcgs::sift(PcElement x) const {
  const unsigned p = g_->prime();
  for (;;) {
    const int d = g_->depth(x);
    if (d == g_->size() || !table_[d]) return x;
    g_->multiply_into(x, powers_[d][p - x[d]]);
  }
}

bool InducedPcgs::contains(const PcElement& x) const { return g_->is_identity(sift(x)); }

void InducedPcgs::add(const PcElement& x, bool normal) {
  const unsigned p = g_->prime();
  std::deque<PcElement> pending{x};
  while (!pending.empty()) {
    PcElement y = sift(std::move(pending.front()));
    pending.pop_front();
    const int d = g_->depth(y);
    if (d == g_->size()) continue;
    y = g_->power(y, gfp::inverse(y[d], p));
    std::vector<PcElement> pw{g_->identity()};
    for (unsigned c = 1; c < p; ++c) pw.push_back(g_->multiply(pw.back(), y));
    pending.push_back(g_->power(y, p));
    for (int t = 0; t < g_->size(); ++t)
      if (table_[t]) pending.push_back(g_->commutator(y, *table_[t]));
    if (normal)
      for (int i = 0; i < g_->size(); ++i) pending.push_back(g_->commutator(y, g_->generator(i)));
    table_[d] = std::move(y);
    powers_[d] = std::move(pw);
  }
}

std::vector<PcElement> InducedPcgs::elements() const {
  std::vector<PcElement> out;
  for (const auto& t : table_)
    if (t) out.push_back(*t);
  return out;
}

int InducedPcgs::length() const {
  return static_cast<int>(std::count_if(table_.begin(), table_.end(), [](const auto& t) { return t.has_value(); }));
}

std::vector<PcElement> normal_closure_pcgs(const PcPresentation& g, const std::vector<PcElement>& gens) {
  InducedPcgs t(g);
  for (const auto& x : gens) t.add(x, true);
  return t.elements();
}

SubgroupEnum normal_closure(const PcPresentation& g, const std::vector<PcElement>& gens, const ClosureOptions& opt) {
  SubgroupEnum out;
  out.pcgs = normal_closure_pcgs(g, gens);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < out.pcgs.size(); ++i) {
    if (order > opt.element_budget / g.prime())
      throw EngineTooSmall("normal closure has more than " + std::to_string(opt.element_budget) + " elements");
    order *= g.prime();
  }
  out.order = order;
  out.elements.reserve(order);
  std::vector<std::uint64_t> queue{g.pack(g.identity())};
  out.elements.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const PcElement x = g.unpack(queue[head]);
    for (const auto& t : out.pcgs) {
      const std::uint64_t key = g.pack(g.multiply(x, t));
      if (out.elements.insert(key).second) {
        if (out.elements.size() > opt.element_budget)
          throw EngineTooSmall("normal closure exceeded the element budget");
        queue.push_back(key);
      }
    }
  }
  if (!opt.verify) return out;
  if (out.elements.size() != order) throw DataError("normal closure enumeration disagrees with its pcgs length");
  std::vector<PcElement> gens_g;
  for (int i = 0; i < g.size(); ++i) gens_g.push_back(g.generator(i));
  for (std::uint64_t key : queue) {
    const PcElement x = g.unpack(key);
    if (!out.elements.count(g.pack(g.inverse(x)))) throw DataError("normal closure not closed under inverses");
    for (const auto& s : gens_g)
      if (!out.elements.count(g.pack(g.conjugate(x, s)))) throw DataError("normal closure not closed under conjugation");
  }
  return out;
}

std::vector<std::vector<PcElement>> lower_central_series(const PcPresentation& g) {
  std::vector<std::vector<PcElement>> series;
  std::vector<PcElement> cur;
  for (int i = 0; i < g.size(); ++i) cur.push_back(g.generator(i));
  while (!cur.empty()) {
    series.push_back(cur);
    InducedPcgs next(g);
    for (const auto& t : cur)
      for (int i = 0; i < g.rank(); ++i) next.add(g.commutator(t, g.generator(i)), true);
    cur = next.elements();
  }
  return series;
}

std::vector<int> lower_central_layers(const PcPresentation& g) {
  const auto series = lower_central_series(g);
  std::vector<int> layers;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const int below = i + 1 < series.size() ? static_cast<int>(series[i + 1].size()) : 0;
    layers.push_back(static_cast<int>(series[i].size()) - below);
  }
  const int top = g.weights().empty() ? 0 : g.weights().back();
  std::vector<int> by_weight(top, 0);
  for (int w : g.weights()) ++by_weight[w - 1];
  if (by_weight != layers) throw DataError("pc generator weights disagree with the lower central series of " + g.name());
  return layers;
}

PcElement eval_word(const PcPresentation& g, const Assignment& images, const Word& w) {
  PcElement r = g.identity();
  std::vector<std::optional<PcElement>> inv(images.size());
  for (int x : w) {
    const std::size_t i = static_cast<std::size_t>(std::abs(x)) - 1;
    if (x == 0 || i >= images.size() || images[i].empty())
      throw InvalidArgument("generator " + std::to_string(std::abs(x)) + " has no image");
    if (x > 0) {
      g.multiply_into(r, images[i]);
    } else {
      if (!inv[i]) inv[i] = g.inverse(images[i]);
      g.multiply_into(r, *inv[i]);
    }
  }
  return r;
}

std::vector<PcElement> eval_words(const PcPresentation& g, const Assignment& images, const std::vector<Word>& ws) {
  std::vector<PcElement> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(eval_word(g, images, w));
  return out;
}

Assignment standard_assignment(const PcPresentation& g, int generators) {
  if (generators > g.rank())
    throw EngineTooSmall(std::to_string(generators) + " generators exceed the rank of " + g.name());
  Assignment a;
  for (int i = 0; i < generators; ++i) a.push_back(g.generator(i));
  return a;
}

std::uint64_t quotient_order(const PcPresentation& g, const std::vector<PcElement>& kernel_gens,
                             const ClosureOptions& opt) {
  return g.order() / normal_closure(g, kernel_gens, opt).order;
}

std::uint64_t quotient_order(const PcPresentation& g, const std::vector<Word>& relators, const Assignment& images,
                             const ClosureOptions& opt) {
  return quotient_order(g, eval_words(g, images, relators), opt);
}

AbelianType quotient_abelianization(const PcPresentation& g, const std::vector<PcElement>& kernel_gens) {
  const auto series = lower_central_series(g);
  std::vector<PcElement> k = kernel_gens;
  if (series.size() > 1) k.insert(k.end(), series[1].begin(), series[1].end());
  // f[i] = log_p |A / A^{p^i}| for A = G / (N gamma_2)
  std::vector<int> f{0};
  std::uint64_t pi = 1;
  for (;;) {
    pi *= g.prime();
    auto gens = k;
    for (int j = 0; j < g.rank(); ++j) gens.push_back(g.power(g.generator(j), static_cast<long long>(pi)));
    const int fi = g.size() - static_cast<int>(normal_closure_pcgs(g, gens).size());
    if (fi == f.back()) break;
    f.push_back(fi);
  }
  std::vector<mpz_class> orders;
  mpz_class q = 1;
  for (std::size_t i = 1; i < f.size(); ++i) {
    q *= g.prime();
    const int at_least_i = f[i] - f[i - 1];
    const int at_least_next = i + 1 < f.size() ? f[i + 1] - f[i] : 0;
    for (int c = 0; c < at_least_i - at_least_next; ++c) orders.push_back(q);
  }
  return AbelianType::from_cyclic_orders(std::move(orders));
}

AbelianType quotient_abelianization(const PcPresentation& g, const std::vector<Word>& relators,
                                    const Assignment& images) {
  return quotient_abelianization(g, eval_words(g, images, relators));
}

}  // namespace burnlink
