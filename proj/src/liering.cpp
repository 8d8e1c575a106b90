#include "burnlink/liering.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "burnlink/error.hpp"
#include "burnlink/gfp_kernels.hpp"

namespace burnlink {

// ---------------------------------------------------------------- Hall basis

HallBasis::HallBasis(int r, int c) : r_(r), c_(c) {
  if (r < 1 || c < 1) throw InvalidArgument("Hall basis needs r >= 1 and c >= 1");
  starts_.push_back(0);
  for (int g = 0; g < r; ++g) elems_.push_back({1, g, -1, -1});
  for (int w = 2; w <= c; ++w) {
    starts_.push_back(elems_.size());
    const int before = static_cast<int>(elems_.size());
    for (int a = 0; a < before; ++a)
      for (int b = 0; b < a; ++b) {
        if (elems_[a].weight + elems_[b].weight != w) continue;
        if (elems_[a].weight > 1 && elems_[a].right > b) continue;
        index_[{a, b}] = static_cast<int>(elems_.size());
        elems_.push_back({w, -1, a, b});
      }
  }
}

std::pair<std::size_t, std::size_t> HallBasis::weight_range(int w) const {
  if (w < 1 || w > c_) return {0, 0};
  const std::size_t first = starts_[w - 1];
  const std::size_t last = w < c_ ? starts_[w] : elems_.size();
  return {first, last};
}

int HallBasis::find(int a, int b) const {
  auto it = index_.find({a, b});
  return it == index_.end() ? -1 : it->second;
}

std::string HallBasis::to_string(std::size_t i) const {
  const auto& e = elems_[i];
  if (e.weight == 1) return "x" + std::to_string(e.generator + 1);
  return "[" + to_string(e.left) + "," + to_string(e.right) + "]";
}

std::uint64_t witt_number(int r, int w) {
  auto mobius = [](int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
      }
    return n > 1 ? -mu : mu;
  };
  std::int64_t total = 0;
  for (int d = 1; d <= w; ++d) {
    if (w % d) continue;
    std::int64_t pw = 1;
    for (int k = 0; k < w / d; ++k) pw *= r;
    total += mobius(d) * pw;
  }
  return static_cast<std::uint64_t>(total / w);
}

// ---------------------------------------------------------------- algebra

LieAlgebra::LieAlgebra(int r, int c, unsigned p) : basis_(r, c), p_(p) {
  if (p < 2 || p >= 16) throw InvalidArgument("prime must be below 16");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidArgument(std::to_string(p) + " is not prime");
  pow_r_.assign(c + 2, 1);
  for (int l = 1; l <= c + 1; ++l) pow_r_[l] = pow_r_[l - 1] * static_cast<std::size_t>(r);
  offsets_.assign(c + 2, 0);
  for (int l = 1; l <= c + 1; ++l) offsets_[l] = offsets_[l - 1] + pow_r_[l - 1];
  inv_.assign(p, 0);
  for (unsigned a = 1; a < p; ++a) inv_[a] = gfp::inverse(a, p);
}

LieElement LieAlgebra::generator(int g) const {
  if (g < 0 || g >= rank()) throw InvalidArgument("generator out of range");
  return LieElement{{{g, 1u}}};
}

LieElement LieAlgebra::add(const LieElement& a, const LieElement& b) const {
  LieElement out = a;
  for (auto [i, v] : b.coeffs) {
    unsigned s = (out.coeffs[i] + v) % p_;
    if (s)
      out.coeffs[i] = s;
    else
      out.coeffs.erase(i);
  }
  return out;
}

LieElement LieAlgebra::scale(const LieElement& a, unsigned k) const {
  k %= p_;
  LieElement out;
  if (!k) return out;
  for (auto [i, v] : a.coeffs) out.coeffs[i] = v * k % p_;
  return out;
}

LieElement LieAlgebra::sub(const LieElement& a, const LieElement& b) const { return add(a, scale(b, p_ - 1)); }

LieElement LieAlgebra::basis_bracket(int u, int v) const {
  if (u == v) return {};
  if (basis_[u].weight + basis_[v].weight > class_bound()) return {};
  if (u < v) return scale(basis_bracket(v, u), p_ - 1);
  {
    std::lock_guard lock(memo_mu_);
    if (auto it = memo_.find({u, v}); it != memo_.end()) return it->second;
  }
  const HallElement& e = basis_[u];
  LieElement out;
  if (e.weight == 1 || e.right <= v) {
    const int idx = basis_.find(u, v);
    assert(idx >= 0);
    out.coeffs[idx] = 1;
  } else {
    // [[s,t],v] = [[s,v],t] - [[t,v],s]
    out = sub(bracket_basis_right(basis_bracket(e.left, v), e.right),
              bracket_basis_right(basis_bracket(e.right, v), e.left));
  }
  std::lock_guard lock(memo_mu_);
  memo_.emplace(std::pair{u, v}, out);
  return out;
}

LieElement LieAlgebra::bracket_basis_right(const LieElement& a, int v) const {
  LieElement out;
  for (auto [u, c] : a.coeffs) out = add(out, scale(basis_bracket(u, v), c));
  return out;
}

LieElement LieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
  LieElement out;
  for (auto [v, c] : b.coeffs) out = add(out, scale(bracket_basis_right(a, v), c));
  return out;
}

std::vector<std::uint8_t> LieAlgebra::component(const LieElement& a, int w) const {
  auto [first, last] = basis_.weight_range(w);
  std::vector<std::uint8_t> v(last - first, 0);
  for (auto [i, c] : a.coeffs)
    if (static_cast<std::size_t>(i) >= first && static_cast<std::size_t>(i) < last)
      v[i - first] = static_cast<std::uint8_t>(c);
  return v;
}

int LieAlgebra::min_weight(const LieElement& a) const {
  return a.coeffs.empty() ? 0 : basis_[a.coeffs.begin()->first].weight;
}

AssocElement LieAlgebra::assoc_zero() const {
  return AssocElement{rank(), class_bound(), std::vector<std::uint8_t>(offsets_[class_bound() + 1], 0)};
}

AssocElement LieAlgebra::assoc_one() const {
  AssocElement a = assoc_zero();
  a.coef[0] = 1;
  return a;
}

AssocElement LieAlgebra::assoc_mul(const AssocElement& a, const AssocElement& b) const {
  AssocElement out = assoc_zero();
  const int c = class_bound();
  for (int la = 0; la <= c; ++la)
    for (std::size_t ia = 0; ia < pow_r_[la]; ++ia) {
      const unsigned ca = a.coef[offsets_[la] + ia];
      if (!ca) continue;
      for (int lb = 0; lb + la <= c; ++lb) {
        const std::size_t n = pow_r_[lb];
        std::span<std::uint8_t> dst(out.coef.data() + offsets_[la + lb] + ia * n, n);
        std::span<const std::uint8_t> src(b.coef.data() + offsets_[lb], n);
        kernels::axpy_mod(dst, ca, src, p_);
      }
    }
  return out;
}

AssocElement LieAlgebra::to_assoc(const LieElement& a) const {
  std::map<int, AssocElement> cache;
  std::function<const AssocElement&(int)> expand = [&](int i) -> const AssocElement& {
    if (auto it = cache.find(i); it != cache.end()) return it->second;
    const HallElement& e = basis_[i];
    AssocElement out = assoc_zero();
    if (e.weight == 1) {
      out.coef[offsets_[1] + e.generator] = 1;
    } else {
      const AssocElement& l = expand(e.left);
      const AssocElement& r = expand(e.right);
      AssocElement lr = assoc_mul(l, r), rl = assoc_mul(r, l);
      out = lr;
      kernels::axpy_mod(out.coef, p_ - 1, rl.coef, p_);
    }
    return cache.emplace(i, std::move(out)).first->second;
  };
  AssocElement out = assoc_zero();
  for (auto [i, c] : a.coeffs) kernels::axpy_mod(out.coef, c, expand(i).coef, p_);
  return out;
}

namespace {

void require_class_below_prime(int c, unsigned p) {
  if (static_cast<unsigned>(c) >= p) throw InvalidArgument("class bound must be below the prime");
}

}  // namespace

AssocElement LieAlgebra::magnus(const Word& w) const {
  require_class_below_prime(class_bound(), p_);
  const int c = class_bound();
  const std::size_t r = static_cast<std::size_t>(rank());
  std::vector<unsigned> inv_fact(c + 1, 1);
  for (int k = 1; k <= c; ++k) inv_fact[k] = inv_fact[k - 1] * inv_[k] % p_;
  AssocElement a = assoc_one();
  for (int x : w) {
    const int g = std::abs(x) - 1;
    if (x == 0 || g >= rank()) throw InvalidArgument("word letter out of range for the Lie algebra rank");
    const unsigned sign = x > 0 ? 1 : p_ - 1;
    AssocElement out = assoc_zero();
    for (int l = 0; l <= c; ++l)
      for (std::size_t iu = 0; iu < pow_r_[l]; ++iu) {
        const unsigned cu = a.coef[offsets_[l] + iu];
        if (!cu) continue;
        std::size_t idx = iu;
        unsigned s = 1;
        for (int k = 0; l + k <= c; ++k) {
          auto& slot = out.coef[offsets_[l + k] + idx];
          slot = static_cast<std::uint8_t>((slot + cu * s % p_ * inv_fact[k]) % p_);
          idx = idx * r + static_cast<std::size_t>(g);
          s = s * sign % p_;
        }
      }
    a = std::move(out);
  }
  return a;
}

AssocElement LieAlgebra::log(const AssocElement& a) const {
  require_class_below_prime(class_bound(), p_);
  if (a.coef[0] != 1) throw InvalidArgument("logarithm needs constant term 1");
  AssocElement y = a;
  y.coef[0] = 0;
  AssocElement out = assoc_zero(), pw = y;
  for (int k = 1; k <= class_bound(); ++k) {
    const unsigned c = k % 2 ? inv_[k % p_] : (p_ - inv_[k % p_]) % p_;
    kernels::axpy_mod(out.coef, c, pw.coef, p_);
    if (k < class_bound()) pw = assoc_mul(pw, y);
  }
  return out;
}

LieElement LieAlgebra::dynkin(const AssocElement& a) const {
  require_class_below_prime(class_bound(), p_);
  const std::size_t r = static_cast<std::size_t>(rank());
  std::map<std::pair<int, std::size_t>, LieElement> theta;  // (length, word index)
  std::function<const LieElement&(int, std::size_t)> th = [&](int len, std::size_t idx) -> const LieElement& {
    if (auto it = theta.find({len, idx}); it != theta.end()) return it->second;
    LieElement v;
    if (len == 1)
      v = generator(static_cast<int>(idx));
    else
      v = bracket(th(len - 1, idx / r), generator(static_cast<int>(idx % r)));
    return theta.emplace(std::pair{len, idx}, std::move(v)).first->second;
  };
  LieElement out;
  for (int n = 1; n <= class_bound(); ++n)
    for (std::size_t i = 0; i < pow_r_[n]; ++i) {
      const unsigned c = a.coef[offsets_[n] + i];
      if (c) out = add(out, scale(th(n, i), c * inv_[n % p_] % p_));
    }
  return out;
}

LieElement LieAlgebra::magnus_log(const Word& w) const { return dynkin(log(magnus(w))); }

std::uint8_t LieAlgebra::coefficient(const AssocElement& a, const std::vector<int>& word) const {
  if (static_cast<int>(word.size()) > class_bound()) return 0;
  std::size_t idx = 0;
  for (int g : word) idx = idx * static_cast<std::size_t>(rank()) + static_cast<std::size_t>(g);
  return a.coef[offsets_[word.size()] + idx];
}

LieElement magnus_log(const Word& w, int r, unsigned p, int c) {
  require_class_below_prime(c, p);
  return LieAlgebra(r, c, p).magnus_log(w);
}

// ---------------------------------------------------------------- Engel

std::size_t EngelRelations::total_rows() const {
  std::size_t n = 0;
  for (const auto& b : by_weight) n += b.rank();
  return n;
}

EngelRelations engel_quotient_matrix(const LieAlgebra& alg) {
  const int c = alg.class_bound();
  const unsigned p = alg.prime();
  require_class_below_prime(c, p);
  const HallBasis& hb = alg.basis();
  EngelRelations rel;
  for (int w = 1; w <= c; ++w) {
    auto [first, last] = hb.weight_range(w);
    rel.by_weight.emplace_back(last - first, p);
  }
  const int n = static_cast<int>(p) - 1;  // number of y entries
  std::vector<int> ys;
  std::function<void(int, int, int)> choose = [&](int x, int from, int budget) {
    if (static_cast<int>(ys.size()) == n) {
      std::vector<int> perm = ys;
      LieElement row;
      do {
        LieElement t = alg.bracket(LieElement{{{x, 1u}}}, LieElement{{{perm[0], 1u}}});
        for (int k = 1; k < n; ++k) t = alg.bracket(t, LieElement{{{perm[k], 1u}}});
        row = alg.add(row, t);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (row.is_zero()) return;
      const int w = hb[row.coeffs.begin()->first].weight;
      rel.by_weight[w - 1].insert(alg.component(row, w));
      return;
    }
    const int left = n - static_cast<int>(ys.size());
    for (int y = from; y < static_cast<int>(hb.size()); ++y) {
      const int wy = hb[y].weight;
      if (wy + (left - 1) > budget) break;  // weights are sorted
      ys.push_back(y);
      choose(x, y, budget - wy);
      ys.pop_back();
    }
  };
  for (int x = 0; x < static_cast<int>(hb.size()); ++x) {
    const int budget = c - hb[x].weight;
    if (budget >= n) choose(x, 0, budget);
  }
  return rel;
}

EngelRelations engel_quotient_matrix(int r, unsigned p, int c) {
  require_class_below_prime(c, p);
  return engel_quotient_matrix(LieAlgebra(r, c, p));
}

std::vector<Certificate> nontriviality_certificate(const std::vector<Word>& relators, int r, unsigned p, int c) {
  require_class_below_prime(c, p);
  LieAlgebra alg(r, c, p);
  const EngelRelations engel = engel_quotient_matrix(alg);
  std::vector<Certificate> out;
  for (const auto& w : relators) {
    const LieElement l = alg.magnus_log(w);
    Certificate cert;
    for (int wt = 1; wt <= c && !cert.certified; ++wt) {
      auto v = alg.component(l, wt);
      engel.by_weight[wt - 1].reduce(v);
      if (!kernels::is_zero(v)) {
        cert.certified = true;
        cert.weight = wt;
      }
    }
    out.push_back(cert);
  }
  return out;
}

}  // namespace burnlink
