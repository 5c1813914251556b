#pragma once
/**
 * @file symfunc.hpp
 * @brief The graded Hopf algebra of symmetric functions with coefficients in
 *        Q(t): eight bases (power sum, elementary, complete, monomial, Schur,
 *        Hall-Littlewood P, the cyclic one-row family c_n(t), and its dual
 *        Schur relatives), basis conversion, product, coproduct, antipode,
 *        counit, the t-deformed Hopf pairing, Kostka-Foulkes polynomials,
 *        Littlewood-Richardson coefficients and the exp/log
 *        generating-function transform.
 *
 * The internal canonical basis is the power-sum basis: multiplication is
 * concatenation of indexing partitions and the t-pairing is diagonal there.
 * All conversions route through it, except conversion *to* the monomial
 * basis, which goes through an explicit finite-variable expansion.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hallsym/errors.hpp"
#include "hallsym/partition.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/qseries.hpp"
#include "hallsym/ratfunc.hpp"
#include "hallsym/scalars.hpp"

namespace hallsym {

enum class Basis { p, e, h, m, s, HL, c, Sdual };

inline std::string basis_label(Basis b) {
  switch (b) {
    case Basis::p: return "p";
    case Basis::e: return "e";
    case Basis::h: return "h";
    case Basis::m: return "m";
    case Basis::s: return "s";
    case Basis::HL: return "P";
    case Basis::c: return "c";
    case Basis::Sdual: return "S";
  }
  return "?";
}

inline Basis basis_from_string(const std::string& s) {
  if (s == "p") return Basis::p;
  if (s == "e") return Basis::e;
  if (s == "h") return Basis::h;
  if (s == "m") return Basis::m;
  if (s == "s") return Basis::s;
  if (s == "hl" || s == "P") return Basis::HL;
  if (s == "c") return Basis::c;
  if (s == "sdual" || s == "S") return Basis::Sdual;
  throw std::invalid_argument("unknown basis name: " + s);
}

/// A finite linear combination of basis elements indexed by partitions, with
/// coefficients in Q(t).  The degree of a term is the weight of its indexing
/// partition in every basis.
class SymFunc {
 public:
  SymFunc() : basis_(Basis::p) {}
  explicit SymFunc(Basis b) : basis_(b) {}

  static SymFunc zero(Basis b = Basis::p) { return SymFunc(b); }
  static SymFunc one(Basis b = Basis::p) {
    SymFunc f(b);
    f.add_term(Partition(), RatFunc::one());
    return f;
  }
  /// The basis element indexed by lambda, as an element tagged with b.
  static SymFunc element(Basis b, const Partition& lam) {
    SymFunc f(b);
    f.add_term(lam, RatFunc::one());
    return f;
  }

  Basis basis() const { return basis_; }
  const std::map<Partition, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Top degree present (0 for the zero element).
  int degree() const {
    int d = 0;
    for (auto& [lam, c] : terms_) d = std::max(d, lam.weight());
    return d;
  }
  bool is_homogeneous() const {
    int d = -1;
    for (auto& [lam, c] : terms_) {
      if (d >= 0 && lam.weight() != d) return false;
      d = lam.weight();
    }
    return true;
  }

  RatFunc coeff(const Partition& lam) const {
    auto it = terms_.find(lam);
    return it == terms_.end() ? RatFunc::zero() : it->second;
  }

  void add_term(const Partition& lam, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(lam, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// The part of fixed degree d.
  SymFunc graded_piece(int d) const {
    SymFunc g(basis_);
    for (auto& [lam, c] : terms_)
      if (lam.weight() == d) g.add_term(lam, c);
    return g;
  }

  SymFunc operator+(const SymFunc& o) const {
    require_same_basis_(o, "+");
    SymFunc r = *this;
    for (auto& [lam, c] : o.terms_) r.add_term(lam, c);
    return r;
  }
  SymFunc operator-(const SymFunc& o) const {
    require_same_basis_(o, "-");
    SymFunc r = *this;
    for (auto& [lam, c] : o.terms_) r.add_term(lam, -c);
    return r;
  }
  SymFunc operator-() const {
    SymFunc r(basis_);
    for (auto& [lam, c] : terms_) r.add_term(lam, -c);
    return r;
  }
  SymFunc operator*(const RatFunc& sc) const {
    SymFunc r(basis_);
    for (auto& [lam, c] : terms_) r.add_term(lam, c * sc);
    return r;
  }
  SymFunc& operator+=(const SymFunc& o) { return *this = *this + o; }
  SymFunc& operator-=(const SymFunc& o) { return *this = *this - o; }

  bool operator==(const SymFunc& o) const { return basis_ == o.basis_ && terms_ == o.terms_; }
  bool operator!=(const SymFunc& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [lam, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      if (!c.is_one()) out += "(" + c.str("t") + ")";
      out += basis_label(basis_) + "[" + lam.str() + "]";
    }
    return out;
  }

 private:
  void require_same_basis_(const SymFunc& o, const char* op) const {
    if (basis_ != o.basis_)
      throw std::domain_error(std::string("SymFunc: mixed-basis ") + op +
                              "; convert explicitly first");
  }
  Basis basis_;
  std::map<Partition, RatFunc> terms_;
};

/// An element of the two-fold tensor square, with basis tags on both slots.
class SymFuncTensor {
 public:
  SymFuncTensor() : left_(Basis::p), right_(Basis::p) {}
  SymFuncTensor(Basis l, Basis r) : left_(l), right_(r) {}

  Basis left_basis() const { return left_; }
  Basis right_basis() const { return right_; }
  const std::map<std::pair<Partition, Partition>, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Partition& a, const Partition& b, const RatFunc& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SymFuncTensor operator+(const SymFuncTensor& o) const {
    require_p_("+");
    o.require_p_("+");
    SymFuncTensor r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
  }
  SymFuncTensor operator-(const SymFuncTensor& o) const {
    require_p_("-");
    o.require_p_("-");
    SymFuncTensor r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
    return r;
  }
  /// Componentwise product (a x b)(c x d) = ac x bd; both operands must be
  /// expressed in the canonical power-sum basis, where multiplication is
  /// concatenation.
  SymFuncTensor operator*(const SymFuncTensor& o) const {
    require_p_("*");
    o.require_p_("*");
    SymFuncTensor r;
    for (auto& [k1, c1] : terms_)
      for (auto& [k2, c2] : o.terms_) {
        std::vector<int> l = k1.first.parts(), rr = k1.second.parts();
        l.insert(l.end(), k2.first.parts().begin(), k2.first.parts().end());
        rr.insert(rr.end(), k2.second.parts().begin(), k2.second.parts().end());
        r.add_term(Partition::from_parts_unsorted(std::move(l)),
                   Partition::from_parts_unsorted(std::move(rr)), c1 * c2);
      }
    return r;
  }

  bool operator==(const SymFuncTensor& o) const {
    return left_ == o.left_ && right_ == o.right_ && terms_ == o.terms_;
  }
  bool operator!=(const SymFuncTensor& o) const { return !(*this == o); }

 private:
  void require_p_(const char* op) const {
    if (left_ != Basis::p || right_ != Basis::p)
      throw std::domain_error(std::string("SymFuncTensor: operation ") + op +
                              " requires power-sum tags");
  }
  Basis left_, right_;
  std::map<std::pair<Partition, Partition>, RatFunc> terms_;
};

// ---------------------------------------------------------------------------
// Conversion engine internals
// ---------------------------------------------------------------------------

namespace detail {

using PMap = std::map<Partition, RatFunc>;  // element written in the p-basis

/// Insert one extra power-sum factor p_r into every key of m.
inline PMap shift_by_p(const PMap& m, int r, const RatFunc& scale) {
  PMap out;
  for (auto& [lam, c] : m) {
    std::vector<int> parts = lam.parts();
    parts.push_back(r);
    Partition key = Partition::from_parts_unsorted(std::move(parts));
    auto [it, fresh] = out.try_emplace(key, c * scale);
    if (!fresh) it->second += c * scale;
  }
  return out;
}

inline void pmap_add(PMap& into, const PMap& from, const RatFunc& scale) {
  for (auto& [lam, c] : from) {
    RatFunc v = c * scale;
    if (v.is_zero()) continue;
    auto [it, fresh] = into.try_emplace(lam, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) into.erase(it);
    }
  }
}

inline PMap pmap_mul(const PMap& a, const PMap& b) {
  PMap out;
  for (auto& [la, ca] : a)
    for (auto& [lb, cb] : b) {
      std::vector<int> parts = la.parts();
      parts.insert(parts.end(), lb.parts().begin(), lb.parts().end());
      Partition key = Partition::from_parts_unsorted(std::move(parts));
      RatFunc v = ca * cb;
      auto [it, fresh] = out.try_emplace(key, v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

/// t-deformed diagonal pairing of two p-basis expansions.
inline RatFunc pmap_pair_t(const PMap& a, const PMap& b) {
  RatFunc acc;
  const PMap& small = a.size() <= b.size() ? a : b;
  const PMap& big = a.size() <= b.size() ? b : a;
  for (auto& [lam, c] : small) {
    auto it = big.find(lam);
    if (it != big.end()) acc += c * it->second * z_t(lam);
  }
  return acc;
}

/// Undeformed diagonal pairing (the t -> 0 form, with z_lambda weights).
inline RatFunc pmap_pair0(const PMap& a, const PMap& b) {
  RatFunc acc;
  const PMap& small = a.size() <= b.size() ? a : b;
  const PMap& big = a.size() <= b.size() ? b : a;
  for (auto& [lam, c] : small) {
    auto it = big.find(lam);
    if (it != big.end()) acc += c * it->second * Rat(z_stat(lam));
  }
  return acc;
}

struct DegreeTables {
  std::vector<Partition> parts;                 // canonical order for this degree
  std::map<Partition, int> index;
  std::vector<std::vector<RatFunc>> e_inv;      // inverse of (e_lam -> p) matrix
  std::vector<std::vector<RatFunc>> h_inv;      // inverse of (h_lam -> p) matrix
  std::vector<std::vector<RatFunc>> m_from_e;   // inverse-transpose data for m
  bool have_eh = false, have_m = false;
};

struct SymCtx {
  std::recursive_mutex mu;
  int cap = 12;
  std::vector<PMap> e_gen, h_gen, c_gen;        // generator expansions by degree
  std::map<Partition, PMap> e_mono, h_mono, c_mono, m_mono;
  std::map<Partition, PMap> s_tab, hl_tab, sd_tab;
  std::map<int, DegreeTables> deg;
};

inline SymCtx& ctx() {
  static SymCtx c;
  return c;
}

inline void check_cap(int d) {
  if (d > ctx().cap)
    throw BoundError("symmetric-function degree " + std::to_string(d) +
                     " exceeds the configured cap " + std::to_string(ctx().cap));
}

/// Generator expansions by the Newton-style recursions:
///   n e_n = sum_a (-1)^{a-1} p_a e_{n-a}
///   n h_n = sum_a p_a h_{n-a}
///   n c_n = sum_a (1 - t^a) p_a c_{n-a}
inline const PMap& gen_expansion(Basis b, int n) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  std::vector<PMap>* tab = b == Basis::e ? &cx.e_gen : b == Basis::h ? &cx.h_gen : &cx.c_gen;
  if (tab->empty()) tab->push_back(PMap{{Partition(), RatFunc::one()}});
  for (int k = static_cast<int>(tab->size()); k <= n; ++k) {
    PMap acc;
    for (int a = 1; a <= k; ++a) {
      RatFunc w(Poly(Rat(1, k)));
      if (b == Basis::e && a % 2 == 0) w = -w;
      if (b == Basis::c) w *= RatFunc(Poly::one() - Poly::monomial(a, Rat(1)));
      pmap_add(acc, shift_by_p((*tab)[k - a], a, w), RatFunc::one());
    }
    tab->push_back(std::move(acc));
  }
  return (*tab)[n];
}

/// Product expansion for a multiplicative basis element indexed by lambda.
inline const PMap& mono_expansion(Basis b, const Partition& lam) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  auto& memo = b == Basis::e ? cx.e_mono : b == Basis::h ? cx.h_mono : cx.c_mono;
  auto it = memo.find(lam);
  if (it != memo.end()) return it->second;
  PMap acc{{Partition(), RatFunc::one()}};
  for (int part : lam.parts()) acc = pmap_mul(acc, gen_expansion(b, part));
  return memo.emplace(lam, std::move(acc)).first->second;
}

/// Memoized determinant of the matrix whose (i, j) entry is the generator
/// with subscript sub(i, j) (zero subscript reads as 1, negative as 0), in
/// the free commutative monomial ring on the generators.  Keys of the result
/// collect subscripts into partitions.
inline std::map<Partition, Rat> banded_det(int n, const std::function<int(int, int)>& sub) {
  if (n == 0) return {{Partition(), Rat(1)}};
  if (n > 31) throw BoundError("determinant size too large");
  std::unordered_map<std::uint32_t, std::map<Partition, Rat>> memo;
  std::function<const std::map<Partition, Rat>&(std::uint32_t)> rec =
      [&](std::uint32_t mask) -> const std::map<Partition, Rat>& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::map<Partition, Rat> acc;
    int row = n - __builtin_popcount(mask) + 1;  // rows 1..row-1 already used
    if (row == n + 1) {
      acc.emplace(Partition(), Rat(1));
    } else {
      int pos = 0;
      for (int j = 1; j <= n; ++j) {
        if (!(mask & (1u << (j - 1)))) continue;
        ++pos;
        int s = sub(row, j);
        if (s < 0) continue;
        const auto& child = rec(mask & ~(1u << (j - 1)));
        Rat sign = (pos % 2 == 1) ? Rat(1) : Rat(-1);
        for (auto& [lam, c] : child) {
          Partition key = lam;
          if (s > 0) {
            std::vector<int> parts = lam.parts();
            parts.push_back(s);
            key = Partition::from_parts_unsorted(std::move(parts));
          }
          acc[key] += sign * c;
        }
      }
      for (auto it2 = acc.begin(); it2 != acc.end();)
        it2 = it2->second == 0 ? acc.erase(it2) : std::next(it2);
    }
    return memo.emplace(mask, std::move(acc)).first->second;
  };
  std::uint32_t full = (1u << n) - 1;
  return rec(full);
}

inline PMap det_to_p(Basis b, const std::map<Partition, Rat>& det) {
  PMap acc;
  for (auto& [lam, c] : det) pmap_add(acc, mono_expansion(b, lam), RatFunc(Poly(c)));
  return acc;
}

/// Schur function via both Jacobi-Trudi determinants, which must agree.
inline const PMap& schur_expansion(const Partition& lam) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  auto it = cx.s_tab.find(lam);
  if (it != cx.s_tab.end()) return it->second;
  check_cap(lam.weight());
  const Partition conj = lam.conjugate();
  auto edet = banded_det(conj.length(),
                         [&](int i, int j) { return conj.part(i) - i + j; });
  auto hdet = banded_det(lam.length(), [&](int i, int j) { return lam.part(i) - i + j; });
  PMap from_e = det_to_p(Basis::e, edet);
  PMap from_h = det_to_p(Basis::h, hdet);
  if (from_e != from_h)
    throw InternalCheckError("schur: the two determinantal expansions disagree");
  return cx.s_tab.emplace(lam, std::move(from_e)).first->second;
}

/// Dual Schur element via the determinant in the one-row family c_n(t).
inline const PMap& dual_schur_expansion(const Partition& lam) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  auto it = cx.sd_tab.find(lam);
  if (it != cx.sd_tab.end()) return it->second;
  check_cap(lam.weight());
  auto cdet = banded_det(lam.length(), [&](int i, int j) { return lam.part(i) - i + j; });
  PMap val = det_to_p(Basis::c, cdet);
  return cx.sd_tab.emplace(lam, std::move(val)).first->second;
}

/// Triangular orthogonalization producing the Hall-Littlewood elements of
/// one degree.  `order` must list the partitions of the degree in a linear
/// extension of the dominance order (smaller first); the outcome is
/// order-independent because projections are taken only along strictly
/// dominance-smaller partitions.
inline std::map<Partition, std::pair<PMap, PMap>> hl_gram_schmidt(
    const std::vector<Partition>& order) {
  std::map<Partition, std::pair<PMap, PMap>> built;  // lam -> (p-expansion, e'-coeffs)
  for (const Partition& lam : order) {
    PMap val = mono_expansion(Basis::e, lam.conjugate());
    PMap ecoeffs{{lam, RatFunc::one()}};  // coefficient of e_{mu'} recorded at key mu
    for (const Partition& mu : order) {
      if (mu == lam) break;
      if (!dominance_lt(mu, lam)) continue;
      const auto& [pmu, emu] = built.at(mu);
      RatFunc proj = pmap_pair_t(mono_expansion(Basis::e, lam.conjugate()), pmu) *
                     RatFunc(b_t(mu));
      if (proj.is_zero()) continue;
      pmap_add(val, pmu, -proj);
      pmap_add(ecoeffs, emu, -proj);
    }
    built.emplace(lam, std::make_pair(std::move(val), std::move(ecoeffs)));
  }
  return built;
}

inline const PMap& hl_expansion(const Partition& lam) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  auto it = cx.hl_tab.find(lam);
  if (it != cx.hl_tab.end()) return it->second;
  int d = lam.weight();
  check_cap(d);

  // two different linear extensions of dominance (smaller partitions first)
  std::vector<Partition> order_a = enumerate_partitions(d);
  std::reverse(order_a.begin(), order_a.end());
  std::vector<Partition> order_b = order_a;
  std::sort(order_b.begin(), order_b.end(), [](const Partition& x, const Partition& y) {
    const auto xp = x.conjugate().parts(), yp = y.conjugate().parts();
    return std::lexicographical_compare(yp.begin(), yp.end(), xp.begin(), xp.end());
  });

  auto built_a = hl_gram_schmidt(order_a);
  auto built_b = hl_gram_schmidt(order_b);
  for (const Partition& mu : order_a) {
    const auto& [pa, ea] = built_a.at(mu);
    if (pa != built_b.at(mu).first)
      throw InternalCheckError("hall_littlewood: result depends on the elimination order");
    // norm must be 1 / b_mu(t)
    if (pmap_pair_t(pa, pa) != RatFunc(Poly::one(), b_t(mu)))
      throw InternalCheckError("hall_littlewood: norm differs from 1/b(t)");
    // coefficients along the e-basis must be integer polynomials in t
    for (auto& [nu, beta] : ea) {
      if (!beta.is_poly() || !beta.to_poly().has_integer_coeffs())
        throw InternalCheckError("hall_littlewood: non-integral transition coefficient");
    }
    cx.hl_tab.emplace(mu, pa);
  }
  return cx.hl_tab.at(lam);
}

inline DegreeTables& degree_tables(int d) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  DegreeTables& t = cx.deg[d];
  if (t.parts.empty()) {
    t.parts = enumerate_partitions(d);
    for (size_t i = 0; i < t.parts.size(); ++i) t.index[t.parts[i]] = static_cast<int>(i);
  }
  return t;
}

/// Gauss-Jordan inverse over the rational-function field.
inline std::vector<std::vector<RatFunc>> invert(std::vector<std::vector<RatFunc>> a) {
  size_t n = a.size();
  std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = RatFunc::one();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw InternalCheckError("invert: singular transition matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    RatFunc d = a[col][col].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[col][j] *= d;
      inv[col][j] *= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      RatFunc f = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Per-degree inverses of the (e_lam -> p) and (h_lam -> p) matrices.
inline void ensure_eh_tables(int d) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  DegreeTables& t = degree_tables(d);
  if (t.have_eh) return;
  size_t n = t.parts.size();
  std::vector<std::vector<RatFunc>> E(n, std::vector<RatFunc>(n)), H(n, std::vector<RatFunc>(n));
  for (size_t i = 0; i < n; ++i) {
    for (auto& [mu, c] : mono_expansion(Basis::e, t.parts[i])) E[i][t.index.at(mu)] = c;
    for (auto& [mu, c] : mono_expansion(Basis::h, t.parts[i])) H[i][t.index.at(mu)] = c;
  }
  t.e_inv = invert(std::move(E));
  t.h_inv = invert(std::move(H));
  t.have_eh = true;
}

/// Monomial basis in the canonical basis: the transition e_lam = sum_mu
/// A_{lam mu} m_mu has A_{lam mu} = <e_lam, h_mu> under the undeformed
/// pairing (h and m are dual); inverting expresses each m_mu over the e's.
inline void ensure_m_tables(int d) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  DegreeTables& t = degree_tables(d);
  if (t.have_m) return;
  size_t n = t.parts.size();
  std::vector<std::vector<RatFunc>> A(n, std::vector<RatFunc>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      A[i][j] = pmap_pair0(mono_expansion(Basis::e, t.parts[i]),
                           mono_expansion(Basis::h, t.parts[j]));
  t.m_from_e = invert(std::move(A));
  t.have_m = true;
}

inline const PMap& m_expansion(const Partition& lam) {
  SymCtx& cx = ctx();
  std::lock_guard<std::recursive_mutex> lock(cx.mu);
  auto it = cx.m_mono.find(lam);
  if (it != cx.m_mono.end()) return it->second;
  int d = lam.weight();
  check_cap(d);
  ensure_m_tables(d);
  DegreeTables& t = degree_tables(d);
  // with A the (e -> m) transition, m = A^{-1} e as basis vectors: the row of
  // the inverse indexed by lam lists the e-expansion coefficients of m_lam
  size_t n = t.parts.size();
  int row = t.index.at(lam);
  PMap acc;
  for (size_t i = 0; i < n; ++i) {
    const RatFunc& coefficient = t.m_from_e[row][i];
    if (!coefficient.is_zero()) pmap_add(acc, mono_expansion(Basis::e, t.parts[i]), coefficient);
  }
  return cx.m_mono.emplace(lam, std::move(acc)).first->second;
}

inline const PMap& basis_monomial_to_p(Basis b, const Partition& lam) {
  check_cap(lam.weight());
  switch (b) {
    case Basis::e:
    case Basis::h:
    case Basis::c: return mono_expansion(b, lam);
    case Basis::s: return schur_expansion(lam);
    case Basis::Sdual: return dual_schur_expansion(lam);
    case Basis::HL: return hl_expansion(lam);
    case Basis::m: return m_expansion(lam);
    case Basis::p: break;
  }
  throw std::logic_error("basis_monomial_to_p: unreachable");
}

inline PMap to_pmap(const SymFunc& f) {
  PMap acc;
  if (f.basis() == Basis::p) {
    for (auto& [lam, c] : f.terms()) {
      check_cap(lam.weight());
      acc[lam] = c;
    }
    return acc;
  }
  for (auto& [lam, c] : f.terms()) pmap_add(acc, basis_monomial_to_p(f.basis(), lam), c);
  return acc;
}

inline SymFunc from_pmap(const PMap& m, Basis tag) {
  SymFunc f(tag);
  for (auto& [lam, c] : m) f.add_term(lam, c);
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Degree cap applied to every conversion cache (and hence to all basis
/// conversions).  Raising it is allowed at any time; lowering it does not
/// evict existing cache entries.
inline int degree_cap() { return detail::ctx().cap; }
inline void set_degree_cap(int cap) {
  if (cap < 0) throw std::domain_error("set_degree_cap: negative cap");
  std::lock_guard<std::recursive_mutex> lock(detail::ctx().mu);
  detail::ctx().cap = cap;
}

inline SymFunc sym_p(const Partition& lam) { return SymFunc::element(Basis::p, lam); }
inline SymFunc sym_e(const Partition& lam) { return SymFunc::element(Basis::e, lam); }
inline SymFunc sym_h(const Partition& lam) { return SymFunc::element(Basis::h, lam); }
inline SymFunc sym_m(const Partition& lam) { return SymFunc::element(Basis::m, lam); }

/// The one-row family c_r(t) = sum over |lambda| = r of p_lambda / z_lambda(t).
inline SymFunc cyclic_c(int r) {
  if (r < 0) throw std::domain_error("cyclic_c: negative degree");
  return SymFunc::element(Basis::c, r == 0 ? Partition() : Partition({r}));
}

inline SymFunc schur(const Partition& lam) {
  detail::schur_expansion(lam);  // construct (and self-check) eagerly
  return SymFunc::element(Basis::s, lam);
}

inline SymFunc dual_schur(const Partition& lam) {
  detail::dual_schur_expansion(lam);
  return SymFunc::element(Basis::Sdual, lam);
}

inline SymFunc hall_littlewood(const Partition& lam) {
  detail::hl_expansion(lam);
  return SymFunc::element(Basis::HL, lam);
}

inline SymFunc multiply(const SymFunc& f, const SymFunc& g) {
  return detail::from_pmap(detail::pmap_mul(detail::to_pmap(f), detail::to_pmap(g)), Basis::p);
}
inline SymFunc operator*(const SymFunc& f, const SymFunc& g) { return multiply(f, g); }

inline RatFunc pairing_t(const SymFunc& f, const SymFunc& g) {
  return detail::pmap_pair_t(detail::to_pmap(f), detail::to_pmap(g));
}

/// The undeformed (t = 0) pairing, under which h and m are dual bases and
/// the Schur elements are orthonormal.
inline RatFunc pairing0(const SymFunc& f, const SymFunc& g) {
  return detail::pmap_pair0(detail::to_pmap(f), detail::to_pmap(g));
}

inline SymFuncTensor coproduct(const SymFunc& f) {
  detail::PMap pf = detail::to_pmap(f);
  SymFuncTensor out;
  for (auto& [lam, c] : pf) {
    // Delta(p_lambda) = prod over parts of (p_r x 1 + 1 x p_r): iterate over
    // splittings of the multiplicity of each part size.
    auto mult = lam.multiplicities();
    std::vector<std::pair<int, int>> items(mult.begin(), mult.end());
    std::vector<int> take(items.size(), 0);
    std::function<void(size_t, Rat)> rec = [&](size_t idx, Rat w) {
      if (idx == items.size()) {
        std::vector<int> left, right;
        for (size_t k = 0; k < items.size(); ++k) {
          for (int i = 0; i < take[k]; ++i) left.push_back(items[k].first);
          for (int i = 0; i < items[k].second - take[k]; ++i) right.push_back(items[k].first);
        }
        out.add_term(Partition::from_parts_unsorted(std::move(left)),
                     Partition::from_parts_unsorted(std::move(right)), c * w);
        return;
      }
      for (int k = 0; k <= items[idx].second; ++k) {
        take[idx] = k;
        rec(idx + 1, w * Rat(binomial(items[idx].second, k)));
      }
    };
    rec(0, Rat(1));
  }
  return out;
}

/// Algebra antimorphism with p_r -> -p_r (an antipode; the algebra is
/// commutative, so it is a morphism as well).
inline SymFunc antipode(const SymFunc& f) {
  detail::PMap pf = detail::to_pmap(f);
  SymFunc out(Basis::p);
  for (auto& [lam, c] : pf)
    out.add_term(lam, lam.length() % 2 == 0 ? c : -c);
  return out;
}

/// Counit: the coefficient of the empty partition in the canonical basis.
inline RatFunc counit(const SymFunc& f) {
  detail::PMap pf = detail::to_pmap(f);
  auto it = pf.find(Partition());
  return it == pf.end() ? RatFunc::zero() : it->second;
}

/// Pairing of a tensor against a pair of elements, slotwise.
inline RatFunc tensor_pairing_t(const SymFuncTensor& T, const SymFunc& g, const SymFunc& h) {
  detail::PMap pg = detail::to_pmap(g), ph = detail::to_pmap(h);
  RatFunc acc;
  for (auto& [key, c] : T.terms()) {
    auto itg = pg.find(key.first);
    if (itg == pg.end()) continue;
    auto ith = ph.find(key.second);
    if (ith == ph.end()) continue;
    acc += c * itg->second * z_t(key.first) * ith->second * z_t(key.second);
  }
  return acc;
}

inline SymFunc convert_to_m(const SymFunc& f);

inline SymFunc convert(const SymFunc& f, Basis target) {
  using namespace detail;
  if (f.basis() == target) return f;
  if (target == Basis::m) return convert_to_m(f);
  PMap pf = to_pmap(f);
  if (target == Basis::p) return from_pmap(pf, Basis::p);

  SymFunc out(target);
  // split into graded pieces and convert each
  std::map<int, PMap> pieces;
  for (auto& [lam, c] : pf) pieces[lam.weight()][lam] = c;
  for (auto& [d, piece] : pieces) {
    check_cap(d);
    DegreeTables& t = degree_tables(d);
    size_t n = t.parts.size();
    switch (target) {
      case Basis::e:
      case Basis::h: {
        ensure_eh_tables(d);
        // with M the (basis -> p) matrix, solve M^T y = v via y = (M^{-1})^T v
        std::vector<RatFunc> v(n);
        for (auto& [lam, c] : piece) v[t.index.at(lam)] = c;
        const auto& inv = target == Basis::e ? t.e_inv : t.h_inv;
        for (size_t i = 0; i < n; ++i) {
          RatFunc y;
          for (size_t j = 0; j < n; ++j)
            if (!v[j].is_zero()) y += inv[j][i] * v[j];
          out.add_term(t.parts[i], y);
        }
        break;
      }
      case Basis::s:
        for (const Partition& mu : t.parts)
          out.add_term(mu, pmap_pair0(piece, schur_expansion(mu)));
        break;
      case Basis::Sdual:
        for (const Partition& mu : t.parts)
          out.add_term(mu, pmap_pair_t(piece, schur_expansion(mu)));
        break;
      case Basis::c:
        for (const Partition& mu : t.parts)
          out.add_term(mu, pmap_pair_t(piece, m_expansion(mu)));
        break;
      case Basis::HL:
        for (const Partition& mu : t.parts)
          out.add_term(mu, pmap_pair_t(piece, hl_expansion(mu)) * RatFunc(b_t(mu)));
        break;
      default: throw std::logic_error("convert: unreachable target");
    }
  }
  return out;
}

namespace detail {

/// Raw specialization of a canonical-basis expansion to N variables, with no
/// faithfulness check.
inline std::map<std::vector<int>, RatFunc> expand_pmap(const PMap& pf, int N) {
  std::map<std::vector<int>, RatFunc> acc;
  for (auto& [lam, c] : pf) {
    std::map<std::vector<int>, RatFunc> cur{{std::vector<int>(N, 0), RatFunc::one()}};
    for (int r : lam.parts()) {
      std::map<std::vector<int>, RatFunc> next;
      for (auto& [expv, w] : cur)
        for (int i = 0; i < N; ++i) {
          std::vector<int> e2 = expv;
          e2[i] += r;
          auto [it, fresh] = next.try_emplace(std::move(e2), w);
          if (!fresh) it->second += w;
        }
      cur = std::move(next);
    }
    for (auto& [expv, w] : cur) {
      RatFunc v = w * c;
      if (v.is_zero()) continue;
      auto [it, fresh] = acc.try_emplace(expv, v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  return acc;
}

}  // namespace detail

/// Conversion to the monomial basis through the finite-variable expansion:
/// the coefficient of m_lambda is read off the weakly decreasing exponent
/// vectors (one orbit representative each).
inline SymFunc convert_to_m(const SymFunc& f) {
  detail::PMap pf = detail::to_pmap(f);
  int d = 0;
  for (auto& [lam, c] : pf) d = std::max(d, lam.weight());
  detail::check_cap(d);
  SymFunc out(Basis::m);
  if (pf.empty()) return out;
  auto expanded = detail::expand_pmap(pf, std::max(d, 1));
  for (auto& [expv, c] : expanded) {
    bool sorted = true;
    for (size_t i = 1; i < expv.size(); ++i)
      if (expv[i] > expv[i - 1]) sorted = false;
    if (!sorted) continue;
    std::vector<int> parts;
    for (int e : expv)
      if (e > 0) parts.push_back(e);
    out.add_term(Partition(std::move(parts)), c);
  }
  return out;
}

/// Image of f in N variables as a sparse exponent-vector map.  The
/// specialization is refused when it would lose information, i.e. when some
/// monomial orbit in f needs more than N variables; any N at least the degree
/// of f is always enough.
inline std::map<std::vector<int>, RatFunc> expand_in_monomials(const SymFunc& f, int N) {
  if (N < 1) throw std::domain_error("expand_in_monomials: need at least one variable");
  const SymFunc inm = convert_to_m(f);
  for (auto& [lam, c] : inm.terms())
    if (lam.length() > N)
      throw std::domain_error(
          "expand_in_monomials: too few variables for a faithful expansion");
  return detail::expand_pmap(detail::to_pmap(f), N);
}

/// Kostka-Foulkes polynomial: the coefficient of the Hall-Littlewood element
/// of mu inside the Schur element of lambda.
inline Poly kostka_foulkes(const Partition& lam, const Partition& mu) {
  if (lam.weight() != mu.weight())
    throw std::domain_error("kostka_foulkes: weight mismatch");
  RatFunc k = detail::pmap_pair_t(detail::schur_expansion(lam), detail::hl_expansion(mu)) *
              RatFunc(b_t(mu));
  if (!k.is_poly()) throw InternalCheckError("kostka_foulkes: non-polynomial coefficient");
  Poly K = k.to_poly();
  if (!K.has_integer_coeffs())
    throw InternalCheckError("kostka_foulkes: non-integer coefficients");
  if (lam == mu) {
    if (!K.is_one()) throw InternalCheckError("kostka_foulkes: diagonal entry differs from 1");
  } else if (!dominance_lt(mu, lam)) {
    if (!K.is_zero())
      throw InternalCheckError("kostka_foulkes: nonzero entry outside the dominance cone");
  } else {
    if (!K.coeff(0).is_zero())
      throw InternalCheckError("kostka_foulkes: constant term present below the diagonal");
  }
  // value at 1 is the Kostka number, the monomial coefficient in the Schur element
  RatFunc kn = detail::pmap_pair0(detail::schur_expansion(lam),
                                  detail::mono_expansion(Basis::h, mu));
  if (Rat(K.eval(Rat(1))) != kn.eval(Rat(0)))
    throw InternalCheckError("kostka_foulkes: specialization at 1 is not the Kostka number");
  return K;
}

/// Coefficient of the Schur element of xi in the product of those of lambda
/// and mu.
inline Int littlewood_richardson(const Partition& lam, const Partition& mu,
                                 const Partition& xi) {
  if (lam.weight() + mu.weight() != xi.weight())
    throw std::domain_error("littlewood_richardson: weight mismatch");
  detail::PMap prod =
      detail::pmap_mul(detail::schur_expansion(lam), detail::schur_expansion(mu));
  RatFunc c = detail::pmap_pair0(prod, detail::schur_expansion(xi));
  Rat v = c.eval(Rat(0));  // constant rational function
  if (boost::multiprecision::denominator(v) != 1 || v < 0)
    throw InternalCheckError("littlewood_richardson: coefficient is not a nonnegative integer");
  return Int(boost::multiprecision::numerator(v));
}

/// The exp direction of the generating-function transform:
/// given y_1..y_k (index 0 ignored), return x_0..x_k with
/// x_0 = 1 and n x_n = sum_{a=1}^n y_a x_{n-a}.
inline std::vector<RatFunc> genfn_exp(const std::vector<RatFunc>& y) {
  std::vector<RatFunc> x(y.size());
  if (x.empty()) return x;
  x[0] = RatFunc::one();
  for (size_t n = 1; n < y.size(); ++n) {
    RatFunc acc;
    for (size_t a = 1; a <= n; ++a) acc += y[a] * x[n - a];
    x[n] = acc * Rat(1, static_cast<long>(n));
  }
  return x;
}

/// The log direction: given x_0..x_k with x_0 = 1, recover y (y_0 = 0).
inline std::vector<RatFunc> genfn_log(const std::vector<RatFunc>& x) {
  std::vector<RatFunc> y(x.size());
  if (x.empty()) return y;
  if (!x[0].is_one()) throw std::domain_error("genfn_log: constant term must be 1");
  for (size_t n = 1; n < x.size(); ++n) {
    RatFunc acc = x[n] * Rat(static_cast<long>(n));
    for (size_t a = 1; a < n; ++a) acc -= y[a] * x[n - a];
    y[n] = acc;
  }
  return y;
}

}  // namespace hallsym
