#pragma once
// Generic Hall algebra of the nilpotent cyclic-quiver category of rank n.
// Elements are Q(v)-linear combinations of u_lambda K_alpha with lambda a
// multipartition and K_alpha a class in Z^n/(delta).  The module provides the
// twisted multiplication and comultiplication, the Hopf pairing, PBW-type and
// (dual) canonical bases via the bar involution, the central elements x_r,
// the derivation-like operators e_i', orthogonal projection onto the centre,
// and the embedding of the symmetric-function algebra into the centre.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hallsym/errors.hpp"
#include "hallsym/fq.hpp"
#include "hallsym/hall1.hpp"
#include "hallsym/laurent.hpp"
#include "hallsym/multipartition.hpp"
#include "hallsym/partition.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/ratfunc.hpp"
#include "hallsym/scalars.hpp"
#include "hallsym/symfunc.hpp"

namespace hallsym {

/// Caps on the total dimension of any rank-n Hall algebra computation.  The
/// counting-polynomial machinery behind the structure constants grows very
/// quickly with the dimension, so each rank carries an explicit budget.
struct HnConfig {
  long dim_cap_rank1 = 8;
  long dim_cap_rank2 = 6;
  long dim_cap_rank3 = 4;
  long dim_cap_high = 3;

  long cap(int n) const {
    if (n <= 1) return dim_cap_rank1;
    if (n == 2) return dim_cap_rank2;
    if (n == 3) return dim_cap_rank3;
    return dim_cap_high;
  }
};

inline HnConfig& hn_config() {
  static HnConfig cfg;
  return cfg;
}

// ---------------------------------------------------------------------------
// Euler and symmetrized forms on dimension vectors
// ---------------------------------------------------------------------------

/// Euler form <d,e> = sum_i d_i e_i - sum_i d_i e_{i-1} (indices mod n), the
/// homological form of the cyclic quiver with one arrow into each vertex from
/// its successor.
inline long euler_form(const DimVec& d, const DimVec& e) {
  if (d.size() != e.size()) throw std::domain_error("euler_form: rank mismatch");
  int n = static_cast<int>(d.size());
  long s = 0;
  for (int v = 0; v < n; ++v) s += d[v] * (e[v] - e[(v - 1 + n) % n]);
  return s;
}

/// Symmetrized form (d,e) = <d,e> + <e,d>.  Its radical is generated by
/// delta = (1,...,1); for n = 1 the form vanishes identically.
inline long sym_form(const DimVec& d, const DimVec& e) {
  return euler_form(d, e) + euler_form(e, d);
}

// ---------------------------------------------------------------------------
// K-classes
// ---------------------------------------------------------------------------

/// A class in Z^n/(delta).  The stored representative always has last
/// coordinate zero, obtained by subtracting a multiple of delta, so equality
/// of classes is equality of representatives.
class KClass {
 public:
  KClass() = default;

  explicit KClass(DimVec a) : rep_(std::move(a)) {
    if (rep_.empty()) throw std::domain_error("KClass: empty vector");
    long last = rep_.back();
    for (auto& x : rep_) x -= last;
  }

  static KClass zero(int n) { return KClass(DimVec(n, 0)); }

  int rank() const { return static_cast<int>(rep_.size()); }
  const DimVec& rep() const { return rep_; }
  bool is_zero() const {
    return std::all_of(rep_.begin(), rep_.end(), [](long x) { return x == 0; });
  }

  KClass operator+(const KClass& o) const {
    if (rank() != o.rank()) throw std::domain_error("KClass: rank mismatch");
    DimVec s(rep_);
    for (int v = 0; v < rank(); ++v) s[v] += o.rep_[v];
    return KClass(std::move(s));
  }
  KClass operator-() const {
    DimVec s(rep_);
    for (auto& x : s) x = -x;
    return KClass(std::move(s));
  }

  bool operator==(const KClass& o) const { return rep_ == o.rep_; }
  bool operator!=(const KClass& o) const { return !(*this == o); }
  bool operator<(const KClass& o) const { return rep_ < o.rep_; }

  std::string str() const {
    std::string s = "[";
    for (size_t v = 0; v < rep_.size(); ++v) {
      if (v) s += ",";
      s += std::to_string(rep_[v]);
    }
    return s + "]";
  }

 private:
  DimVec rep_;
};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// An element of the rank-n Hall algebra: a finite sum of terms
/// c(v) u_lambda K_alpha.  The grading lives on the multipartition part
/// (every K_alpha has degree zero).
class HallElementN {
 public:
  HallElementN() = default;
  explicit HallElementN(int n) : n_(n) {}

  static HallElementN zero(int n) { return HallElementN(n); }
  static HallElementN one(int n) { return element(MultiPartition::empty_of_rank(n)); }
  static HallElementN element(const MultiPartition& mp) {
    return element(mp, KClass::zero(mp.rank()));
  }
  static HallElementN element(const MultiPartition& mp, const KClass& k) {
    if (mp.rank() != k.rank())
      throw std::domain_error("HallElementN: multipartition and K-class rank mismatch");
    HallElementN x(mp.rank());
    x.add_term(mp, k, RatFunc::one());
    return x;
  }
  static HallElementN k_element(const KClass& k) {
    return element(MultiPartition::empty_of_rank(k.rank()), k);
  }

  int rank() const { return n_; }
  const std::map<std::pair<MultiPartition, KClass>, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RatFunc coeff(const MultiPartition& mp) const { return coeff(mp, KClass::zero(n_)); }
  RatFunc coeff(const MultiPartition& mp, const KClass& k) const {
    auto it = terms_.find(std::make_pair(mp, k));
    return it == terms_.end() ? RatFunc::zero() : it->second;
  }

  void add_term(const MultiPartition& mp, const KClass& k, const RatFunc& c) {
    if (mp.rank() != n_ || k.rank() != n_)
      throw std::domain_error("HallElementN: term rank mismatch");
    if (c.is_zero()) return;
    auto key = std::make_pair(mp, k);
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// True when every term carries the trivial K-class.
  bool is_k_free() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](auto& t) { return t.first.second.is_zero(); });
  }

  /// The common dimension vector of all terms, when there is one.
  std::optional<DimVec> homogeneous_degree() const {
    std::optional<DimVec> d;
    for (auto& [key, c] : terms_) {
      DimVec e = dim_vector(key.first);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return d;
  }

  HallElementN graded_piece(const DimVec& d) const {
    HallElementN g(n_);
    for (auto& [key, c] : terms_)
      if (dim_vector(key.first) == d) g.add_term(key.first, key.second, c);
    return g;
  }

  HallElementN operator+(const HallElementN& o) const {
    check_rank(o);
    HallElementN r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
  }
  HallElementN operator-(const HallElementN& o) const {
    check_rank(o);
    HallElementN r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, -c);
    return r;
  }
  HallElementN operator-() const {
    HallElementN r(n_);
    for (auto& [key, c] : terms_) r.add_term(key.first, key.second, -c);
    return r;
  }
  HallElementN operator*(const RatFunc& sc) const {
    HallElementN r(n_);
    for (auto& [key, c] : terms_) r.add_term(key.first, key.second, c * sc);
    return r;
  }
  HallElementN& operator+=(const HallElementN& o) { return *this = *this + o; }
  HallElementN& operator-=(const HallElementN& o) { return *this = *this - o; }

  bool operator==(const HallElementN& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const HallElementN& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [key, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      if (!c.is_one()) out += "(" + c.str("v") + ")";
      out += "u[" + key.first.str() + "]";
      if (!key.second.is_zero()) out += "K" + key.second.str();
    }
    return out;
  }

 private:
  void check_rank(const HallElementN& o) const {
    if (n_ != o.n_) throw std::domain_error("HallElementN: rank mismatch");
  }

  int n_ = 0;
  std::map<std::pair<MultiPartition, KClass>, RatFunc> terms_;
};

inline HallElementN operator*(const RatFunc& sc, const HallElementN& x) { return x * sc; }

inline HallElementN multiply_n(const HallElementN& x, const HallElementN& y);

/// An element of the two-fold tensor square, with multiplication taken
/// componentwise (the K-commutation rules inside each component supply the
/// twist of Green's theorem).
class HallTensorN {
 public:
  using Key = std::pair<MultiPartition, KClass>;

  HallTensorN() = default;
  explicit HallTensorN(int n) : n_(n) {}

  int rank() const { return n_; }
  const std::map<std::pair<Key, Key>, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& a, const Key& b, const RatFunc& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RatFunc coeff(const Key& a, const Key& b) const {
    auto it = terms_.find(std::make_pair(a, b));
    return it == terms_.end() ? RatFunc::zero() : it->second;
  }

  HallTensorN operator+(const HallTensorN& o) const {
    HallTensorN r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
  }
  HallTensorN operator-(const HallTensorN& o) const {
    HallTensorN r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, -c);
    return r;
  }

  HallTensorN operator*(const HallTensorN& o) const {
    HallTensorN r(n_);
    for (auto& [k1, c1] : terms_) {
      HallElementN a1 = HallElementN::element(k1.first.first, k1.first.second);
      HallElementN b1 = HallElementN::element(k1.second.first, k1.second.second);
      for (auto& [k2, c2] : o.terms_) {
        HallElementN a2 = HallElementN::element(k2.first.first, k2.first.second);
        HallElementN b2 = HallElementN::element(k2.second.first, k2.second.second);
        HallElementN pa = multiply_n(a1, a2);
        HallElementN pb = multiply_n(b1, b2);
        for (auto& [ka, ca] : pa.terms())
          for (auto& [kb, cb] : pb.terms()) r.add_term(ka, kb, c1 * c2 * ca * cb);
      }
    }
    return r;
  }

  bool operator==(const HallTensorN& o) const { return terms_ == o.terms_; }
  bool operator!=(const HallTensorN& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  std::map<std::pair<Key, Key>, RatFunc> terms_;
};

// ---------------------------------------------------------------------------
// Structure constants
// ---------------------------------------------------------------------------

namespace detail {

/// Counting polynomial for the triple, as a polynomial in q.  Rank one is
/// served by the closed-form machinery of the classical algebra; higher ranks
/// go through the interpolation cache.
inline Poly hall_poly_n(const MultiPartition& lam, const MultiPartition& mu,
                        const MultiPartition& xi) {
  if (xi.rank() == 1) return hall_polynomial(lam.comp(1), mu.comp(1), xi.comp(1));
  try {
    return interpolate_hall_polynomial_n(lam, mu, xi);
  } catch (const BoundError& e) {
    throw BoundError(std::string(e.what()) + " [triple " + lam.str() + " | " + mu.str() +
                     " | " + xi.str() + "]");
  }
}

/// f(v^2) as a rational function in v.
inline RatFunc rf_qpoly(const Poly& f) {
  return RatFunc::from_laurent(Laurent::from_poly(f).subst_pow(2));
}

/// a_lambda(v^2).
inline RatFunc aut_rf(const MultiPartition& mp) { return rf_qpoly(aut_poly_n(mp)); }

inline RatFunc vpow_l(long e) { return RatFunc::monomial(static_cast<int>(e)); }

inline void check_dim_cap(int n, long dim, const char* where) {
  if (dim > hn_config().cap(n))
    throw BoundError(std::string(where) + ": total dimension " + std::to_string(dim) +
                     " exceeds the rank-" + std::to_string(n) + " cap " +
                     std::to_string(hn_config().cap(n)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Multiplication, comultiplication, pairing
// ---------------------------------------------------------------------------

/// Twisted product: on basis vectors,
///   (u_lam K_a)(u_mu K_b)
///     = v^{<lam,mu> + (a, dim mu)} sum_xi F^xi_{lam,mu}(v^2) u_xi K_{a+b}.
inline HallElementN multiply_n(const HallElementN& x, const HallElementN& y) {
  if (x.rank() != y.rank() || x.rank() < 1)
    throw std::domain_error("multiply_n: rank mismatch");
  int n = x.rank();
  HallElementN out(n);
  for (auto& [kx, cx] : x.terms()) {
    const MultiPartition& lam = kx.first;
    DimVec dl = dim_vector(lam);
    for (auto& [ky, cy] : y.terms()) {
      const MultiPartition& mu = ky.first;
      DimVec dm = dim_vector(mu);
      long tw = euler_form(dl, dm) + sym_form(kx.second.rep(), dm);
      RatFunc c = cx * cy * detail::vpow_l(tw);
      KClass k = kx.second + ky.second;
      if (mu.is_empty()) {
        out.add_term(lam, k, c);
        continue;
      }
      if (lam.is_empty()) {
        out.add_term(mu, k, c);
        continue;
      }
      detail::check_dim_cap(n, total_dim(lam) + total_dim(mu), "multiply_n");
      DimVec dx(dl);
      for (int v = 0; v < n; ++v) dx[v] += dm[v];
      for (const MultiPartition& xi : enumerate_multipartitions(n, dx)) {
        Poly F = detail::hall_poly_n(lam, mu, xi);
        if (F.is_zero()) continue;
        out.add_term(xi, k, c * detail::rf_qpoly(F));
      }
    }
  }
  return out;
}

/// Comultiplication with the K-insertion making it an algebra map:
///   Delta(u_X) = sum v^{<lam,mu>} F^X_{lam,mu} (a_lam a_mu / a_X)(v^2)
///                u_lam K_{dim mu} (x) u_mu,
/// extended over K-classes by Delta(K_a) = K_a (x) K_a.
inline HallTensorN coproduct_n(const HallElementN& x) {
  if (x.rank() < 1) throw std::domain_error("coproduct_n: rank mismatch");
  int n = x.rank();
  HallTensorN out(n);
  for (auto& [kx, cx] : x.terms()) {
    const MultiPartition& X = kx.first;
    const KClass& gamma = kx.second;
    detail::check_dim_cap(n, total_dim(X), "coproduct_n");
    DimVec dX = dim_vector(X);
    RatFunc ax_inv = detail::aut_rf(X).inverse();
    // iterate over all splittings dl + dm = dX
    DimVec dl(n, 0);
    while (true) {
      DimVec dm(dX);
      for (int v = 0; v < n; ++v) dm[v] -= dl[v];
      long etw = euler_form(dl, dm);
      for (const MultiPartition& lam : enumerate_multipartitions(n, dl)) {
        RatFunc al = detail::aut_rf(lam);
        for (const MultiPartition& mu : enumerate_multipartitions(n, dm)) {
          Poly F = detail::hall_poly_n(lam, mu, X);
          if (F.is_zero()) continue;
          RatFunc c =
              cx * detail::vpow_l(etw) * detail::rf_qpoly(F) * al * detail::aut_rf(mu) * ax_inv;
          out.add_term({lam, KClass(dm) + gamma}, {mu, gamma}, c);
        }
      }
      // advance the odometer over componentwise 0 <= dl <= dX
      int v = 0;
      while (v < n) {
        if (dl[v] < dX[v]) {
          ++dl[v];
          break;
        }
        dl[v] = 0;
        ++v;
      }
      if (v == n) break;
    }
  }
  return out;
}

/// Hopf pairing:
///   <u_lam K_a, u_mu K_b> = delta_{lam,mu} v^{(a,b) + 2 dim lam} / a_lam(v^2).
inline RatFunc pairing_n(const HallElementN& x, const HallElementN& y) {
  if (x.rank() != y.rank() || x.rank() < 1)
    throw std::domain_error("pairing_n: rank mismatch");
  RatFunc acc;
  for (auto& [kx, cx] : x.terms()) {
    RatFunc norm = detail::vpow_l(2 * total_dim(kx.first)) * detail::aut_rf(kx.first).inverse();
    for (auto& [ky, cy] : y.terms()) {
      if (!(kx.first == ky.first)) continue;
      long e = sym_form(kx.second.rep(), ky.second.rep());
      acc += cx * cy * detail::vpow_l(e) * norm;
    }
  }
  return acc;
}

/// <T, y (x) z> with <a (x) b, y (x) z> = <a,y><b,z>.
inline RatFunc tensor_pairing_n(const HallTensorN& T, const HallElementN& y,
                                const HallElementN& z) {
  RatFunc acc;
  for (auto& [key, c] : T.terms()) {
    HallElementN a = HallElementN::element(key.first.first, key.first.second);
    HallElementN b = HallElementN::element(key.second.first, key.second.second);
    acc += c * pairing_n(a, y) * pairing_n(b, z);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Degeneration order and PBW-type basis
// ---------------------------------------------------------------------------

namespace detail {

/// Ranks of all path powers on the block normal form; independent of the
/// field, so computed over F_2.
inline std::vector<std::vector<int>> degeneration_profile(const MultiPartition& mp) {
  return path_ranks(rep_from_multipartition(mp, 2), static_cast<int>(total_dim(mp)));
}

}  // namespace detail

/// mu <= lam in the degeneration order on modules of a fixed dimension
/// vector: mu is a degeneration of lam exactly when no path rank grows.  The
/// unique minimum of each graded piece is the semisimple multipartition.
inline bool deg_le(const MultiPartition& mu, const MultiPartition& lam) {
  if (mu.rank() != lam.rank()) throw std::domain_error("deg_le: rank mismatch");
  if (dim_vector(mu) != dim_vector(lam)) return false;
  auto pm = detail::degeneration_profile(mu);
  auto pl = detail::degeneration_profile(lam);
  for (size_t v = 0; v < pm.size(); ++v)
    for (size_t l = 0; l < pm[v].size(); ++l)
      if (pm[v][l] > pl[v][l]) return false;
  return true;
}

inline bool deg_lt(const MultiPartition& mu, const MultiPartition& lam) {
  return !(mu == lam) && deg_le(mu, lam);
}

namespace detail {

/// The multipartitions of one dimension vector, listed in a linear extension
/// of the degeneration order (most degenerate first).
inline std::vector<MultiPartition> piece_sorted(int n, const DimVec& d) {
  std::vector<std::pair<long, MultiPartition>> keyed;
  for (MultiPartition& mp : enumerate_multipartitions(n, d)) {
    long s = 0;
    for (auto& row : degeneration_profile(mp)) s = std::accumulate(row.begin(), row.end(), s);
    keyed.emplace_back(s, std::move(mp));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  std::vector<MultiPartition> list;
  for (auto& [s, mp] : keyed) list.push_back(std::move(mp));
  return list;
}

}  // namespace detail

/// PBW-type basis element u~_lam := v^{h_{lam,lam} - |lam|} u_lam.
inline HallElementN pbw_n(const MultiPartition& mp) {
  HallElementN x(mp.rank());
  x.add_term(mp, KClass::zero(mp.rank()),
             detail::vpow_l(hom_dim_n(mp, mp) - total_dim(mp)));
  return x;
}

/// Coordinates of a K-free element over the PBW-type family.
inline std::map<MultiPartition, RatFunc> pbw_coordinates_n(const HallElementN& x) {
  if (!x.is_k_free())
    throw std::domain_error("pbw_coordinates_n: element must be K-free");
  std::map<MultiPartition, RatFunc> out;
  for (auto& [key, c] : x.terms())
    out.emplace(key.first,
                c * detail::vpow_l(total_dim(key.first) - hom_dim_n(key.first, key.first)));
  return out;
}

// ---------------------------------------------------------------------------
// Bar involution
// ---------------------------------------------------------------------------

/// True when M_mp is semisimple (all parts equal to one).
inline bool is_semisimple(const MultiPartition& mp) {
  for (auto& c : mp.comps())
    for (int p : c.parts())
      if (p != 1) return false;
  return true;
}

/// Product of the semisimple radical layers in PBW normalization,
/// E_lam := u~_{L_1} ... u~_{L_l} with L_1 the top layer.  The radical
/// filtration of M_lam is the unique filtration with these semisimple
/// subquotients, which makes E_lam = u~_lam + strictly more degenerate PBW
/// terms, with coefficient exactly one on the diagonal.
inline HallElementN radical_layer_product(const MultiPartition& mp) {
  HallElementN out = HallElementN::one(mp.rank());
  for (const MultiPartition& L : radical_layers(mp)) out = multiply_n(out, pbw_n(L));
  return out;
}

namespace detail {

inline std::mutex& bar_memo_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<std::string, HallElementN>& bar_memo() {
  static std::map<std::string, HallElementN> m;
  return m;
}

/// bar(u~_lam), computed by re-expanding through the radical-layer products,
/// which are fixed by the bar involution.
inline HallElementN bar_pbw(const MultiPartition& lam) {
  int n = lam.rank();
  const std::string key = std::to_string(n) + "|" + lam.str();
  {
    std::lock_guard<std::mutex> lock(bar_memo_mutex());
    auto it = bar_memo().find(key);
    if (it != bar_memo().end()) return it->second;
  }
  HallElementN result(n);
  if (is_semisimple(lam)) {
    result = pbw_n(lam);
  } else {
    HallElementN E = radical_layer_product(lam);
    std::map<MultiPartition, RatFunc> T = pbw_coordinates_n(E);
    auto diag = T.find(lam);
    if (diag == T.end() || !diag->second.is_one())
      throw InternalCheckError("bar: radical-layer product is not unitriangular at " +
                               lam.str());
    result = E;
    for (auto& [mu, t] : T) {
      if (mu == lam) continue;
      if (!deg_lt(mu, lam))
        throw InternalCheckError("bar: unexpected term " + mu.str() +
                                 " in the radical-layer expansion of " + lam.str());
      result -= bar_pbw(mu) * t.conj();
    }
  }
  std::lock_guard<std::mutex> lock(bar_memo_mutex());
  return bar_memo().emplace(key, std::move(result)).first->second;
}

}  // namespace detail

/// Bar involution: v |-> v^{-1}, u~_lam fixed for semisimple lam,
/// K_a |-> K_{-a}; a ring automorphism on the whole algebra.
inline HallElementN bar_n(const HallElementN& x) {
  if (x.rank() < 1) throw std::domain_error("bar_n: rank mismatch");
  HallElementN out(x.rank());
  for (auto& [key, c] : x.terms()) {
    const MultiPartition& lam = key.first;
    detail::check_dim_cap(x.rank(), total_dim(lam), "bar_n");
    RatFunc ct = c * detail::vpow_l(total_dim(lam) - hom_dim_n(lam, lam));
    HallElementN piece = detail::bar_pbw(lam) * ct.conj();
    for (auto& [k2, c2] : piece.terms()) out.add_term(k2.first, -key.second, c2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical and dual canonical bases
// ---------------------------------------------------------------------------

namespace detail {

inline std::mutex& canon_memo_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<std::string, HallElementN>& canon_memo() {
  static std::map<std::string, HallElementN> m;
  return m;
}

/// The unique c in v^{-1} Z[v^{-1}] with c(v) - c(v^{-1}) = f(v); f must be
/// an integral antisymmetric Laurent polynomial without constant term.
inline RatFunc neg_half(const RatFunc& f, const MultiPartition& at) {
  if (!f.is_laurent())
    throw InternalCheckError("canonical basis: non-Laurent defect at " + at.str());
  Laurent l = f.to_laurent();
  if (!(f.conj() + f).is_zero() || !l.coeff(0).is_zero())
    throw InternalCheckError("canonical basis: defect not antisymmetric at " + at.str());
  Laurent neg;
  for (auto& [e, c] : l.terms()) {
    if (denominator(c) != 1)
      throw InternalCheckError("canonical basis: non-integral defect at " + at.str());
    if (e < 0) neg += Laurent::monomial(e, c);
  }
  return RatFunc::from_laurent(neg);
}

}  // namespace detail

/// Canonical basis element: the unique bar-invariant
///   b_lam = u~_lam + sum_{mu < lam} p_{lam,mu} u~_mu
/// with every correction coefficient in v^{-1} Z[v^{-1}] (for rank one the
/// entries are moreover polynomials in q^{-1} = v^{-2}).
inline HallElementN canonical_basis_n(const MultiPartition& lam) {
  int n = lam.rank();
  detail::check_dim_cap(n, total_dim(lam), "canonical_basis_n");
  const std::string key = std::to_string(n) + "|" + lam.str();
  {
    std::lock_guard<std::mutex> lock(detail::canon_memo_mutex());
    auto it = detail::canon_memo().find(key);
    if (it != detail::canon_memo().end()) return it->second;
  }
  std::vector<MultiPartition> piece = detail::piece_sorted(n, dim_vector(lam));
  HallElementN b = pbw_n(lam);
  for (auto it = piece.rbegin(); it != piece.rend(); ++it) {
    const MultiPartition& mu = *it;
    if (mu == lam) continue;
    HallElementN defect = bar_n(b) - b;
    auto coords = pbw_coordinates_n(defect);
    auto at = coords.find(mu);
    if (at == coords.end() || at->second.is_zero()) continue;
    if (!deg_lt(mu, lam))
      throw InternalCheckError("canonical basis: defect outside the cone below " + lam.str());
    b += pbw_n(mu) * detail::neg_half(at->second, mu);
  }
  if (!(bar_n(b) == b))
    throw InternalCheckError("canonical basis: recursion failed to reach a bar-invariant "
                             "element at " + lam.str());
  for (auto& [mu, c] : pbw_coordinates_n(b)) {
    if (mu == lam) {
      if (!c.is_one())
        throw InternalCheckError("canonical basis: diagonal entry differs from one at " +
                                 lam.str());
      continue;
    }
    if (!c.is_laurent())
      throw InternalCheckError("canonical basis: non-Laurent correction entry at " + lam.str());
    Laurent l = c.to_laurent();
    if (l.max_exp() > -1)
      throw InternalCheckError("canonical basis: correction entry outside v^{-1}Z[v^{-1}] at " +
                               lam.str());
    if (n == 1)
      for (auto& [e, co] : l.terms())
        if (e % 2 != 0)
          throw InternalCheckError(
              "canonical basis: rank-one entry has an odd power of v at " + lam.str());
  }
  std::lock_guard<std::mutex> lock(detail::canon_memo_mutex());
  return detail::canon_memo().emplace(key, std::move(b)).first->second;
}

/// Dual canonical basis element b*_lam: the unique element of the graded
/// piece with <b*_lam, b_mu> = delta_{lam,mu}; supported on u~_nu for
/// nu >= lam in the degeneration order.
inline HallElementN dual_canonical_basis_n(const MultiPartition& lam) {
  int n = lam.rank();
  detail::check_dim_cap(n, total_dim(lam), "dual_canonical_basis_n");
  std::vector<MultiPartition> piece = detail::piece_sorted(n, dim_vector(lam));
  std::map<MultiPartition, std::map<MultiPartition, RatFunc>> P;
  for (const MultiPartition& mu : piece)
    P.emplace(mu, pbw_coordinates_n(canonical_basis_n(mu)));
  // solve sum_nu P_{mu,nu} y_nu = delta_{lam,mu}, ascending along the order
  std::map<MultiPartition, RatFunc> y;
  for (const MultiPartition& mu : piece) {
    RatFunc rhs = mu == lam ? RatFunc::one() : RatFunc::zero();
    for (auto& [nu, p] : P.at(mu)) {
      if (nu == mu) continue;
      auto it = y.find(nu);
      if (it != y.end()) rhs -= p * it->second;
    }
    y.emplace(mu, rhs);
  }
  HallElementN out(n);
  for (auto& [nu, c] : y) {
    if (c.is_zero()) continue;
    // divide by the PBW norm <u~_nu, u~_nu> = v^{2 h_{nu,nu}} / a_nu(v^2)
    RatFunc d = c * detail::aut_rf(nu) * detail::vpow_l(-2 * hom_dim_n(nu, nu));
    HallElementN scaled = pbw_n(nu) * d;
    for (auto& [k2, c2] : scaled.terms()) out.add_term(k2.first, k2.second, c2);
  }
  return out;
}

/// Precompute the canonical basis for every dimension vector of the given
/// total dimension; independent graded pieces are solved concurrently.
inline long warm_canonical_bases(int n, long total) {
  std::vector<DimVec> dims;
  DimVec d(n, 0);
  std::function<void(int, long)> rec = [&](int v, long left) {
    if (v == n - 1) {
      d[v] = left;
      dims.push_back(d);
      return;
    }
    for (long a = 0; a <= left; ++a) {
      d[v] = a;
      rec(v + 1, left - a);
    }
  };
  rec(0, total);
  std::vector<std::future<long>> futs;
  for (const DimVec& dv : dims)
    futs.push_back(std::async(std::launch::async, [n, dv]() {
      long cnt = 0;
      for (const MultiPartition& mp : enumerate_multipartitions(n, dv)) {
        canonical_basis_n(mp);
        ++cnt;
      }
      return cnt;
    }));
  long total_count = 0;
  for (auto& f : futs) total_count += f.get();
  return total_count;
}

// ---------------------------------------------------------------------------
// Centre
// ---------------------------------------------------------------------------

/// Central element
///   x_r = (-v^{-2})^{rn} sum (-1)^{h_{lam,lam}} a_lam(v^2) u_lam,
/// the sum over multipartitions of dimension vector r*delta whose socle is
/// square-free (each component empty or a single part).
inline HallElementN central_x(int n, int r) {
  if (n < 1) throw std::domain_error("central_x: rank must be positive");
  if (r < 0) throw std::domain_error("central_x: negative degree");
  if (r == 0) return HallElementN::one(n);
  HallElementN out(n);
  DimVec d(n, r);
  RatFunc front = detail::vpow_l(-2 * r * n);
  if ((r * n) % 2 != 0) front = -front;
  for (const MultiPartition& mp : enumerate_multipartitions(n, d)) {
    if (!socle_squarefree(mp)) continue;
    RatFunc c = front * detail::aut_rf(mp);
    if (hom_dim_n(mp, mp) % 2 != 0) c = -c;
    out.add_term(mp, KClass::zero(n), c);
  }
  return out;
}

/// x_lambda := prod_i x_{lambda_i}.
inline HallElementN central_x_prod(int n, const Partition& lam) {
  HallElementN out = HallElementN::one(n);
  for (int p : lam.parts()) out = multiply_n(out, central_x(n, p));
  return out;
}

/// The adjoint of left multiplication by u_i:  <e_i'(x), y> = <x, u_i y>.
/// Defined on homogeneous K-free elements; lowers the degree by e_i.
inline HallElementN e_prime(int i, const HallElementN& x) {
  int n = x.rank();
  if (n < 1 || i < 1 || i > n) throw std::domain_error("e_prime: vertex out of range");
  if (x.is_zero()) return HallElementN::zero(n);
  if (!x.is_k_free()) throw std::domain_error("e_prime: element must be K-free");
  auto deg = x.homogeneous_degree();
  if (!deg) throw std::domain_error("e_prime: element must be homogeneous");
  detail::check_dim_cap(n, std::accumulate(deg->begin(), deg->end(), 0L), "e_prime");
  if ((*deg)[i - 1] == 0) return HallElementN::zero(n);
  DimVec d2(*deg);
  --d2[i - 1];
  long tot2 = std::accumulate(d2.begin(), d2.end(), 0L);
  std::vector<Partition> simple(static_cast<size_t>(n));
  simple[static_cast<size_t>(i - 1)] = Partition(std::vector<int>{1});
  HallElementN ui = HallElementN::element(MultiPartition(std::move(simple)));
  HallElementN out(n);
  for (const MultiPartition& mu : enumerate_multipartitions(n, d2)) {
    RatFunc val = pairing_n(x, multiply_n(ui, HallElementN::element(mu)));
    if (val.is_zero()) continue;
    out.add_term(mu, KClass::zero(n),
                 val * detail::aut_rf(mu) * detail::vpow_l(-2 * tot2));
  }
  return out;
}

namespace detail {

/// Solve the square linear system A c = rhs over Q(v) by Gaussian
/// elimination; the matrix must be nonsingular.
inline std::vector<RatFunc> solve_ratfunc(std::vector<std::vector<RatFunc>> A,
                                          std::vector<RatFunc> rhs) {
  size_t m = A.size();
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    while (piv < m && A[piv][col].is_zero()) ++piv;
    if (piv == m) throw InternalCheckError("solve_ratfunc: singular matrix");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    RatFunc inv = A[col][col].inverse();
    for (size_t j = col; j < m; ++j) A[col][j] *= inv;
    rhs[col] *= inv;
    for (size_t row = 0; row < m; ++row) {
      if (row == col || A[row][col].is_zero()) continue;
      RatFunc f = A[row][col];
      for (size_t j = col; j < m; ++j) A[row][j] -= f * A[col][j];
      rhs[row] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace detail

/// Orthogonal projection onto the span of the x_lambda with |lambda| up to
/// max_deg.  Homogeneous input of dimension vector r*delta projects through
/// the Gram system of {x_lambda : lambda |- r}; any other degree projects to
/// zero.
inline HallElementN center_project(const HallElementN& x, int max_deg) {
  int n = x.rank();
  if (n < 1) throw std::domain_error("center_project: rank mismatch");
  if (x.is_zero()) return HallElementN::zero(n);
  if (!x.is_k_free()) throw std::domain_error("center_project: element must be K-free");
  auto deg = x.homogeneous_degree();
  if (!deg) throw std::domain_error("center_project: element must be homogeneous");
  long r = (*deg)[0];
  for (long dv : *deg)
    if (dv != r) return HallElementN::zero(n);
  if (r == 0) return x;
  if (r > max_deg) return HallElementN::zero(n);
  detail::check_dim_cap(n, r * n, "center_project");
  std::vector<Partition> parts = enumerate_partitions(static_cast<int>(r));
  std::vector<HallElementN> gens;
  for (const Partition& lam : parts) gens.push_back(central_x_prod(n, lam));
  size_t m = gens.size();
  std::vector<std::vector<RatFunc>> G(m, std::vector<RatFunc>(m));
  std::vector<RatFunc> rhs(m);
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = 0; b < m; ++b) G[a][b] = pairing_n(gens[a], gens[b]);
    rhs[a] = pairing_n(gens[a], x);
  }
  std::vector<RatFunc> c = detail::solve_ratfunc(std::move(G), std::move(rhs));
  HallElementN out(n);
  for (size_t a = 0; a < m; ++a) out += gens[a] * c[a];
  return out;
}

/// The symmetric-function algebra inside the centre: convert to the
/// one-row-c basis, substitute t |-> v^{-2n}, and send c_lambda to
/// x_lambda = prod_i x_{lambda_i}.
inline HallElementN phi_n(int n, const SymFunc& f) {
  if (n < 1) throw std::domain_error("phi_n: rank must be positive");
  SymFunc cf = convert(f, Basis::c);
  HallElementN out(n);
  for (auto& [lam, c] : cf.terms()) {
    if (c.is_zero()) continue;
    out += central_x_prod(n, lam) * c.subst_pow(-2 * n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjecture evidence
// ---------------------------------------------------------------------------

/// Two-sided comparison for a completely periodic multipartition
/// (lambda,...,lambda): the dual canonical basis element against the image
/// of the dual Schur function, and the centre projection of the canonical
/// basis element against the image of the Schur function.  The outcome is
/// evidence, never an assertion.
struct ConjectureReport {
  Partition lambda;
  int n = 0;
  bool bound_exceeded = false;
  std::string note;
  bool dual_equal = false;
  HallElementN dual_lhs, dual_rhs, dual_diff;
  bool proj_equal = false;
  HallElementN proj_lhs, proj_rhs, proj_diff;
};

inline ConjectureReport conjecture_report(const Partition& lam, int n) {
  ConjectureReport rep;
  rep.lambda = lam;
  rep.n = n;
  MultiPartition periodic{std::vector<Partition>(static_cast<size_t>(n), lam)};
  try {
    rep.dual_lhs = dual_canonical_basis_n(periodic);
    rep.dual_rhs = phi_n(n, dual_schur(lam));
    rep.dual_diff = rep.dual_lhs - rep.dual_rhs;
    rep.dual_equal = rep.dual_diff.is_zero();
    rep.proj_lhs = center_project(canonical_basis_n(periodic), lam.weight());
    rep.proj_rhs = phi_n(n, schur(lam));
    rep.proj_diff = rep.proj_lhs - rep.proj_rhs;
    rep.proj_equal = rep.proj_diff.is_zero();
  } catch (const BoundError& e) {
    rep.bound_exceeded = true;
    rep.note = e.what();
  }
  return rep;
}

}  // namespace hallsym
