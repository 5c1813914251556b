#pragma once
/**
 * @file hall1.hpp
 * @brief The generic Hall algebra of nilpotent modules over a discrete
 *        valuation ring: Hall polynomials, multiplication, comultiplication,
 *        the diagonal pairing, the symmetric-function isomorphism, the PBW
 *        basis, the bar involution, and canonical / dual canonical bases.
 *
 * Elements live over the rational function field in v; the square q = v^2
 * plays the role of a generic field cardinality.  The basis u_lambda is
 * indexed by partitions (the iso-class of the nilpotent module with Jordan
 * type lambda), graded by weight.
 *
 * Hall polynomials are computed generically, never by interpolation: a closed
 * product formula handles right multiplication by an elementary class
 * u_{(1^m)}, products of such classes give a unitriangular system over
 * dominance, and inverting it expresses each u_lambda in those products.
 */

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hallsym/errors.hpp"
#include "hallsym/laurent.hpp"
#include "hallsym/partition.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/qseries.hpp"
#include "hallsym/ratfunc.hpp"
#include "hallsym/symfunc.hpp"

namespace hallsym {

/// An element of the Hall algebra in the u basis: a finite sum of terms
/// c_lambda(v) u_lambda with rational-function coefficients.
class HallElement1 {
 public:
  HallElement1() = default;

  static HallElement1 zero() { return HallElement1(); }
  static HallElement1 one() { return element(Partition()); }
  static HallElement1 element(const Partition& lam) {
    HallElement1 x;
    x.add_term(lam, RatFunc::one());
    return x;
  }

  const std::map<Partition, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

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
  HallElement1 graded_piece(int d) const {
    HallElement1 g;
    for (auto& [lam, c] : terms_)
      if (lam.weight() == d) g.add_term(lam, c);
    return g;
  }

  HallElement1 operator+(const HallElement1& o) const {
    HallElement1 r = *this;
    for (auto& [lam, c] : o.terms_) r.add_term(lam, c);
    return r;
  }
  HallElement1 operator-(const HallElement1& o) const {
    HallElement1 r = *this;
    for (auto& [lam, c] : o.terms_) r.add_term(lam, -c);
    return r;
  }
  HallElement1 operator-() const {
    HallElement1 r;
    for (auto& [lam, c] : terms_) r.add_term(lam, -c);
    return r;
  }
  HallElement1 operator*(const RatFunc& sc) const {
    HallElement1 r;
    for (auto& [lam, c] : terms_) r.add_term(lam, c * sc);
    return r;
  }
  HallElement1& operator+=(const HallElement1& o) { return *this = *this + o; }
  HallElement1& operator-=(const HallElement1& o) { return *this = *this - o; }

  bool operator==(const HallElement1& o) const { return terms_ == o.terms_; }
  bool operator!=(const HallElement1& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [lam, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      if (!c.is_one()) out += "(" + c.str("v") + ")";
      out += "u[" + lam.str() + "]";
    }
    return out;
  }

 private:
  std::map<Partition, RatFunc> terms_;
};

/// An element of the two-fold tensor square of the Hall algebra.
class HallTensor1 {
 public:
  HallTensor1() = default;

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

  RatFunc coeff(const Partition& a, const Partition& b) const {
    auto it = terms_.find(std::make_pair(a, b));
    return it == terms_.end() ? RatFunc::zero() : it->second;
  }

  HallTensor1 operator+(const HallTensor1& o) const {
    HallTensor1 r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
  }
  HallTensor1 operator-(const HallTensor1& o) const {
    HallTensor1 r = *this;
    for (auto& [key, c] : o.terms_) r.add_term(key.first, key.second, -c);
    return r;
  }

  bool operator==(const HallTensor1& o) const { return terms_ == o.terms_; }
  bool operator!=(const HallTensor1& o) const { return !(*this == o); }

 private:
  std::map<std::pair<Partition, Partition>, RatFunc> terms_;
};

namespace detail {

inline long nstat_l(const Partition& lam) { return n_stat(lam); }

/// Shared caches for the generic Hall algebra.  Expansions are stored with
/// Laurent coefficients in q; completed Hall polynomials as plain polynomials.
struct Hall1Ctx {
  std::recursive_mutex mu;
  // E_lam := product over columns m of lam of u_{(1^m)}, expanded in u.
  std::map<Partition, std::map<Partition, Laurent>> e_in_u;
  // u_lam expressed over the E family (one degree inverted at a time).
  std::map<Partition, std::map<Partition, Laurent>> u_in_e;
  std::map<int, bool> degree_inverted;
  // generic products u_lam u_mu -> coefficients of u_xi, polynomials in q.
  std::map<std::pair<Partition, Partition>, std::map<Partition, Poly>> products;
  std::map<Partition, HallElement1> canonical, dual_canonical;

  static Hall1Ctx& get() {
    static Hall1Ctx ctx;
    return ctx;
  }
};

/// Right multiplication of a u-expansion by the elementary class u_{(1^m)}.
/// The products u_kappa u_{(1^m)} = sum F_xi u_xi run over xi whose diagram
/// adds a vertical m-strip to kappa; the coefficient is the closed formula
///   F = q^{n(xi)-n(kappa)-m(m-1)/2} prod_i [xc_i-xc_{i+1} over xc_i-lc_i]
/// with the Gaussian binomials evaluated at 1/q and xc, lc the conjugates of
/// xi, kappa.  Each completed coefficient is checked to be a polynomial.
inline std::map<Partition, Laurent> mult_by_elem(const std::map<Partition, Laurent>& x,
                                                 int m) {
  std::map<Partition, Laurent> out;
  for (auto& [kappa, c] : x) {
    const Partition kc = kappa.conjugate();
    std::vector<int> lc(kc.parts().begin(), kc.parts().end());
    const int rows = static_cast<int>(lc.size()) + 1;
    std::vector<int> xc(rows, 0);
    long nk = nstat_l(kappa);
    // enumerate conjugates xc with xc_i >= lc_i >= xc_{i+1} summing to |kc|+m
    auto rec = [&](auto&& self, int i, int budget, int prev) -> void {
      if (i > rows) {
        if (budget != 0) return;
        std::vector<int> parts;
        for (int e : xc)
          if (e > 0) parts.push_back(e);
        Partition xi = Partition(std::move(parts)).conjugate();
        Laurent f = Laurent::monomial(
            static_cast<int>(nstat_l(xi) - nk - static_cast<long>(m) * (m - 1) / 2),
            Rat(1));
        for (int j = 1; j <= rows; ++j) {
          int xcj = xc[j - 1];
          int xcn = j < rows ? xc[j] : 0;
          int lcj = j <= static_cast<int>(lc.size()) ? lc[j - 1] : 0;
          f *= gauss_binomial_qinv(xcj - xcn, xcj - lcj);
        }
        auto [it, fresh] = out.try_emplace(std::move(xi), f * c);
        if (!fresh) it->second += f * c;
        return;
      }
      int lo = i <= static_cast<int>(lc.size()) ? lc[i - 1] : 0;
      int hi = std::min(prev, lo + budget);
      for (int val = lo; val <= hi; ++val) {
        // interlacing: the next entry may not exceed this row of lc
        xc[i - 1] = val;
        self(self, i + 1, budget - (val - lo), i <= static_cast<int>(lc.size()) ? lc[i - 1]
                                                                                : val);
      }
      xc[i - 1] = 0;
    };
    rec(rec, 1, m, lc.empty() ? m : lc[0] + m);
    for (auto it = out.begin(); it != out.end();) {
      if (it->second == Laurent::zero())
        it = out.erase(it);
      else
        ++it;
    }
  }
  for (auto& [xi, f] : out)
    if (!f.is_poly())
      throw InternalCheckError("hall product: coefficient failed to be polynomial");
  return out;
}

/// Expansion of E_lam (the product of elementary classes over the columns of
/// lam) in the u basis.  Unitriangular: E_lam = u_lam + lower dominance.
inline const std::map<Partition, Laurent>& e_expansion(const Partition& lam) {
  Hall1Ctx& ctx = Hall1Ctx::get();
  std::lock_guard<std::recursive_mutex> lock(ctx.mu);
  auto it = ctx.e_in_u.find(lam);
  if (it != ctx.e_in_u.end()) return it->second;

  std::map<Partition, Laurent> result;
  if (lam.empty()) {
    result.emplace(Partition(), Laurent::one());
  } else {
    const Partition conj = lam.conjugate();
    std::vector<int> cols(conj.parts().begin(), conj.parts().end());
    std::vector<int> rest(cols.begin() + 1, cols.end());
    Partition trimmed = Partition(std::move(rest)).conjugate();
    result = mult_by_elem(e_expansion(trimmed), cols[0]);
  }
  return ctx.e_in_u.emplace(lam, std::move(result)).first->second;
}

/// Invert the unitriangular E system for one degree, expressing every
/// u_lambda of that weight over the E family.
inline void ensure_degree_inverted(int d) {
  Hall1Ctx& ctx = Hall1Ctx::get();
  std::lock_guard<std::recursive_mutex> lock(ctx.mu);
  if (ctx.degree_inverted.count(d)) return;
  std::vector<Partition> order = enumerate_partitions(d);
  // process upward in dominance (reverse of the display order)
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Partition& lam = *it;
    std::map<Partition, Laurent> expr{{lam, Laurent::one()}};
    for (auto& [mu, f] : e_expansion(lam)) {
      if (mu == lam) {
        if (f != Laurent::one())
          throw InternalCheckError("hall elementary system: diagonal is not one");
        continue;
      }
      if (!dominance_lt(mu, lam))
        throw InternalCheckError("hall elementary system: support above the diagonal");
      for (auto& [kap, g] : ctx.u_in_e.at(mu)) {
        auto [jt, fresh] = expr.try_emplace(kap, -(f * g));
        if (!fresh) jt->second -= f * g;
      }
    }
    for (auto jt = expr.begin(); jt != expr.end();) {
      if (jt->second == Laurent::zero())
        jt = expr.erase(jt);
      else
        ++jt;
    }
    ctx.u_in_e.emplace(lam, std::move(expr));
  }
  ctx.degree_inverted[d] = true;
}

/// The generic product u_lam u_mu as a map xi -> Hall polynomial in q.
inline const std::map<Partition, Poly>& generic_product(const Partition& lam,
                                                        const Partition& mu) {
  Hall1Ctx& ctx = Hall1Ctx::get();
  std::lock_guard<std::recursive_mutex> lock(ctx.mu);
  auto key = std::make_pair(lam, mu);
  auto it = ctx.products.find(key);
  if (it != ctx.products.end()) return it->second;

  check_cap(lam.weight() + mu.weight());
  ensure_degree_inverted(lam.weight());
  std::map<Partition, Laurent> total;
  for (auto& [kap, cg] : ctx.u_in_e.at(lam)) {
    std::map<Partition, Laurent> cur{{mu, cg}};
    const Partition kc = kap.conjugate();
    for (int m : kc.parts()) cur = mult_by_elem(cur, m);
    for (auto& [xi, f] : cur) {
      auto [jt, fresh] = total.try_emplace(xi, f);
      if (!fresh) jt->second += f;
    }
  }
  std::map<Partition, Poly> result;
  for (auto& [xi, f] : total) {
    if (f == Laurent::zero()) continue;
    if (!f.is_poly() || !f.has_integer_coeffs())
      throw InternalCheckError("hall product: non-integral Hall polynomial");
    result.emplace(xi, f.to_poly());
  }
  return ctx.products.emplace(std::move(key), std::move(result)).first->second;
}

/// A rational function of v that only involves even powers, rewritten with
/// t = v^{-2} as the variable.  Refuses genuinely odd coefficients.
inline RatFunc coeff_v_to_t(const RatFunc& f) {
  auto negate_var = [](const Poly& p) {
    Poly r;
    for (auto& [e, c] : p.terms())
      r += Poly::monomial(e, e % 2 == 0 ? c : -c);
    return r;
  };
  auto halve = [](const Poly& p) {
    Poly r;
    for (auto& [e, c] : p.terms()) {
      if (e % 2 != 0) throw std::domain_error("coefficient has odd powers of v");
      r += Poly::monomial(e / 2, c);
    }
    return r;
  };
  const Poly dneg = negate_var(f.den());
  Poly num = f.num() * dneg;
  Poly den = f.den() * dneg;
  // now den is even; if f was a function of v^2, num must be even too
  RatFunc in_q(halve(num), halve(den));
  return in_q.subst_pow(-1);
}

}  // namespace detail

/// The Hall polynomial F_{lam,mu}^{xi} as a polynomial in the generic field
/// cardinality.  Zero unless the weights add up.  The result is checked
/// against the product in the opposite order, against the support bound
/// (union below, sum above in dominance) and against the leading-term law:
/// degree at most n(xi)-n(lam)-n(mu), with the coefficient there equal to the
/// Littlewood-Richardson coefficient.
inline Poly hall_polynomial(const Partition& lam, const Partition& mu, const Partition& xi) {
  if (lam.weight() + mu.weight() != xi.weight()) return Poly::zero();
  detail::check_cap(xi.weight());
  const auto& prod = detail::generic_product(lam, mu);
  auto it = prod.find(xi);
  Poly F = it == prod.end() ? Poly::zero() : it->second;
  const auto& opp = detail::generic_product(mu, lam);
  auto jt = opp.find(xi);
  Poly G = jt == opp.end() ? Poly::zero() : jt->second;
  if (F != G) throw InternalCheckError("hall polynomial: product is not commutative");
  Int lr = littlewood_richardson(lam, mu, xi);
  if (F.is_zero()) {
    if (lr != 0)
      throw InternalCheckError("hall polynomial: vanished despite a nonzero leading term");
    return F;
  }
  long D = detail::nstat_l(xi) - detail::nstat_l(lam) - detail::nstat_l(mu);
  if (F.degree() > D)
    throw InternalCheckError("hall polynomial: degree above the leading-term bound");
  if (Rat(F.coeff(static_cast<int>(D))) != Rat(lr))
    throw InternalCheckError("hall polynomial: leading coefficient is not the LR number");
  auto [uni, sum] = union_and_sum(lam, mu);
  if (!dominance_leq(uni, xi) || !dominance_leq(xi, sum))
    throw InternalCheckError("hall polynomial: support outside the dominance window");
  return F;
}

/// Product in the Hall algebra: bilinear extension of
/// u_lam u_mu = sum F_{lam,mu}^{xi}(v^2) u_xi.
inline HallElement1 multiply(const HallElement1& x, const HallElement1& y) {
  HallElement1 out;
  for (auto& [lam, cx] : x.terms())
    for (auto& [mu, cy] : y.terms()) {
      const RatFunc c = cx * cy;
      for (auto& [xi, F] : detail::generic_product(lam, mu))
        out.add_term(xi, c * RatFunc(F.subst_pow(2)));
    }
  return out;
}

inline HallElement1 operator*(const HallElement1& x, const HallElement1& y) {
  return multiply(x, y);
}

/// Componentwise product on the tensor square.
inline HallTensor1 operator*(const HallTensor1& x, const HallTensor1& y) {
  HallTensor1 out;
  for (auto& [kx, cx] : x.terms())
    for (auto& [ky, cy] : y.terms()) {
      const RatFunc c = cx * cy;
      for (auto& [xiL, FL] : detail::generic_product(kx.first, ky.first))
        for (auto& [xiR, FR] : detail::generic_product(kx.second, ky.second))
          out.add_term(xiL, xiR,
                       c * RatFunc(FL.subst_pow(2)) * RatFunc(FR.subst_pow(2)));
    }
  return out;
}

/// Comultiplication:
/// Delta(u_xi) = sum F_{lam,mu}^{xi}(v^2) (a_lam a_mu / a_xi)(v^2) u_lam (x) u_mu.
inline HallTensor1 coproduct(const HallElement1& x) {
  HallTensor1 out;
  for (auto& [xi, c] : x.terms()) {
    const RatFunc axi(aut_poly(xi).subst_pow(2));
    const int d = xi.weight();
    for (int dl = 0; dl <= d; ++dl)
      for (const auto& lam : enumerate_partitions(dl))
        for (const auto& mu : enumerate_partitions(d - dl)) {
          const auto& prod = detail::generic_product(lam, mu);
          auto it = prod.find(xi);
          if (it == prod.end()) continue;
          RatFunc w = RatFunc(it->second.subst_pow(2)) *
                      RatFunc(aut_poly(lam).subst_pow(2)) *
                      RatFunc(aut_poly(mu).subst_pow(2)) / axi;
          out.add_term(lam, mu, c * w);
        }
  }
  return out;
}

/// Diagonal Hopf pairing: <u_lam, u_mu> = delta_{lam,mu} / (v^{4n(lam)}
/// b_lam(v^{-2})).
inline RatFunc pairing(const HallElement1& x, const HallElement1& y) {
  RatFunc acc;
  for (auto& [lam, cx] : x.terms()) {
    const RatFunc cy = y.coeff(lam);
    if (cy.is_zero()) continue;
    Laurent den = Laurent::from_poly(b_t(lam)).subst_pow(-2) *
                  Laurent::monomial(static_cast<int>(4 * detail::nstat_l(lam)), Rat(1));
    acc += cx * cy / RatFunc::from_laurent(den);
  }
  return acc;
}

/// Pairing of a tensor against a pair of elements, slotwise.
inline RatFunc tensor_pairing(const HallTensor1& T, const HallElement1& y,
                              const HallElement1& z) {
  RatFunc acc;
  for (auto& [key, c] : T.terms())
    acc += c * pairing(HallElement1::element(key.first), y) *
           pairing(HallElement1::element(key.second), z);
  return acc;
}

/// The graded isomorphism from symmetric functions with deformation t onto
/// the Hall algebra: t maps to v^{-2} and the orthogonalized basis element
/// P_lam(t), scaled by t^{n(lam)}, maps to u_lam.
inline HallElement1 phi1(const SymFunc& f) {
  const SymFunc hl = convert(f, Basis::HL);
  HallElement1 out;
  for (auto& [lam, c] : hl.terms())
    out.add_term(lam, c.subst_pow(-2) *
                          RatFunc::monomial(static_cast<int>(2 * detail::nstat_l(lam))));
  return out;
}

/// Inverse of phi1 on the nose: u_lam maps back to t^{n(lam)} P_lam(t).
/// Coefficients must be functions of v^2; odd powers cannot be expressed in
/// the t-coefficient field and are refused.
inline SymFunc phi1_inv(const HallElement1& x) {
  SymFunc out(Basis::HL);
  for (auto& [lam, c] : x.terms()) {
    RatFunc ct = detail::coeff_v_to_t(c);
    out.add_term(lam, ct * RatFunc::monomial(static_cast<int>(detail::nstat_l(lam))));
  }
  return out;
}

/// PBW-type basis element: a rescaled u with the automorphism weight pulled
/// out.
inline HallElement1 pbw(const Partition& lam) {
  HallElement1 x;
  x.add_term(lam, RatFunc::monomial(static_cast<int>(2 * detail::nstat_l(lam))));
  return x;
}

/// Coordinates of x over the PBW family.
inline std::map<Partition, RatFunc> pbw_coordinates(const HallElement1& x) {
  std::map<Partition, RatFunc> out;
  for (auto& [lam, c] : x.terms())
    out.emplace(lam, c * RatFunc::monomial(static_cast<int>(-2 * detail::nstat_l(lam))));
  return out;
}

namespace detail {

/// Coordinates of x over the bar-fixed family B_lam = q^{n(lam)} E_lam,
/// by top-down elimination within each degree.
inline std::map<Partition, RatFunc> bar_basis_coordinates(const HallElement1& x) {
  std::map<Partition, RatFunc> gamma;
  std::map<Partition, RatFunc> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    // the first key of lowest weight is dominance-maximal there; B of that
    // partition only reaches strictly lower terms of the same weight
    const Partition lam = work.begin()->first;
    const RatFunc g =
        work.begin()->second * RatFunc::monomial(static_cast<int>(-2 * nstat_l(lam)));
    gamma.emplace(lam, g);
    const RatFunc scale = g * RatFunc::monomial(static_cast<int>(2 * nstat_l(lam)));
    const auto& e_rows = e_expansion(lam);
    for (auto& [mu, f] : e_rows) {
      RatFunc delta = scale * RatFunc(f.to_poly().subst_pow(2));
      auto [it, fresh] = work.try_emplace(mu, -delta);
      if (!fresh) {
        it->second -= delta;
        if (it->second.is_zero()) work.erase(it);
      } else if (it->second.is_zero()) {
        work.erase(it);
      }
    }
  }
  return gamma;
}

inline HallElement1 from_bar_basis(const std::map<Partition, RatFunc>& gamma) {
  HallElement1 out;
  for (auto& [lam, g] : gamma) {
    const RatFunc scale = g * RatFunc::monomial(static_cast<int>(2 * nstat_l(lam)));
    const auto& e_rows = e_expansion(lam);
    for (auto& [mu, f] : e_rows)
      out.add_term(mu, scale * RatFunc(f.to_poly().subst_pow(2)));
  }
  return out;
}

}  // namespace detail

/// Bar involution: v conjugates to 1/v, and the products of elementary
/// classes (rescaled by their automorphism weight) are fixed.  Implemented by
/// re-expanding over that fixed family and conjugating coordinates.
inline HallElement1 bar(const HallElement1& x) {
  std::map<Partition, RatFunc> gamma = detail::bar_basis_coordinates(x);
  for (auto& [lam, g] : gamma) g = g.conj();
  return detail::from_bar_basis(gamma);
}

/// Canonical basis element of lambda, computed two independent ways with the
/// results checked against each other:
/// (i) the image of the Schur element under phi1;
/// (ii) the bar-invariant element b = u~_lam + lower PBW terms whose
///      correction coefficients have only negative powers of v^2.
inline HallElement1 canonical_basis(const Partition& lam) {
  detail::Hall1Ctx& ctx = detail::Hall1Ctx::get();
  std::lock_guard<std::recursive_mutex> lock(ctx.mu);
  auto cached = ctx.canonical.find(lam);
  if (cached != ctx.canonical.end()) return cached->second;

  const HallElement1 route_schur = phi1(schur(lam));

  HallElement1 b = pbw(lam);
  for (int guard = 0;; ++guard) {
    if (guard > 10000)
      throw InternalCheckError("canonical basis: correction loop failed to settle");
    const HallElement1 delta = bar(b) - b;
    if (delta.is_zero()) break;
    const Partition top = delta.terms().begin()->first;
    const RatFunc d =
        delta.coeff(top) * RatFunc::monomial(static_cast<int>(-2 * detail::nstat_l(top)));
    if (!d.is_laurent())
      throw InternalCheckError("canonical basis: non-Laurent bar defect");
    const Laurent L = d.to_laurent();
    if (L.conj() != -L)
      throw InternalCheckError("canonical basis: bar defect is not antisymmetric");
    Laurent corr;
    for (auto& [e, c] : L.terms()) {
      if (e % 2 != 0 || boost::multiprecision::denominator(c) != 1)
        throw InternalCheckError("canonical basis: bar defect outside Z[q, 1/q]");
      if (e < 0) corr.add_term(e, c);
    }
    b.add_term(top, RatFunc::from_laurent(corr) *
                        RatFunc::monomial(static_cast<int>(2 * detail::nstat_l(top))));
  }

  if (b != route_schur)
    throw InternalCheckError("canonical basis: the two construction routes disagree");
  ctx.canonical.emplace(lam, b);
  return b;
}

/// Dual canonical basis element: the image of the dual Schur element under
/// phi1, checked to pair to delta against the canonical family.
inline HallElement1 dual_canonical_basis(const Partition& lam) {
  detail::Hall1Ctx& ctx = detail::Hall1Ctx::get();
  std::lock_guard<std::recursive_mutex> lock(ctx.mu);
  auto cached = ctx.dual_canonical.find(lam);
  if (cached != ctx.dual_canonical.end()) return cached->second;

  const HallElement1 bstar = phi1(dual_schur(lam));
  for (const auto& mu : enumerate_partitions(lam.weight())) {
    const RatFunc p = pairing(bstar, canonical_basis(mu));
    if (p != (mu == lam ? RatFunc::one() : RatFunc::zero()))
      throw InternalCheckError("dual canonical basis: pairing against canonical failed");
  }
  ctx.dual_canonical.emplace(lam, bstar);
  return bstar;
}

/// Coordinates of x over the canonical basis, by top-down elimination.
inline std::map<Partition, RatFunc> canonical_coordinates(const HallElement1& x) {
  std::map<Partition, RatFunc> out;
  std::map<Partition, RatFunc> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    const Partition lam = work.begin()->first;
    const RatFunc g =
        work.begin()->second * RatFunc::monomial(static_cast<int>(-2 * detail::nstat_l(lam)));
    out.emplace(lam, g);
    const HallElement1 blam = canonical_basis(lam);
    for (auto& [mu, f] : blam.terms()) {
      auto [it, fresh] = work.try_emplace(mu, -(g * f));
      if (!fresh) {
        it->second -= g * f;
        if (it->second.is_zero()) work.erase(it);
      } else if (it->second.is_zero()) {
        work.erase(it);
      }
    }
  }
  return out;
}

}  // namespace hallsym
