#pragma once
/**
 * @file verify.hpp
 * @brief Named suites of library-wide identities, runnable on demand.  Each
 *        suite re-checks the structural properties its module promises —
 *        exact arithmetic normal forms, partition statistics, Hopf axioms,
 *        oracle equivalences, associativity of the twisted algebras, bar and
 *        canonical-basis laws, and the centre — and reports the first
 *        violation found.  All checks are exact; a failure message names the
 *        offending input.
 */

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hallsym/fq.hpp"
#include "hallsym/hall1.hpp"
#include "hallsym/halln.hpp"
#include "hallsym/symfunc.hpp"

namespace hallsym {

struct SuiteResult {
  std::string name;
  bool ok = false;
  std::string detail;  ///< empty on success, first failure otherwise
  double seconds = 0.0;
};

namespace verify_detail {

/// Deterministic linear congruential generator, so reruns are byte-identical.
struct Lcg {
  unsigned long long s;
  explicit Lcg(unsigned long long seed) : s(seed) {}
  unsigned long long next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
  int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

inline Rat rat_at_zero(const RatFunc& f) {
  auto at0 = [](const Poly& p) {
    auto it = p.terms().find(0);
    return it == p.terms().end() ? Rat(0) : it->second;
  };
  Rat d = at0(f.den());
  if (d == Rat(0)) throw std::domain_error("rat_at_zero: pole at the origin");
  return at0(f.num()) / d;
}

inline RatFunc random_ratfunc(Lcg& rng) {
  Poly p = Poly::zero();
  for (int e = 0; e <= 3; ++e) p += Poly::monomial(e, Rat(rng.range(-3, 3)));
  return RatFunc(p);
}

inline SymFunc random_homogeneous(Lcg& rng, int d, Basis b = Basis::p) {
  SymFunc f = SymFunc::zero(b);
  for (const Partition& lam : enumerate_partitions(d))
    if (rng.range(0, 2) == 0) f.add_term(lam, RatFunc(Rat(rng.range(-2, 2))));
  if (f.is_zero()) f.add_term(Partition(std::vector<int>(d, 1)), RatFunc::one());
  return f;
}

/// Guard restoring the rank caps of the cyclic-quiver algebra on scope exit.
struct CapGuard {
  HnConfig saved;
  CapGuard() : saved(hn_config()) {}
  ~CapGuard() { hn_config() = saved; }
};

/// The class of the simple at vertex i, rank n.
inline MultiPartition simple_class(int n, int i) {
  std::vector<Partition> cs(n);
  cs[i - 1] = Partition(std::vector<int>{1});
  return MultiPartition(std::move(cs));
}

/// The fully periodic class with the one-part partition (r) at every vertex.
inline MultiPartition periodic_class(int n, int r) {
  std::vector<Partition> cs(n, Partition(std::vector<int>{r}));
  return MultiPartition(std::move(cs));
}

/// True when f is a Laurent polynomial all of whose exponents satisfy the
/// predicate.
template <class Pred>
inline bool exponents_all(const RatFunc& f, Pred pred) {
  if (!f.is_laurent()) return false;
  const Laurent l = f.to_laurent();
  for (auto& [e, c] : l.terms())
    if (c != Rat(0) && !pred(e)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Suite bodies: return "" on success, a description of the first failure
// otherwise.
// ---------------------------------------------------------------------------

inline std::string suite_exact_arith() {
  // Gaussian binomial symmetry and the value at 1
  std::vector<std::vector<long>> pascal(13);
  for (int r = 0; r <= 12; ++r) {
    pascal[r].assign(r + 1, 1);
    for (int a = 1; a < r; ++a) pascal[r][a] = pascal[r - 1][a - 1] + pascal[r - 1][a];
  }
  for (int r = 0; r <= 12; ++r)
    for (int a = 0; a <= r; ++a) {
      const Poly g = gauss_binomial(r, a);
      if (g != gauss_binomial(r, r - a))
        return "gauss_binomial symmetry fails at (" + std::to_string(r) + "," +
               std::to_string(a) + ")";
      Rat sum(0);
      for (auto& [e, c] : g.terms()) sum += c;
      if (sum != Rat(pascal[r][a]))
        return "gauss_binomial at 1 disagrees with the binomial coefficient at (" +
               std::to_string(r) + "," + std::to_string(a) + ")";
    }
  // field axioms and normal-form uniqueness on deterministic random data
  Lcg rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
    if ((a + b) + c != a + (b + c)) return "addition is not associative";
    if ((a * b) * c != a * (b * c)) return "multiplication is not associative";
    if (a * (b + c) != a * b + a * c) return "distributivity fails";
    if (!a.is_zero()) {
      RatFunc inv(a.den(), a.num());
      if (a * inv != RatFunc::one()) return "multiplicative inverse fails";
    }
    // the same fraction reached along different routes has one representation
    if (!c.is_zero() && !b.is_zero()) {
      RatFunc left(a.num() * b.num(), b.num());
      if (left != a) return "normal form is not unique";
    }
  }
  return "";
}

inline std::string suite_partitions() {
  static const long pd[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int d = 0; d <= 12; ++d) {
    auto all = enumerate_partitions(d);
    if (static_cast<long>(all.size()) != pd[d])
      return "partition count of weight " + std::to_string(d) + " is wrong";
    RatFunc zsum = RatFunc::zero(), zalt = RatFunc::zero();
    for (const Partition& lam : all) {
      if (lam.conjugate().conjugate() != lam)
        return "conjugation fails to be an involution at (" + lam.str() + ")";
      RatFunc inv_z(Poly::one(), Poly(Rat(z_stat(lam))));
      zsum += inv_z;
      zalt += (lam.length() % 2 ? -inv_z : inv_z);
      if (d <= 10) {
        // sum of pairwise minima against 2 n(lambda) + |lambda|
        long s = 0;
        for (int a : lam.parts())
          for (int b : lam.parts()) s += std::min(a, b);
        if (s != 2 * n_stat(lam) + lam.weight())
          return "pairwise-minimum identity fails at (" + lam.str() + ")";
      }
    }
    if (zsum != RatFunc::one())
      return "sum of 1/z over weight " + std::to_string(d) + " is not 1";
    if (d >= 1 && zalt != (d == 1 ? -RatFunc::one() : RatFunc::zero()))
      return "alternating sum of 1/z over weight " + std::to_string(d) + " is wrong";
  }
  // dominance flips under conjugation
  for (int d = 0; d <= 10; ++d)
    for (const Partition& lam : enumerate_partitions(d))
      for (const Partition& mu : enumerate_partitions(d))
        if (dominance_leq(lam, mu) != dominance_leq(mu.conjugate(), lam.conjugate()))
          return "dominance anti-isomorphism fails at (" + lam.str() + "), (" + mu.str() + ")";
  // conjugate exchanges multiset union and pointwise sum
  for (int dl = 0; dl <= 4; ++dl)
    for (int dm = 0; dm <= 8 - dl; ++dm)
      for (const Partition& lam : enumerate_partitions(dl))
        for (const Partition& mu : enumerate_partitions(dm)) {
          // union_and_sum checks conjugate duality internally and throws on
          // violation; reaching the end of the call is the assertion
          union_and_sum(lam, mu);
        }
  // the one-vertex automorphism-count polynomial matches the classical one
  for (int d = 0; d <= 8; ++d)
    for (const Partition& lam : enumerate_partitions(d))
      if (aut_poly_n(MultiPartition(std::vector<Partition>{lam})) != aut_poly(lam))
        return "one-vertex automorphism polynomial disagrees at (" + lam.str() + ")";
  return "";
}

inline std::string suite_symmetric_functions() {
  Lcg rng(20240812);
  // Hopf axioms: adjunction, counit, antipode self-adjointness,
  // coassociativity, and multiplicativity of the coproduct
  for (int d = 1; d <= 6; ++d) {
    SymFunc f = random_homogeneous(rng, d);
    SymFunc g = random_homogeneous(rng, std::max(1, d / 2));
    SymFunc h = random_homogeneous(rng, d - std::max(1, d / 2));
    if (pairing_t(f, g * h) != tensor_pairing_t(coproduct(f), g, h))
      return "pairing adjunction fails in degree " + std::to_string(d);
    if (pairing_t(f, SymFunc::one()) != counit(f))
      return "counit does not match pairing against 1 in degree " + std::to_string(d);
    if (pairing_t(antipode(f), g * h) != pairing_t(f, antipode(g * h)))
      return "antipode is not self-adjoint in degree " + std::to_string(d);
    if (coproduct(f * g) != coproduct(f) * coproduct(g))
      return "coproduct is not an algebra map in degree " + std::to_string(d);
    // coassociativity via the two refinements into three tensor slots
    std::map<std::vector<Partition>, RatFunc> left, right;
    auto triple_add = [](std::map<std::vector<Partition>, RatFunc>& m, const Partition& a,
                         const Partition& b, const Partition& c, const RatFunc& co) {
      if (co.is_zero()) return;
      auto key = std::vector<Partition>{a, b, c};
      auto [it, fresh] = m.try_emplace(key, co);
      if (!fresh) {
        it->second += co;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    const SymFuncTensor df = coproduct(f);
    for (auto& [key, c] : df.terms()) {
      const SymFuncTensor dfirst = coproduct(sym_p(key.first));
      for (auto& [k2, c2] : dfirst.terms())
        triple_add(left, k2.first, k2.second, key.second, c * c2);
      const SymFuncTensor dsecond = coproduct(sym_p(key.second));
      for (auto& [k2, c2] : dsecond.terms())
        triple_add(right, key.first, k2.first, k2.second, c * c2);
    }
    if (left != right) return "coproduct is not coassociative in degree " + std::to_string(d);
  }
  // alternating convolution of the two generator families
  for (int m = 1; m <= 8; ++m) {
    SymFunc acc = SymFunc::zero();
    for (int a = 0; a <= m; ++a) {
      SymFunc ea = a ? sym_e(Partition(std::vector<int>{a})) : SymFunc::one();
      SymFunc hb = (m - a) ? sym_h(Partition(std::vector<int>{m - a})) : SymFunc::one();
      SymFunc term = convert(ea * hb, Basis::p);
      acc += (a % 2 ? -term : term);
    }
    if (!acc.is_zero()) return "alternating e/h convolution is nonzero at " + std::to_string(m);
  }
  // one-row recurrences tying h_n and e_n to the deformed family
  for (int m = 1; m <= 6; ++m) {
    RatFunc tm = RatFunc::monomial(m);
    SymFunc hn = convert(sym_h(Partition(std::vector<int>{m})), Basis::p);
    SymFunc en = convert(sym_e(Partition(std::vector<int>{m})), Basis::p);
    SymFunc hacc = SymFunc::zero(), eacc = SymFunc::zero();
    for (int a = 1; a <= m; ++a) {
      SymFunc hrest = (m - a) ? convert(sym_h(Partition(std::vector<int>{m - a})), Basis::p)
                              : SymFunc::one();
      SymFunc erest = (m - a) ? convert(sym_e(Partition(std::vector<int>{m - a})), Basis::p)
                              : SymFunc::one();
      hacc += (hrest * cyclic_c(a)) * RatFunc::monomial(m - a);
      SymFunc eterm = erest * cyclic_c(a);
      eacc += (a % 2 ? -eterm : eterm);
    }
    if (hn * (RatFunc::one() - tm) != hacc)
      return "deformed recurrence for the complete family fails at " + std::to_string(m);
    if (en * (tm - RatFunc::one()) != eacc)
      return "deformed recurrence for the elementary family fails at " + std::to_string(m);
  }
  // deformed norms of the one-row elements
  for (int m = 1; m <= 6; ++m) {
    RatFunc phi = RatFunc::one();
    for (int i = 1; i <= m; ++i) phi = phi * (RatFunc::one() - RatFunc::monomial(i));
    Partition row(std::vector<int>{m});
    if (pairing_t(sym_e(row), sym_e(row)) * phi != RatFunc::one())
      return "deformed norm of the elementary row fails at " + std::to_string(m);
    if (pairing_t(sym_h(row), sym_h(row)) * phi != RatFunc::one())
      return "deformed norm of the complete row fails at " + std::to_string(m);
    SymFunc cm = cyclic_c(m);
    if (pairing_t(cm, cm) != RatFunc::one() - RatFunc::monomial(1))
      return "deformed norm of the one-row deformed element fails at " + std::to_string(m);
  }
  // dual pairs against the monomial basis
  for (int d = 0; d <= 6; ++d)
    for (const Partition& lam : enumerate_partitions(d))
      for (const Partition& mu : enumerate_partitions(d)) {
        RatFunc delta = lam == mu ? RatFunc::one() : RatFunc::zero();
        if (pairing0(sym_h(lam), sym_m(mu)) != delta)
          return "complete/monomial duality fails at (" + lam.str() + "), (" + mu.str() + ")";
        if (pairing_t(SymFunc::element(Basis::c, lam), sym_m(mu)) != delta)
          return "deformed/monomial duality fails at (" + lam.str() + "), (" + mu.str() + ")";
      }
  // one-row complete element over the orthogonal family, and the
  // specializations of that family at 0 and 1
  for (int r = 1; r <= 5; ++r) {
    SymFunc h_in_P = convert(sym_h(Partition(std::vector<int>{r})), Basis::HL);
    for (auto& [lam, c] : h_in_P.terms())
      if (c != RatFunc::monomial(static_cast<int>(n_stat(lam))))
        return "one-row expansion over the orthogonal family fails at (" + lam.str() + ")";
    for (const Partition& lam : enumerate_partitions(r)) {
      SymFunc in_s = convert(hall_littlewood(lam), Basis::s);
      for (auto& [mu, c] : in_s.terms()) {
        Rat v0 = rat_at_zero(c);
        if (v0 != (mu == lam ? Rat(1) : Rat(0)))
          return "specialization at 0 fails at (" + lam.str() + ")";
      }
    }
  }
  return "";
}

inline std::string suite_classical_hall() {
  // associativity on all triples of small total weight
  for (int d = 0; d <= 5; ++d)
    for (int da = 0; da <= d; ++da)
      for (int db = 0; db <= d - da; ++db)
        for (const Partition& a : enumerate_partitions(da))
          for (const Partition& b : enumerate_partitions(db))
            for (const Partition& c : enumerate_partitions(d - da - db)) {
              HallElement1 xa = HallElement1::element(a), xb = HallElement1::element(b),
                           xc = HallElement1::element(c);
              if ((xa * xb) * xc != xa * (xb * xc))
                return "associativity fails at (" + a.str() + "), (" + b.str() + "), (" +
                       c.str() + ")";
            }
  // bialgebra compatibility and the pairing adjunction
  for (int d = 0; d <= 4; ++d)
    for (int da = 0; da <= d; ++da)
      for (const Partition& a : enumerate_partitions(da))
        for (const Partition& b : enumerate_partitions(d - da)) {
          HallElement1 xa = HallElement1::element(a), xb = HallElement1::element(b);
          if (coproduct(xa * xb) != coproduct(xa) * coproduct(xb))
            return "coproduct is not an algebra map at (" + a.str() + "), (" + b.str() + ")";
        }
  for (int d = 0; d <= 5; ++d)
    for (int da = 0; da <= d; ++da)
      for (int db = 0; db <= d - da; ++db)
        for (const Partition& a : enumerate_partitions(da))
          for (const Partition& b : enumerate_partitions(db))
            for (const Partition& c : enumerate_partitions(d - da - db)) {
              HallElement1 xa = HallElement1::element(a), xb = HallElement1::element(b),
                           xc = HallElement1::element(c);
              if (pairing(xa, xb * xc) != tensor_pairing(coproduct(xa), xb, xc))
                return "pairing adjunction fails at (" + a.str() + "), (" + b.str() + "), (" +
                       c.str() + ")";
            }
  // support bound and the degree/leading-term law, against the
  // Littlewood-Richardson numbers computed on the symmetric-function side
  for (int d = 0; d <= 6; ++d)
    for (const Partition& xi : enumerate_partitions(d))
      for (int dl = 0; dl <= d; ++dl)
        for (const Partition& lam : enumerate_partitions(dl))
          for (const Partition& mu : enumerate_partitions(d - dl)) {
            Poly F = hall_polynomial(lam, mu, xi);
            if (F.is_zero()) continue;
            auto us = union_and_sum(lam, mu);
            if (!dominance_leq(us.first, xi) || !dominance_leq(xi, us.second))
              return "support bound fails at (" + lam.str() + "), (" + mu.str() + "), (" +
                     xi.str() + ")";
            long dbound = n_stat(xi) - n_stat(lam) - n_stat(mu);
            if (F.degree() > dbound)
              return "degree bound fails at (" + lam.str() + "), (" + mu.str() + "), (" +
                     xi.str() + ")";
            RatFunc lr = pairing0(schur(lam) * schur(mu), schur(xi));
            Rat top = F.degree() == dbound ? F.terms().rbegin()->second : Rat(0);
            if (RatFunc(top) != lr)
              return "leading coefficient fails at (" + lam.str() + "), (" + mu.str() +
                     "), (" + xi.str() + ")";
          }
  // the embedding of the symmetric functions preserves everything in sight
  Lcg rng(20240813);
  for (int d = 1; d <= 5; ++d) {
    SymFunc f = random_homogeneous(rng, d);
    SymFunc g = random_homogeneous(rng, std::max(1, 5 - d));
    if (phi1(f * g) != phi1(f) * phi1(g)) return "embedding fails on a product";
    if (pairing(phi1(f), phi1(g)) != pairing_t(f, g).subst_pow(-2))
      return "embedding fails on a pairing";
  }
  for (int d = 0; d <= 5; ++d)
    for (const Partition& lam : enumerate_partitions(d)) {
      HallElement1 img = phi1(hall_littlewood(lam));
      HallElement1 expect =
          HallElement1::element(lam) * RatFunc::monomial(2 * static_cast<int>(n_stat(lam)));
      if (img != expect)
        return "orthogonal-family image fails at (" + lam.str() + ")";
    }
  // canonical entries over the rescaled family lie in the ideal of negative
  // even powers
  for (int d = 0; d <= 5; ++d)
    for (const Partition& lam : enumerate_partitions(d)) {
      for (auto& [mu, c] : pbw_coordinates(canonical_basis(lam))) {
        if (c.is_zero()) continue;
        if (mu == lam) {
          if (c != RatFunc::one()) return "canonical diagonal is not 1 at (" + lam.str() + ")";
          continue;
        }
        if (!exponents_all(c, [](int e) { return e < 0 && e % 2 == 0; }))
          return "canonical entry outside the negative even ideal at (" + lam.str() + ")";
      }
    }
  return "";
}

inline std::string suite_fq_oracle() {
  // Riedtmann's formula, rewritten as an equality of sequence counts
  for (int n = 1; n <= 2; ++n)
    for (int q : {2, 3})
      for (int d = 1; d <= 4; ++d)
        for (const MultiPartition& xi : enumerate_multipartitions_total(n, d)) {
          DimVec dx = dim_vector(xi);
          FqRep X = rep_from_multipartition(xi, q);
          Int aX = count_automorphisms(xi, q);
          for (int dm = 0; dm <= d; ++dm)
            for (const MultiPartition& lam : enumerate_multipartitions_total(n, d - dm))
              for (const MultiPartition& mu : enumerate_multipartitions_total(n, dm)) {
                DimVec dl = dim_vector(lam), du = dim_vector(mu);
                bool match = true;
                for (int v = 0; v < n; ++v)
                  if (dl[v] + du[v] != dx[v]) match = false;
                if (!match) continue;
                FqRep M = rep_from_multipartition(lam, q);
                FqRep N = rep_from_multipartition(mu, q);
                Int F(count_hall_number(lam, mu, xi, q));
                Int aM = count_automorphisms(lam, q);
                Int aN = count_automorphisms(mu, q);
                Int ext = count_extension_classes(lam, mu, xi, q);
                Int hom = int_pow(Int(q), hom_space_dim(M, N));
                if (F * aM * aN * hom != ext * aX)
                  return "sequence-count identity fails at [" + lam.str() + " | " + mu.str() +
                         " | " + xi.str() + "], q=" + std::to_string(q);
              }
        }
  // automorphism counts against the closed polynomial
  for (int n = 1; n <= 3; ++n)
    for (int q : {2, 3})
      for (int d = 0; d <= (n == 1 ? 5 : n == 2 ? 5 : 4); ++d)
        for (const MultiPartition& mp : enumerate_multipartitions_total(n, d)) {
          Rat val(0);
          const Poly ap = aut_poly_n(mp);
          for (auto& [e, c] : ap.terms()) {
            Rat pw(1);
            for (int i = 0; i < e; ++i) pw *= Rat(q);
            val += c * pw;
          }
          if (denominator(val) != 1 || numerator(val) != count_automorphisms(mp, q))
            return "automorphism count disagrees at (" + mp.str() + "), q=" + std::to_string(q);
        }
  // one-vertex censuses against the generic polynomials
  for (int q : {2, 3})
    for (int d = 0; d <= 4; ++d)
      for (const Partition& xi : enumerate_partitions(d))
        for (int dl = 0; dl <= d; ++dl)
          for (const Partition& lam : enumerate_partitions(dl))
            for (const Partition& mu : enumerate_partitions(d - dl)) {
              Rat val(0);
              const Poly hp = hall_polynomial(lam, mu, xi);
              for (auto& [e, c] : hp.terms()) {
                Rat pw(1);
                for (int i = 0; i < e; ++i) pw *= Rat(q);
                val += c * pw;
              }
              MultiPartition lm(std::vector<Partition>{lam}), mm(std::vector<Partition>{mu}),
                  xm(std::vector<Partition>{xi});
              if (val != Rat(count_hall_number(lm, mm, xm, q)))
                return "one-vertex census disagrees at (" + lam.str() + "), (" + mu.str() +
                       "), (" + xi.str() + "), q=" + std::to_string(q);
            }
  return "";
}

inline std::string suite_cyclic_hall() {
  CapGuard guard;
  hn_config().dim_cap_rank3 = 5;
  // associativity for ranks two and three
  for (int n = 2; n <= 3; ++n)
    for (int d = 0; d <= 5; ++d)
      for (int da = 0; da <= d; ++da)
        for (int db = 0; db <= d - da; ++db)
          for (const MultiPartition& a : enumerate_multipartitions_total(n, da))
            for (const MultiPartition& b : enumerate_multipartitions_total(n, db))
              for (const MultiPartition& c :
                   enumerate_multipartitions_total(n, d - da - db)) {
                HallElementN xa = HallElementN::element(a), xb = HallElementN::element(b),
                             xc = HallElementN::element(c);
                if (multiply_n(multiply_n(xa, xb), xc) != multiply_n(xa, multiply_n(xb, xc)))
                  return "associativity fails at (" + a.str() + "), (" + b.str() + "), (" +
                         c.str() + "), n=" + std::to_string(n);
              }
  // twisted bialgebra compatibility and the adjunction at rank two
  for (int d = 0; d <= 4; ++d)
    for (int da = 0; da <= d; ++da)
      for (const MultiPartition& a : enumerate_multipartitions_total(2, da))
        for (const MultiPartition& b : enumerate_multipartitions_total(2, d - da)) {
          HallElementN xa = HallElementN::element(a), xb = HallElementN::element(b);
          if (coproduct_n(multiply_n(xa, xb)) != coproduct_n(xa) * coproduct_n(xb))
            return "twisted coproduct is not an algebra map at (" + a.str() + "), (" +
                   b.str() + ")";
        }
  for (int d = 0; d <= 4; ++d)
    for (int da = 0; da <= d; ++da)
      for (int db = 0; db <= d - da; ++db)
        for (const MultiPartition& a : enumerate_multipartitions_total(2, da))
          for (const MultiPartition& b : enumerate_multipartitions_total(2, db))
            for (const MultiPartition& c : enumerate_multipartitions_total(2, d - da - db)) {
              HallElementN xa = HallElementN::element(a), xb = HallElementN::element(b),
                           xc = HallElementN::element(c);
              if (pairing_n(xa, multiply_n(xb, xc)) !=
                  tensor_pairing_n(coproduct_n(xa), xb, xc))
                return "pairing adjunction fails at (" + a.str() + "), (" + b.str() + "), (" +
                       c.str() + ")";
            }
  // bar is an involution fixing the rescaled semisimple products, and the
  // canonical basis is bar-fixed and unitriangular with entries below the
  // diagonal in the negative-power ideal
  for (int d = 0; d <= 4; ++d)
    for (const MultiPartition& mp : enumerate_multipartitions_total(2, d)) {
      HallElementN x = HallElementN::element(mp);
      if (bar_n(bar_n(x)) != x) return "bar fails to be an involution at (" + mp.str() + ")";
      if (is_semisimple(mp) && bar_n(pbw_n(mp)) != pbw_n(mp))
        return "bar moves a semisimple rescaled element at (" + mp.str() + ")";
      HallElementN blam = canonical_basis_n(mp);
      if (bar_n(blam) != blam) return "canonical element not bar-fixed at (" + mp.str() + ")";
      for (auto& [nu, c] : pbw_coordinates_n(blam)) {
        if (nu == mp) {
          if (c != RatFunc::one())
            return "canonical diagonal is not 1 at (" + mp.str() + ")";
          continue;
        }
        if (c.is_zero()) continue;
        if (!deg_lt(nu, mp))
          return "canonical support escapes the order at (" + mp.str() + ")";
        if (!exponents_all(c, [](int e) { return e < 0; }))
          return "canonical entry not in the negative ideal at (" + mp.str() + ")";
      }
    }
  return "";
}

inline std::string suite_centre() {
  // centrality of the first two central elements
  for (int n = 2; n <= 3; ++n) {
    HallElementN x1 = central_x(n, 1);
    for (int i = 1; i <= n; ++i) {
      HallElementN ui = HallElementN::element(simple_class(n, i));
      if (multiply_n(x1, ui) != multiply_n(ui, x1))
        return "first central element fails to commute at vertex " + std::to_string(i) +
               ", n=" + std::to_string(n);
      if (!e_prime(i, x1).is_zero())
        return "first central element not annihilated by the derivation at vertex " +
               std::to_string(i) + ", n=" + std::to_string(n);
    }
  }
  {
    HallElementN x2 = central_x(2, 2);
    for (int i = 1; i <= 2; ++i) {
      HallElementN ui = HallElementN::element(simple_class(2, i));
      if (multiply_n(x2, ui) != multiply_n(ui, x2))
        return "second central element fails to commute at vertex " + std::to_string(i);
    }
  }
  // binomial coproduct of the central family at rank two
  for (int r = 1; r <= 2; ++r) {
    HallTensorN expect(2);
    for (int a = 0; a <= r; ++a) {
      HallElementN xa = a ? central_x(2, a) : HallElementN::one(2);
      HallElementN xb = (r - a) ? central_x(2, r - a) : HallElementN::one(2);
      for (auto& [ka, ca] : xa.terms())
        for (auto& [kb, cb] : xb.terms()) expect.add_term(ka, kb, ca * cb);
    }
    if (coproduct_n(central_x(2, r)) != expect)
      return "central coproduct is not binomial at r=" + std::to_string(r);
  }
  // norms, leading terms, and duality against the canonical basis
  for (int n = 2; n <= 3; ++n)
    for (int r = 1; r <= 2; ++r) {
      HallElementN xr = central_x(n, r);
      if (n == 2) {
        RatFunc norm = pairing_n(xr, xr);
        RatFunc expect = RatFunc::one() - RatFunc::monomial(-2 * n);
        if (norm != expect)
          return "central norm differs from 1 - v^{-2n} at r=" + std::to_string(r) +
                 ", n=" + std::to_string(n) +
                 " (computed " + norm.str("v") + "; the positive-exponent variant 1 - v^{2n} "
                 "does not match either side)";
      }
      MultiPartition per = periodic_class(n, r);
      RatFunc beta = RatFunc::one() - RatFunc::monomial(-2);
      RatFunc betan = RatFunc::one();
      for (int i = 0; i < n; ++i) betan = betan * beta;
      if (xr.coeff(per) != betan)
        return "central leading coefficient differs at r=" + std::to_string(r) +
               ", n=" + std::to_string(n);
      for (auto& [key, c] : xr.terms())
        if (!(key.first == per) && !deg_lt(per, key.first))
          return "central support escapes the order at r=" + std::to_string(r) +
                 ", n=" + std::to_string(n);
    }
  {
    // <x_1, b_mu> = delta at the fully periodic class, rank two
    MultiPartition per = periodic_class(2, 1);
    HallElementN x1 = central_x(2, 1);
    for (const MultiPartition& mu : enumerate_multipartitions(2, DimVec{1, 1})) {
      RatFunc val = pairing_n(x1, canonical_basis_n(mu));
      RatFunc expect = mu == per ? RatFunc::one() : RatFunc::zero();
      if (val != expect)
        return "central/canonical duality fails at (" + mu.str() + ")";
    }
    // orthogonality to left multiples of the simples at matching degree
    for (int i = 1; i <= 2; ++i) {
      HallElementN ui = HallElementN::element(simple_class(2, i));
      HallElementN uj = HallElementN::element(simple_class(2, 3 - i));
      if (pairing_n(x1, multiply_n(ui, uj)) != RatFunc::zero())
        return "central element not orthogonal to a simple multiple at vertex " +
               std::to_string(i);
    }
  }
  return "";
}

}  // namespace verify_detail

/// The ordered registry of named identity suites.
inline const std::vector<std::pair<std::string, std::function<std::string()>>>&
verify_registry() {
  static const std::vector<std::pair<std::string, std::function<std::string()>>> reg = {
      {"exact-arith", verify_detail::suite_exact_arith},
      {"partitions", verify_detail::suite_partitions},
      {"symmetric-functions", verify_detail::suite_symmetric_functions},
      {"classical-hall", verify_detail::suite_classical_hall},
      {"fq-oracle", verify_detail::suite_fq_oracle},
      {"cyclic-hall", verify_detail::suite_cyclic_hall},
      {"centre", verify_detail::suite_centre},
  };
  return reg;
}

/// Run one named suite; unknown names throw std::domain_error.
inline SuiteResult run_verify_suite(const std::string& name) {
  for (auto& [nm, fn] : verify_registry()) {
    if (nm != name) continue;
    SuiteResult r;
    r.name = nm;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = fn();
      r.ok = r.detail.empty();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw std::domain_error("run_verify_suite: unknown suite " + name);
}

/// Run the given suites (all of them when the list is empty), in registry
/// order.
inline std::vector<SuiteResult> run_verify_suites(const std::vector<std::string>& names) {
  std::vector<SuiteResult> out;
  if (names.empty()) {
    for (auto& [nm, fn] : verify_registry()) out.push_back(run_verify_suite(nm));
    return out;
  }
  for (const std::string& nm : names) out.push_back(run_verify_suite(nm));
  return out;
}

}  // namespace hallsym
