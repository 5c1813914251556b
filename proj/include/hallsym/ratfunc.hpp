#pragma once
/**
 * @file ratfunc.hpp
 * @brief Rational functions in one indeterminate over Rat, kept in normal form.
 *
 * Normal form: numerator and denominator coprime, denominator monic.  With
 * that invariant, structural equality of the representation is equality in
 * the field, so operator== compares maps directly.
 */

#include <stdexcept>
#include <string>
#include <utility>

#include "hallsym/laurent.hpp"
#include "hallsym/poly.hpp"

namespace hallsym {

class RatFunc {
 public:
  RatFunc() : num_(Poly::zero()), den_(Poly::one()) {}
  explicit RatFunc(const Rat& c) : num_(Poly(c)), den_(Poly::one()) {}
  explicit RatFunc(long c) : num_(Poly(Rat(c))), den_(Poly::one()) {}
  explicit RatFunc(const Poly& p) : num_(p), den_(Poly::one()) {}
  RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(Rat(1)); }
  static RatFunc var() { return RatFunc(Poly::var()); }

  /// v^e for any integer e (negative exponents give 1/v^{-e}).
  static RatFunc monomial(int e, const Rat& c = Rat(1)) {
    if (e >= 0) return RatFunc(Poly::monomial(e, c));
    return RatFunc(Poly(c), Poly::monomial(-e, Rat(1)));
  }

  static RatFunc from_laurent(const Laurent& l) {
    if (l.is_zero()) return zero();
    int m = l.min_exp();
    if (m >= 0) return RatFunc(l.to_poly());
    Poly num;
    for (auto& [e, c] : l.terms()) num.add_term(e - m, c);
    return RatFunc(num, Poly::monomial(-m, Rat(1)));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_poly() const { return den_.is_one(); }

  Poly to_poly() const {
    if (!is_poly()) throw std::domain_error("RatFunc::to_poly: nontrivial denominator");
    return num_;
  }

  /// True when the denominator is a monomial, i.e. the value is a Laurent polynomial.
  bool is_laurent() const { return den_.terms().size() == 1; }

  Laurent to_laurent() const {
    if (!is_laurent()) throw std::domain_error("RatFunc::to_laurent: denominator not a monomial");
    int shift = den_.degree();
    Rat dc = den_.leading();  // monic, so 1, but keep it general
    Laurent r;
    for (auto& [e, c] : num_.terms()) r.add_term(e - shift, c / dc);
    return r;
  }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc operator*(const Rat& s) const { return RatFunc(num_ * s, den_); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
  }

  RatFunc pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc acc = one(), b = *this;
    while (k > 0) {
      if (k & 1) acc *= b;
      b *= b;
      k >>= 1;
    }
    return acc;
  }

  /// Evaluate at a rational point; throws at a pole.
  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("RatFunc::eval: pole at evaluation point");
    return num_.eval(x) / d;
  }

  /// Substitute x -> x^k for nonzero integer k (e.g. t -> v^{-2}).
  RatFunc subst_pow(int k) const {
    if (k == 0) throw std::domain_error("RatFunc::subst_pow: zero exponent");
    if (k > 0) return RatFunc(num_.subst_pow(k), den_.subst_pow(k));
    int m = -k;
    // x -> x^{-m}: clear negative powers with a common x^{m*D} factor.
    int D = std::max(num_.degree(), den_.degree());
    Poly n2, d2;
    for (auto& [e, c] : num_.terms()) n2.add_term(m * (D - e), c);
    for (auto& [e, c] : den_.terms()) d2.add_term(m * (D - e), c);
    return RatFunc(n2, d2);
  }

  /// Bar involution x -> x^{-1}.
  RatFunc conj() const { return subst_pow(-1); }

  std::string str(const std::string& var, bool ascending = true) const {
    if (is_poly()) return num_.str(var, ascending);
    std::string n = num_.str(var, ascending);
    std::string d = den_.str(var, ascending);
    bool nsimple = num_.terms().size() == 1;
    bool dsimple = den_.terms().size() == 1;
    return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::one();
      return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    Rat lc = den_.leading();
    if (lc != 1) {
      num_ = num_ * (Rat(1) / lc);
      den_ = den_ * (Rat(1) / lc);
    }
  }

  Poly num_, den_;
};

inline RatFunc operator*(const Rat& s, const RatFunc& f) { return f * s; }

}  // namespace hallsym
