#pragma once
/**
 * @file poly.hpp
 * @brief Sparse univariate polynomials with exact rational coefficients.
 *
 * Normal form invariant: the exponent->coefficient map contains no zero
 * coefficients and no negative exponents.  The zero polynomial is the empty
 * map; its degree is the sentinel kNegInfDeg.
 */

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hallsym/scalars.hpp"

namespace hallsym {

/// Degree of the zero polynomial ("minus infinity").
constexpr int kNegInfDeg = -0x40000000;

class Poly {
 public:
  Poly() = default;
  /// Constant polynomial.
  explicit Poly(const Rat& c) {
    if (c != 0) c_[0] = c;
  }
  explicit Poly(long c) : Poly(Rat(c)) {}

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rat(1)); }
  static Poly var() { return monomial(1, Rat(1)); }
  static Poly monomial(int e, const Rat& c) {
    if (e < 0) throw std::domain_error("Poly: negative exponent");
    Poly p;
    if (c != 0) p.c_[e] = c;
    return p;
  }

  const std::map<int, Rat>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1; }

  int degree() const { return c_.empty() ? kNegInfDeg : c_.rbegin()->first; }
  int low_degree() const { return c_.empty() ? kNegInfDeg : c_.begin()->first; }

  Rat coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
  }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.rbegin()->second; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r;
    for (auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }
  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (auto& [e, c] : o.c_) r.add_term(e, c);
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (auto& [e, c] : o.c_) r.add_term(e, -c);
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    for (auto& [e1, c1] : c_)
      for (auto& [e2, c2] : o.c_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  Poly operator*(const Rat& s) const {
    Poly r;
    if (s == 0) return r;
    for (auto& [e, c] : c_) r.c_[e] = c * s;
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  void add_term(int e, const Rat& c) {
    if (c == 0) return;
    if (e < 0) throw std::domain_error("Poly: negative exponent");
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  Poly pow(long k) const {
    if (k < 0) throw std::domain_error("Poly::pow: negative exponent");
    Poly acc = one(), b = *this;
    while (k > 0) {
      if (k & 1) acc *= b;
      b *= b;
      k >>= 1;
    }
    return acc;
  }

  /// Quotient and remainder of division by a nonzero polynomial.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    Poly q, r = *this;
    const int dd = d.degree();
    const Rat dl = d.leading();
    while (!r.is_zero() && r.degree() >= dd) {
      int e = r.degree() - dd;
      Rat c = r.leading() / dl;
      q.add_term(e, c);
      r -= d * Poly::monomial(e, c);
    }
    return {q, r};
  }

  /// Exact division; throws if the remainder is nonzero.
  Poly exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("Poly::exact_div: inexact division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
  }

  /// Positive rational c such that (*this)/c has coprime integer coefficients.
  Rat content() const {
    if (is_zero()) return Rat(1);
    Int g(0), l(1);
    for (auto& [e, c] : c_) {
      g = boost::multiprecision::gcd(g, numerator(c) < 0 ? Int(-numerator(c)) : numerator(c));
      l = l / boost::multiprecision::gcd(l, denominator(c)) * denominator(c);
    }
    return Rat(g, l);
  }

  bool has_integer_coeffs() const {
    for (auto& [e, c] : c_)
      if (denominator(c) != 1) return false;
    return true;
  }

  Rat eval(const Rat& x) const {
    // Horner over the sparse support.
    Rat acc(0);
    int prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (prev >= 0) acc *= rat_pow(x, prev - it->first);
      acc += it->second;
      prev = it->first;
    }
    if (prev > 0) acc *= rat_pow(x, prev);
    return acc;
  }

  /// Substitute x -> x^k with k >= 1.
  Poly subst_pow(int k) const {
    if (k < 1) throw std::domain_error("Poly::subst_pow: exponent must be positive");
    Poly r;
    for (auto& [e, c] : c_) r.c_[e * k] = c;
    return r;
  }

  /// Return x^shift * p(1/x), a polynomial when shift >= degree.
  Poly reflect(int shift) const {
    if (!is_zero() && shift < degree())
      throw std::domain_error("Poly::reflect: shift smaller than degree");
    Poly r;
    for (auto& [e, c] : c_) r.c_[shift - e] = c;
    return r;
  }

  /// Greatest common divisor, normalized monic.  Primitive PRS to keep
  /// intermediate coefficient growth in check.
  static Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    Poly A = a * (Rat(1) / a.content());
    Poly B = b * (Rat(1) / b.content());
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
      // Pseudo-remainder: scale so the division is fraction-free, then strip content.
      long k = A.degree() - B.degree() + 1;
      Poly R = (A * rat_pow(Rat(B.leading()), k)).divmod(B).second;
      A = B;
      if (R.is_zero()) {
        B = Poly::zero();
      } else {
        B = R * (Rat(1) / R.content());
      }
    }
    return A.monic();
  }

  /// Display with ascending == true as "1 - t + 2t^3", else descending.
  std::string str(const std::string& var, bool ascending = true) const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    auto emit = [&](int e, const Rat& c) {
      Rat a = c < 0 ? Rat(-c) : c;
      std::string sign = c < 0 ? "-" : "+";
      if (first) {
        if (c < 0) out += "-";
        first = false;
      } else {
        out += " " + sign + " ";
      }
      std::string mag;
      if (e == 0) {
        mag = rat_str(a);
      } else {
        std::string pow_part = var + (e == 1 ? "" : "^" + std::to_string(e));
        mag = (a == 1) ? pow_part : rat_str(a) + pow_part;
      }
      out += mag;
    };
    if (ascending) {
      for (auto& [e, c] : c_) emit(e, c);
    } else {
      for (auto it = c_.rbegin(); it != c_.rend(); ++it) emit(it->first, it->second);
    }
    return out;
  }

 private:
  std::map<int, Rat> c_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

}  // namespace hallsym
