#pragma once
/// @file laurent.hpp
/// Sparse Laurent polynomials (integer exponents of either sign) over Rat.

#include <map>
#include <stdexcept>
#include <string>

#include "hallsym/poly.hpp"

namespace hallsym {

class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const Rat& c) {
    if (c != 0) c_[0] = c;
  }
  explicit Laurent(long c) : Laurent(Rat(c)) {}

  static Laurent zero() { return Laurent(); }
  static Laurent one() { return Laurent(Rat(1)); }
  static Laurent monomial(int e, const Rat& c) {
    Laurent p;
    if (c != 0) p.c_[e] = c;
    return p;
  }
  static Laurent from_poly(const Poly& p) {
    Laurent r;
    for (auto& [e, c] : p.terms()) r.c_[e] = c;
    return r;
  }

  const std::map<int, Rat>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  int max_exp() const { return c_.empty() ? kNegInfDeg : c_.rbegin()->first; }
  int min_exp() const { return c_.empty() ? -kNegInfDeg : c_.begin()->first; }

  Rat coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
  }

  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent operator-() const {
    Laurent r;
    for (auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }
  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    for (auto& [e, c] : o.c_) r.add_term(e, c);
    return r;
  }
  Laurent operator-(const Laurent& o) const {
    Laurent r = *this;
    for (auto& [e, c] : o.c_) r.add_term(e, -c);
    return r;
  }
  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (auto& [e1, c1] : c_)
      for (auto& [e2, c2] : o.c_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  Laurent operator*(const Rat& s) const {
    Laurent r;
    if (s == 0) return r;
    for (auto& [e, c] : c_) r.c_[e] = c * s;
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  void add_term(int e, const Rat& c) {
    if (c == 0) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  /// Bar involution on exponents: x -> x^{-1}.
  Laurent conj() const {
    Laurent r;
    for (auto& [e, c] : c_) r.c_[-e] = c;
    return r;
  }

  /// Substitute x -> x^k for nonzero integer k.
  Laurent subst_pow(int k) const {
    if (k == 0) throw std::domain_error("Laurent::subst_pow: zero exponent");
    Laurent r;
    for (auto& [e, c] : c_) r.c_[e * k] = c;
    return r;
  }

  bool is_poly() const { return c_.empty() || min_exp() >= 0; }

  Poly to_poly() const {
    if (!is_poly()) throw std::domain_error("Laurent::to_poly: negative exponents present");
    Poly p;
    for (auto& [e, c] : c_) p.add_term(e, c);
    return p;
  }

  bool has_integer_coeffs() const {
    for (auto& [e, c] : c_)
      if (denominator(c) != 1) return false;
    return true;
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto& [e, c] : c_) acc += c * rat_pow(x, e);
    return acc;
  }

  std::string str(const std::string& var, bool ascending = true) const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    auto emit = [&](int e, const Rat& c) {
      Rat a = c < 0 ? Rat(-c) : c;
      if (first) {
        if (c < 0) out += "-";
        first = false;
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (e == 0) {
        out += rat_str(a);
      } else {
        std::string pow_part = var + (e == 1 ? "" : "^" + std::to_string(e));
        out += (a == 1) ? pow_part : rat_str(a) + pow_part;
      }
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

inline Laurent operator*(const Rat& s, const Laurent& p) { return p * s; }

}  // namespace hallsym
