#pragma once
/// @file qseries.hpp
/// q-series utilities: phi factorials and Gaussian binomial coefficients.

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "hallsym/laurent.hpp"
#include "hallsym/poly.hpp"

namespace hallsym {

/// phi_n(t) = (1-t)(1-t^2)...(1-t^n); phi_0 = 1.
inline Poly phi(int n) {
  if (n < 0) throw std::domain_error("phi: negative index");
  static std::map<int, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly p = Poly::one();
  for (int i = 1; i <= n; ++i) {
    p *= Poly::one() - Poly::monomial(i, Rat(1));
    cache.emplace(i, p);
  }
  cache.emplace(0, Poly::one());
  return cache[n];
}

/// Gaussian binomial [r over a]_t for 0 <= a <= r.
/// Computed by exact division phi_r / (phi_a phi_{r-a}); the division is
/// asserted exact, which is a structural self-check of the q-factorials.
inline Poly gauss_binomial(int r, int a) {
  if (r < 0 || a < 0 || a > r)
    throw std::domain_error("gauss_binomial: index outside 0 <= a <= r");
  static std::map<std::pair<int, int>, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(r, a);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Poly g = phi(r).exact_div(phi(a) * phi(r - a));
  cache[key] = g;
  return g;
}

/// [r over a] evaluated at q^{-1}: a Laurent polynomial in q.  Out-of-range
/// indices give zero (the extension-by-zero convention the product formulas
/// for Hall coefficients rely on).
inline Laurent gauss_binomial_qinv(int r, int a) {
  if (r < 0 || a < 0 || a > r) return Laurent::zero();
  Laurent g;
  const Poly gb = gauss_binomial(r, a);
  for (auto& [e, c] : gb.terms()) g.add_term(-e, c);
  return g;
}

}  // namespace hallsym
