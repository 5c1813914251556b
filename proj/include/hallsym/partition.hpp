#pragma once
/**
 * @file partition.hpp
 * @brief Partitions: duals, dominance, the statistics n(lambda), z_lambda,
 *        z_lambda(t), b_lambda(t), automorphism-count polynomials and hom
 *        dimensions for nilpotent modules over a discrete valuation ring
 *        with finite residue field.
 */

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hallsym/errors.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/qseries.hpp"
#include "hallsym/ratfunc.hpp"
#include "hallsym/scalars.hpp"

namespace hallsym {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be >= 1");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  /// Build from an arbitrary bag of positive entries (sorted internally).
  static Partition from_parts_unsorted(std::vector<int> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return Partition(std::move(parts));
  }

  /// Parse "4,3,1"; "" is the empty partition; "0" tokens are ignored.
  static Partition parse(const std::string& csv) {
    std::vector<int> parts;
    std::string cur;
    auto flush = [&]() {
      if (cur.empty()) return;
      int v = std::stoi(cur);
      if (v != 0) parts.push_back(v);
      cur.clear();
    };
    for (char ch : csv) {
      if (ch == ',') {
        flush();
      } else if (ch == ' ') {
        continue;
      } else {
        cur += ch;
      }
    }
    flush();
    return from_parts_unsorted(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  /// 1-based part access; parts beyond the length read as 0.
  int part(int i) const {
    return (i >= 1 && i <= length()) ? parts_[i - 1] : 0;
  }

  /// Multiplicity map r -> m_r(lambda).
  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (int p : parts_) ++m[p];
    return m;
  }

  Partition conjugate() const {
    std::vector<int> dual;
    if (!parts_.empty()) {
      dual.resize(parts_[0]);
      for (int i = 1; i <= parts_[0]; ++i) {
        int cnt = 0;
        for (int p : parts_)
          if (p >= i) ++cnt;
        dual[i - 1] = cnt;
      }
    }
    return Partition(std::move(dual));
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }

  /// Graded total order: weight first, then lexicographically larger parts
  /// first.  Within a degree this refines the dominance order downward,
  /// which is the display order used for triangular expansions.
  bool operator<(const Partition& o) const {
    int w = weight(), ow = o.weight();
    if (w != ow) return w < ow;
    return std::lexicographical_compare(o.parts_.begin(), o.parts_.end(), parts_.begin(),
                                        parts_.end());
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  /// Compact display form "(4,3,1)"; "()" when empty.
  std::string display() const { return "(" + str() + ")"; }

 private:
  std::vector<int> parts_;
};

/// Dominance order within a fixed degree.  Comparing partitions of
/// different weights is an error: the order is only defined degree-wise.
inline bool dominance_leq(const Partition& lam, const Partition& mu) {
  if (lam.weight() != mu.weight())
    throw std::domain_error("dominance_leq: partitions of different weights");
  int len = std::max(lam.length(), mu.length());
  long sl = 0, sm = 0;
  for (int i = 1; i <= len; ++i) {
    sl += lam.part(i);
    sm += mu.part(i);
    if (sl > sm) return false;
  }
  return true;
}

inline bool dominance_lt(const Partition& lam, const Partition& mu) {
  return lam != mu && dominance_leq(lam, mu);
}

/// n(lambda) = sum (i-1) lambda_i.
inline long n_stat(const Partition& lam) {
  long n = 0;
  const auto& p = lam.parts();
  for (size_t i = 0; i < p.size(); ++i) n += static_cast<long>(i) * p[i];
  return n;
}

/// z_lambda = prod_r m_r! r^{m_r}.
inline Int z_stat(const Partition& lam) {
  Int z(1);
  for (auto& [r, m] : lam.multiplicities()) z *= factorial(m) * int_pow(Int(r), m);
  return z;
}

/// z_lambda(t) = z_lambda * prod_r (1 - t^r)^{-m_r}.
inline RatFunc z_t(const Partition& lam) {
  Poly den = Poly::one();
  for (auto& [r, m] : lam.multiplicities())
    den *= (Poly::one() - Poly::monomial(r, Rat(1))).pow(m);
  return RatFunc(Poly(Rat(z_stat(lam))), den);
}

/// b_lambda(t) = prod_r phi_{m_r(lambda)}(t).
inline Poly b_t(const Partition& lam) {
  Poly b = Poly::one();
  for (auto& [r, m] : lam.multiplicities()) b *= phi(m);
  return b;
}

struct PartitionStats {
  long n_stat;
  Int z_stat;
  RatFunc z_t;
  Poly b_t;
  int length;
  int weight;
  std::map<int, int> multiplicities;
};

inline PartitionStats stats(const Partition& lam) {
  return PartitionStats{n_stat(lam), z_stat(lam), z_t(lam),
                        b_t(lam),    lam.length(), lam.weight(),
                        lam.multiplicities()};
}

/// d(lambda, mu) = sum_{i,j} min(lambda_i, mu_j), the hom-space dimension
/// between the corresponding nilpotent torsion modules.
inline long hom_dim(const Partition& lam, const Partition& mu) {
  long d = 0;
  for (int a : lam.parts())
    for (int b : mu.parts()) d += std::min(a, b);
  return d;
}

/// a_lambda(T) = T^{2n(lambda)+|lambda|} b_lambda(T^{-1}): the monic integer
/// polynomial whose value at a prime power q is the automorphism count.
inline Poly aut_poly(const Partition& lam) {
  return b_t(lam).reflect(static_cast<int>(2 * n_stat(lam) + lam.weight()));
}

/// (lambda union mu, lambda + mu): multiplicities add for the union, parts add
/// for the sum.  The construction self-checks the duality
/// (union)' = lambda' + mu'.
inline std::pair<Partition, Partition> union_and_sum(const Partition& lam, const Partition& mu) {
  std::vector<int> u = lam.parts();
  u.insert(u.end(), mu.parts().begin(), mu.parts().end());
  Partition un = Partition::from_parts_unsorted(std::move(u));

  int len = std::max(lam.length(), mu.length());
  std::vector<int> s;
  for (int i = 1; i <= len; ++i) s.push_back(lam.part(i) + mu.part(i));
  Partition sum(std::move(s));

  // (lambda union mu)' = lambda' + mu'
  Partition lc = lam.conjugate(), mc = mu.conjugate();
  int clen = std::max(lc.length(), mc.length());
  std::vector<int> cs;
  for (int i = 1; i <= clen; ++i) cs.push_back(lc.part(i) + mc.part(i));
  if (un.conjugate() != Partition(std::move(cs)))
    throw InternalCheckError("union_and_sum: conjugate duality violated");
  return {un, sum};
}

namespace detail {
inline void enum_rec(int remaining, int maxpart, std::vector<int>& cur,
                     std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(remaining, maxpart); p >= 1; --p) {
    cur.push_back(p);
    enum_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All partitions of d in decreasing lexicographic order.
inline std::vector<Partition> enumerate_partitions(int d, int bound = 30) {
  if (d < 0) throw std::domain_error("enumerate_partitions: negative weight");
  if (d > bound) throw BoundError("enumerate_partitions: weight " + std::to_string(d) +
                                  " exceeds bound " + std::to_string(bound));
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::enum_rec(d, d == 0 ? 1 : d, cur, out);
  return out;
}

}  // namespace hallsym
