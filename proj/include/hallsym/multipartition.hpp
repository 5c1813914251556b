#pragma once
/**
 * @file multipartition.hpp
 * @brief Multipartitions indexing nilpotent representations of the cyclic
 *        quiver with n vertices: dimension vectors, hom dimensions by the
 *        congruence-counting formula, automorphism-count polynomials,
 *        periodicity classes, radical layers and enumeration.
 *
 * Conventions: vertices are 1..n; the arrow at vertex i points i -> i-1
 * (indices mod n).  Component lambda^i of a multipartition lists the lengths
 * of the indecomposable summands with socle the simple at vertex i.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hallsym/partition.hpp"

namespace hallsym {

using DimVec = std::vector<long>;

class MultiPartition {
 public:
  MultiPartition() = default;
  explicit MultiPartition(std::vector<Partition> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("MultiPartition: rank must be >= 1");
  }
  static MultiPartition empty_of_rank(int n) {
    return MultiPartition(std::vector<Partition>(n));
  }

  /// Parse "2,1;;3" (components separated by ';'; empty component allowed).
  static MultiPartition parse(const std::string& s) {
    std::vector<Partition> comps;
    std::string cur;
    for (char ch : s) {
      if (ch == ';') {
        comps.push_back(Partition::parse(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    comps.push_back(Partition::parse(cur));
    return MultiPartition(std::move(comps));
  }

  int rank() const { return static_cast<int>(comps_.size()); }
  const std::vector<Partition>& comps() const { return comps_; }
  /// 1-based component access matching vertex labels.
  const Partition& comp(int i) const { return comps_.at(i - 1); }

  bool is_empty() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Partition& p) { return p.empty(); });
  }

  bool operator==(const MultiPartition& o) const { return comps_ == o.comps_; }
  bool operator!=(const MultiPartition& o) const { return !(*this == o); }
  bool operator<(const MultiPartition& o) const {
    if (comps_.size() != o.comps_.size()) return comps_.size() < o.comps_.size();
    long d = total_dim_(), od = o.total_dim_();
    if (d != od) return d < od;
    return std::lexicographical_compare(comps_.begin(), comps_.end(), o.comps_.begin(),
                                        o.comps_.end());
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ";";
      s += comps_[i].str();
    }
    return s;
  }

 private:
  long total_dim_() const {
    long d = 0;
    for (auto& c : comps_) d += c.weight();
    return d;
  }
  std::vector<Partition> comps_;
};

/// Dimension vector of the indecomposable with socle at vertex i and length l:
/// one for each of the vertices i, i+1, ..., i+l-1 taken mod n.
inline DimVec indec_dim_vector(int i, int l, int n) {
  if (i < 1 || i > n) throw std::domain_error("indec_dim_vector: vertex out of range");
  if (l < 1) throw std::domain_error("indec_dim_vector: length must be >= 1");
  DimVec d(n, 0);
  for (int k = 0; k < l; ++k) ++d[(i - 1 + k) % n];
  return d;
}

inline DimVec dim_vector(const MultiPartition& mp) {
  int n = mp.rank();
  DimVec d(n, 0);
  for (int i = 1; i <= n; ++i)
    for (int l : mp.comp(i).parts())
      for (int k = 0; k < l; ++k) ++d[(i - 1 + k) % n];
  return d;
}

/// Total dimension = sum of all parts across components.
inline long total_dim(const MultiPartition& mp) {
  long d = 0;
  for (auto& c : mp.comps()) d += c.weight();
  return d;
}

/// dim Hom(M_{(i;l)}, M_{(j;m)}) = |{max(0, l-m) <= r < l : r = j-i mod n}|.
inline int hom_dim_indec(int i, int l, int j, int m, int n) {
  int lo = std::max(0, l - m);
  int cnt = 0;
  int target = ((j - i) % n + n) % n;
  for (int r = lo; r < l; ++r)
    if (r % n == target) ++cnt;
  return cnt;
}

inline long hom_dim_n(const MultiPartition& a, const MultiPartition& b) {
  if (a.rank() != b.rank()) throw std::domain_error("hom_dim_n: rank mismatch");
  int n = a.rank();
  long d = 0;
  for (int i = 1; i <= n; ++i)
    for (int l : a.comp(i).parts())
      for (int j = 1; j <= n; ++j)
        for (int m : b.comp(j).parts()) d += hom_dim_indec(i, l, j, m, n);
  return d;
}

/// Multiplicities of indecomposable summand types: (socle vertex, length) -> count.
inline std::map<std::pair<int, int>, int> summand_multiplicities(const MultiPartition& mp) {
  std::map<std::pair<int, int>, int> m;
  for (int i = 1; i <= mp.rank(); ++i)
    for (int l : mp.comp(i).parts()) ++m[{i, l}];
  return m;
}

/// a_mp(T) = T^{h} prod over summand types of phi_{multiplicity}(T^{-1}),
/// where h = hom_dim_n(mp, mp).  Monic integer polynomial of degree h whose
/// value at q counts automorphisms of the corresponding representation.
inline Poly aut_poly_n(const MultiPartition& mp) {
  long h = hom_dim_n(mp, mp);
  Poly b = Poly::one();
  for (auto& [type, m] : summand_multiplicities(mp)) b *= phi(m);
  return b.reflect(static_cast<int>(h));
}

enum class Periodicity { aperiodic, completely_periodic, neither };

/// Aperiodic: every part size is missing from at least one component.
/// Completely periodic: all components equal.  The empty multipartition is
/// both; it is reported as completely_periodic.
inline Periodicity periodicity(const MultiPartition& mp) {
  bool all_equal = true;
  for (int i = 2; i <= mp.rank(); ++i)
    if (mp.comp(i) != mp.comp(1)) all_equal = false;
  if (all_equal) return Periodicity::completely_periodic;
  // collect part sizes present anywhere
  std::map<int, int> seen_in;  // r -> number of components containing r
  for (int i = 1; i <= mp.rank(); ++i) {
    auto mult = mp.comp(i).multiplicities();
    for (auto& [r, m] : mult) ++seen_in[r];
  }
  for (auto& [r, cnt] : seen_in)
    if (cnt == mp.rank()) return Periodicity::neither;
  return Periodicity::aperiodic;
}

/// Radical layer k (1-based) of the module M_mp, as a semisimple
/// multipartition: summand (i;l) contributes, for each k <= l, one simple at
/// vertex i+l-k (mod n).  Layer 1 is the top.
inline std::vector<MultiPartition> radical_layers(const MultiPartition& mp) {
  int n = mp.rank();
  int depth = 0;
  for (auto& c : mp.comps()) depth = std::max(depth, c.empty() ? 0 : c.parts()[0]);
  std::vector<std::vector<int>> layer_counts(depth + 1, std::vector<int>(n + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int l : mp.comp(i).parts())
      for (int k = 1; k <= l; ++k) {
        int v = ((i + l - k - 1) % n + n) % n + 1;
        ++layer_counts[k][v];
      }
  std::vector<MultiPartition> layers;
  for (int k = 1; k <= depth; ++k) {
    std::vector<Partition> comps;
    for (int v = 1; v <= n; ++v)
      comps.push_back(Partition(std::vector<int>(layer_counts[k][v], 1)));
    layers.push_back(MultiPartition(std::move(comps)));
  }
  return layers;
}

/// True when the socle of M_mp is square-free, i.e. every component has at
/// most one part.
inline bool socle_squarefree(const MultiPartition& mp) {
  for (auto& c : mp.comps())
    if (c.length() > 1) return false;
  return true;
}

namespace detail {
inline void enum_mp_rec(int n, const std::vector<std::pair<int, int>>& types, size_t idx,
                        DimVec& left, std::map<std::pair<int, int>, int>& chosen,
                        std::vector<MultiPartition>& out) {
  bool done = std::all_of(left.begin(), left.end(), [](long x) { return x == 0; });
  if (done) {
    std::vector<Partition> comps(n);
    for (int i = 1; i <= n; ++i) {
      std::vector<int> parts;
      for (auto it = chosen.rbegin(); it != chosen.rend(); ++it)
        if (it->first.first == i)
          for (int c = 0; c < it->second; ++c) parts.push_back(it->first.second);
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      comps[i - 1] = Partition(std::move(parts));
    }
    out.push_back(MultiPartition(std::move(comps)));
    return;
  }
  if (idx == types.size()) return;
  auto [i, l] = types[idx];
  DimVec d = indec_dim_vector(i, l, n);
  // maximum multiplicity that fits
  int maxm = 0;
  {
    DimVec probe = left;
    bool fits = true;
    while (fits) {
      for (int v = 0; v < n; ++v) {
        probe[v] -= d[v];
        if (probe[v] < 0) fits = false;
      }
      if (fits) ++maxm;
    }
  }
  for (int m = maxm; m >= 0; --m) {
    for (int v = 0; v < n; ++v) left[v] -= m * d[v];
    if (m > 0) chosen[{i, l}] = m;
    enum_mp_rec(n, types, idx + 1, left, chosen, out);
    if (m > 0) chosen.erase({i, l});
    for (int v = 0; v < n; ++v) left[v] += m * d[v];
  }
}
}  // namespace detail

/// All multipartitions of rank n with the given dimension vector.
inline std::vector<MultiPartition> enumerate_multipartitions(int n, const DimVec& target) {
  if (static_cast<int>(target.size()) != n)
    throw std::domain_error("enumerate_multipartitions: dimension vector length mismatch");
  long tot = std::accumulate(target.begin(), target.end(), 0L);
  std::vector<std::pair<int, int>> types;
  for (int i = 1; i <= n; ++i)
    for (int l = 1; l <= tot; ++l) {
      DimVec d = indec_dim_vector(i, l, n);
      bool fits = true;
      for (int v = 0; v < n; ++v)
        if (d[v] > target[v]) fits = false;
      if (fits) types.push_back({i, l});
    }
  std::vector<MultiPartition> out;
  DimVec left = target;
  std::map<std::pair<int, int>, int> chosen;
  detail::enum_mp_rec(n, types, 0, left, chosen, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// All multipartitions of rank n with total dimension exactly d.
inline std::vector<MultiPartition> enumerate_multipartitions_total(int n, int d) {
  std::vector<MultiPartition> out;
  // iterate over all dimension vectors of total d
  DimVec cur(n, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == n - 1) {
      cur[v] = left;
      auto batch = enumerate_multipartitions(n, cur);
      out.insert(out.end(), batch.begin(), batch.end());
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[v] = x;
      rec(v + 1, left - x);
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hallsym
