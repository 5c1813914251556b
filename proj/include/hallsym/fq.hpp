#pragma once
/**
 * @file fq.hpp
 * @brief Brute-force ground truth over small prime fields: explicit nilpotent
 *        representations of the cyclic quiver, isomorphism-type recovery from
 *        path ranks, submodule and automorphism counting, and Lagrange
 *        interpolation of the counting polynomials under the quadratic
 *        degree bound.
 *
 * Everything here works by direct enumeration and linear algebra over F_q and
 * is deliberately independent of the generic (polynomial) constructions, so
 * that the two sides can be compared as oracles for one another.
 */

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hallsym/errors.hpp"
#include "hallsym/multipartition.hpp"
#include "hallsym/partition.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/qseries.hpp"
#include "hallsym/scalars.hpp"

namespace hallsym {

/// Enumeration limits.  These are configuration, not constants: the CLI can
/// raise or lower them, at the cost of run time.
struct FqConfig {
  int field_bound = 13;        ///< largest prime modulus used anywhere
  int submodule_dim_bound = 8; ///< max total dimension for submodule censuses
  int automorphism_dim_bound = 5; ///< max total dimension for |Aut| counts
};

inline FqConfig& fq_config() {
  static FqConfig cfg;
  return cfg;
}

namespace fq {

/// Dense matrix over F_q with entries stored as ints in [0, q).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<int> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int d) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline int inv_mod(int x, int q) {
  x %= q;
  if (x < 0) x += q;
  if (x == 0) throw std::domain_error("inv_mod: zero is not invertible");
  int r = 1;
  for (int e = q - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * x % q;
    x = x * x % q;
  }
  return r;
}

inline Mat mul(const Mat& A, const Mat& B, int q) {
  if (A.cols != B.rows) throw std::invalid_argument("fq::mul: shape mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = (C.at(i, j) + v * B.at(k, j)) % q;
    }
  return C;
}

/// Reduce to reduced row-echelon form in place; returns the pivot columns.
inline std::vector<int> rref(Mat& M, int q) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int sel = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
    int inv = inv_mod(M.at(r, c), q);
    for (int j = 0; j < M.cols; ++j) M.at(r, j) = M.at(r, j) * inv % q;
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      int f = M.at(i, c);
      for (int j = 0; j < M.cols; ++j)
        M.at(i, j) = ((M.at(i, j) - f * M.at(r, j)) % q + q) % q;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(Mat M, int q) { return static_cast<int>(rref(M, q).size()); }

/// Basis of the right null space {x : Mx = 0}, one solution per row.
inline Mat nullspace(Mat M, int q) {
  std::vector<int> pivots = rref(M, q);
  std::vector<char> is_pivot(M.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  Mat N(M.cols - static_cast<int>(pivots.size()), M.cols);
  int row = 0;
  for (int c = 0; c < M.cols; ++c) {
    if (is_pivot[c]) continue;
    N.at(row, c) = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      N.at(row, pivots[r]) = (q - M.at(static_cast<int>(r), c)) % q;
    ++row;
  }
  return N;
}

/// Reduce a row vector against an echelonized basis; v becomes the residue.
inline void reduce_against(std::vector<int>& v, const Mat& basis,
                           const std::vector<int>& pivots, int q) {
  for (size_t r = 0; r < pivots.size(); ++r) {
    int f = v[pivots[r]];
    if (f == 0) continue;
    for (int j = 0; j < basis.cols; ++j)
      v[j] = ((v[j] - f * basis.at(static_cast<int>(r), j)) % q + q) % q;
  }
}

inline bool is_zero_vec(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace fq

namespace detail {

inline bool is_prime_int(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline void check_prime(int q) {
  if (!is_prime_int(q))
    throw std::domain_error("finite-field oracle: modulus must be prime");
  if (q > fq_config().field_bound)
    throw BoundError("finite-field oracle: prime exceeds the field bound");
}

}  // namespace detail

/**
 * A concrete representation of the cyclic quiver over F_q: one vector space
 * per vertex (labels 1..n) and one matrix per arrow.  arrows[t] (0-based t)
 * is the matrix of the arrow arriving at vertex t+1 from vertex t+2 (labels
 * mod n), of shape dims[t] x dims[(t+1) % n].  The composite around the
 * cycle must be nilpotent at every vertex.
 */
struct FqRep {
  int n = 1;
  int q = 2;
  std::vector<int> dims;
  std::vector<fq::Mat> arrows;

  long total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0L); }
};

/// One echelonized basis matrix per vertex, spanning an arrow-invariant
/// tuple of subspaces.
struct SubmoduleWitness {
  std::vector<fq::Mat> bases;
  std::vector<std::vector<int>> pivots;

  std::vector<int> sub_dims() const {
    std::vector<int> d;
    for (auto& b : bases) d.push_back(b.rows);
    return d;
  }
};

/// Block normal form of the module with the given indecomposable summands:
/// each part l in component i contributes a chain of l basis vectors through
/// vertices i+l-1 -> ... -> i with identity arrow actions along the chain.
inline FqRep rep_from_multipartition(const MultiPartition& mp, int q) {
  detail::check_prime(q);
  if (total_dim(mp) > fq_config().submodule_dim_bound)
    throw BoundError("rep_from_multipartition: total dimension exceeds the configured bound");
  int n = mp.rank();
  FqRep R;
  R.n = n;
  R.q = q;
  DimVec dv = dim_vector(mp);
  R.dims.assign(dv.begin(), dv.end());
  for (int t = 0; t < n; ++t) R.arrows.emplace_back(R.dims[t], R.dims[(t + 1) % n]);
  std::vector<int> used(n, 0);
  for (int i = 1; i <= n; ++i)
    for (int l : mp.comp(i).parts()) {
      // chain vector c_k lives at vertex index (i-1+k) mod n; the arrow sends
      // c_k to c_{k-1} and the socle vector c_0 to zero
      std::vector<int> slot(l);
      for (int k = 0; k < l; ++k) slot[k] = used[(i - 1 + k) % n]++;
      for (int k = 1; k < l; ++k) {
        int target = (i - 1 + k - 1) % n;
        R.arrows[target].at(slot[k - 1], slot[k]) = 1;
      }
    }
  return R;
}

namespace detail {

/// Ranks s[v][l] of the length-l path ending at vertex index v, for
/// l = 0..L; s[v][0] = dims[v].
inline std::vector<std::vector<int>> path_ranks(const FqRep& R, int L) {
  int n = R.n;
  std::vector<std::vector<int>> s(n, std::vector<int>(L + 1, 0));
  std::vector<fq::Mat> cur;
  for (int v = 0; v < n; ++v) {
    cur.push_back(fq::Mat::identity(R.dims[v]));
    s[v][0] = R.dims[v];
  }
  for (int l = 1; l <= L; ++l) {
    std::vector<fq::Mat> next;
    for (int v = 0; v < n; ++v) next.push_back(fq::mul(R.arrows[v], cur[(v + 1) % n], R.q));
    cur = std::move(next);
    for (int v = 0; v < n; ++v) s[v][l] = fq::rank(cur[v], R.q);
  }
  return s;
}

}  // namespace detail

/**
 * Recover the multipartition from the ranks of all path compositions.  The
 * rank of the length-l path ending at vertex i receives a known contribution
 * from each summand type, giving a system that is triangular when solved from
 * the longest chains down.
 */
inline MultiPartition iso_type(const FqRep& R) {
  int n = R.n;
  int L = static_cast<int>(R.total_dim());
  std::vector<std::vector<int>> res = detail::path_ranks(R, L);
  for (int v = 0; v < n; ++v)
    if (res[v][L] != 0)
      throw std::domain_error("iso_type: representation is not nilpotent");
  std::vector<std::vector<int>> parts(n);
  for (int m = L; m >= 1; --m)
    for (int j = 0; j < n; ++j) {
      int mult = res[j][m - 1];
      if (mult < 0) throw InternalCheckError("iso_type: negative multiplicity");
      if (mult == 0) continue;
      for (int c = 0; c < mult; ++c) parts[j].push_back(m);
      for (int v = 0; v < n; ++v)
        for (int l = 0; l < m; ++l) {
          int cnt = 0;
          for (int k = 0; k <= m - 1 - l; ++k)
            if ((j + k) % n == v) ++cnt;
          res[v][l] -= mult * cnt;
        }
    }
  for (int v = 0; v < n; ++v)
    for (int l = 0; l <= L; ++l)
      if (res[v][l] != 0)
        throw InternalCheckError("iso_type: rank data does not resolve into chains");
  std::vector<Partition> comps;
  for (int j = 0; j < n; ++j) comps.push_back(Partition(std::move(parts[j])));
  return MultiPartition(std::move(comps));
}

/// Direct sum, in block form.
inline FqRep direct_sum(const FqRep& A, const FqRep& B) {
  if (A.n != B.n || A.q != B.q)
    throw std::invalid_argument("direct_sum: incompatible representations");
  FqRep C;
  C.n = A.n;
  C.q = A.q;
  for (int v = 0; v < A.n; ++v) C.dims.push_back(A.dims[v] + B.dims[v]);
  for (int t = 0; t < A.n; ++t) {
    int s = (t + 1) % A.n;
    fq::Mat M(C.dims[t], C.dims[s]);
    for (int i = 0; i < A.dims[t]; ++i)
      for (int j = 0; j < A.dims[s]; ++j) M.at(i, j) = A.arrows[t].at(i, j);
    for (int i = 0; i < B.dims[t]; ++i)
      for (int j = 0; j < B.dims[s]; ++j)
        M.at(A.dims[t] + i, A.dims[s] + j) = B.arrows[t].at(i, j);
    C.arrows.push_back(std::move(M));
  }
  return C;
}

namespace detail {

/// All e-dimensional subspaces of F_q^d as reduced-echelon basis matrices,
/// cached per (d, e, q).
inline const std::vector<fq::Mat>& subspace_catalog(int d, int e, int q) {
  static std::map<std::tuple<int, int, int>, std::vector<fq::Mat>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(d, e, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<fq::Mat> out;
  std::vector<int> pivots(e);
  std::function<void(int, int)> choose = [&](int idx, int from) {
    if (idx == e) {
      // free entries: (r, c) with c > pivots[r] and c not itself a pivot
      std::vector<std::pair<int, int>> free_cells;
      std::vector<char> is_pivot(d, 0);
      for (int c : pivots) is_pivot[c] = 1;
      for (int r = 0; r < e; ++r)
        for (int c = pivots[r] + 1; c < d; ++c)
          if (!is_pivot[c]) free_cells.push_back({r, c});
      std::vector<int> fill(free_cells.size(), 0);
      while (true) {
        fq::Mat M(e, d);
        for (int r = 0; r < e; ++r) M.at(r, pivots[r]) = 1;
        for (size_t k = 0; k < free_cells.size(); ++k)
          M.at(free_cells[k].first, free_cells[k].second) = fill[k];
        out.push_back(std::move(M));
        size_t k = 0;
        while (k < fill.size() && fill[k] == q - 1) fill[k++] = 0;
        if (k == fill.size()) break;
        ++fill[k];
      }
      return;
    }
    for (int c = from; c <= d - (e - idx); ++c) {
      pivots[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  if (e >= 0 && e <= d) choose(0, 0);
  return cache.emplace(key, std::move(out)).first->second;
}

/// Does the arrow image of every basis row of src land inside the echelon
/// span (basis, pivots)?
inline bool maps_into(const fq::Mat& arrow, const fq::Mat& src, const fq::Mat& basis,
                      const std::vector<int>& pivots, int q) {
  for (int r = 0; r < src.rows; ++r) {
    std::vector<int> y(arrow.rows, 0);
    for (int c = 0; c < arrow.cols; ++c) {
      int v = src.at(r, c);
      if (v == 0) continue;
      for (int i = 0; i < arrow.rows; ++i) y[i] = (y[i] + v * arrow.at(i, c)) % q;
    }
    fq::reduce_against(y, basis, pivots, q);
    if (!fq::is_zero_vec(y)) return false;
  }
  return true;
}

}  // namespace detail

/**
 * All arrow-invariant tuples of subspaces with the prescribed per-vertex
 * dimensions.  Subspaces are picked vertex by vertex in cyclic order so that
 * each arrow condition is checked as soon as both endpoints are fixed,
 * pruning the search; the wrap-around arrow is checked last.
 */
inline std::vector<SubmoduleWitness> enumerate_submodules(const FqRep& X,
                                                          const std::vector<int>& sub_dims) {
  int n = X.n;
  if (static_cast<int>(sub_dims.size()) != n)
    throw std::invalid_argument("enumerate_submodules: dimension vector length mismatch");
  for (int v = 0; v < n; ++v)
    if (sub_dims[v] < 0 || sub_dims[v] > X.dims[v]) return {};
  std::vector<SubmoduleWitness> out;
  SubmoduleWitness w;
  w.bases.resize(n);
  w.pivots.resize(n);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      // wrap-around arrow n -> n-1 in 0-based indices: arrows[n-1] maps
      // vertex index 0 into vertex index n-1
      if (n == 1 || detail::maps_into(X.arrows[n - 1], w.bases[0], w.bases[n - 1],
                                      w.pivots[n - 1], X.q))
        out.push_back(w);
      return;
    }
    for (const fq::Mat& B : detail::subspace_catalog(X.dims[v], sub_dims[v], X.q)) {
      fq::Mat copy = B;
      std::vector<int> piv;
      for (int r = 0; r < copy.rows; ++r)
        for (int c = 0; c < copy.cols; ++c)
          if (copy.at(r, c) == 1) {
            bool lead = true;
            for (int cc = 0; cc < c; ++cc)
              if (copy.at(r, cc) != 0) lead = false;
            if (lead && static_cast<int>(piv.size()) == r) piv.push_back(c);
          }
      w.bases[v] = std::move(copy);
      w.pivots[v] = std::move(piv);
      bool ok = true;
      if (v >= 1)
        ok = detail::maps_into(X.arrows[v - 1], w.bases[v], w.bases[v - 1], w.pivots[v - 1],
                               X.q);
      if (n == 1)
        ok = detail::maps_into(X.arrows[0], w.bases[0], w.bases[0], w.pivots[0], X.q);
      if (ok) rec(v + 1);
    }
  };
  rec(0);
  return out;
}

/// The representation carried by an invariant subspace tuple, in the basis
/// recorded by the witness.
inline FqRep submodule_rep(const FqRep& X, const SubmoduleWitness& W) {
  FqRep S;
  S.n = X.n;
  S.q = X.q;
  for (auto& b : W.bases) S.dims.push_back(b.rows);
  for (int t = 0; t < X.n; ++t) {
    int src = (t + 1) % X.n;
    fq::Mat M(S.dims[t], S.dims[src]);
    for (int r = 0; r < W.bases[src].rows; ++r) {
      std::vector<int> y(X.dims[t], 0);
      for (int c = 0; c < X.dims[src]; ++c) {
        int v = W.bases[src].at(r, c);
        if (v == 0) continue;
        for (int i = 0; i < X.dims[t]; ++i)
          y[i] = (y[i] + v * X.arrows[t].at(i, c)) % X.q;
      }
      // coordinates against the echelon basis of the target subspace
      for (size_t rr = 0; rr < W.pivots[t].size(); ++rr) {
        int f = y[W.pivots[t][rr]];
        M.at(static_cast<int>(rr), r) = f;
        if (f == 0) continue;
        for (int j = 0; j < X.dims[t]; ++j)
          y[j] = ((y[j] - f * W.bases[t].at(static_cast<int>(rr), j)) % X.q + X.q) % X.q;
      }
      if (!fq::is_zero_vec(y))
        throw InternalCheckError("submodule_rep: witness is not arrow-invariant");
    }
    S.arrows.push_back(std::move(M));
  }
  return S;
}

/// The quotient representation, in the basis of standard vectors at the
/// non-pivot coordinates of each vertex.
inline FqRep quotient_rep(const FqRep& X, const SubmoduleWitness& W) {
  FqRep Q;
  Q.n = X.n;
  Q.q = X.q;
  std::vector<std::vector<int>> compl_cols(X.n);
  for (int v = 0; v < X.n; ++v) {
    std::vector<char> is_pivot(X.dims[v], 0);
    for (int c : W.pivots[v]) is_pivot[c] = 1;
    for (int c = 0; c < X.dims[v]; ++c)
      if (!is_pivot[c]) compl_cols[v].push_back(c);
    Q.dims.push_back(static_cast<int>(compl_cols[v].size()));
  }
  for (int t = 0; t < X.n; ++t) {
    int src = (t + 1) % X.n;
    fq::Mat M(Q.dims[t], Q.dims[src]);
    for (size_t jc = 0; jc < compl_cols[src].size(); ++jc) {
      std::vector<int> y(X.dims[t], 0);
      for (int i = 0; i < X.dims[t]; ++i) y[i] = X.arrows[t].at(i, compl_cols[src][jc]);
      fq::reduce_against(y, W.bases[t], W.pivots[t], X.q);
      for (size_t ic = 0; ic < compl_cols[t].size(); ++ic)
        M.at(static_cast<int>(ic), static_cast<int>(jc)) = y[compl_cols[t][ic]];
    }
    Q.arrows.push_back(std::move(M));
  }
  return Q;
}

/**
 * The number of submodules of the block-form module of type xi that have
 * isomorphism type mu with quotient of type lam.  Mismatched dimension
 * vectors give zero.
 */
inline long long count_hall_number(const MultiPartition& lam, const MultiPartition& mu,
                                   const MultiPartition& xi, int q) {
  if (lam.rank() != mu.rank() || lam.rank() != xi.rank())
    throw std::domain_error("count_hall_number: rank mismatch");
  detail::check_prime(q);
  DimVec dl = dim_vector(lam), dm = dim_vector(mu), dx = dim_vector(xi);
  for (int v = 0; v < xi.rank(); ++v)
    if (dl[v] + dm[v] != dx[v]) return 0;
  if (total_dim(xi) > fq_config().submodule_dim_bound)
    throw BoundError("count_hall_number: total dimension exceeds the configured bound");
  FqRep X = rep_from_multipartition(xi, q);
  std::vector<int> sub_dims(dm.begin(), dm.end());
  long long count = 0;
  for (const SubmoduleWitness& W : enumerate_submodules(X, sub_dims))
    if (iso_type(submodule_rep(X, W)) == mu && iso_type(quotient_rep(X, W)) == lam) ++count;
  return count;
}

/// dim Hom(M, N) over F_q, by solving the intertwining system
/// phi_t A^M_t = A^N_t phi_{t+1} for vertex-wise matrices phi.
inline int hom_space_dim(const FqRep& M, const FqRep& N) {
  if (M.n != N.n || M.q != N.q)
    throw std::invalid_argument("hom_space_dim: incompatible representations");
  int n = M.n, q = M.q;
  std::vector<int> offset(n, 0);
  int unknowns = 0;
  for (int v = 0; v < n; ++v) {
    offset[v] = unknowns;
    unknowns += M.dims[v] * N.dims[v];
  }
  int equations = 0;
  for (int t = 0; t < n; ++t) equations += N.dims[t] * M.dims[(t + 1) % n];
  fq::Mat sys(equations, unknowns);
  int row = 0;
  for (int t = 0; t < n; ++t) {
    int s = (t + 1) % n;
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j) {
        // (phi_t A^M_t - A^N_t phi_s)_{ij} = 0
        for (int k = 0; k < M.dims[t]; ++k)
          sys.at(row, offset[t] + i * M.dims[t] + k) =
              (sys.at(row, offset[t] + i * M.dims[t] + k) + M.arrows[t].at(k, j)) % q;
        for (int k = 0; k < N.dims[s]; ++k)
          sys.at(row, offset[s] + k * M.dims[s] + j) =
              ((sys.at(row, offset[s] + k * M.dims[s] + j) - N.arrows[t].at(i, k)) % q + q) %
              q;
        ++row;
      }
  }
  return unknowns - fq::rank(std::move(sys), q);
}

namespace detail {

/// Basis of the homomorphism space as per-vertex matrix tuples.
inline std::vector<std::vector<fq::Mat>> hom_space_basis(const FqRep& M, const FqRep& N) {
  int n = M.n, q = M.q;
  std::vector<int> offset(n, 0);
  int unknowns = 0;
  for (int v = 0; v < n; ++v) {
    offset[v] = unknowns;
    unknowns += M.dims[v] * N.dims[v];
  }
  int equations = 0;
  for (int t = 0; t < n; ++t) equations += N.dims[t] * M.dims[(t + 1) % n];
  fq::Mat sys(equations, unknowns);
  int row = 0;
  for (int t = 0; t < n; ++t) {
    int s = (t + 1) % n;
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j) {
        for (int k = 0; k < M.dims[t]; ++k)
          sys.at(row, offset[t] + i * M.dims[t] + k) =
              (sys.at(row, offset[t] + i * M.dims[t] + k) + M.arrows[t].at(k, j)) % q;
        for (int k = 0; k < N.dims[s]; ++k)
          sys.at(row, offset[s] + k * M.dims[s] + j) =
              ((sys.at(row, offset[s] + k * M.dims[s] + j) - N.arrows[t].at(i, k)) % q + q) %
              q;
        ++row;
      }
  }
  fq::Mat null = fq::nullspace(std::move(sys), q);
  std::vector<std::vector<fq::Mat>> basis;
  for (int b = 0; b < null.rows; ++b) {
    std::vector<fq::Mat> phi;
    for (int v = 0; v < n; ++v) {
      fq::Mat P(N.dims[v], M.dims[v]);
      for (int i = 0; i < N.dims[v]; ++i)
        for (int k = 0; k < M.dims[v]; ++k) P.at(i, k) = null.at(b, offset[v] + i * M.dims[v] + k);
      phi.push_back(std::move(P));
    }
    basis.push_back(std::move(phi));
  }
  return basis;
}

struct LatticeNode {
  SubmoduleWitness w;
  long total = 0;
  long long mu = 0;
  FqRep quotient;
};

/// Every submodule of R, with the Mobius function of the containment lattice
/// computed from the bottom element up.
inline std::vector<LatticeNode> submodule_lattice(const FqRep& R) {
  int n = R.n;
  std::vector<LatticeNode> nodes;
  std::vector<int> cur(n, 0);
  std::function<void(int)> spin = [&](int v) {
    if (v == n) {
      for (const SubmoduleWitness& W : enumerate_submodules(R, cur)) {
        LatticeNode nd;
        nd.w = W;
        nd.total = std::accumulate(cur.begin(), cur.end(), 0L);
        nd.quotient = quotient_rep(R, W);
        nodes.push_back(std::move(nd));
        if (nodes.size() > 200000)
          throw BoundError("submodule lattice exceeds the enumeration budget");
      }
      return;
    }
    for (cur[v] = 0; cur[v] <= R.dims[v]; ++cur[v]) spin(v + 1);
    cur[v] = 0;
  };
  spin(0);
  std::sort(nodes.begin(), nodes.end(),
            [](const LatticeNode& a, const LatticeNode& b) { return a.total < b.total; });
  auto contains = [&](const LatticeNode& big, const LatticeNode& small) {
    for (int v = 0; v < n; ++v) {
      if (small.w.bases[v].rows > big.w.bases[v].rows) return false;
      for (int r = 0; r < small.w.bases[v].rows; ++r) {
        std::vector<int> y(small.w.bases[v].cols);
        for (int c = 0; c < small.w.bases[v].cols; ++c) y[c] = small.w.bases[v].at(r, c);
        fq::reduce_against(y, big.w.bases[v], big.w.pivots[v], R.q);
        if (!fq::is_zero_vec(y)) return false;
      }
    }
    return true;
  };
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].total == 0) {
      nodes[i].mu = 1;
      continue;
    }
    long long acc = 0;
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (nodes[j].total >= nodes[i].total) break;
      if (contains(nodes[i], nodes[j])) acc += nodes[j].mu;
    }
    nodes[i].mu = -acc;
  }
  return nodes;
}

}  // namespace detail

/**
 * The number of injective homomorphisms N -> X, by inclusion-exclusion over
 * the kernels: homs with kernel containing U biject with Hom(N/U, X), and
 * Mobius inversion over the submodule lattice of N isolates kernel zero.
 */
inline Int count_injective_homs(const FqRep& N, const FqRep& X) {
  if (N.n != X.n || N.q != X.q)
    throw std::invalid_argument("count_injective_homs: incompatible representations");
  Int total = 0;
  for (const detail::LatticeNode& nd : detail::submodule_lattice(N)) {
    if (nd.mu == 0) continue;
    total += Int(nd.mu) * int_pow(Int(N.q), hom_space_dim(nd.quotient, X));
  }
  return total;
}

/**
 * |Aut| of the block-form module: the invertible arrow-commuting vertex-wise
 * matrices.  Small endomorphism spaces are enumerated in full; larger ones
 * fall back to the injective-homomorphism count, which agrees because an
 * injective endomorphism of a finite module is invertible.
 */
inline Int count_automorphisms(const MultiPartition& mp, int q) {
  detail::check_prime(q);
  if (total_dim(mp) > fq_config().automorphism_dim_bound)
    throw BoundError("count_automorphisms: total dimension exceeds the configured bound");
  FqRep R = rep_from_multipartition(mp, q);
  int h = hom_space_dim(R, R);
  double cost = std::pow(static_cast<double>(q), h);
  if (cost <= (1 << 18)) {
    std::vector<std::vector<fq::Mat>> basis = detail::hom_space_basis(R, R);
    std::vector<int> digit(basis.size(), 0);
    std::vector<fq::Mat> T;
    for (int v = 0; v < R.n; ++v) T.push_back(fq::Mat(R.dims[v], R.dims[v]));
    Int count = 0;
    while (true) {
      bool inv = true;
      for (int v = 0; v < R.n && inv; ++v)
        if (fq::rank(T[v], q) != R.dims[v]) inv = false;
      if (inv) ++count;
      size_t k = 0;
      while (k < digit.size() && digit[k] == q - 1) {
        // digit k rolls over: subtract its q-1 accumulated copies
        for (int v = 0; v < R.n; ++v)
          for (size_t c = 0; c < T[v].a.size(); ++c)
            T[v].a[c] = ((T[v].a[c] - (q - 1) * basis[k][v].a[c]) % q + q) % q;
        digit[k++] = 0;
      }
      if (k == digit.size()) break;
      ++digit[k];
      for (int v = 0; v < R.n; ++v)
        for (size_t c = 0; c < T[v].a.size(); ++c)
          T[v].a[c] = (T[v].a[c] + basis[k][v].a[c]) % q;
    }
    return count;
  }
  return count_injective_homs(R, R);
}

/// dim Ext^1(M, N): the cocycle space is the full space of per-arrow maps
/// psi_t : M(t+1) -> N(t) (the quiver algebra is hereditary), and the
/// coboundaries are the image of the vertex-wise maps.
inline int ext_space_dim(const FqRep& M, const FqRep& N) {
  if (M.n != N.n || M.q != N.q)
    throw std::invalid_argument("ext_space_dim: incompatible representations");
  int n = M.n, q = M.q;
  int zdim = 0;
  for (int t = 0; t < n; ++t) zdim += M.dims[(t + 1) % n] * N.dims[t];
  int vdim = 0;
  for (int v = 0; v < n; ++v) vdim += M.dims[v] * N.dims[v];
  // delta(phi)_t = N(A_t) phi_{t+1} - phi_t M(A_t); columns index phi, rows
  // index the cocycle coordinates
  std::vector<int> roff(n, 0), coff(n, 0);
  int r = 0, c = 0;
  for (int t = 0; t < n; ++t) {
    roff[t] = r;
    r += N.dims[t] * M.dims[(t + 1) % n];
  }
  for (int v = 0; v < n; ++v) {
    coff[v] = c;
    c += N.dims[v] * M.dims[v];
  }
  fq::Mat delta(zdim, vdim);
  for (int t = 0; t < n; ++t) {
    int s = (t + 1) % n;
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j) {
        int row = roff[t] + i * M.dims[s] + j;
        for (int k = 0; k < N.dims[s]; ++k)
          delta.at(row, coff[s] + k * M.dims[s] + j) =
              (delta.at(row, coff[s] + k * M.dims[s] + j) + N.arrows[t].at(i, k)) % q;
        for (int k = 0; k < M.dims[t]; ++k)
          delta.at(row, coff[t] + i * M.dims[t] + k) =
              ((delta.at(row, coff[t] + i * M.dims[t] + k) - M.arrows[t].at(k, j)) % q + q) % q;
      }
  }
  return zdim - fq::rank(std::move(delta), q);
}

/// The middle term of the extension of M by N with cocycle psi, in block
/// form with the N coordinates first.
inline FqRep extension_rep(const FqRep& M, const FqRep& N, const std::vector<fq::Mat>& psi) {
  FqRep X;
  X.n = M.n;
  X.q = M.q;
  for (int v = 0; v < M.n; ++v) X.dims.push_back(N.dims[v] + M.dims[v]);
  for (int t = 0; t < M.n; ++t) {
    int s = (t + 1) % M.n;
    fq::Mat A(X.dims[t], X.dims[s]);
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < N.dims[s]; ++j) A.at(i, j) = N.arrows[t].at(i, j);
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j) A.at(i, N.dims[s] + j) = psi[t].at(i, j);
    for (int i = 0; i < M.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j)
        A.at(N.dims[t] + i, N.dims[s] + j) = M.arrows[t].at(i, j);
    X.arrows.push_back(std::move(A));
  }
  return X;
}

/**
 * |Ext^1(M_lam, M_mu)_xi|: the number of extension classes whose middle term
 * has type xi, counted by enumerating all cocycles and dividing out the
 * coboundaries.
 */
inline Int count_extension_classes(const MultiPartition& lam, const MultiPartition& mu,
                                   const MultiPartition& xi, int q) {
  if (lam.rank() != mu.rank() || lam.rank() != xi.rank())
    throw std::domain_error("count_extension_classes: rank mismatch");
  detail::check_prime(q);
  DimVec dl = dim_vector(lam), dm = dim_vector(mu), dx = dim_vector(xi);
  for (int v = 0; v < xi.rank(); ++v)
    if (dl[v] + dm[v] != dx[v]) return 0;
  FqRep M = rep_from_multipartition(lam, q);
  FqRep N = rep_from_multipartition(mu, q);
  int n = M.n;
  int zdim = 0;
  for (int t = 0; t < n; ++t) zdim += M.dims[(t + 1) % n] * N.dims[t];
  double cost = std::pow(static_cast<double>(q), zdim);
  if (cost > (1 << 22))
    throw BoundError("count_extension_classes: cocycle space exceeds the enumeration budget");
  std::vector<fq::Mat> psi;
  for (int t = 0; t < n; ++t) psi.push_back(fq::Mat(N.dims[t], M.dims[(t + 1) % n]));
  // odometer over all cocycles
  std::vector<std::pair<int, int>> cells;  // (arrow t, flat index)
  for (int t = 0; t < n; ++t)
    for (size_t i = 0; i < psi[t].a.size(); ++i) cells.push_back({t, static_cast<int>(i)});
  Int good = 0;
  std::vector<int> fill(cells.size(), 0);
  while (true) {
    if (iso_type(extension_rep(M, N, psi)) == xi) ++good;
    size_t k = 0;
    while (k < fill.size() && fill[k] == q - 1) {
      fill[k] = 0;
      psi[cells[k].first].a[cells[k].second] = 0;
      ++k;
    }
    if (k == fill.size()) break;
    ++fill[k];
    psi[cells[k].first].a[cells[k].second] = fill[k];
  }
  Int coboundaries = int_pow(Int(q), zdim - ext_space_dim(M, N));
  if (good % coboundaries != 0)
    throw InternalCheckError("count_extension_classes: census not divisible by coboundaries");
  return good / coboundaries;
}

// ---------------------------------------------------------------------------
// Interpolation of counting polynomials, with a persistent cache
// ---------------------------------------------------------------------------

namespace detail {

inline std::map<std::string, Poly>& hall_poly_cache() {
  static std::map<std::string, Poly> cache;
  return cache;
}

inline std::mutex& hall_poly_cache_mutex() {
  static std::mutex mtx;
  return mtx;
}

inline std::string hall_cache_key(const MultiPartition& lam, const MultiPartition& mu,
                                  const MultiPartition& xi) {
  return std::to_string(xi.rank()) + "|" + lam.str() + "|" + mu.str() + "|" + xi.str();
}

inline const std::vector<int>& small_primes() {
  static const std::vector<int> p = {2, 3, 5, 7, 11, 13};
  return p;
}

}  // namespace detail

/**
 * The counting polynomial F^xi_{lam,mu} for the cyclic quiver, found by
 * Lagrange interpolation.  The degree bound comes from counting maps:
 * F * |Aut mu| is the number of injections mu -> xi with cokernel lam, and
 * F * |Aut lam| the number of surjections xi -> lam with kernel mu, so
 *   deg F <= min(hom(mu,xi) - hom(mu,mu), hom(xi,lam) - hom(lam,lam)).
 * D+1 point counts then determine the polynomial and one further prime
 * serves as a held-out check.  Triples where all three modules are
 * semisimple at one vertex are a plain Grassmannian count and are answered
 * in closed form, since their degree can outrun the available primes.
 */
inline Poly interpolate_hall_polynomial_n(const MultiPartition& lam, const MultiPartition& mu,
                                          const MultiPartition& xi) {
  if (lam.rank() != mu.rank() || lam.rank() != xi.rank())
    throw std::domain_error("interpolate_hall_polynomial_n: rank mismatch");
  DimVec dl = dim_vector(lam), dm = dim_vector(mu), dx = dim_vector(xi);
  for (int v = 0; v < xi.rank(); ++v)
    if (dl[v] + dm[v] != dx[v]) return Poly::zero();
  const std::string key = detail::hall_cache_key(lam, mu, xi);
  {
    std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
    auto it = detail::hall_poly_cache().find(key);
    if (it != detail::hall_poly_cache().end()) return it->second;
  }
  // structural zero: path ranks of a submodule or quotient never exceed
  // those of the ambient module, and the ranks of a block normal form do
  // not depend on the field
  {
    int L = static_cast<int>(total_dim(xi));
    std::vector<std::vector<int>> sx =
        detail::path_ranks(rep_from_multipartition(xi, 2), L);
    std::vector<std::vector<int>> sl =
        detail::path_ranks(rep_from_multipartition(lam, 2), L);
    std::vector<std::vector<int>> sm =
        detail::path_ranks(rep_from_multipartition(mu, 2), L);
    for (int v = 0; v < xi.rank(); ++v)
      for (int l = 0; l <= L; ++l)
        if (sl[v][l] > sx[v][l] || sm[v][l] > sx[v][l]) {
          std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
          detail::hall_poly_cache().emplace(key, Poly::zero());
          return Poly::zero();
        }
  }
  // one-vertex semisimple triples: submodules of k^{a+b} are subspaces, so
  // the count is the Gaussian binomial [a+b, b]
  {
    auto ones_at_one_vertex = [](const MultiPartition& mp, int& vertex) {
      vertex = -1;
      for (int v = 1; v <= mp.rank(); ++v) {
        const Partition& p = mp.comp(v);
        if (p.empty()) continue;
        for (int part : p.parts())
          if (part != 1) return false;
        if (vertex != -1) return false;
        vertex = v;
      }
      return true;
    };
    int vl = -1, vm = -1, vx = -1;
    if (ones_at_one_vertex(lam, vl) && ones_at_one_vertex(mu, vm) &&
        ones_at_one_vertex(xi, vx) && (vl == vx || vl == -1) && (vm == vx || vm == -1)) {
      int a = static_cast<int>(total_dim(lam)), b = static_cast<int>(total_dim(mu));
      Poly F = gauss_binomial(a + b, b);
      std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
      detail::hall_poly_cache().emplace(key, F);
      return F;
    }
  }
  long D = std::min(hom_dim_n(mu, xi) - hom_dim_n(mu, mu),
                    hom_dim_n(xi, lam) - hom_dim_n(lam, lam));
  if (D < 0) D = 0;
  std::vector<int> primes;
  for (int p : detail::small_primes())
    if (p <= fq_config().field_bound) primes.push_back(p);
  if (D + 2 > static_cast<long>(primes.size()))
    throw BoundError(
        "interpolate_hall_polynomial_n: needed primes exceed the field bound");
  std::vector<long long> counts;
  for (long j = 0; j <= D; ++j)
    counts.push_back(count_hall_number(lam, mu, xi, primes[j]));
  // Lagrange interpolation over the rationals
  Poly F = Poly::zero();
  for (long j = 0; j <= D; ++j) {
    if (counts[j] == 0) continue;
    Poly basis = Poly::one();
    Rat denom(1);
    for (long k = 0; k <= D; ++k) {
      if (k == j) continue;
      basis *= Poly::var() - Poly(Rat(primes[k]));
      denom *= Rat(primes[j] - primes[k]);
    }
    F += basis * (Rat(counts[j]) / denom);
  }
  if (!F.has_integer_coeffs())
    throw InternalCheckError(
        "interpolate_hall_polynomial_n: interpolated coefficients are not integers");
  long long holdout = count_hall_number(lam, mu, xi, primes[D + 1]);
  if (F.eval(Rat(primes[D + 1])) != Rat(holdout))
    throw InternalCheckError(
        "interpolate_hall_polynomial_n: held-out prime disagrees with the interpolant");
  std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
  detail::hall_poly_cache().emplace(key, F);
  return F;
}

inline size_t hall_cache_size() {
  std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
  return detail::hall_poly_cache().size();
}

inline void hall_cache_clear() {
  std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
  detail::hall_poly_cache().clear();
}

/// Serialize every cached polynomial to a JSON file.
inline void save_hall_cache(const std::string& path) {
  nlohmann::json entries = nlohmann::json::array();
  {
    std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
    for (auto& [key, F] : detail::hall_poly_cache()) {
      nlohmann::json terms = nlohmann::json::array();
      for (auto& [e, c] : F.terms()) terms.push_back({e, rat_str(c)});
      entries.push_back({{"key", key}, {"terms", terms}});
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_hall_cache: cannot open " + path);
  out << nlohmann::json{{"hall_polynomials", entries}}.dump(1) << "\n";
}

/// Load a JSON cache file; returns the number of entries added.
inline size_t load_hall_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_hall_cache: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  size_t added = 0;
  std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
  for (auto& entry : doc.at("hall_polynomials")) {
    Poly F = Poly::zero();
    for (auto& term : entry.at("terms"))
      F += Poly::monomial(term.at(0).get<int>(), rat_parse(term.at(1).get<std::string>()));
    if (detail::hall_poly_cache().emplace(entry.at("key").get<std::string>(), F).second)
      ++added;
  }
  return added;
}

/// Interpolate every triple with the given total dimension of xi or less,
/// skipping triples whose prime demand exceeds the field bound.  Returns the
/// number of polynomials computed (cache hits not included).
inline size_t warm_hall_cache(int n, int max_total_dim) {
  size_t computed = 0;
  for (int d = 0; d <= max_total_dim; ++d)
    for (const MultiPartition& xi : enumerate_multipartitions_total(n, d)) {
      DimVec dx = dim_vector(xi);
      // all splits of the dimension vector
      std::vector<DimVec> splits;
      DimVec cur(n, 0);
      std::function<void(int)> spin = [&](int v) {
        if (v == n) {
          splits.push_back(cur);
          return;
        }
        for (cur[v] = 0; cur[v] <= dx[v]; ++cur[v]) spin(v + 1);
        cur[v] = 0;
      };
      spin(0);
      for (const DimVec& a : splits) {
        DimVec b(n);
        for (int v = 0; v < n; ++v) b[v] = dx[v] - a[v];
        for (const MultiPartition& lam : enumerate_multipartitions(n, a))
          for (const MultiPartition& mu : enumerate_multipartitions(n, b)) {
            const std::string key = detail::hall_cache_key(lam, mu, xi);
            {
              std::lock_guard<std::mutex> lock(detail::hall_poly_cache_mutex());
              if (detail::hall_poly_cache().count(key)) continue;
            }
            try {
              interpolate_hall_polynomial_n(lam, mu, xi);
              ++computed;
            } catch (const BoundError&) {
              // prime demand or dimension outside the configured budget
            }
          }
      }
    }
  return computed;
}

}  // namespace hallsym
