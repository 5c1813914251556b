#pragma once
/**
 * @file json_io.hpp
 * @brief JSON encodings for coefficients, symmetric functions, and Hall
 *        algebra elements, together with the inverse parsers.  Every emitted
 *        document re-parses to an equal element, and emission is
 *        deterministic: object keys are sorted and term lists follow the
 *        canonical order of their indexing maps.
 */

#include <json.hpp>

#include <string>

#include "hallsym/hall1.hpp"
#include "hallsym/halln.hpp"
#include "hallsym/symfunc.hpp"

namespace hallsym {

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

/// A polynomial as a list of [exponent, rational-string] pairs in ascending
/// exponent order.
inline nlohmann::json poly_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [e, c] : p.terms()) terms.push_back({e, rat_str(c)});
  return terms;
}

inline Poly poly_from_json(const nlohmann::json& j) {
  Poly p = Poly::zero();
  for (auto& term : j)
    p += Poly::monomial(term.at(0).get<int>(), rat_parse(term.at(1).get<std::string>()));
  return p;
}

/// {"num": [...]} with a "den" entry only when the denominator is not 1.
inline nlohmann::json ratfunc_json(const RatFunc& f) {
  nlohmann::json out;
  out["num"] = poly_json(f.num());
  if (!f.is_poly()) out["den"] = poly_json(f.den());
  return out;
}

inline RatFunc ratfunc_from_json(const nlohmann::json& j) {
  Poly num = poly_from_json(j.at("num"));
  if (!j.contains("den")) return RatFunc(num);
  return RatFunc(num, poly_from_json(j.at("den")));
}

// ---------------------------------------------------------------------------
// Index types
// ---------------------------------------------------------------------------

inline nlohmann::json partition_json(const Partition& lam) {
  return nlohmann::json(lam.parts());
}

inline Partition partition_from_json(const nlohmann::json& j) {
  return Partition(j.get<std::vector<int>>());
}

inline nlohmann::json multipartition_json(const MultiPartition& mp) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& c : mp.comps()) out.push_back(partition_json(c));
  return out;
}

inline MultiPartition multipartition_from_json(const nlohmann::json& j) {
  std::vector<Partition> comps;
  for (auto& c : j) comps.push_back(partition_from_json(c));
  return MultiPartition(std::move(comps));
}

// ---------------------------------------------------------------------------
// Symmetric functions
// ---------------------------------------------------------------------------

/// {"basis": "s", "degree": 4, "terms": [{"part": [2,2], "coeff": {...}}]}
inline nlohmann::json symfunc_json(const SymFunc& f) {
  nlohmann::json out;
  out["basis"] = basis_label(f.basis());
  out["degree"] = f.degree();
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [lam, c] : f.terms())
    terms.push_back({{"part", partition_json(lam)}, {"coeff", ratfunc_json(c)}});
  out["terms"] = terms;
  return out;
}

inline SymFunc symfunc_from_json(const nlohmann::json& j) {
  SymFunc f = SymFunc::zero(basis_from_string(j.at("basis").get<std::string>()));
  for (auto& term : j.at("terms"))
    f.add_term(partition_from_json(term.at("part")), ratfunc_from_json(term.at("coeff")));
  return f;
}

// ---------------------------------------------------------------------------
// Rank-one Hall algebra elements
// ---------------------------------------------------------------------------

/// {"n": 1, "coords": "u", "terms": [{"part": [2], "coeff": {...}}]}.
/// With coords "pbw" the coefficients are taken against the rescaled family.
inline nlohmann::json hall1_json(const HallElement1& x, const std::string& coords = "u") {
  nlohmann::json out;
  out["n"] = 1;
  out["coords"] = coords;
  std::map<Partition, RatFunc> cs;
  if (coords == "u") {
    cs = x.terms();
  } else if (coords == "pbw") {
    cs = pbw_coordinates(x);
  } else {
    throw std::domain_error("hall1_json: unknown coordinate family " + coords);
  }
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [lam, c] : cs) {
    if (c.is_zero()) continue;
    terms.push_back({{"part", partition_json(lam)}, {"coeff", ratfunc_json(c)}});
  }
  out["terms"] = terms;
  return out;
}

inline HallElement1 hall1_from_json(const nlohmann::json& j) {
  const std::string coords = j.at("coords").get<std::string>();
  HallElement1 x;
  for (auto& term : j.at("terms")) {
    Partition lam = partition_from_json(term.at("part"));
    RatFunc c = ratfunc_from_json(term.at("coeff"));
    if (coords == "u") {
      x.add_term(lam, c);
    } else if (coords == "pbw") {
      x += pbw(lam) * c;
    } else {
      throw std::domain_error("hall1_from_json: unknown coordinate family " + coords);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Cyclic-quiver Hall algebra elements
// ---------------------------------------------------------------------------

/// {"n": 2, "coords": "u",
///  "terms": [{"mpart": [[1],[1]], "k": [0,0], "coeff": {...}}]}.
/// The "k" entry is the canonical representative of the k-class; coords
/// "pbw" drops it (the rescaled family carries no torus decoration).
inline nlohmann::json halln_json(const HallElementN& x, const std::string& coords = "u") {
  nlohmann::json out;
  out["n"] = x.rank();
  out["coords"] = coords;
  nlohmann::json terms = nlohmann::json::array();
  if (coords == "u") {
    for (auto& [key, c] : x.terms())
      terms.push_back({{"mpart", multipartition_json(key.first)},
                       {"k", key.second.rep()},
                       {"coeff", ratfunc_json(c)}});
  } else if (coords == "pbw") {
    for (auto& [mp, c] : pbw_coordinates_n(x)) {
      if (c.is_zero()) continue;
      terms.push_back({{"mpart", multipartition_json(mp)}, {"coeff", ratfunc_json(c)}});
    }
  } else {
    throw std::domain_error("halln_json: unknown coordinate family " + coords);
  }
  out["terms"] = terms;
  return out;
}

inline HallElementN halln_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  const std::string coords = j.at("coords").get<std::string>();
  HallElementN x(n);
  for (auto& term : j.at("terms")) {
    MultiPartition mp = multipartition_from_json(term.at("mpart"));
    RatFunc c = ratfunc_from_json(term.at("coeff"));
    if (coords == "u") {
      KClass k(term.at("k").get<DimVec>());
      x.add_term(mp, k, c);
    } else if (coords == "pbw") {
      x += pbw_n(mp) * c;
    } else {
      throw std::domain_error("halln_from_json: unknown coordinate family " + coords);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Conjecture reports
// ---------------------------------------------------------------------------

inline nlohmann::json conjecture_json(const ConjectureReport& r) {
  nlohmann::json out;
  out["lambda"] = partition_json(r.lambda);
  out["n"] = r.n;
  out["bound_exceeded"] = r.bound_exceeded;
  if (!r.note.empty()) out["note"] = r.note;
  if (r.bound_exceeded) return out;
  auto side = [](bool equal, const HallElementN& lhs, const HallElementN& rhs,
                 const HallElementN& diff) {
    nlohmann::json s;
    s["equal"] = equal;
    s["lhs"] = halln_json(lhs);
    s["rhs"] = halln_json(rhs);
    if (!equal) s["diff"] = halln_json(diff);
    return s;
  };
  out["dual_basis_side"] = side(r.dual_equal, r.dual_lhs, r.dual_rhs, r.dual_diff);
  out["projection_side"] = side(r.proj_equal, r.proj_lhs, r.proj_rhs, r.proj_diff);
  return out;
}

}  // namespace hallsym
