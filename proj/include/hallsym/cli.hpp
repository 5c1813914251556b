#pragma once
/**
 * @file cli.hpp
 * @brief The command-line surface.  Each verb validates its inputs, runs one
 *        library operation, and emits deterministic output: JSON (default) or
 *        TSV for elements, plain exact strings for scalars.  Exit codes:
 *        0 success, 1 verification failure, 2 usage error, 3 resource bound.
 */

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hallsym/fq.hpp"
#include "hallsym/hall1.hpp"
#include "hallsym/halln.hpp"
#include "hallsym/json_io.hpp"
#include "hallsym/symfunc.hpp"
#include "hallsym/verify.hpp"

namespace hallsym {
namespace cli {

namespace detail {

struct Options {
  int n = 1;
  int deg_cap = 12;
  int field_bound = 13;
  std::string cache_dir;
  std::string format = "json";
};

/// The environment variable overrides the flag.
inline std::string resolve_cache_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("HALLSYM_CACHE_DIR")) return env;
  return flag_value;
}

inline std::string cache_file(const std::string& dir) {
  return (std::filesystem::path(dir) / "hall-cache.json").string();
}

inline Partition parse_partition(const std::string& s) { return Partition::parse(s); }

/// Parse a multipartition of the given rank; a plain partition string is the
/// rank-one case.
inline MultiPartition parse_multipartition(const std::string& s, int n) {
  MultiPartition mp = MultiPartition::parse(s);
  if (mp.rank() != n)
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " components separated by ';', got " + s);
  return mp;
}

inline void emit_symfunc(std::ostream& out, const SymFunc& f, const std::string& format) {
  if (format == "tsv") {
    for (auto& [lam, c] : f.terms())
      out << lam.display() << "\t" << c.str("t") << "\n";
    return;
  }
  out << symfunc_json(f).dump(1) << "\n";
}

inline void emit_hall1(std::ostream& out, const HallElement1& x, const std::string& coords,
                       const std::string& format) {
  if (format == "tsv") {
    std::map<Partition, RatFunc> cs =
        coords == "pbw" ? pbw_coordinates(x) : x.terms();
    for (auto& [lam, c] : cs) {
      if (c.is_zero()) continue;
      out << lam.display() << "\t" << c.str("q") << "\n";
    }
    return;
  }
  out << hall1_json(x, coords).dump(1) << "\n";
}

inline void emit_halln(std::ostream& out, const HallElementN& x, const std::string& coords,
                       const std::string& format) {
  if (format == "tsv") {
    if (coords == "pbw") {
      for (auto& [mp, c] : pbw_coordinates_n(x)) {
        if (c.is_zero()) continue;
        out << mp.str() << "\t" << c.str("v") << "\n";
      }
    } else {
      for (auto& [key, c] : x.terms())
        out << key.first.str() << "\t" << key.second.str() << "\t" << c.str("v") << "\n";
    }
    return;
  }
  out << halln_json(x, coords).dump(1) << "\n";
}

}  // namespace detail

/// Parse and run one invocation.  Streams are injected so the whole surface
/// is testable in-process.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options opt;

  CLI::App app{"exact computations in the symmetric functions and the Hall algebras of "
               "cyclic quivers"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_option("--n", opt.n, "quiver rank (number of vertices)")->check(CLI::Range(1, 64));
  app.add_option("--deg-cap", opt.deg_cap, "degree cap for symmetric-function conversions")
      ->check(CLI::Range(0, 64));
  app.add_option("--field-bound", opt.field_bound, "largest prime used by the counting oracle")
      ->check(CLI::Range(2, 13));
  app.add_option("--cache-dir", opt.cache_dir,
                 "directory for the interpolation cache (HALLSYM_CACHE_DIR overrides)");
  app.add_option("--format", opt.format, "output format for elements")
      ->check(CLI::IsMember({"json", "tsv"}));

  // ---- verb options ----
  std::string lam_s, mu_s, xi_s, from_s = "p", to_s, basis_s = "p", coords_s = "u";
  int q = 2, r = 1, warm_dim = 4;
  bool verify_all = false;
  std::vector<std::string> suite_names;

  CLI::App* sc_convert = app.add_subcommand("sym-convert", "rewrite a basis element");
  sc_convert->add_option("--from", from_s, "source basis (p,e,h,m,s,P,c,S)");
  sc_convert->add_option("--to", to_s, "target basis (p,e,h,m,s,P,c,S)")->required();
  sc_convert->add_option("--lam", lam_s, "indexing partition, comma-separated")->required();

  CLI::App* sc_pair = app.add_subcommand("sym-pair", "deformed inner product of two elements");
  sc_pair->add_option("--basis", basis_s, "basis of both inputs");
  sc_pair->add_option("--lam", lam_s, "first partition")->required();
  sc_pair->add_option("--mu", mu_s, "second partition")->required();

  CLI::App* sc_poly = app.add_subcommand("hall-poly", "generic structure polynomial");
  sc_poly->add_option("--lam", lam_s, "submodule type")->required();
  sc_poly->add_option("--mu", mu_s, "quotient type")->required();
  sc_poly->add_option("--xi", xi_s, "extension type")->required();

  CLI::App* sc_mult = app.add_subcommand("hall-mult", "product of two natural basis elements");
  sc_mult->add_option("--lam", lam_s, "left factor")->required();
  sc_mult->add_option("--mu", mu_s, "right factor")->required();

  CLI::App* sc_canon = app.add_subcommand("canon", "canonical basis element");
  sc_canon->add_option("--lam", lam_s, "indexing class")->required();
  sc_canon->add_option("--coords", coords_s, "coordinates of the output")
      ->check(CLI::IsMember({"u", "pbw"}));

  CLI::App* sc_dual = app.add_subcommand("dual-canon", "dual canonical basis element");
  sc_dual->add_option("--lam", lam_s, "indexing class")->required();
  sc_dual->add_option("--coords", coords_s, "coordinates of the output")
      ->check(CLI::IsMember({"u", "pbw"}));

  CLI::App* sc_centre = app.add_subcommand("centre", "central element of the given degree");
  sc_centre->add_option("--r", r, "degree multiple of the periodic vector")
      ->check(CLI::Range(0, 64));

  CLI::App* sc_conj = app.add_subcommand("conjecture",
                                         "report on the two centre identities for a "
                                         "periodic class");
  sc_conj->add_option("--lam", lam_s, "partition placed at every vertex")->required();

  CLI::App* sc_verify = app.add_subcommand("verify", "run named identity suites");
  sc_verify->add_option("suites", suite_names, "suite names (default: all)");
  sc_verify->add_flag("--all", verify_all, "run every suite");

  CLI::App* sc_count = app.add_subcommand("oracle-count", "brute-force census over one prime");
  sc_count->add_option("--lam", lam_s, "submodule type")->required();
  sc_count->add_option("--mu", mu_s, "quotient type")->required();
  sc_count->add_option("--xi", xi_s, "extension type")->required();
  sc_count->add_option("--q", q, "prime modulus")->required()->check(CLI::Range(2, 13));

  CLI::App* sc_warm = app.add_subcommand("cache-warm",
                                         "interpolate every triple up to a total dimension "
                                         "and persist the cache");
  sc_warm->add_option("--dim", warm_dim, "largest total dimension of the extension type")
      ->check(CLI::Range(0, 16));

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    set_degree_cap(opt.deg_cap);
    fq_config().field_bound = opt.field_bound;
    const std::string cache_dir = detail::resolve_cache_dir(opt.cache_dir);
    if (!cache_dir.empty()) {
      const std::string file = detail::cache_file(cache_dir);
      if (std::filesystem::exists(file)) load_hall_cache(file);
    }

    if (sc_convert->parsed()) {
      Basis from = basis_from_string(from_s), to = basis_from_string(to_s);
      Partition lam = detail::parse_partition(lam_s);
      if (lam.weight() > opt.deg_cap)
        throw BoundError("sym-convert: weight exceeds the degree cap");
      detail::emit_symfunc(out, convert(SymFunc::element(from, lam), to), opt.format);
      return 0;
    }
    if (sc_pair->parsed()) {
      Basis b = basis_from_string(basis_s);
      Partition lam = detail::parse_partition(lam_s), mu = detail::parse_partition(mu_s);
      if (lam.weight() > opt.deg_cap || mu.weight() > opt.deg_cap)
        throw BoundError("sym-pair: weight exceeds the degree cap");
      out << pairing_t(SymFunc::element(b, lam), SymFunc::element(b, mu)).str("t") << "\n";
      return 0;
    }
    if (sc_poly->parsed()) {
      if (opt.n == 1) {
        Poly F = hall_polynomial(detail::parse_partition(lam_s),
                                 detail::parse_partition(mu_s),
                                 detail::parse_partition(xi_s));
        out << F.str("T", /*ascending=*/false) << "\n";
      } else {
        Poly F = interpolate_hall_polynomial_n(
            detail::parse_multipartition(lam_s, opt.n),
            detail::parse_multipartition(mu_s, opt.n),
            detail::parse_multipartition(xi_s, opt.n));
        out << F.str("T", /*ascending=*/false) << "\n";
      }
      return 0;
    }
    if (sc_mult->parsed()) {
      if (opt.n == 1) {
        HallElement1 x = HallElement1::element(detail::parse_partition(lam_s)) *
                         HallElement1::element(detail::parse_partition(mu_s));
        detail::emit_hall1(out, x, "u", opt.format);
      } else {
        HallElementN x =
            multiply_n(HallElementN::element(detail::parse_multipartition(lam_s, opt.n)),
                       HallElementN::element(detail::parse_multipartition(mu_s, opt.n)));
        detail::emit_halln(out, x, "u", opt.format);
      }
      return 0;
    }
    if (sc_canon->parsed() || sc_dual->parsed()) {
      bool dual = sc_dual->parsed();
      if (opt.n == 1) {
        Partition lam = detail::parse_partition(lam_s);
        HallElement1 x = dual ? dual_canonical_basis(lam) : canonical_basis(lam);
        detail::emit_hall1(out, x, coords_s, opt.format);
      } else {
        MultiPartition lam = detail::parse_multipartition(lam_s, opt.n);
        HallElementN x = dual ? dual_canonical_basis_n(lam) : canonical_basis_n(lam);
        detail::emit_halln(out, x, coords_s, opt.format);
      }
      return 0;
    }
    if (sc_centre->parsed()) {
      detail::emit_halln(out, central_x(opt.n, r), "u", opt.format);
      return 0;
    }
    if (sc_conj->parsed()) {
      ConjectureReport rep = conjecture_report(detail::parse_partition(lam_s), opt.n);
      out << conjecture_json(rep).dump(1) << "\n";
      return 0;
    }
    if (sc_verify->parsed()) {
      std::vector<std::string> names = verify_all ? std::vector<std::string>{} : suite_names;
      for (const std::string& nm : names) {
        bool known = false;
        for (auto& [reg_name, fn] : verify_registry()) known = known || reg_name == nm;
        if (!known) {
          err << "unknown suite: " << nm << "\n";
          return 2;
        }
      }
      int failures = 0;
      for (const SuiteResult& res : run_verify_suites(names)) {
        if (res.ok) {
          out << res.name << ": ok\n";
        } else {
          out << res.name << ": FAIL — " << res.detail << "\n";
          ++failures;
        }
        err << res.name << " took " << res.seconds << "s\n";
      }
      if (failures) {
        out << failures << " suite(s) failed\n";
        return 1;
      }
      out << "all suites passed\n";
      return 0;
    }
    if (sc_count->parsed()) {
      long long c = count_hall_number(detail::parse_multipartition(lam_s, opt.n),
                                      detail::parse_multipartition(mu_s, opt.n),
                                      detail::parse_multipartition(xi_s, opt.n), q);
      out << c << "\n";
      return 0;
    }
    if (sc_warm->parsed()) {
      if (cache_dir.empty())
        throw std::invalid_argument(
            "cache-warm needs --cache-dir or HALLSYM_CACHE_DIR to persist its results");
      size_t before = hall_cache_size();
      size_t computed = warm_hall_cache(opt.n, warm_dim);
      std::filesystem::create_directories(cache_dir);
      const std::string file = detail::cache_file(cache_dir);
      save_hall_cache(file);
      out << "cache entries: " << before << " loaded, " << computed << " computed, "
          << hall_cache_size() << " total\n";
      out << "saved " << file << "\n";
      return 0;
    }
    out << app.help();
    return 2;
  } catch (const BoundError& e) {
    err << "resource bound: " << e.what() << "\n";
    return 3;
  } catch (const InternalCheckError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace hallsym
