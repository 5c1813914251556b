// Tests for the exact scalar / polynomial / rational-function layer.

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "hallsym/laurent.hpp"
#include "hallsym/poly.hpp"
#include "hallsym/qseries.hpp"
#include "hallsym/ratfunc.hpp"
#include "hallsym/scalars.hpp"

using namespace hallsym;

namespace {

// Independent dense-vector polynomial model used as an oracle.
using Dense = std::vector<Rat>;

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly from_dense(const Dense& d) {
  Poly p;
  for (size_t i = 0; i < d.size(); ++i) p.add_term(static_cast<int>(i), d[i]);
  return p;
}

// Gaussian binomial via the Pascal recurrence [r a] = [r-1 a-1] + t^a [r-1 a].
Poly gauss_oracle(int r, int a) {
  if (a < 0 || a > r) return Poly::zero();
  if (a == 0 || a == r) return Poly::one();
  return gauss_oracle(r - 1, a - 1) + Poly::monomial(a, Rat(1)) * gauss_oracle(r - 1, a);
}

// Small deterministic LCG for reproducible pseudo-random polynomials.
struct Lcg {
  unsigned long long s;
  explicit Lcg(unsigned long long seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
};

Poly random_poly(Lcg& g, int maxdeg) {
  Poly p;
  int d = static_cast<int>(g.next(0, maxdeg));
  for (int e = 0; e <= d; ++e) p.add_term(e, Rat(g.next(-4, 4), g.next(1, 3)));
  return p;
}

}  // namespace

TEST_CASE("rational scalar parse and print round trip") {
  CHECK(rat_str(rat_parse("8/6")) == "4/3");
  CHECK(rat_str(rat_parse("-7")) == "-7");
  CHECK(rat_str(rat_parse("0/5")) == "0");
  CHECK(rat_parse("3/2") == Rat(3, 2));
  CHECK_THROWS_AS(rat_parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
}

TEST_CASE("polynomial normal form and degree sentinel") {
  Poly z;
  CHECK(z.is_zero());
  CHECK(z.degree() == kNegInfDeg);
  Poly p = Poly::monomial(2, Rat(1)) - Poly::monomial(2, Rat(1));
  CHECK(p.is_zero());
  CHECK(p == Poly::zero());
  Poly q = Poly::var() + Poly(Rat(1));
  CHECK(q.degree() == 1);
  CHECK(q.coeff(0) == 1);
  CHECK_THROWS_AS(Poly::monomial(-1, Rat(1)), std::domain_error);
}

TEST_CASE("polynomial arithmetic matches dense oracle") {
  Lcg g(20260822);
  for (int trial = 0; trial < 50; ++trial) {
    Poly a = random_poly(g, 6), b = random_poly(g, 6);
    Dense da, db;
    for (int e = 0; e <= 6; ++e) da.push_back(a.coeff(e)), db.push_back(b.coeff(e));
    CHECK(a * b == from_dense(dense_mul(da, db)));
    CHECK(a + b - b == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("division with remainder and exact division") {
  Lcg g(7);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(g, 8), b = random_poly(g, 4);
    if (b.is_zero()) continue;
    auto [q, r] = a.divmod(b);
    CHECK(a == q * b + r);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    CHECK((a * b).exact_div(b) == a);
  }
  CHECK_THROWS_AS(Poly::var().divmod(Poly::zero()), std::domain_error);
  CHECK_THROWS_AS((Poly::var() + Poly(Rat(1))).exact_div(Poly::var()), std::domain_error);
}

TEST_CASE("gcd is monic and divides both arguments") {
  Lcg g(99);
  for (int trial = 0; trial < 30; ++trial) {
    Poly a = random_poly(g, 4), b = random_poly(g, 4), c = random_poly(g, 3);
    Poly gg = Poly::gcd(a * c, b * c);
    if (gg.is_zero()) continue;
    CHECK(gg.leading() == 1);
    if (!c.is_zero()) {
      // c divides gcd(ac, bc)
      CHECK((gg.divmod(c.monic()).second.is_zero()));
    }
    CHECK((a * c).divmod(gg).second.is_zero());
    CHECK((b * c).divmod(gg).second.is_zero());
  }
  // (t^2 - 1, t - 1) -> t - 1
  Poly t = Poly::var();
  CHECK(Poly::gcd(t * t - Poly(Rat(1)), t - Poly(Rat(1))) == t - Poly(Rat(1)));
}

TEST_CASE("phi factorials") {
  CHECK(phi(0) == Poly::one());
  CHECK(phi(1).str("t") == "1 - t");
  // phi_2 = 1 - t - t^2 + t^3
  CHECK(phi(2).str("t") == "1 - t - t^2 + t^3");
  // independent dense product oracle
  for (int n = 0; n <= 8; ++n) {
    Dense acc{Rat(1)};
    for (int i = 1; i <= n; ++i) {
      Dense f(i + 1, Rat(0));
      f[0] = 1;
      f[i] = -1;
      acc = dense_mul(acc, f);
    }
    CHECK(phi(n) == from_dense(acc));
  }
}

TEST_CASE("gaussian binomials") {
  CHECK(gauss_binomial(2, 1).str("t") == "1 + t");
  CHECK(gauss_binomial(4, 2).str("t") == "1 + t + 2t^2 + t^3 + t^4");
  CHECK_THROWS_AS(gauss_binomial(3, 5), std::domain_error);
  CHECK_THROWS_AS(gauss_binomial(5, -1), std::domain_error);
  CHECK(gauss_binomial_qinv(3, 5).is_zero());
  for (int r = 0; r <= 12; ++r) {
    for (int a = 0; a <= r; ++a) {
      Poly gb = gauss_binomial(r, a);
      CHECK(gb == gauss_oracle(r, a));
      CHECK(gb == gauss_binomial(r, r - a));  // symmetry
      CHECK(gb.eval(Rat(1)) == Rat(binomial(r, a)));  // t = 1 specialization
      CHECK(gb.has_integer_coeffs());
    }
  }
}

TEST_CASE("gaussian binomial at q inverse") {
  Laurent g = gauss_binomial_qinv(2, 1);
  CHECK(g.coeff(0) == 1);
  CHECK(g.coeff(-1) == 1);
  CHECK(g.max_exp() == 0);
}

TEST_CASE("rational function normal form") {
  Poly t = Poly::var();
  // (t^2 - 1)/(t - 1) reduces to t + 1
  RatFunc f(t * t - Poly(Rat(1)), t - Poly(Rat(1)));
  CHECK(f.is_poly());
  CHECK(f.to_poly() == t + Poly(Rat(1)));
  // denominator normalized monic: (1)/(2t - 2) -> (1/2)/(t - 1)
  RatFunc h(Poly::one(), Poly::monomial(1, Rat(2)) - Poly(Rat(2)));
  CHECK(h.den() == t - Poly(Rat(1)));
  CHECK(h.num() == Poly(Rat(1, 2)));
  CHECK_THROWS_AS(RatFunc(Poly::one(), Poly::zero()), std::domain_error);
}

TEST_CASE("rational function field arithmetic") {
  Lcg g(4242);
  for (int trial = 0; trial < 25; ++trial) {
    RatFunc a(random_poly(g, 3), random_poly(g, 2) + Poly(Rat(5)));
    RatFunc b(random_poly(g, 3), random_poly(g, 2) + Poly(Rat(3)));
    RatFunc c(random_poly(g, 2), random_poly(g, 2) + Poly(Rat(7)));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a - a == RatFunc::zero());
  }
}

TEST_CASE("rational function evaluation") {
  // 1/phi_2 at t = 1/2 equals 8/3
  RatFunc f = RatFunc(Poly::one(), phi(2));
  CHECK(f.eval(Rat(1, 2)) == Rat(8, 3));
  CHECK_THROWS_AS(f.eval(Rat(1)), std::domain_error);  // pole
}

TEST_CASE("substitution of monomials") {
  // t -> v^2 on 1/(1-t)
  RatFunc f(Poly::one(), Poly::one() - Poly::var());
  RatFunc g = f.subst_pow(2);
  CHECK(g == RatFunc(Poly::one(), Poly::one() - Poly::monomial(2, Rat(1))));
  // t -> v^{-2}: 1/(1-v^{-2}) = v^2/(v^2-1)
  RatFunc h = f.subst_pow(-2);
  CHECK(h == RatFunc(Poly::monomial(2, Rat(1)), Poly::monomial(2, Rat(1)) - Poly::one()));
  // conj is an involution
  Lcg rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Poly a = random_poly(rng, 4);
    Poly b = random_poly(rng, 3) + Poly(Rat(2));
    RatFunc r(a, b);
    CHECK(r.conj().conj() == r);
  }
}

TEST_CASE("laurent polynomials") {
  Laurent l = Laurent::monomial(-2, Rat(3)) + Laurent::monomial(1, Rat(1));
  CHECK(l.min_exp() == -2);
  CHECK(l.max_exp() == 1);
  CHECK(l.conj() == Laurent::monomial(2, Rat(3)) + Laurent::monomial(-1, Rat(1)));
  CHECK(!l.is_poly());
  CHECK(RatFunc::from_laurent(l).is_laurent());
  CHECK(RatFunc::from_laurent(l).to_laurent() == l);
  // v^{a}v^{b} = v^{a+b} through RatFunc::monomial
  CHECK(RatFunc::monomial(-3) * RatFunc::monomial(5) == RatFunc::monomial(2));
}

TEST_CASE("reflect computes T^N p(1/T)") {
  Poly p = Poly::one() - Poly::var();  // 1 - t
  CHECK(p.reflect(1) == Poly::var() - Poly::one());
  CHECK(p.reflect(3) == Poly::monomial(3, Rat(1)) - Poly::monomial(2, Rat(1)));
  CHECK_THROWS_AS(p.reflect(0), std::domain_error);
}

TEST_CASE("polynomial rendering") {
  Poly t = Poly::var();
  CHECK((t + Poly(Rat(1))).str("T", false) == "T + 1");
  CHECK((Poly::one() - t).str("t") == "1 - t");
  CHECK(Poly::zero().str("t") == "0");
  CHECK((Poly::monomial(2, Rat(-3, 2))).str("t") == "-3/2t^2");
}
