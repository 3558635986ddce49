#include <doctest.h>

#include "hsint/intarith.hpp"
#include "hsint/poly.hpp"
#include "test_util.hpp"

using namespace hsint;
using hsint::test::P;
using hsint::test::Rng;

TEST_CASE("padic_split basics") {
  auto r = padic_split(9, 3);
  CHECK(r.alpha == 2);
  CHECK(r.unit_part == 1);
  r = padic_split(12, 2);
  CHECK(r.alpha == 2);
  CHECK(r.unit_part == 3);
  r = padic_split(5, 3);
  CHECK(r.alpha == 0);
  CHECK(r.unit_part == 5);
  CHECK_THROWS_AS(padic_split(0, 3), DegenerateInput);
  CHECK_THROWS_AS(padic_split(4, 4), InvalidField);
}

TEST_CASE("prime field construction") {
  CHECK_THROWS_AS(PrimeField(4), InvalidField);
  CHECK_THROWS_AS(PrimeField(1), InvalidField);
  PrimeField f(7);
  CHECK(f.inv(3) == 5);
  CHECK(f.mul(3, 5) == 1);
}

TEST_CASE("lucas binomials") {
  CHECK(binom_mod_p(4, 2, 2) == 0);   // 6 mod 2
  CHECK(binom_mod_p(4, 4, 2) == 1);
  CHECK(binom_mod_p(12, 3, 3) == 1);  // 220 mod 3
  CHECK(binom_mod_p(1, 2, 3) == 0);   // k > n
  CHECK(multinomial_mod_p({3, 0, 1}, 3) == 1);  // 4!/(3!1!) = 4 mod 3
  CHECK(multinomial_mod_p({2, 2}, 2) == 0);     // 6 mod 2
}

TEST_CASE("partial derivatives") {
  CHECK(P("x^3 - y^4", 3).partial(0).is_zero());
  CHECK(P("x^3 - y^4", 3).partial(1) == P("2y^3", 3));
  CHECK(P("x^4 + y^6 + y^7", 2).partial(0).is_zero());
  // mixed partials commute
  Rng rng(11);
  PrimeField f(5);
  for (int t = 0; t < 200; ++t) {
    Poly g = rng.poly(f, 2, 7, 6);
    CHECK(g.partial(0).partial(1) == g.partial(1).partial(0));
  }
}

TEST_CASE("exact division") {
  PrimeField f3(3);
  Poly h = P("x^3 - y^4", 3);
  CHECK(*h.exact_div(h) == Poly::one(f3, 2));
  Poly prod = h * P("x + y", 3);
  CHECK(*prod.exact_div(h) == P("x + y", 3));
  CHECK(!P("x^3 - y^4 + 1", 3).exact_div(h).has_value());
  CHECK_THROWS_AS(h.divrem(Poly::zero(f3, 2)), ZeroDivisor);
}

TEST_CASE("mod_reduce") {
  Poly h = P("x^3 - y^4", 3);
  CHECK(P("x^3", 3).mod_reduce(h) == P("y^4", 3));
  CHECK(P("y^4", 3).mod_reduce(h) == P("y^4", 3));

  // independent membership oracle: input - remainder must be divisible by h
  Poly in = P("x^3y + x", 3);
  Poly r = in.mod_reduce(h);
  CHECK(r == P("y^5 + x", 3));
  CHECK((in - r).exact_div(h).has_value());
  CHECK(r.mod_reduce(h) == r);  // idempotent
}

TEST_CASE("pow and frobenius") {
  CHECK(P("x + y", 2).pow(2) == P("x^2 + y^2", 2));
  CHECK(P("x - y", 3).pow(3) == P("x^3 - y^3", 3));
  CHECK(P("x + y", 5).pow(0) == Poly::one(PrimeField(5), 2));
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(1234);
  for (uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int t = 0; t < 400; ++t) {
      Poly a = rng.poly(f, 2, 6, 5);
      Poly b = rng.poly(f, 2, 6, 5);
      Poly c = rng.poly(f, 2, 6, 5);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK((a - b) + b == a);
    }
  }
}

TEST_CASE("division properties on random polynomials") {
  Rng rng(99);
  for (uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int t = 0; t < 300; ++t) {
      Poly a = rng.poly(f, 2, 5, 5);
      Poly h = rng.nonzero_poly(f, 2, 4, 4);
      CHECK(*(a * h).exact_div(h) == a);
      Poly r = a.mod_reduce(h);
      CHECK((a - r).exact_div(h).has_value());
      CHECK((r.is_zero()) == a.exact_div(h).has_value());
      CHECK(r.is_reduced_wrt(h));
    }
  }
}

TEST_CASE("frobenius additivity of pow") {
  Rng rng(5);
  for (uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int t = 0; t < 200; ++t) {
      Poly a = rng.poly(f, 2, 5, 4);
      Poly b = rng.poly(f, 2, 5, 4);
      CHECK((a + b).pow(p) == a.pow(p) + b.pow(p));
    }
  }
}

TEST_CASE("divided partials") {
  // coefficient of z^k in (x+z)^4 over F_2: binom(4,k) x^(4-k)
  Poly h = P("x^4 + y^6 + y^7", 2);
  CHECK(h.divided_partial(0, 1).is_zero());
  CHECK(h.divided_partial(0, 2).is_zero());
  CHECK(h.divided_partial(0, 4) == Poly::one(PrimeField(2), 2));
  CHECK(h.divided_partial(1, 2) == P("y^4 + y^5", 2));
}
