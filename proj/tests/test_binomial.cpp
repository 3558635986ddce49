#include <doctest.h>

#include "hsint/binomial.hpp"
#include "test_util.hpp"

using namespace hsint;
using hsint::test::P;

namespace {

std::vector<std::string> gen_texts(const Piece& pc) {
  std::vector<std::string> out;
  for (const Generator& g : pc.generators) out.push_back(g.text);
  return out;
}

}  // namespace

TEST_CASE("invariants") {
  CurveInvariants inv = invariants(3, 3, 4);
  CHECK(inv.alpha == 1);
  CHECK(inv.s == 1);
  CHECK(inv.m_rem == 1);
  CHECK(*inv.beta == 1);
  CHECK(*inv.t == 1);
  CHECK(*inv.gamma == 1);

  inv = invariants(3, 3, 5);
  CHECK(inv.alpha == 1);
  CHECK(inv.s == 1);
  CHECK(inv.m_rem == 2);
  CHECK(*inv.gamma == 2);

  inv = invariants(2, 2, 3);
  CHECK(inv.alpha == 1);
  CHECK(inv.s == 1);
  CHECK(inv.m_rem == 1);
  CHECK(*inv.beta == 1);
  CHECK(*inv.gamma == 1);

  CHECK_THROWS_AS(invariants(4, 3, 4), InvalidField);
}

TEST_CASE("classification of the worked curves") {
  PiecewiseModule m = classify(3, 3, 4);
  REQUIRE(m.pieces.size() == 3);
  CHECK(m.pieces[0].lo == 1);
  CHECK(*m.pieces[0].hi == 3);
  CHECK(gen_texts(m.pieces[0]) == std::vector<std::string>{"dx"});
  CHECK(*m.pieces[1].hi == 9);
  CHECK(gen_texts(m.pieces[1]) == std::vector<std::string>{"x*dx", "y*dx"});
  CHECK(!m.pieces[2].hi.has_value());
  CHECK(gen_texts(m.pieces[2]) == std::vector<std::string>{"x*dx", "y^2*dx"});
  CHECK(m.leaps == std::set<uint64_t>{3, 9});

  m = classify(3, 3, 5);
  REQUIRE(m.pieces.size() == 2);
  CHECK(gen_texts(m.pieces[0]) == std::vector<std::string>{"dx"});
  CHECK(*m.pieces[0].hi == 3);
  CHECK(gen_texts(m.pieces[1]) == std::vector<std::string>{"x*dx", "y^2*dx"});
  CHECK(m.leaps == std::set<uint64_t>{3});

  m = classify(5, 3, 4);
  REQUIRE(m.pieces.size() == 1);
  CHECK(m.leaps.empty());
  CHECK(gen_texts(m.pieces[0]) ==
        std::vector<std::string>{"4x*dx + 3y*dy", "4y^3*dx + 3x^2*dy"});

  CHECK_THROWS_AS(classify(3, 9, 12), UsePowerReduce);
  CHECK_THROWS_AS(classify(4, 3, 4), InvalidField);
}

TEST_CASE("swapped classification") {
  PiecewiseModule m = classify(3, 4, 3);
  CHECK(m.swapped);
  CHECK(m.leaps == std::set<uint64_t>{3, 9});
  CHECK(gen_texts(m.pieces[0]) == std::vector<std::string>{"dy"});
  CHECK(gen_texts(m.pieces[1]) == std::vector<std::string>{"y*dy", "x*dy"});
  CHECK(gen_texts(m.pieces[2]) == std::vector<std::string>{"y*dy", "x^2*dy"});
}

TEST_CASE("line quotient branch") {
  PiecewiseModule m = classify(3, 3, 1);
  REQUIRE(m.pieces.size() == 1);
  CHECK(gen_texts(m.pieces[0]) == std::vector<std::string>{"dx"});
  CHECK(m.leaps.empty());
}

TEST_CASE("leaps") {
  CHECK(leaps(3, 3, 4) == std::set<uint64_t>{3, 9});
  CHECK(leaps(5, 3, 4).empty());
  CHECK(leaps(2, 2, 3) == std::set<uint64_t>{2, 4});
}

TEST_CASE("closed form coefficients") {
  // C_1 = s/q in every case
  CurveInvariants inv = invariants(3, 3, 5);
  auto C = c_coefficients(inv, 4);
  CHECK(C[0] == 2);  // 1/5 mod 3

  inv = invariants(3, 3, 4);
  C = c_coefficients(inv, 4);
  CHECK(C[0] == 1);  // 1/4 mod 3

  inv = invariants(3, 6, 5);
  C = c_coefficients(inv, 3);
  CHECK(C[0] == PrimeField(3).mul(2, PrimeField(3).inv(5 % 3)));

  CHECK_THROWS_AS(c_coefficients(invariants(3, 4, 3), 2), NoInverse);
}

TEST_CASE("closed form integral verifies") {
  SUBCASE("non special branch") {
    ClosedFormIntegral cf = closed_form_integral(3, 3, 5);
    CHECK(cf.gamma_used == 2);
    HSDerivation d = cf.materialize(27);
    CHECK(d.image(0).slot(1) == P("y^2", 3));
    // y image: v_i = C_i y^(i+1) at slot 3i
    CHECK(d.image(1).slot(3) == P("2y^2", 3));
    CHECK(is_logarithmic(d, P("x^3 - y^5", 3)).ok);
  }
  SUBCASE("special branch uses the raised exponent") {
    ClosedFormIntegral cf = closed_form_integral(3, 3, 4);
    CHECK(cf.gamma_used == 2);
    HSDerivation d = cf.materialize(27);
    CHECK(d.image(0).slot(1) == P("y^2", 3));
    CHECK(is_logarithmic(d, P("x^3 - y^4", 3)).ok);
  }
  SUBCASE("truncation to length one recovers the slope") {
    ClosedFormIntegral cf = closed_form_integral(3, 3, 5);
    HSDerivation d = cf.materialize(9);
    auto first = d.truncate(1);
    CHECK(first == HSDerivation::from_derivation(
                       parse_derivation("y^2*dx", PrimeField(3), 2)));
  }
  SUBCASE("multi digit exponents") {
    ClosedFormIntegral cf = closed_form_integral(2, 4, 7);
    HSDerivation d = cf.materialize(24);
    CHECK(is_logarithmic(d, P("x^4 - y^7", 2)).ok);
  }
  SUBCASE("s greater than one") {
    ClosedFormIntegral cf = closed_form_integral(3, 6, 5);
    HSDerivation d = cf.materialize(18);
    CHECK(is_logarithmic(d, P("x^6 - y^5", 3)).ok);
  }
  SUBCASE("swapped") {
    ClosedFormIntegral cf = closed_form_integral(3, 5, 3);
    CHECK(cf.swapped);
    HSDerivation d = cf.materialize(18);
    CHECK(is_logarithmic(d, P("x^5 - y^3", 3)).ok);
  }
  CHECK_THROWS_AS(closed_form_integral(5, 3, 4), NotApplicable);
}

TEST_CASE("closed form exponents stay admissible") {
  for (auto [p, n, q] : std::vector<std::tuple<uint32_t, uint64_t, uint64_t>>{
           {2, 2, 3}, {2, 2, 5}, {2, 4, 3}, {2, 4, 5}, {2, 8, 9},
           {3, 3, 4}, {3, 3, 5}, {3, 9, 10}, {3, 6, 5}, {5, 5, 6}}) {
    ClosedFormIntegral cf = closed_form_integral(p, n, q);
    for (size_t i = 1; i <= 30; ++i) {
      CHECK_NOTHROW(cf.v_coefficient(i));
    }
  }
}

TEST_CASE("annihilator ideals") {
  AnnihilatorReport rep = annihilator_B(3, 3, 4, 9);
  REQUIRE(rep.generators.size() == 1);
  CHECK(rep.generators[0] == P("y", 3));
  CHECK(!rep.alpha_gamma_discrepancy);
  CHECK(rep.contains_gradient_ideal);

  rep = annihilator_B(3, 3, 4, 3);
  REQUIRE(rep.generators.size() == 2);
  CHECK(rep.generators[0] == P("x", 3));
  CHECK(rep.generators[1] == P("y", 3));
  CHECK(!rep.alpha_gamma_discrepancy);  // alpha == gamma == 1 here

  // printed exponent departs from the piece generator exponent
  rep = annihilator_B(3, 3, 5, 3);
  REQUIRE(rep.generators.size() == 2);
  CHECK(rep.generators[1] == P("y", 3));
  CHECK(rep.alpha_gamma_discrepancy);  // gamma = 2, alpha = 1

  CHECK_THROWS_AS(annihilator_B(5, 3, 4, 5), NotALeap);
  CHECK_THROWS_AS(annihilator_B(3, 3, 4, 4), NotALeap);
}

TEST_CASE("der_log_full") {
  CHECK(der_log_full(P("x^3 - y^3", 3)));
  CHECK(!der_log_full(P("x^3 - y^4", 3)));
  CHECK(der_log_full(P("1", 3)));
}

TEST_CASE("power leaps") {
  CHECK(power_leaps(3, 3, 4, 1) == std::set<uint64_t>{3, 9, 27});
  CHECK(power_leaps(5, 3, 4, 2) == std::set<uint64_t>{25});
  CHECK(power_leaps(3, 3, 4, 0) == std::set<uint64_t>{3, 9});
}

TEST_CASE("power reduce") {
  PowerReduction red = power_reduce(3, 9, 12);
  CHECK(red.tau == 1);
  CHECK(red.n_reduced == 3);
  CHECK(red.q_reduced == 4);
  CHECK(red.leaps == std::set<uint64_t>{3, 9, 27});

  red = power_reduce(2, 4, 6);
  CHECK(red.tau == 1);
  CHECK(red.n_reduced == 2);
  CHECK(red.q_reduced == 3);

  CHECK_THROWS_AS(power_reduce(3, 3, 4), NotAPowerCase);
}

TEST_CASE("classification symmetry under swapping") {
  for (auto [p, n, q] : std::vector<std::tuple<uint32_t, uint64_t, uint64_t>>{
           {3, 3, 4}, {3, 3, 5}, {2, 2, 3}, {2, 4, 5}, {5, 5, 6}}) {
    PiecewiseModule a = classify(p, n, q);
    PiecewiseModule b = classify(p, q, n);
    CHECK(a.leaps == b.leaps);
    REQUIRE(a.pieces.size() == b.pieces.size());
    for (size_t i = 0; i < a.pieces.size(); ++i) {
      CHECK(a.pieces[i].lo == b.pieces[i].lo);
      CHECK(a.pieces[i].hi == b.pieces[i].hi);
      CHECK(a.pieces[i].generators.size() == b.pieces[i].generators.size());
    }
  }
}

TEST_CASE("standard pool verifies") {
  CertificatePool pool = standard_pool(3, 3, 4, 12);
  CHECK(pool.entries().size() == 2);
  Poly h = P("x^3 - y^4", 3);
  for (const PoolEntry& e : pool.entries()) {
    CHECK(is_logarithmic(e.tower, h).ok);
    CHECK(e.length() >= 12);
  }
}
