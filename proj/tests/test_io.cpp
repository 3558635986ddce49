#include <doctest.h>

#include "hsint/io.hpp"
#include "test_util.hpp"

using namespace hsint;
using hsint::test::P;

TEST_CASE("derivation serialization round trip") {
  PrimeField f3(3);
  SearchOptions ex;
  ex.mode = SearchMode::Exhaustive;
  auto r = integrate(
      HSDerivation::from_derivation(parse_derivation("y*dx", f3, 2)),
      P("x^3 - y^4", 3), 6, ex);
  const auto& cert = std::get<IntegralCertificate>(r);

  json j = certificate_to_json(cert);
  CHECK(j.at("p") == 3);
  CHECK(j.at("length") == 6);
  CHECK(j.at("verified_to") == 6);
  CHECK(j.at("h") == "x^3 + 2y^4");

  LoadedCertificate back = certificate_from_json(j);
  CHECK(back.derivation == cert.derivation);
  CHECK(back.h == cert.h);
  CHECK(is_logarithmic(back.derivation, back.h).ok);
}

TEST_CASE("piecewise report shape") {
  json j = piecewise_to_json(classify(3, 3, 4));
  CHECK(j.at("leaps") == json::array({3, 9}));
  CHECK(j.at("pieces").size() == 3);
  CHECK(j.at("pieces")[0].at("generators") == json::array({"dx"}));
  CHECK(j.at("pieces")[2].at("hi") == "inf");
  CHECK(j.at("branch") == "frobenius_kernel");
  bool found_closed_form = false;
  for (const auto& c : j.at("certificates")) {
    if (c.at("type") == "closed_form") {
      found_closed_form = true;
      CHECK(c.at("generator") == "y^2*dx");
      CHECK(c.at("length") == "inf");
    }
  }
  CHECK(found_closed_form);
}

TEST_CASE("witness serialization") {
  LeapWitness w;
  w.failed_at = 9;
  w.explored = 81;
  w.degree_bound = 36;
  w.mode = SearchMode::Exhaustive;
  w.exhaustive_within_bound = true;
  json j = witness_to_json(w);
  CHECK(j.at("failed_at") == 9);
  CHECK(j.at("mode") == "exhaustive");
  CHECK(j.at("branches_explored") == 81);
}
