#ifndef HSINT_FIXTURES_HPP
#define HSINT_FIXTURES_HPP

#include <string>
#include <vector>

namespace hsint::fixtures {

struct FixtureResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> checks;  // "ok: ..." / "FAIL: ..." lines
};

std::vector<std::string> fixture_names();

// Throws Error on unknown names.
FixtureResult run_fixture(const std::string& name);

std::vector<FixtureResult> run_all();

}  // namespace hsint::fixtures

#endif
