#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "embezzle/selftest.hpp"

using namespace embezzle;

TEST_CASE("default seed passes every invariant") {
  const SelftestSummary s = run_selftest();
  CHECK(s.passed());
  CHECK(s.results.size() == 18);
  std::set<std::string> names;
  for (const auto& r : s.results) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.checks > 0);
    CHECK(r.failures == 0);
    CHECK(r.first_failure.empty());
    names.insert(r.name);
  }
  CHECK(names.size() == s.results.size());
}

TEST_CASE("same seed, same summary") {
  const SelftestSummary a = run_selftest({.seed = 99});
  const SelftestSummary b = run_selftest({.seed = 99});
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].name == b.results[i].name);
    CHECK(a.results[i].checks == b.results[i].checks);
    CHECK(a.results[i].failures == b.results[i].failures);
  }
}

TEST_CASE("a perturbed omega kernel is noticed by name") {
  const SelftestSummary s = run_selftest({.fault_omega_scale = 1.01});
  CHECK_FALSE(s.passed());
  bool named = false;
  for (const auto& r : s.results)
    if (r.name == "omega-le-mu" && r.failures > 0) {
      named = true;
      CHECK_FALSE(r.first_failure.empty());
    }
  CHECK(named);
}
