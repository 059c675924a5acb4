#include <doctest.h>

#include <cmath>

#include "core/sweep.hpp"
#include "core/verify.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::test;

TEST_SUITE("sweep") {

TEST_CASE("levels and markers") {
  SweepConfig cfg;
  cfg.params = floating(rabi(R(0), R(4, 5)));
  cfg.points = 11;
  cfg.levels = 4;
  cfg.truncation = 40;
  cfg.n_min = 0;
  cfg.n_max = 2;
  const auto r = run_sweep(cfg);
  REQUIRE(r.levels.size() == 44);
  for (std::size_t i = 1; i < r.levels.size(); ++i) {
    const auto& a = r.levels[i - 1];
    const auto& b = r.levels[i];
    CHECK((a.g < b.g || (a.g == b.g && a.level < b.level)));
    if (a.g == b.g) CHECK(a.energy <= b.energy);
  }
  CHECK(r.levels.front().g == 0.0);
  CHECK(r.levels.back().g == doctest::Approx(0.5));
  CHECK(r.levels.front().energy == doctest::Approx(-0.8));

  bool found = false;
  for (std::size_t i = 0; i < r.markers.size(); ++i) {
    const auto& m = r.markers[i];
    if (i > 0) {
      const auto& p = r.markers[i - 1];
      CHECK((p.n < m.n || (p.n == m.n && p.g <= m.g)));
    }
    CHECK(m.energy == doctest::Approx(m.n - m.g * m.g).epsilon(1e-12));
    if (m.n == 1 && std::abs(m.g - 0.3) < 1e-9) found = true;
  }
  CHECK(found);

  cfg.jobs = 8;
  const auto threaded = run_sweep(cfg);
  REQUIRE(threaded.levels.size() == r.levels.size());
  for (std::size_t i = 0; i < r.levels.size(); ++i) CHECK(threaded.levels[i].energy == r.levels[i].energy);
  REQUIRE(threaded.markers.size() == r.markers.size());
  for (std::size_t i = 0; i < r.markers.size(); ++i) CHECK(threaded.markers[i].g == r.markers[i].g);
}

TEST_CASE("no markers above the Juddian threshold") {
  SweepConfig cfg;
  cfg.params = floating(rabi(R(0), R(6, 5)));
  cfg.points = 5;
  cfg.levels = 2;
  cfg.truncation = 20;
  cfg.n_min = 1;
  cfg.n_max = 1;
  CHECK(run_sweep(cfg).markers.empty());
}

TEST_CASE("sweep range errors") {
  SweepConfig cfg;
  cfg.params = floating(twophoton(R(0), R(1, 4)));
  cfg.g_max = 0.6;
  CHECK(error_of([&] { run_sweep(cfg); }) == ErrorCode::CouplingOutOfRange);
}

}  // TEST_SUITE

TEST_SUITE("verify") {

TEST_CASE("every suite passes") {
  VerifyOptions o;
  o.models = {rabi(R(1, 2)), rabi(R(1, 3), 1, R(1, 8)), twophoton(R(3, 10), R(1, 4)), twomode(R(3, 5), R(1, 2))};
  o.n_max = 3;
  o.samples = 20;
  const auto results = run_verify(o);
  CHECK(results.size() > 20);
  for (const auto& r : results) {
    INFO(r.suite, " ", r.identity, " ", r.params, " ", r.counterexample);
    CHECK(r.passed);
    CHECK(r.counterexample.empty());
  }
}

TEST_CASE("suite names") {
  for (const Suite s : {Suite::Sl2, Suite::Proposition, Suite::Identities, Suite::Elimination, Suite::Quartic,
                        Suite::Su11, Suite::Algebraization, Suite::All}) {
    CHECK(parse_suite(suite_name(s)) == s);
  }
  CHECK_FALSE(parse_suite("nonsense"));
  CHECK(known_printed_differences(ModelKind::TwoMode) == std::vector<std::string>{"J+J-J-J-"});
}

TEST_CASE("sl2 suite checks the realized sign") {
  VerifyOptions o;
  o.suite = Suite::Sl2;
  bool seen = false;
  for (const auto& r : run_verify(o)) seen = seen || r.identity == "[J+,J-] = -2J0";
  CHECK(seen);
}

}  // TEST_SUITE
