#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qshilov/report.hpp"

using namespace qshilov;

namespace {

RunConfig small(std::vector<std::string> suites) {
  RunConfig c;
  c.n1 = 16;
  c.n2 = 8;
  c.n3 = 8;
  c.phi_grid = 8;
  c.suites = std::move(suites);
  return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(RunConfig{}.validate());
  auto bad = [](auto edit) {
    RunConfig c;
    edit(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.q = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.q = 1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.q = std::nan(""); }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.phi_grid = 3; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.tol = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.n3 = 64; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.suites = {"nope"}; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run(bad([](RunConfig& c) { c.q = 2; })), std::invalid_argument);
}

TEST_CASE("mutation names round-trip") {
  for (Mutation m : {Mutation::None, Mutation::DropRule, Mutation::DropCoactionSummand})
    CHECK(parse_mutation(mutation_name(m)) == m);
  CHECK_THROWS(parse_mutation("drop-everything"));
}

TEST_CASE("empty suite list") {
  const Report r = run(RunConfig{});
  CHECK(r.entries.empty());
  CHECK(r.ok());
  CHECK(r.passed == 0);
  CHECK(count_lines(to_text(r)) == 1);
}

TEST_CASE("cheap suites pass and are deterministic") {
  const RunConfig c = small({"hopf", "coaction", "confluence", "regular-functions", "shilov-norm"});
  Report a = run(c);
  Report b = run(c);
  CHECK(a.ok());
  CHECK(a.passed == a.entries.size());
  a.wall_time = b.wall_time = 0;
  CHECK(a == b);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(std::is_sorted(a.entries.begin(), a.entries.end(), [](const CheckEntry& x, const CheckEntry& y) {
    return std::tie(x.name, x.params) < std::tie(y.name, y.params);
  }));
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& e : a.entries) {
    CHECK(e.name.rfind(e.suite + ".", 0) == 0);
    CHECK_FALSE(e.anchor.empty());
    keys.emplace(e.name, e.params);
  }
  CHECK(keys.size() == a.entries.size());
  CHECK(count_lines(to_text(a)) == a.entries.size() + 1);
}

TEST_CASE("structured output round-trips") {
  Report r = run(small({"hopf", "confluence"}));
  r.entries.push_back({"wick", "wick.coherent", "anchor", "phi=0", std::numeric_limits<double>::infinity(), 1e-12,
                       false, ""});
  r.entries.push_back({"wick", "wick.moments", "anchor", "", 0, 1e-10, false, "iteration cap reached"});
  r.failed += 2;
  r.config.mutation = Mutation::DropRule;
  const auto j = to_json(r);
  CHECK(j["summary"]["ok"] == false);
  CHECK(j["summary"]["total"] == r.entries.size());
  const Report back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back == r);
}

TEST_CASE("mutations are detected") {
  SUBCASE("dropped relation") {
    RunConfig c = small({"confluence"});
    c.mutation = Mutation::DropRule;
    const Report r = run(c);
    CHECK_FALSE(r.ok());
    CHECK(r.failed >= 1);
  }
  SUBCASE("dropped coaction summand") {
    RunConfig c = small({"coaction"});
    c.mutation = Mutation::DropCoactionSummand;
    const Report r = run(c);
    CHECK_FALSE(r.ok());
    CHECK(r.failed >= 1);
  }
}

TEST_CASE("every suite has checks") {
  for (const auto& s : suite_names()) {
    if (s == "inequalities" || s == "characters") continue;
    CAPTURE(s);
    CHECK_FALSE(run_suite(s, small({s})).empty());
  }
}
