// End-to-end acceptance run at the default configuration.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qshilov/hopf.hpp"
#include "qshilov/ncalg.hpp"
#include "qshilov/report.hpp"

using namespace qshilov;

namespace {

struct Outcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

void absorb(Outcome& o, const std::vector<CheckEntry>& entries) {
  for (const auto& e : entries) {
    ++o.checks;
    if (!e.pass) {
      o.failures.push_back(e.name + " [" + e.params + "] value=" + std::to_string(e.value) +
                           " tol=" + std::to_string(e.tol) + (e.error.empty() ? "" : " error: " + e.error));
    }
  }
}

Outcome suites(const RunConfig& c, std::initializer_list<const char*> names) {
  Outcome o;
  for (const char* s : names) absorb(o, run_suite(s, c));
  return o;
}

Outcome only(const RunConfig& c, const char* suite, const std::string& name) {
  Outcome o;
  std::vector<CheckEntry> picked;
  for (auto& e : run_suite(suite, c)) {
    if (e.name == name) picked.push_back(std::move(e));
  }
  if (picked.empty()) o.failures.push_back(name + " missing");
  absorb(o, picked);
  return o;
}

Outcome shilov_over_q(const RunConfig& base) {
  Outcome o;
  for (double q : {0.3, 0.5, 0.7}) {
    RunConfig c = base;
    c.q = q;
    std::vector<CheckEntry> picked;
    for (auto& e : run_suite("shilov-norm", c)) {
      if (e.name.rfind("shilov-norm.max-modulus", 0) == 0) picked.push_back(std::move(e));
    }
    if (picked.size() != 4) o.failures.push_back("expected four max-modulus values at q=" + std::to_string(q));
    absorb(o, picked);
  }
  return o;
}

Outcome robustness(const RunConfig& c) {
  Outcome o = suites(c, {"confluence"});
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const Presentation& p = preset_ref(id);
    for (std::size_t k = 0; k < p.rules().size(); ++k) {
      ++o.checks;
      const auto rep = local_confluence_check(p.without_rule(k), 3);
      if (rep.violations.empty() && rep.failed_relations.empty())
        o.failures.push_back(std::string(algebra_name(id)) + " without rule " + std::to_string(k) + " undetected");
    }
  }
  for (auto [i, j] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
    for (int k = 1; k <= 2; ++k) {
      for (int l = 1; l <= 2; ++l) {
        ++o.checks;
        if (verify_coaction_hom(2, mutated_coaction_table(i, j, k, l)).mismatches.empty()) {
          o.failures.push_back("coaction of z" + std::to_string(i) + std::to_string(j) + " without summand " +
                               std::to_string(k) + std::to_string(l) + " undetected");
        }
      }
    }
  }
  for (Mutation m : {Mutation::DropRule, Mutation::DropCoactionSummand}) {
    RunConfig mc = c;
    mc.mutation = m;
    mc.suites = {"coaction", "confluence"};
    ++o.checks;
    if (run(mc).ok()) o.failures.push_back("mutation " + mutation_name(m) + " not reported as a failure");
  }
  return o;
}

}  // namespace

int main() {
  RunConfig c;
  c.validate();

  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, [&] { return suites(c, {"relations"}); }},
      {2, [&] { return suites(c, {"hopf"}); }},
      {3, [&] { return suites(c, {"coaction"}); }},
      {4, [&] { return suites(c, {"wick"}); }},
      {5, [&] { return suites(c, {"characters"}); }},
      {6, [&] { return suites(c, {"annihilators", "dilation", "inequalities"}); }},
      {7, [&] { return shilov_over_q(c); }},
      {8, [&] { return only(c, "shilov-norm", "shilov-norm.character-identity"); }},
      {9, [&] { return suites(c, {"regular-functions"}); }},
      {10, [&] { return robustness(c); }},
  };

  int failed = 0;
  for (const auto& [id, body] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.failures.empty() && o.checks > 0;
    failed += !pass;
    std::printf("criterion %d: %s (%zu checks, %.1f s)\n", id, pass ? "PASS" : "FAIL", o.checks, secs);
    for (const auto& f : o.failures) std::printf("  %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
