#include <doctest.h>

#include <algorithm>
#include <random>

#include "qshilov/ncalg.hpp"
#include "sample.hpp"

using namespace qshilov;
using qshilov::testing::random_expr;
using qshilov::testing::random_word;

namespace {

const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }
const Presentation& su() { return preset_ref(AlgebraId::CSU2); }
const Presentation& uq() { return preset_ref(AlgebraId::UqSl2); }
const Presentation& pc() { return preset_ref(AlgebraId::PolC); }

NcExpr g(const Presentation& p, const char* name) { return p.gen(name); }

}  // namespace

TEST_CASE("nc_mul examples in pol-matsym-q") {
  const auto& p = pm();
  CHECK(nc_mul(g(p, "z21"), g(p, "z11"), p) == q_pow(-2) * (g(p, "z11") * g(p, "z21")));
  CHECK(nc_mul(g(p, "z22"), g(p, "z11"), p) ==
        g(p, "z11") * g(p, "z22") - (q_pow(3) - q_pow(-1)) * (g(p, "z21") * g(p, "z21")));
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const NcExpr x = normal_form(random_expr(rng, p, 3), p);
    CHECK(nc_mul(p.one(), x, p) == x);
    CHECK(nc_mul(x, p.one(), p) == x);
  }
}

TEST_CASE("normal_form examples") {
  const auto& p = pm();
  CHECK(normal_form(g(p, "z22*") * g(p, "z22"), p) ==
        q_pow(4) * (g(p, "z22") * g(p, "z22*")) + (1 - q_pow(4)) * p.one());
  CHECK(normal_form(g(p, "z21*") * g(p, "z22"), p) == q_pow(2) * (g(p, "z22") * g(p, "z21*")));
}

TEST_CASE("normal_form is idempotent on random degree-4 words") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    std::mt19937_64 rng(100 + static_cast<int>(id));
    for (int k = 0; k < 100; ++k) {
      const NcExpr x = normal_form(NcExpr::word(id, random_word(rng, p, 4)), p);
      CHECK(normal_form(x, p) == x);
      for (const auto& [w, c] : x.terms()) CHECK(is_normal(w, p));
    }
  }
}

TEST_CASE("pol-matsym-q normal words are holomorphic block then starred block, each sorted") {
  const auto& p = pm();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const NcExpr x = normal_form(NcExpr::word(p.id(), random_word(rng, p, 4)), p);
    for (const auto& [w, c] : x.terms()) CHECK(std::is_sorted(w.begin(), w.end()));
  }
}

TEST_CASE("nc_star examples") {
  const auto& p = pm();
  CHECK(nc_star(g(p, "z11") * g(p, "z21"), p) == normal_form(g(p, "z21*") * g(p, "z11*"), p));
  CHECK(nc_star(g(p, "z11") * g(p, "z21"), p) == q_pow(2) * (g(p, "z11*") * g(p, "z21*")));
  CHECK(nc_star(g(su(), "t12"), su()) == -q_pow(1) * g(su(), "t21"));
  CHECK(nc_star(g(su(), "t11"), su()) == g(su(), "t22"));
  CHECK(nc_star(LaurentScalar::i() * g(pc(), "z"), pc()) == -LaurentScalar::i() * g(pc(), "z*"));
}

TEST_CASE("nc_star is an involutive antihomomorphism on every preset") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    std::mt19937_64 rng(40 + static_cast<int>(id));
    for (int k = 0; k < 30; ++k) {
      const NcExpr a = random_expr(rng, p, 3), b = random_expr(rng, p, 2);
      CHECK(nc_star(nc_star(a, p), p) == normal_form(a, p));
      CHECK(nc_star(nc_mul(a, b, p), p) == nc_mul(nc_star(b, p), nc_star(a, p), p));
    }
  }
}

TEST_CASE("star respects every defining relation") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    for (const auto& rel : p.relations()) {
      CAPTURE(rel.label);
      CHECK(nc_equal(nc_star(rel.lhs, p), nc_star(rel.rhs, p), p));
    }
  }
}

TEST_CASE("nc_equal examples") {
  const auto& p = pm();
  CHECK(nc_equal(g(p, "z11") * g(p, "z22") - g(p, "z22") * g(p, "z11"),
                 (q_pow(3) - q_pow(-1)) * (g(p, "z21") * g(p, "z21")), p));
  const NcExpr x = g(p, "z21*") * g(p, "z11");
  CHECK_FALSE(nc_equal(x, x + p.one(), p));
  const auto& s = su();
  CHECK(nc_equal(g(s, "t11") * g(s, "t22") - q_pow(1) * (g(s, "t12") * g(s, "t21")), s.one(), s));
}

TEST_CASE("nc_mul is associative on random degree-3 triples") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    std::mt19937_64 rng(70 + static_cast<int>(id));
    for (int k = 0; k < 30; ++k) {
      const NcExpr a = random_expr(rng, p, 3), b = random_expr(rng, p, 3), c = random_expr(rng, p, 3);
      CHECK(nc_mul(nc_mul(a, b, p), c, p) == nc_mul(a, nc_mul(b, c, p), p));
    }
  }
}

TEST_CASE("algebra mismatch is rejected") {
  CHECK_THROWS_AS(nc_mul(g(pm(), "z11"), g(su(), "t11"), pm()), AlgebraMismatch);
}

TEST_CASE("preset examples") {
  const auto& c = pc();
  REQUIRE(c.rules().size() == 1);
  CHECK(c.word_to_string(c.rules()[0].pattern) == "z* z");
  CHECK(c.rules()[0].replacement == q_pow(4) * (g(c, "z") * g(c, "z*")) + (1 - q_pow(4)) * c.one());

  const auto& u = uq();
  CHECK(nc_equal(g(u, "K") * g(u, "E"), q_pow(2) * (g(u, "E") * g(u, "K")), u));
  const RewriteRule* ek = u.rule_for(u.letter("E"), u.letter("K"));
  REQUIRE(ek != nullptr);
  CHECK(nc_equal(g(u, "K") * g(u, "E"), q_pow(2) * ek->replacement, u));

  const auto& s = su();
  const RewriteRule* r = s.rule_for(s.letter("t12"), s.letter("t21"));
  REQUIRE(r != nullptr);
  CHECK(r->replacement == g(s, "t21") * g(s, "t12"));

  CHECK(pm().symbol("z12") == q_pow(1) * g(pm(), "z21"));
  CHECK_THROWS_AS(preset("no-such-algebra"), std::invalid_argument);
  CHECK(preset("pol-matsym-q").describe() == pm().describe());
}

TEST_CASE("every rule pattern is reducible and every replacement is normal") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    for (const auto& rule : p.rules()) {
      CHECK_FALSE(is_normal(rule.pattern, p));
      CHECK(normal_form(rule.replacement, p) == rule.replacement);
    }
  }
}

TEST_CASE("local confluence holds for all presets") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    const ConfluenceReport r = local_confluence_check(p, 3);
    CAPTURE(p.name());
    CHECK(r.violations.empty());
    CHECK(r.failed_relations.empty());
    CHECK(r.ok());
  }
  CHECK(local_confluence_check(pm(), 3).words_checked == 216);
  CHECK_THROWS_AS(local_confluence_check(pm(), 2), std::invalid_argument);
}

TEST_CASE("dropping any single rule is detected") {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const auto& p = preset_ref(id);
    for (std::size_t i = 0; i < p.rules().size(); ++i) {
      const Presentation mutant = p.without_rule(i);
      CAPTURE(p.name());
      CAPTURE(p.word_to_string(p.rules()[i].pattern));
      CHECK_FALSE(local_confluence_check(mutant, 3).ok());
    }
  }
}

TEST_CASE("a corrupted coefficient produces confluence violations") {
  const auto& p = pm();
  Presentation bad(p.id(), p.name(), p.alphabet());
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    NcExpr rep = p.rules()[i].replacement;
    if (i == 0) rep = q_pow(-1) * rep;
    bad.add_rule(p.rules()[i].pattern, rep);
  }
  CHECK_FALSE(local_confluence_check(bad, 3).violations.empty());
}

TEST_CASE("literal misprinted t22 t21 relation does not hold") {
  const auto& s = su();
  CHECK_FALSE(nc_equal(g(s, "t22") * g(s, "t21"), q_pow(-1) * (g(s, "t21") * g(s, "t11")), s));
  CHECK(nc_equal(g(s, "t22") * g(s, "t21"), q_pow(-1) * (g(s, "t21") * g(s, "t22")), s));
}

TEST_CASE("iteration cap surfaces as an error") {
  Presentation loop(AlgebraId::PolC, "loop", {"z", "z*"});
  loop.add_rule(Word{1, 0}, NcExpr::word(AlgebraId::PolC, Word{1, 0}));
  loop.set_step_cap(1000);
  CHECK_THROWS_AS(normal_form(NcExpr::word(AlgebraId::PolC, Word{1, 0}), loop), IterationCapExceeded);
}

TEST_CASE("tensor normal form and star") {
  const auto& u = uq();
  const TensorExpr t = TensorExpr::product(g(u, "K") * g(u, "E"), g(u, "E") * g(u, "K"));
  const TensorExpr n = normal_form(t, u, u);
  CHECK(n == normal_form(n, u, u));
  CHECK(n == q_pow(-2) * TensorExpr::product(g(u, "K") * g(u, "E"), g(u, "K") * g(u, "E")));
  const TensorExpr s = tensor_star(TensorExpr::product(g(u, "E"), g(u, "K")), u, u);
  CHECK(s == TensorExpr::product(q_pow(-2) * (g(u, "F") * g(u, "K")), g(u, "K")));
}

TEST_CASE("text serialization is deterministic") {
  const auto& p = pm();
  const NcExpr x = normal_form(g(p, "z22*") * g(p, "z22"), p);
  CHECK(p.to_string(x) == p.to_string(normal_form(g(p, "z22*") * g(p, "z22"), p)));
  CHECK(p.to_string(p.zero()) == "0");
  CHECK(pm().describe().find("z21* z11") != std::string::npos);
}
