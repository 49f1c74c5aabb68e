#include <doctest.h>

#include <random>

#include "qshilov/boundary.hpp"
#include "qshilov/hopf.hpp"
#include "sample.hpp"

using namespace qshilov;

namespace {

const Presentation& uq() { return preset_ref(AlgebraId::UqSl2); }
const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }
const Presentation& su() { return preset_ref(AlgebraId::CSU2); }

NcExpr U(const char* n) { return uq().gen(n); }
NcExpr Z(const char* n) { return pm().symbol(n); }
NcExpr T(const char* n) { return su().gen(n); }

std::vector<NcExpr> uq_words(int max_len) {
  std::vector<NcExpr> out{uq().one()};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Letter l = 0; l < 4; ++l) {
        Word x = w;
        x.push_back(l);
        next.push_back(x);
        out.push_back(NcExpr::word(AlgebraId::UqSl2, x));
      }
    layer = next;
  }
  return out;
}

}  // namespace

TEST_CASE("coproduct examples") {
  const auto& p = uq();
  CHECK(coproduct(U("E")) == TensorExpr::product(U("E"), p.one()) + TensorExpr::product(U("K"), U("E")));
  CHECK(coproduct(p.one()) == TensorExpr::product(p.one(), p.one()));
  // Delta(K)Delta(E) = KE (x) K + K^2 (x) KE, equal to q^2 EK (x) K + K^2 (x) KE.
  const TensorExpr ke = coproduct(U("K") * U("E"));
  CHECK(ke == TensorExpr::product(U("K") * U("E"), U("K")) + TensorExpr::product(U("K") * U("K"), U("K") * U("E")));
  CHECK(ke == normal_form(q_pow(2) * TensorExpr::product(U("E") * U("K"), U("K")) +
                              TensorExpr::product(U("K") * U("K"), U("K") * U("E")),
                          p, p));
}

TEST_CASE("counit and antipode examples") {
  CHECK(counit(U("E") * U("F")).is_zero());
  CHECK(counit(U("K") * U("Kinv") + U("K")) == LaurentScalar(2));
  CHECK(antipode(U("K")) == U("Kinv"));
  CHECK(antipode(antipode(U("E"))) == q_pow(-2) * U("E"));
  CHECK(antipode(antipode(U("F"))) == q_pow(2) * U("F"));
}

TEST_CASE("coproduct, counit and antipode respect the defining relations") {
  const auto& p = uq();
  for (const auto& rel : p.relations()) {
    CAPTURE(rel.label);
    CHECK(coproduct(rel.lhs) == coproduct(rel.rhs));
    CHECK(counit(rel.lhs) == counit(rel.rhs));
    CHECK(antipode(rel.lhs) == antipode(rel.rhs));
  }
}

TEST_CASE("coassociativity and antipode axiom on words of length <= 3") {
  for (const auto& x : uq_words(3)) {
    CAPTURE(uq().to_string(x));
    CHECK(coassociator(x).empty());
    const NcExpr unit = NcExpr(AlgebraId::UqSl2, counit(x));
    CHECK(antipode_left(x) == unit);
    CHECK(antipode_right(x) == unit);
  }
}

TEST_CASE("fundamental representation satisfies the relations exactly") {
  for (const auto& rel : uq().relations()) {
    CAPTURE(rel.label);
    CHECK(rep_tensor_power(rel.lhs, 1) == rep_tensor_power(rel.rhs, 1));
    CHECK(rep_tensor_power(rel.lhs, 2) == rep_tensor_power(rel.rhs, 2));
  }
}

TEST_CASE("pairing reproduces the generator values") {
  CHECK(pairing(T("t12"), U("E")) == s_pow(-1));
  CHECK(pairing(T("t21"), U("F")) == s_pow(1));
  CHECK(pairing(T("t11"), U("K")) == q_pow(1));
  CHECK(pairing(T("t22"), U("K")) == q_pow(-1));
  for (const char* t : {"t11", "t12", "t21", "t22"}) {
    for (const char* x : {"E", "F", "K"}) {
      const std::string key = std::string(t) + x;
      if (key == "t12E" || key == "t21F" || key == "t11K" || key == "t22K") continue;
      CAPTURE(key);
      CHECK(pairing(T(t), U(x)).is_zero());
    }
  }
  // Oracle: square the 2x2 matrix of K directly.
  const ScalarMatrix k = fundamental_rep(1);
  const ScalarMatrix k2 = k * k;
  CHECK(pairing(T("t11"), U("K") * U("K")) == k2(0, 0));
  CHECK(pairing(T("t11"), U("K") * U("K")) == q_pow(2));
  CHECK(pairing(su().one(), U("E")).is_zero());
  CHECK(pairing(su().one(), U("K")) == LaurentScalar(1));
}

TEST_CASE("pairing bialgebra laws") {
  const auto xs = uq_words(2);
  const std::vector<NcExpr> ts = {T("t11"), T("t12"), T("t21"), T("t22")};
  for (const auto& a : ts) {
    for (const auto& b : ts) {
      for (const auto& x : xs) {
        LaurentScalar via_delta;
        const TensorExpr d = coproduct(x);
        for (const auto& [k, c] : d.terms())
          via_delta += c * pairing(a, NcExpr::word(AlgebraId::UqSl2, k.first)) *
                       pairing(b, NcExpr::word(AlgebraId::UqSl2, k.second));
        CHECK(pairing(nc_mul(a, b, su()), x) == via_delta);
      }
    }
  }
  for (const auto& t : {T("t11") * T("t21"), T("t22") * T("t12"), T("t12"), T("t11") * T("t22") * T("t21")}) {
    for (const auto& x : uq_words(1)) {
      for (const auto& y : uq_words(2)) {
        LaurentScalar via_delta;
        const TensorExpr d = csl_coproduct(t);
        for (const auto& [k, c] : d.terms())
          via_delta += c * pairing(NcExpr::word(AlgebraId::CSU2, k.first), x) *
                       pairing(NcExpr::word(AlgebraId::CSU2, k.second), y);
        CHECK(pairing(t, x * y) == via_delta);
      }
    }
  }
}

TEST_CASE("pairing is well defined on c-su2-q and rejects the misprinted relation") {
  const auto xs = uq_words(3);
  for (const auto& rel : su().relations()) {
    CAPTURE(rel.label);
    for (const auto& x : xs) CHECK(pairing(rel.lhs - rel.rhs, x).is_zero());
  }
  const NcExpr misprint = T("t22") * T("t21") - q_pow(-1) * (T("t21") * T("t11"));
  bool any_nonzero = false;
  for (const auto& x : xs) any_nonzero = any_nonzero || !pairing(misprint, x).is_zero();
  CHECK(any_nonzero);
}

TEST_CASE("action tables") {
  CHECK(act(U("E"), Z("z21")) == s_pow(-1) * Z("z11"));
  CHECK(act(U("E"), Z("z11")).is_zero());
  CHECK(act(U("E"), Z("z22")) == s_pow(-1) * (q_pow(1) + q_pow(-1)) * Z("z21"));
  CHECK(act(U("F"), Z("z11")) == s_pow(1) * (q_pow(1) + q_pow(-1)) * Z("z21"));
  CHECK(act(U("F"), Z("z21")) == s_pow(1) * Z("z22"));
  CHECK(act(U("F"), Z("z22")).is_zero());
  CHECK(act(U("K"), Z("z11")) == q_pow(2) * Z("z11"));
  CHECK(act(U("K"), Z("z21")) == Z("z21"));
  CHECK(act(U("K"), Z("z22")) == q_pow(-2) * Z("z22"));
  CHECK(act(U("K"), pm().one()) == pm().one());
  CHECK(act(U("E"), pm().one()).is_zero());
  CHECK(act(U("E"), Z("z22*")) == -q_pow(-2) * nc_star(act(U("F"), Z("z22")), pm()));
  CHECK(act(U("F"), Z("z21*")) == -q_pow(2) * nc_star(act(U("E"), Z("z21")), pm()));
  CHECK(act(U("K"), Z("z11*")) == q_pow(-2) * Z("z11*"));
}

TEST_CASE("module-algebra law on products of degree <= 2") {
  std::vector<NcExpr> fs{pm().one()};
  for (const auto& a : pm().alphabet()) fs.push_back(Z(a.c_str()));
  for (const auto& a : pm().alphabet())
    for (const auto& b : pm().alphabet()) fs.push_back(Z(a.c_str()) * Z(b.c_str()));
  const auto& p = pm();
  for (const char* x : {"E", "F", "K", "Kinv"}) {
    const TensorExpr d = coproduct(U(x));
    for (std::size_t i = 0; i < fs.size(); i += 3) {
      for (std::size_t j = 0; j < fs.size(); j += 2) {
        NcExpr rhs(p.id());
        for (const auto& [k, c] : d.terms())
          rhs += c * (act(NcExpr::word(AlgebraId::UqSl2, k.first), fs[i]) *
                      act(NcExpr::word(AlgebraId::UqSl2, k.second), fs[j]));
        CHECK(act(U(x), nc_mul(fs[i], fs[j], p)) == normal_form(rhs, p));
      }
    }
  }
}

TEST_CASE("action respects the defining relations of both algebras") {
  for (const auto& rel : pm().relations()) {
    CAPTURE(rel.label);
    for (const char* x : {"E", "F", "K", "Kinv"}) CHECK(act(U(x), rel.lhs - rel.rhs).is_zero());
  }
  std::vector<NcExpr> fs;
  for (const auto& a : pm().alphabet()) fs.push_back(Z(a.c_str()));
  fs.push_back(Z("z11") * Z("z22*"));
  for (const auto& rel : uq().relations()) {
    CAPTURE(rel.label);
    for (const auto& f : fs) CHECK(act(rel.lhs, f) == act(rel.rhs, f));
  }
}

TEST_CASE("star compatibility (xi f)* = S(xi)* f*") {
  std::vector<NcExpr> fs;
  for (const auto& a : pm().alphabet()) fs.push_back(Z(a.c_str()));
  fs.push_back(Z("z21") * Z("z11*"));
  fs.push_back(Z("z22*") * Z("z22"));
  for (const char* x : {"E", "F", "K", "Kinv"}) {
    const NcExpr sx = nc_star(antipode(U(x)), uq());
    for (const auto& f : fs) CHECK(nc_star(act(U(x), f), pm()) == act(sx, nc_star(f, pm())));
  }
}

TEST_CASE("coaction examples") {
  const auto& a = pm();
  const auto& b = su();
  const TensorExpr expected = TensorExpr::product(Z("z11"), T("t12") * T("t12")) +
                              (q_pow(1) + q_pow(-1)) * TensorExpr::product(Z("z21"), T("t12") * T("t22")) +
                              TensorExpr::product(Z("z22"), T("t22") * T("t22"));
  CHECK(coaction(Z("z22")) == normal_form(expected, a, b));
  CHECK(coaction(a.one()) == TensorExpr::product(a.one(), b.one()));
  CHECK(coaction_eval(Z("z21"), U("E")) == act(U("E"), Z("z21")));
  CHECK(coaction_eval(Z("z21"), U("E")) == s_pow(-1) * Z("z11"));
  CHECK(coaction_eval(Z("z22"), U("K")) == q_pow(-2) * Z("z22"));
  CHECK(coaction_eval(Z("z11") * Z("z22"), U("F") * U("E")) == act(U("F") * U("E"), Z("z11") * Z("z22")));
  const NcExpr f = Z("z11") * Z("z21") + Z("z22*");
  CHECK(coaction_eval(f, uq().one()) == normal_form(f, a));
}

TEST_CASE("coaction formula is consistent with z12 = q z21") {
  const auto& a = pm();
  const auto& b = su();
  CHECK(normal_form(coaction_formula(1, 2), a, b) == normal_form(q_pow(1) * coaction_formula(2, 1), a, b));
}

TEST_CASE("coaction recovers the action on all xi-words of length <= 3") {
  std::vector<NcExpr> fs;
  for (const auto& a : pm().alphabet()) fs.push_back(Z(a.c_str()));
  for (const auto& x : uq_words(3)) {
    CAPTURE(uq().to_string(x));
    for (const auto& f : fs) CHECK(coaction_eval(f, x) == act(x, f));
  }
}

TEST_CASE("coaction recovers the action on mixed products") {
  const NcExpr f = Z("z21") * Z("z11*") + Z("z22*") * Z("z22");
  for (const auto& x : uq_words(2)) CHECK(coaction_eval(f, x) == act(x, f));
}

TEST_CASE("coaction is multiplicative on all 144 sample pairs") {
  const CoactionReport r = verify_coaction_hom(2);
  CHECK(r.pairs_checked == 144);
  CHECK(r.ok());
  for (const auto& m : r.mismatches) MESSAGE(m.f << " * " << m.g);
}

TEST_CASE("coaction multiplicativity on degree-3 products") {
  const CoactionReport r = verify_coaction_hom(3);
  CHECK(r.pairs_checked == 144 + 2 * 216);
  CHECK(r.ok());
}

TEST_CASE("dropping any coaction summand is detected") {
  for (const auto& [i, j] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
    for (int k = 1; k <= 2; ++k) {
      for (int l = 1; l <= 2; ++l) {
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(k);
        CAPTURE(l);
        CHECK_FALSE(verify_coaction_hom(2, mutated_coaction_table(i, j, k, l)).ok());
      }
    }
  }
}

TEST_CASE("the boundary ideal generators have the expected normal forms") {
  const auto g = j_generators();
  REQUIRE(g.size() == 4);
  const auto& p = pm();
  CHECK(g[3] == Z("z21") * Z("z21*") + Z("z22") * Z("z22*") - p.one());
  CHECK(g[0] == q_pow(2) * (Z("z11") * Z("z11*")) + q_pow(4) * (Z("z21") * Z("z21*")) - p.one());
  CHECK(g[1].constant_term().is_zero());
}
