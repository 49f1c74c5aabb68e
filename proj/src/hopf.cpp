#include "qshilov/hopf.hpp"

#include <functional>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qshilov/boundary.hpp"

namespace qshilov {

namespace {

enum UqLetter : Letter { kF = 0, kK = 1, kKinv = 2, kE = 3 };

const Presentation& uq() { return preset_ref(AlgebraId::UqSl2); }
const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }
const Presentation& su() { return preset_ref(AlgebraId::CSU2); }

void require(const NcExpr& x, AlgebraId id, const char* what) {
  if (x.algebra() != id) throw AlgebraMismatch(std::string(what) + ": expected an element of " +
                                               std::string(algebra_name(id)));
}

HopfTables make_tables() {
  const auto& p = uq();
  const auto E = p.gen("E"), F = p.gen("F"), K = p.gen("K"), Ki = p.gen("Kinv"), one = p.one();
  using T = TensorExpr;
  HopfTables t;
  t.coproduct = {T::product(F, Ki) + T::product(one, F), T::product(K, K), T::product(Ki, Ki),
                 T::product(E, one) + T::product(K, E)};
  t.counit = {0, 1, 1, 0};
  t.antipode = {-normal_form(F * K, p), Ki, K, -normal_form(Ki * E, p)};
  return t;
}

}  // namespace

const HopfTables& hopf_tables() {
  static const HopfTables t = make_tables();
  return t;
}

TensorExpr coproduct(const NcExpr& x) {
  require(x, AlgebraId::UqSl2, "coproduct");
  const auto& p = uq();
  TensorExpr out(p.id(), p.id());
  for (const auto& [w, c] : x.terms()) {
    TensorExpr acc = TensorExpr::product(p.one(), p.one());
    for (Letter l : w) acc = tensor_mul(acc, hopf_tables().coproduct[l], p, p);
    out += c * acc;
  }
  return out;
}

LaurentScalar counit(const NcExpr& x) {
  require(x, AlgebraId::UqSl2, "counit");
  LaurentScalar out;
  for (const auto& [w, c] : x.terms()) {
    LaurentScalar v = c;
    for (Letter l : w) v *= hopf_tables().counit[l];
    out += v;
  }
  return out;
}

NcExpr antipode(const NcExpr& x) {
  require(x, AlgebraId::UqSl2, "antipode");
  const auto& p = uq();
  NcExpr out(p.id());
  for (const auto& [w, c] : x.terms()) {
    NcExpr term(p.id(), c);
    for (auto it = w.rbegin(); it != w.rend(); ++it) term = term * hopf_tables().antipode[*it];
    out += term;
  }
  return normal_form(out, p);
}

Tensor3 coassociator(const NcExpr& x) {
  const auto& p = uq();
  Tensor3 out;
  const auto add = [&out](std::array<Word, 3> key, const LaurentScalar& c) {
    auto [it, inserted] = out.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  const TensorExpr d = coproduct(x);
  for (const auto& [k, c] : d.terms()) {
    const TensorExpr dl = coproduct(NcExpr::word(p.id(), k.first));
    for (const auto& [kk, cc] : dl.terms()) add({kk.first, kk.second, k.second}, c * cc);
    const TensorExpr dr = coproduct(NcExpr::word(p.id(), k.second));
    for (const auto& [kk, cc] : dr.terms()) add({k.first, kk.first, kk.second}, -(c * cc));
  }
  return out;
}

NcExpr antipode_left(const NcExpr& x) {
  const auto& p = uq();
  NcExpr out(p.id());
  const TensorExpr d = coproduct(x);
  for (const auto& [k, c] : d.terms())
    out += c * (antipode(NcExpr::word(p.id(), k.first)) * NcExpr::word(p.id(), k.second));
  return normal_form(out, p);
}

NcExpr antipode_right(const NcExpr& x) {
  const auto& p = uq();
  NcExpr out(p.id());
  const TensorExpr d = coproduct(x);
  for (const auto& [k, c] : d.terms())
    out += c * (NcExpr::word(p.id(), k.first) * antipode(NcExpr::word(p.id(), k.second)));
  return normal_form(out, p);
}

// ---------------------------------------------------------------------------
// Fundamental representation and pairing

const ScalarMatrix& fundamental_rep(Letter l) {
  static const std::array<ScalarMatrix, 4> images = [] {
    std::array<ScalarMatrix, 4> m;
    for (auto& x : m) x = ScalarMatrix::Zero(2, 2);
    m[kF](1, 0) = s_pow(1);
    m[kK](0, 0) = q_pow(1);
    m[kK](1, 1) = q_pow(-1);
    m[kKinv](0, 0) = q_pow(-1);
    m[kKinv](1, 1) = q_pow(1);
    m[kE](0, 1) = s_pow(-1);
    return m;
  }();
  if (l >= images.size()) throw std::out_of_range("fundamental_rep: letter out of range");
  return images[l];
}

namespace {

ScalarMatrix kron_power(const ScalarMatrix& m, int n) {
  ScalarMatrix r = ScalarMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    ScalarMatrix next = Eigen::kroneckerProduct(r, m).eval();
    r = std::move(next);
  }
  return r;
}

// rho^{(x) n} of the iterated coproduct of a single letter.
ScalarMatrix letter_power(Letter l, int n) {
  const ScalarMatrix& rho = fundamental_rep(l);
  if (n == 0) return ScalarMatrix::Constant(1, 1, hopf_tables().counit[l]);
  if (l == kK || l == kKinv) return kron_power(rho, n);
  const std::size_t dim = std::size_t{1} << n;
  ScalarMatrix acc = ScalarMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const ScalarMatrix id2 = ScalarMatrix::Identity(2, 2);
  for (int p = 0; p < n; ++p) {
    const ScalarMatrix left = l == kE ? kron_power(fundamental_rep(kK), p) : kron_power(id2, p);
    const ScalarMatrix right = l == kE ? kron_power(id2, n - p - 1) : kron_power(fundamental_rep(kKinv), n - p - 1);
    ScalarMatrix lm = Eigen::kroneckerProduct(left, rho).eval();
    ScalarMatrix term = Eigen::kroneckerProduct(lm, right).eval();
    acc += term;
  }
  return acc;
}

// (row, column) of each c-su2-q letter in the 2x2 matrix of generators.
std::pair<int, int> t_index(Letter l) {
  switch (l) {
    case 0: return {1, 0};  // t21
    case 1: return {0, 1};  // t12
    case 2: return {0, 0};  // t11
    case 3: return {1, 1};  // t22
  }
  throw std::out_of_range("t_index");
}

}  // namespace

ScalarMatrix rep_tensor_power(const NcExpr& x, int n) {
  require(x, AlgebraId::UqSl2, "rep_tensor_power");
  if (n < 0 || n > 12) throw std::invalid_argument("rep_tensor_power: tensor power out of range");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  ScalarMatrix out = ScalarMatrix::Zero(dim, dim);
  for (const auto& [w, c] : x.terms()) {
    ScalarMatrix m = ScalarMatrix::Identity(dim, dim);
    for (Letter l : w) {
      ScalarMatrix next = (m * letter_power(l, n)).eval();
      m = std::move(next);
    }
    out += m * c;
  }
  return out;
}

LaurentScalar pairing(const NcExpr& a, const NcExpr& xi) {
  require(a, AlgebraId::CSU2, "pairing");
  require(xi, AlgebraId::UqSl2, "pairing");
  std::map<int, ScalarMatrix> by_power;
  LaurentScalar out;
  for (const auto& [w, c] : a.terms()) {
    const int n = static_cast<int>(w.size());
    auto it = by_power.find(n);
    if (it == by_power.end()) it = by_power.emplace(n, rep_tensor_power(xi, n)).first;
    Eigen::Index row = 0, col = 0;
    for (Letter l : w) {
      const auto [i, j] = t_index(l);
      row = 2 * row + i;
      col = 2 * col + j;
    }
    out += c * it->second(row, col);
  }
  return out;
}

TensorExpr csl_coproduct(const NcExpr& a) {
  require(a, AlgebraId::CSU2, "csl_coproduct");
  const auto& p = su();
  const auto t = [&p](int i, int j) { return p.gen("t" + std::to_string(i) + std::to_string(j)); };
  std::array<TensorExpr, 4> images{TensorExpr(p.id(), p.id()), TensorExpr(p.id(), p.id()),
                                   TensorExpr(p.id(), p.id()), TensorExpr(p.id(), p.id())};
  for (Letter l = 0; l < 4; ++l) {
    const auto [i, j] = t_index(l);
    for (int k = 1; k <= 2; ++k) images[l] += TensorExpr::product(t(i + 1, k), t(k, j + 1));
  }
  TensorExpr out(p.id(), p.id());
  for (const auto& [w, c] : a.terms()) {
    TensorExpr acc = TensorExpr::product(p.one(), p.one());
    for (Letter l : w) acc = tensor_mul(acc, images[l], p, p);
    out += c * acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Action

namespace {

std::vector<NcExpr> make_action_table() {
  const auto& p = pm();
  const auto z11 = p.gen("z11"), z21 = p.gen("z21"), z22 = p.gen("z22"), zero = p.zero();
  const LaurentScalar qq = q_pow(1) + q_pow(-1);
  // Rows F, K, Kinv, E; columns z11, z21, z22.
  std::vector<std::vector<NcExpr>> holo = {
      {s_pow(1) * qq * z21, s_pow(1) * z22, zero},
      {q_pow(2) * z11, z21, q_pow(-2) * z22},
      {q_pow(-2) * z11, z21, q_pow(2) * z22},
      {zero, s_pow(-1) * z11, s_pow(-1) * qq * z21},
  };
  std::vector<NcExpr> table;
  for (Letter x = 0; x < 4; ++x) {
    for (int j = 0; j < 3; ++j) table.push_back(holo[x][j]);
    for (int j = 0; j < 3; ++j) {
      switch (x) {
        case kE: table.push_back(-q_pow(-2) * nc_star(holo[kF][j], p)); break;
        case kF: table.push_back(-q_pow(2) * nc_star(holo[kE][j], p)); break;
        case kK: table.push_back(nc_star(holo[kKinv][j], p)); break;
        default: table.push_back(nc_star(holo[kK][j], p)); break;
      }
    }
  }
  return table;
}

NcExpr act_letter(Letter x, const Word& w) {
  const auto& p = pm();
  if (w.empty()) return NcExpr(p.id(), hopf_tables().counit[x]);
  const NcExpr head = NcExpr::word(p.id(), Word{w.front()});
  const Word rest(w.begin() + 1, w.end());
  const NcExpr tail = NcExpr::word(p.id(), rest);
  switch (x) {
    case kE: return action_image(kE, w.front()) * tail + action_image(kK, w.front()) * act_letter(kE, rest);
    case kF: return action_image(kF, w.front()) * act_letter(kKinv, rest) + head * act_letter(kF, rest);
    default: return action_image(x, w.front()) * act_letter(x, rest);
  }
}

}  // namespace

const NcExpr& action_image(Letter xi, Letter z) {
  static const std::vector<NcExpr> table = make_action_table();
  if (xi >= 4 || z >= 6) throw std::out_of_range("action_image: letter out of range");
  return table[static_cast<std::size_t>(xi) * 6 + z];
}

NcExpr act(const NcExpr& xi, const NcExpr& f) {
  require(xi, AlgebraId::UqSl2, "act");
  require(f, AlgebraId::PolMatSym, "act");
  const auto& p = pm();
  NcExpr out(p.id());
  for (const auto& [w, c] : xi.terms()) {
    NcExpr g = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      NcExpr next(p.id());
      for (const auto& [gw, gc] : g.terms()) next += gc * act_letter(*it, gw);
      g = normal_form(next, p);
    }
    out += c * g;
  }
  return normal_form(out, p);
}

// ---------------------------------------------------------------------------
// Coaction

TensorExpr coaction_formula(int i, int j, std::optional<std::pair<int, int>> skip) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw std::invalid_argument("coaction_formula: index out of range");
  const auto& a = pm();
  const auto& b = su();
  const auto z = [&a](int k, int l) { return a.symbol("z" + std::to_string(k) + std::to_string(l)); };
  const auto t = [&b](int k, int l) { return b.gen("t" + std::to_string(k) + std::to_string(l)); };
  TensorExpr out(a.id(), b.id());
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l)
      if (!skip || *skip != std::pair{k, l}) out += TensorExpr::product(z(k, l), t(k, i) * t(l, j));
  return out;
}

namespace {

CoactionTable build_table(std::optional<std::array<int, 4>> mutation) {
  const auto& a = pm();
  const auto& b = su();
  CoactionTable table;
  for (const auto& [i, j] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
    std::optional<std::pair<int, int>> skip;
    if (mutation && (*mutation)[0] == i && (*mutation)[1] == j) skip = std::pair{(*mutation)[2], (*mutation)[3]};
    table.images.push_back(normal_form(coaction_formula(i, j, skip), a, b));
  }
  for (int k = 0; k < 3; ++k) table.images.push_back(normal_form(tensor_star(table.images[k], a, b), a, b));
  return table;
}

}  // namespace

const CoactionTable& coaction_table() {
  static const CoactionTable t = build_table(std::nullopt);
  return t;
}

CoactionTable mutated_coaction_table(int i, int j, int k, int l) {
  if (i == 1 && j == 2) throw std::invalid_argument("mutated_coaction_table: z12 is not a generator");
  return build_table(std::array<int, 4>{i, j, k, l});
}

TensorExpr coaction(const NcExpr& f, const CoactionTable& table) {
  require(f, AlgebraId::PolMatSym, "coaction");
  const auto& a = pm();
  const auto& b = su();
  TensorExpr out(a.id(), b.id());
  for (const auto& [w, c] : f.terms()) {
    TensorExpr acc = TensorExpr::product(a.one(), b.one());
    for (Letter l : w) acc = tensor_mul(acc, table.images.at(l), a, b);
    out += c * acc;
  }
  return out;
}

NcExpr coaction_eval(const NcExpr& f, const NcExpr& xi) {
  const auto& a = pm();
  const auto& b = su();
  std::map<Word, LaurentScalar> paired;
  NcExpr out(a.id());
  const TensorExpr d = coaction(f);
  for (const auto& [k, c] : d.terms()) {
    auto it = paired.find(k.second);
    if (it == paired.end()) it = paired.emplace(k.second, pairing(NcExpr::word(b.id(), k.second), xi)).first;
    out.add_term(k.first, c * it->second);
  }
  return normal_form(out, a);
}

std::vector<std::pair<std::string, NcExpr>> coaction_sample() {
  const auto& p = pm();
  std::vector<std::pair<std::string, NcExpr>> out;
  for (const auto& name : p.alphabet()) out.emplace_back(name, p.gen(name));
  out.emplace_back("z12", p.symbol("z12"));
  out.emplace_back("z12*", p.symbol("z12*"));
  const auto g = j_generators();
  const char* names[] = {"g11", "g12", "g21", "g22"};
  for (std::size_t k = 0; k < g.size(); ++k) out.emplace_back(names[k], g[k]);
  return out;
}

CoactionReport verify_coaction_hom(int max_deg, const CoactionTable& table) {
  if (max_deg < 2) throw std::invalid_argument("verify_coaction_hom: max_deg must be at least 2");
  const auto& a = pm();
  const auto& b = su();
  CoactionReport report;
  const auto check = [&](const std::string& fn, const NcExpr& f, const std::string& gn, const NcExpr& g) {
    ++report.pairs_checked;
    const TensorExpr lhs = coaction(nc_mul(f, g, a), table);
    const TensorExpr rhs = tensor_mul(coaction(f, table), coaction(g, table), a, b);
    if (lhs != rhs) report.mismatches.push_back({fn, gn});
  };
  const auto sample = coaction_sample();
  for (const auto& [fn, f] : sample)
    for (const auto& [gn, g] : sample) check(fn, f, gn, g);

  const std::size_t n = a.alphabet_size();
  std::vector<Word> words{Word{}};
  std::vector<Word> all;
  for (int len = 1; len < max_deg; ++len) {
    std::vector<Word> next;
    for (const auto& w : words)
      for (std::size_t l = 0; l < n; ++l) {
        Word x = w;
        x.push_back(static_cast<Letter>(l));
        next.push_back(x);
      }
    words = next;
    all.insert(all.end(), words.begin(), words.end());
  }
  for (const auto& u : all)
    for (const auto& v : all)
      if (u.size() + v.size() <= static_cast<std::size_t>(max_deg) && u.size() + v.size() > 2)
        check(a.word_to_string(u), NcExpr::word(a.id(), u), a.word_to_string(v), NcExpr::word(a.id(), v));
  return report;
}

}  // namespace qshilov
