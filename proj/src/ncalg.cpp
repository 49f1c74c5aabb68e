#include "qshilov/ncalg.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

namespace qshilov {

std::string_view algebra_name(AlgebraId id) {
  switch (id) {
    case AlgebraId::PolMatSym: return "pol-matsym-q";
    case AlgebraId::CSU2: return "c-su2-q";
    case AlgebraId::UqSl2: return "uq-sl2";
    case AlgebraId::PolC: return "pol-c-q";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// NcExpr

NcExpr::NcExpr(AlgebraId alg, const LaurentScalar& c) : alg_(alg) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

NcExpr NcExpr::word(AlgebraId alg, Word w, const LaurentScalar& c) {
  NcExpr e(alg);
  if (!c.is_zero()) e.terms_.emplace(std::move(w), c);
  return e;
}

std::size_t NcExpr::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

LaurentScalar NcExpr::constant_term() const {
  auto it = terms_.find(Word{});
  return it == terms_.end() ? LaurentScalar{} : it->second;
}

void NcExpr::add_term(const Word& w, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NcExpr& NcExpr::operator+=(const NcExpr& o) {
  if (o.alg_ != alg_) throw AlgebraMismatch("NcExpr: adding elements of different algebras");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NcExpr& NcExpr::operator-=(const NcExpr& o) {
  if (o.alg_ != alg_) throw AlgebraMismatch("NcExpr: subtracting elements of different algebras");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NcExpr& NcExpr::operator*=(const LaurentScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NcExpr operator*(const NcExpr& a, const NcExpr& b) {
  if (a.alg_ != b.alg_) throw AlgebraMismatch("NcExpr: multiplying elements of different algebras");
  NcExpr r(a.alg_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Presentation

namespace {

struct NormalFormCache {
  std::mutex mutex;
  std::map<Word, NcExpr::Terms> words;
};

std::map<const Presentation*, std::shared_ptr<NormalFormCache>>& cache_registry() {
  static std::map<const Presentation*, std::shared_ptr<NormalFormCache>> registry;
  return registry;
}

}  // namespace

Presentation::Presentation(AlgebraId id, std::string name, std::vector<std::string> alphabet)
    : id_(id), name_(std::move(name)), alphabet_(std::move(alphabet)),
      rule_index_(alphabet_.size() * alphabet_.size(), -1) {}

Letter Presentation::letter(std::string_view name) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == name) return static_cast<Letter>(i);
  throw std::invalid_argument("unknown generator '" + std::string(name) + "' in " + name_);
}

NcExpr Presentation::gen(std::string_view name) const { return NcExpr::letter(id_, letter(name)); }

NcExpr Presentation::symbol(std::string_view name) const {
  if (auto it = aliases_.find(name); it != aliases_.end()) return it->second;
  return gen(name);
}

const RewriteRule* Presentation::rule_for(Letter a, Letter b) const {
  const int idx = rule_index_[a * alphabet_.size() + b];
  return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)];
}

const NcExpr& Presentation::star_image(Letter l) const {
  if (star_images_.empty()) throw std::logic_error("presentation " + name_ + " has no star structure");
  return star_images_.at(l);
}

void Presentation::add_rule(Word pattern, NcExpr replacement) {
  if (pattern.size() != 2) throw std::invalid_argument("rewrite patterns must have two letters");
  if (replacement.algebra() != id_) throw AlgebraMismatch("rule replacement in wrong algebra");
  rule_index_[pattern[0] * alphabet_.size() + pattern[1]] = static_cast<int>(rules_.size());
  rules_.push_back({std::move(pattern), std::move(replacement)});
}

void Presentation::add_relation(std::string label, NcExpr lhs, NcExpr rhs) {
  relations_.push_back({std::move(label), std::move(lhs), std::move(rhs)});
}

void Presentation::set_star(std::vector<NcExpr> images) {
  if (images.size() != alphabet_.size()) throw std::invalid_argument("star table must cover the alphabet");
  star_images_ = std::move(images);
}

void Presentation::add_alias(std::string name, NcExpr value) { aliases_.emplace(std::move(name), std::move(value)); }

Presentation Presentation::without_rule(std::size_t index) const {
  Presentation r(id_, name_ + "/without-rule-" + std::to_string(index), alphabet_);
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (i != index) r.add_rule(rules_[i].pattern, rules_[i].replacement);
  r.relations_ = relations_;
  r.star_images_ = star_images_;
  r.aliases_ = aliases_;
  r.step_cap_ = step_cap_;
  return r;
}

std::string Presentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += alphabet_.at(w[i]);
  }
  return s;
}

std::string Presentation::to_string(const NcExpr& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (!w.empty()) os << " " << word_to_string(w);
  }
  return os.str();
}

std::string Presentation::describe() const {
  std::ostringstream os;
  os << "presentation " << name_ << "\n  alphabet:";
  for (const auto& a : alphabet_) os << " " << a;
  os << "\n";
  for (const auto& r : rules_) os << "  rule " << word_to_string(r.pattern) << " -> " << to_string(r.replacement) << "\n";
  for (const auto& r : relations_)
    os << "  relation [" << r.label << "] " << to_string(r.lhs) << " = " << to_string(r.rhs) << "\n";
  if (!star_images_.empty())
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      os << "  star " << alphabet_[i] << " = " << to_string(star_images_[i]) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

std::optional<std::size_t> first_redex(const Word& w, const Presentation& p) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (p.rule_for(w[i], w[i + 1])) return i;
  return std::nullopt;
}

class Rewriter {
public:
  Rewriter(const Presentation& p, std::map<Word, NcExpr::Terms>& memo) : p_(p), memo_(memo) {}

  const NcExpr::Terms& word(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    NcExpr::Terms out;
    if (auto pos = first_redex(w, p_)) {
      const RewriteRule& rule = *p_.rule_for(w[*pos], w[*pos + 1]);
      if (++steps_ > p_.step_cap())
        throw IterationCapExceeded("normal_form: rewrite step cap exceeded in " + p_.name());
      for (const auto& [rw, rc] : rule.replacement.terms()) {
        Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*pos));
        next.insert(next.end(), rw.begin(), rw.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(*pos) + 2, w.end());
        for (const auto& [nw, nc] : word(next)) accumulate(out, nw, rc * nc);
      }
    } else {
      out.emplace(w, LaurentScalar(1));
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  static void accumulate(NcExpr::Terms& t, const Word& w, const LaurentScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

private:
  const Presentation& p_;
  std::map<Word, NcExpr::Terms>& memo_;
  std::size_t steps_ = 0;
};

std::shared_ptr<NormalFormCache> cache_for(const Presentation& p) {
  static std::mutex registry_mutex;
  std::lock_guard lock(registry_mutex);
  auto& slot = cache_registry()[&p];
  if (!slot) slot = std::make_shared<NormalFormCache>();
  return slot;
}

}  // namespace

bool is_normal(const Word& w, const Presentation& p) { return !first_redex(w, p).has_value(); }

NcExpr normal_form(const NcExpr& e, const Presentation& p) {
  if (e.algebra() != p.id()) throw AlgebraMismatch("normal_form: expression is not in " + p.name());
  NcExpr out(e.algebra());
  // Only the long-lived presets share a cache; ad-hoc presentations (mutants)
  // use a per-call memo so stale entries can never leak between rule sets.
  const bool shared = &p == &preset_ref(p.id());
  std::map<Word, NcExpr::Terms> local;
  std::shared_ptr<NormalFormCache> cache;
  std::unique_lock<std::mutex> lock;
  if (shared) {
    cache = cache_for(p);
    lock = std::unique_lock(cache->mutex);
  }
  Rewriter rw(p, shared ? cache->words : local);
  for (const auto& [w, c] : e.terms())
    for (const auto& [nw, nc] : rw.word(w)) out.add_term(nw, c * nc);
  return out;
}

NcExpr nc_mul(const NcExpr& a, const NcExpr& b, const Presentation& p) { return normal_form(a * b, p); }

NcExpr nc_star(const NcExpr& e, const Presentation& p) {
  if (e.algebra() != p.id()) throw AlgebraMismatch("nc_star: expression is not in " + p.name());
  NcExpr out(e.algebra());
  for (const auto& [w, c] : e.terms()) {
    NcExpr term(e.algebra(), c.conj());
    for (auto it = w.rbegin(); it != w.rend(); ++it) term = term * p.star_image(*it);
    out += term;
  }
  return normal_form(out, p);
}

bool nc_equal(const NcExpr& a, const NcExpr& b, const Presentation& p) {
  return normal_form(a - b, p).is_zero();
}

// ---------------------------------------------------------------------------
// TensorExpr

TensorExpr TensorExpr::product(const NcExpr& a, const NcExpr& b) {
  TensorExpr t(a.algebra(), b.algebra());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) t.add_term(wa, wb, ca * cb);
  return t;
}

void TensorExpr::add_term(const Word& a, const Word& b, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorExpr& TensorExpr::operator+=(const TensorExpr& o) {
  if (o.left_ != left_ || o.right_ != right_) throw AlgebraMismatch("TensorExpr: leg algebras differ");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorExpr& TensorExpr::operator-=(const TensorExpr& o) {
  if (o.left_ != left_ || o.right_ != right_) throw AlgebraMismatch("TensorExpr: leg algebras differ");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorExpr& TensorExpr::operator*=(const LaurentScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

TensorExpr operator*(const TensorExpr& a, const TensorExpr& b) {
  if (a.left_ != b.left_ || a.right_ != b.right_) throw AlgebraMismatch("TensorExpr: leg algebras differ");
  TensorExpr r(a.left_, a.right_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      Word l = ka.first, rr = ka.second;
      l.insert(l.end(), kb.first.begin(), kb.first.end());
      rr.insert(rr.end(), kb.second.begin(), kb.second.end());
      r.add_term(l, rr, ca * cb);
    }
  }
  return r;
}

TensorExpr normal_form(const TensorExpr& t, const Presentation& pa, const Presentation& pb) {
  if (t.left() != pa.id() || t.right() != pb.id()) throw AlgebraMismatch("normal_form: tensor legs do not match");
  TensorExpr out(t.left(), t.right());
  for (const auto& [k, c] : t.terms()) {
    const NcExpr a = normal_form(NcExpr::word(pa.id(), k.first), pa);
    const NcExpr b = normal_form(NcExpr::word(pb.id(), k.second), pb);
    for (const auto& [wa, ca] : a.terms())
      for (const auto& [wb, cb] : b.terms()) out.add_term(wa, wb, c * ca * cb);
  }
  return out;
}

TensorExpr tensor_mul(const TensorExpr& a, const TensorExpr& b, const Presentation& pa, const Presentation& pb) {
  return normal_form(a * b, pa, pb);
}

TensorExpr tensor_star(const TensorExpr& t, const Presentation& pa, const Presentation& pb) {
  TensorExpr out(t.left(), t.right());
  for (const auto& [k, c] : t.terms()) {
    const NcExpr a = nc_star(NcExpr::word(pa.id(), k.first), pa);
    const NcExpr b = nc_star(NcExpr::word(pb.id(), k.second), pb);
    out += c.conj() * TensorExpr::product(a, b);
  }
  return out;
}

std::string to_string(const TensorExpr& t, const Presentation& pa, const Presentation& pb) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ") " << pa.word_to_string(k.first) << " (x) " << pb.word_to_string(k.second);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets

namespace {

Presentation make_pol_matsym() {
  Presentation p(AlgebraId::PolMatSym, "pol-matsym-q", {"z11", "z21", "z22", "z11*", "z21*", "z22*"});
  const auto id = p.id();
  const auto z11 = p.gen("z11"), z21 = p.gen("z21"), z22 = p.gen("z22");
  const auto z11s = p.gen("z11*"), z21s = p.gen("z21*"), z22s = p.gen("z22*");
  const auto one = p.one();
  const auto q = [](int k) { return q_pow(k); };
  const auto L = [&](const char* a, const char* b) { return Word{p.letter(a), p.letter(b)}; };

  // q(q^2 - q^-2)
  const LaurentScalar c_holo = q(3) - q(-1);
  // q(q^-1 - q)(1 + q^2)^2
  const LaurentScalar c11_21 = (1 - q(2)) * (1 + q(2)) * (1 + q(2));
  // (q^-1 - q)^2 (1 + q^2)
  const LaurentScalar c11_22 = (q(-1) - q(1)) * (q(-1) - q(1)) * (1 + q(2));
  // q(q^-1 - q)(q^-1 + q)
  const LaurentScalar c_mix = (1 - q(2)) * (q(-1) + q(1));

  // Holomorphic block, stars mirrored.
  p.add_rule(L("z21", "z11"), q(-2) * (z11 * z21));
  p.add_rule(L("z22", "z21"), q(-2) * (z21 * z22));
  p.add_rule(L("z22", "z11"), z11 * z22 - c_holo * (z21 * z21));
  p.add_rule(L("z21*", "z11*"), q(2) * (z11s * z21s));
  p.add_rule(L("z22*", "z21*"), q(2) * (z21s * z22s));
  p.add_rule(L("z22*", "z11*"), z11s * z22s + c_holo * (z21s * z21s));

  // Wick block: starred letter followed by holomorphic letter.
  p.add_rule(L("z11*", "z11"),
             q(4) * (z11 * z11s) - c11_21 * (z21 * z21s) + c11_22 * (z22 * z22s) + (1 - q(4)) * one);
  p.add_rule(L("z11*", "z21"), q(2) * (z21 * z11s) - c_mix * (z22 * z21s));
  p.add_rule(L("z11*", "z22"), z22 * z11s);
  p.add_rule(L("z21*", "z11"), q(2) * (z11 * z21s) - c_mix * (z21 * z22s));
  p.add_rule(L("z21*", "z21"), q(2) * (z21 * z21s) - (1 - q(2)) * (z22 * z22s) + (1 - q(2)) * one);
  p.add_rule(L("z21*", "z22"), q(2) * (z22 * z21s));
  p.add_rule(L("z22*", "z11"), z11 * z22s);
  p.add_rule(L("z22*", "z21"), q(2) * (z21 * z22s));
  p.add_rule(L("z22*", "z22"), q(4) * (z22 * z22s) + (1 - q(4)) * one);

  p.add_relation("z11 z21 = q^2 z21 z11", z11 * z21, q(2) * (z21 * z11));
  p.add_relation("z21 z22 = q^2 z22 z21", z21 * z22, q(2) * (z22 * z21));
  p.add_relation("z11 z22 - z22 z11 = q(q^2 - q^-2) z21^2", z11 * z22 - z22 * z11, c_holo * (z21 * z21));
  p.add_relation("z21* z11* = q^2 z11* z21*", z21s * z11s, q(2) * (z11s * z21s));
  p.add_relation("z22* z21* = q^2 z21* z22*", z22s * z21s, q(2) * (z21s * z22s));
  p.add_relation("z22* z11* - z11* z22* = q(q^2 - q^-2) z21*^2", z22s * z11s - z11s * z22s, c_holo * (z21s * z21s));
  p.add_relation("z11* z11", z11s * z11,
                 q(4) * (z11 * z11s) - c11_21 * (z21 * z21s) + c11_22 * (z22 * z22s) + (1 - q(4)) * one);
  p.add_relation("z11* z21", z11s * z21, q(2) * (z21 * z11s) - c_mix * (z22 * z21s));
  p.add_relation("z11* z22", z11s * z22, z22 * z11s);
  p.add_relation("z21* z21", z21s * z21, q(2) * (z21 * z21s) - (1 - q(2)) * (z22 * z22s) + (1 - q(2)) * one);
  p.add_relation("z21* z22", z21s * z22, q(2) * (z22 * z21s));
  p.add_relation("z22* z22", z22s * z22, q(4) * (z22 * z22s) + (1 - q(4)) * one);

  p.set_star({z11s, z21s, z22s, z11, z21, z22});
  p.add_alias("z12", q(1) * z21);
  p.add_alias("z12*", q(1) * z21s);
  (void)id;
  return p;
}

Presentation make_csu2() {
  // Letter order t21 < t12 < t11 < t22; normal words t21^a t12^b (t11^c | t22^c).
  Presentation p(AlgebraId::CSU2, "c-su2-q", {"t21", "t12", "t11", "t22"});
  const auto t11 = p.gen("t11"), t12 = p.gen("t12"), t21 = p.gen("t21"), t22 = p.gen("t22");
  const auto one = p.one();
  const auto q = [](int k) { return q_pow(k); };
  const auto L = [&](const char* a, const char* b) { return Word{p.letter(a), p.letter(b)}; };

  p.add_rule(L("t11", "t21"), q(1) * (t21 * t11));
  p.add_rule(L("t11", "t12"), q(1) * (t12 * t11));
  p.add_rule(L("t12", "t21"), t21 * t12);
  p.add_rule(L("t22", "t21"), q(-1) * (t21 * t22));
  p.add_rule(L("t22", "t12"), q(-1) * (t12 * t22));
  p.add_rule(L("t11", "t22"), one + q(1) * (t21 * t12));
  p.add_rule(L("t22", "t11"), one + q(-1) * (t21 * t12));

  p.add_relation("t11 t21 = q t21 t11", t11 * t21, q(1) * (t21 * t11));
  p.add_relation("t11 t12 = q t12 t11", t11 * t12, q(1) * (t12 * t11));
  p.add_relation("t12 t21 = t21 t12", t12 * t21, t21 * t12);
  p.add_relation("t22 t21 = q^-1 t21 t22", t22 * t21, q(-1) * (t21 * t22));
  p.add_relation("t22 t12 = q^-1 t12 t22", t22 * t12, q(-1) * (t12 * t22));
  p.add_relation("t11 t22 - t22 t11 = (q - q^-1) t12 t21", t11 * t22 - t22 * t11, (q(1) - q(-1)) * (t12 * t21));
  p.add_relation("t11 t22 - q t12 t21 = 1", t11 * t22 - q(1) * (t12 * t21), one);

  // star table, in alphabet order t21, t12, t11, t22
  p.set_star({-q(-1) * t12, -q(1) * t21, t22, t11});
  return p;
}

Presentation make_uq_sl2() {
  // Letter order F < K < Kinv < E; normal words F^a K^b E^c or F^a Kinv^b E^c.
  Presentation p(AlgebraId::UqSl2, "uq-sl2", {"F", "K", "Kinv", "E"});
  const auto E = p.gen("E"), F = p.gen("F"), K = p.gen("K"), Ki = p.gen("Kinv");
  const auto one = p.one();
  const auto q = [](int k) { return q_pow(k); };
  const auto L = [&](const char* a, const char* b) { return Word{p.letter(a), p.letter(b)}; };
  const LaurentScalar inv = LaurentScalar::inv_q_minus_qinv();

  p.add_rule(L("K", "Kinv"), one);
  p.add_rule(L("Kinv", "K"), one);
  p.add_rule(L("K", "F"), q(-2) * (F * K));
  p.add_rule(L("Kinv", "F"), q(2) * (F * Ki));
  p.add_rule(L("E", "K"), q(-2) * (K * E));
  p.add_rule(L("E", "Kinv"), q(2) * (Ki * E));
  p.add_rule(L("E", "F"), F * E + inv * (K - Ki));

  p.add_relation("K Kinv = 1", K * Ki, one);
  p.add_relation("Kinv K = 1", Ki * K, one);
  p.add_relation("K E = q^2 E K", K * E, q(2) * (E * K));
  p.add_relation("K F = q^-2 F K", K * F, q(-2) * (F * K));
  p.add_relation("[E, F] = (K - Kinv)/(q - q^-1)", E * F - F * E, inv * (K - Ki));

  // U_q(su2): E* = K F, F* = E Kinv, K* = K; alphabet order F, K, Kinv, E.
  p.set_star({q(2) * (Ki * E), K, Ki, q(-2) * (F * K)});
  return p;
}

Presentation make_pol_c() {
  Presentation p(AlgebraId::PolC, "pol-c-q", {"z", "z*"});
  const auto z = p.gen("z"), zs = p.gen("z*");
  p.add_rule(Word{1, 0}, q_pow(4) * (z * zs) + (1 - q_pow(4)) * p.one());
  p.add_relation("z* z = q^4 z z* + 1 - q^4", zs * z, q_pow(4) * (z * zs) + (1 - q_pow(4)) * p.one());
  p.set_star({zs, z});
  return p;
}

}  // namespace

const Presentation& preset_ref(AlgebraId id) {
  static const Presentation pol_matsym = make_pol_matsym();
  static const Presentation csu2 = make_csu2();
  static const Presentation uq = make_uq_sl2();
  static const Presentation pol_c = make_pol_c();
  switch (id) {
    case AlgebraId::PolMatSym: return pol_matsym;
    case AlgebraId::CSU2: return csu2;
    case AlgebraId::UqSl2: return uq;
    case AlgebraId::PolC: return pol_c;
  }
  throw std::invalid_argument("unknown algebra id");
}

Presentation preset(std::string_view name) {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC})
    if (algebra_name(id) == name) return preset_ref(id);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Confluence

ConfluenceReport local_confluence_check(const Presentation& p, int max_deg) {
  if (max_deg < 3) throw std::invalid_argument("local_confluence_check: max_deg must be at least 3");
  ConfluenceReport report;
  const std::size_t n = p.alphabet_size();
  Word w;
  std::function<void(int)> visit = [&](int remaining) {
    if (w.size() >= 3) {
      ++report.words_checked;
      std::vector<std::pair<std::size_t, NcExpr>> results;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const RewriteRule* rule = p.rule_for(w[i], w[i + 1]);
        if (!rule) continue;
        NcExpr prefix = NcExpr::word(p.id(), Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)));
        NcExpr suffix = NcExpr::word(p.id(), Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end()));
        results.emplace_back(i, normal_form(prefix * rule->replacement * suffix, p));
      }
      for (std::size_t k = 1; k < results.size(); ++k) {
        if (results[k].second != results[0].second) {
          report.violations.push_back({w, results[0].first, results[k].first, results[0].second, results[k].second});
        }
      }
    }
    if (remaining == 0) return;
    for (std::size_t l = 0; l < n; ++l) {
      w.push_back(static_cast<Letter>(l));
      visit(remaining - 1);
      w.pop_back();
    }
  };
  visit(max_deg);
  for (const auto& rel : p.relations())
    if (!nc_equal(rel.lhs, rel.rhs, p)) report.failed_relations.push_back(rel.label);
  return report;
}

}  // namespace qshilov
