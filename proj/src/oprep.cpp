#include "qshilov/oprep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "qshilov/hopf.hpp"

namespace qshilov {

namespace {

mpq_class floor_q(const mpq_class& r) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return mpq_class(f);
}

}  // namespace

Angle Angle::pi_times(const mpq_class& r) {
  Angle a;
  a.pi_ = r;
  a.pi_.canonicalize();
  return a;
}

Angle Angle::grid(long j, long n) {
  if (n <= 0) throw std::invalid_argument("Angle::grid: n must be positive");
  return pi_times(mpq_class(2 * j, n));
}

Angle Angle::symbol(const std::string& name, const mpq_class& coeff) {
  Angle a;
  if (sgn(coeff) != 0) a.sym_[name] = coeff;
  return a;
}

double Angle::value(const PhaseBindings& bindings) const {
  double v = pi_.get_d() * std::numbers::pi;
  for (const auto& [name, c] : sym_) {
    const auto it = bindings.find(name);
    if (it == bindings.end()) throw std::invalid_argument("unbound phase symbol: " + name);
    v += c.get_d() * it->second;
  }
  return v;
}

std::string Angle::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : sym_) {
    if (!first) os << " + ";
    first = false;
    if (c == 1) os << name;
    else os << c.get_str() << "*" << name;
  }
  if (sgn(pi_) != 0 || first) {
    if (!first) os << " + ";
    os << pi_.get_str() << "*pi";
  }
  return os.str();
}

Angle& Angle::operator+=(const Angle& o) {
  pi_ += o.pi_;
  for (const auto& [name, c] : o.sym_) {
    auto& slot = sym_[name];
    slot += c;
    if (sgn(slot) == 0) sym_.erase(name);
  }
  return *this;
}

Angle& Angle::operator*=(const mpq_class& r) {
  if (sgn(r) == 0) {
    pi_ = 0;
    sym_.clear();
    return *this;
  }
  pi_ *= r;
  for (auto& [name, c] : sym_) c *= r;
  return *this;
}

bool operator<(const Angle& a, const Angle& b) {
  if (a.pi_ != b.pi_) return a.pi_ < b.pi_;
  return a.sym_ < b.sym_;
}

OpWord parse_op_word(const std::string& text) {
  OpWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    int reps = 1;
    if (const auto caret = tok.find('^'); caret != std::string::npos) {
      reps = std::stoi(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    OpLetter l{};
    if (tok == "I") continue;
    if (tok == "S") l = op_S();
    else if (tok == "S*") l = op_Sstar();
    else if (tok == "D") l = op_D();
    else if (tok.size() > 1 && tok[0] == 'C') l = op_C(std::stoi(tok.substr(1)));
    else throw std::invalid_argument("bad operator letter: " + tok);
    for (int r = 0; r < reps; ++r) w.push_back(l);
  }
  return w;
}

std::string to_string(const OpWord& w) {
  if (w.empty()) return "I";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case OpKind::S: out += "S"; break;
      case OpKind::Sstar: out += "S*"; break;
      case OpKind::C: out += "C" + std::to_string(l.n); break;
      case OpKind::D: out += "D"; break;
    }
  }
  return out;
}

OpSymbolExpr OpSymbolExpr::identity(int legs, const LaurentScalar& c, const Angle& phase) {
  OpSymbolExpr e(legs);
  e.add_term(phase, Legs(legs), c);
  return e;
}

OpSymbolExpr OpSymbolExpr::term(Legs legs, const LaurentScalar& c, const Angle& phase) {
  OpSymbolExpr e(static_cast<int>(legs.size()));
  e.add_term(phase, legs, c);
  return e;
}

void OpSymbolExpr::add_term(const Angle& phase, const Legs& words, const LaurentScalar& c) {
  if (static_cast<int>(words.size()) != legs_) throw std::invalid_argument("OpSymbolExpr: leg count mismatch");
  if (c.is_zero()) return;
  Angle a = phase;
  a.pi_ -= 2 * floor_q(a.pi_ / 2);
  const mpq_class quarters = floor_q(2 * a.pi_);
  LaurentScalar coeff = c;
  for (long k = 0; k < quarters.get_num().get_si(); ++k) coeff *= LaurentScalar::i();
  a.pi_ -= quarters / 2;
  a.pi_.canonicalize();
  auto [it, inserted] = terms_.try_emplace(Key{std::move(a), words}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OpSymbolExpr& OpSymbolExpr::operator+=(const OpSymbolExpr& o) {
  if (o.legs_ != legs_) throw std::invalid_argument("OpSymbolExpr: leg count mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

OpSymbolExpr& OpSymbolExpr::operator-=(const OpSymbolExpr& o) {
  if (o.legs_ != legs_) throw std::invalid_argument("OpSymbolExpr: leg count mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

OpSymbolExpr& OpSymbolExpr::operator*=(const LaurentScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

OpSymbolExpr operator*(const OpSymbolExpr& a, const OpSymbolExpr& b) {
  if (a.legs_ != b.legs_) throw std::invalid_argument("OpSymbolExpr: leg count mismatch");
  OpSymbolExpr out(a.legs_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      OpSymbolExpr::Legs words = ka.second;
      for (int l = 0; l < a.legs_; ++l) words[l].insert(words[l].end(), kb.second[l].begin(), kb.second[l].end());
      out.add_term(ka.first + kb.first, words, ca * cb);
    }
  }
  return out;
}

OpSymbolExpr OpSymbolExpr::scaled(const Angle& phase) const {
  OpSymbolExpr out(legs_);
  for (const auto& [k, c] : terms_) out.add_term(k.first + phase, k.second, c);
  return out;
}

OpSymbolExpr OpSymbolExpr::adjoint() const {
  OpSymbolExpr out(legs_);
  for (const auto& [k, c] : terms_) {
    Legs words = k.second;
    for (auto& w : words) {
      std::reverse(w.begin(), w.end());
      for (auto& l : w) {
        if (l.kind == OpKind::S) l.kind = OpKind::Sstar;
        else if (l.kind == OpKind::Sstar) l.kind = OpKind::S;
      }
    }
    out.add_term(-k.first, words, c.conj());
  }
  return out;
}

int OpSymbolExpr::guard() const {
  int g = 0;
  for (const auto& [k, c] : terms_) {
    for (const auto& w : k.second) {
      g = std::max(g, static_cast<int>(std::count_if(w.begin(), w.end(),
                                                     [](const OpLetter& l) { return l.kind == OpKind::S; })));
    }
  }
  return g;
}

std::string OpSymbolExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (!k.first.is_zero()) out += "*e^{i(" + k.first.to_string() + ")}";
    for (std::size_t l = 0; l < k.second.size(); ++l) {
      out += l == 0 ? "*[" : " (x) [";
      out += qshilov::to_string(k.second[l]) + "]";
    }
  }
  return out;
}

OpSymbolExpr tensor(const OpSymbolExpr& a, const OpSymbolExpr& b) {
  OpSymbolExpr out(a.legs() + b.legs());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      OpSymbolExpr::Legs words = ka.second;
      words.insert(words.end(), kb.second.begin(), kb.second.end());
      out.add_term(ka.first + kb.first, words, ca * cb);
    }
  }
  return out;
}

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
  int legs;
  AlgebraId algebra;
  std::size_t arity;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::Fock, "fock", 3, AlgebraId::PolMatSym, 0},
    {Family::Tau, "tau", 2, AlgebraId::PolMatSym, 1},
    {Family::Omega, "omega", 1, AlgebraId::PolMatSym, 1},
    {Family::Nu, "nu", 1, AlgebraId::PolMatSym, 1},
    {Family::Theta, "theta", 0, AlgebraId::PolMatSym, 2},
    {Family::Pi0, "pi0", 1, AlgebraId::CSU2, 1},
    {Family::RhoFock, "rho-fock", 1, AlgebraId::PolC, 0},
    {Family::RhoPhase, "rho-phase", 0, AlgebraId::PolC, 1},
    {Family::FPhi, "F-phi", 1, AlgebraId::PolMatSym, 1},
    {Family::Chi, "chi", 0, AlgebraId::PolMatSym, 2},
    {Family::FPhiCoact, "Fphi-coact", 2, AlgebraId::PolMatSym, 1},
    {Family::ChiCoact, "chi-coact", 1, AlgebraId::PolMatSym, 2},
};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace

std::string family_name(Family f) { return info(f).name; }

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& i : kFamilies) out.push_back(i.family);
  return out;
}

RepSpec RepSpec::make(Family f, std::vector<Angle> phases) {
  const auto& fi = info(f);
  if (phases.size() < fi.arity) phases.resize(fi.arity);
  if (phases.size() != fi.arity) throw std::invalid_argument(std::string("too many phases for ") + fi.name);
  return RepSpec{f, std::move(phases)};
}

RepSpec RepSpec::parse(const std::string& name, std::vector<Angle> phases) {
  for (const auto& fi : kFamilies) {
    if (name == fi.name) return make(fi.family, std::move(phases));
  }
  throw std::invalid_argument("unknown representation family: " + name);
}

std::string RepSpec::name() const { return info(family).name; }
int RepSpec::legs() const { return info(family).legs; }
AlgebraId RepSpec::algebra() const { return info(family).algebra; }
std::size_t RepSpec::arity() const { return info(family).arity; }

std::string RepSpec::to_string() const {
  std::string out = name();
  if (phases.empty()) return out;
  out += "(";
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (k) out += ", ";
    out += phases[k].to_string();
  }
  return out + ")";
}

namespace {

using Legs = OpSymbolExpr::Legs;

OpSymbolExpr op(const std::vector<const char*>& words, const LaurentScalar& c = 1, const Angle& phase = {}) {
  Legs legs;
  for (const char* w : words) legs.push_back(parse_op_word(w));
  return OpSymbolExpr::term(std::move(legs), c, phase);
}

LaurentScalar qi(int k) { return LaurentScalar::q_pow(k); }

// Images of z11, z21, z22 (holomorphic part) for the directly coded families.
std::vector<OpSymbolExpr> holomorphic_images(const RepSpec& spec) {
  const auto& ph = spec.phases;
  switch (spec.family) {
    case Family::Fock:
      return {op({"I", "D^2", "C4 S"}) - op({"S* C4", "C2 S C2 S", "I"}, qi(-1)),
              op({"D^2", "C2 S", "I"}), op({"C4 S", "I", "I"})};
    case Family::Tau:
      return {op({"I", "D^2"}, 1, ph[0]) - op({"S* C4", "C2 S C2 S"}, qi(-1)), op({"D^2", "C2 S"}),
              op({"C4 S", "I"})};
    case Family::Omega:
      return {op({"S* C4"}, -qi(-1), mpq_class(2) * ph[0]), op({"D^2"}, 1, ph[0]), op({"C4 S"})};
    case Family::Nu:
    case Family::FPhi:
      return {op({"C4 S"}, qi(-1)), OpSymbolExpr(1), op({"I"}, 1, ph[0])};
    case Family::Theta:
    case Family::Chi:
      return {op({}, qi(-1), ph[0]), OpSymbolExpr(0), op({}, 1, ph[1])};
    default:
      throw std::logic_error("no holomorphic table");
  }
}

std::vector<OpSymbolExpr> pi0_images(const Angle& phi) {
  // t21, t12, t11, t22
  return {op({"D"}, 1, phi), op({"D"}, -qi(1), -phi), op({"S* C2"}), op({"C2 S"})};
}

OpSymbolExpr word_image(const Word& w, const std::vector<OpSymbolExpr>& images, int legs) {
  OpSymbolExpr acc = OpSymbolExpr::identity(legs);
  for (Letter l : w) acc = acc * images.at(l);
  return acc;
}

std::vector<OpSymbolExpr> coact_images(const RepSpec& left) {
  const auto left_images = generator_images(left);
  const auto right_images = pi0_images(Angle{});
  const int legs = left.legs() + 1;
  std::vector<OpSymbolExpr> out;
  for (const auto& image : coaction_table().images) {
    OpSymbolExpr acc(legs);
    for (const auto& [key, c] : image.terms()) {
      acc += c * tensor(word_image(key.first, left_images, left.legs()), word_image(key.second, right_images, 1));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

std::vector<OpSymbolExpr> generator_images(const RepSpec& spec) {
  switch (spec.family) {
    case Family::Pi0:
      return pi0_images(spec.phases[0]);
    case Family::RhoFock: {
      const auto z = op({"C4 S"});
      return {z, z.adjoint()};
    }
    case Family::RhoPhase: {
      const auto z = op({}, 1, spec.phases[0]);
      return {z, z.adjoint()};
    }
    case Family::FPhiCoact:
      return coact_images(RepSpec::make(Family::FPhi, {spec.phases[0]}));
    case Family::ChiCoact:
      return coact_images(RepSpec::make(Family::Chi, {spec.phases[0], spec.phases[1]}));
    default: {
      auto out = holomorphic_images(spec);
      for (int k = 0; k < 3; ++k) out.push_back(out[k].adjoint());
      return out;
    }
  }
}

OpSymbolExpr rep_image(const NcExpr& x, const RepSpec& spec) {
  if (x.algebra() != spec.algebra()) throw AlgebraMismatch("rep_image: element and representation algebras differ");
  const auto images = generator_images(spec);
  OpSymbolExpr out(spec.legs());
  for (const auto& [w, c] : x.terms()) out += c * word_image(w, images, spec.legs());
  return out;
}

OpSymbolExpr character_substitute(const OpSymbolExpr& e, int leg, const Angle& phi) {
  if (leg < 1 || leg > e.legs()) throw std::out_of_range("character_substitute: leg out of range");
  OpSymbolExpr out(e.legs() - 1);
  for (const auto& [k, c] : e.terms()) {
    const auto& w = k.second[leg - 1];
    if (std::any_of(w.begin(), w.end(), [](const OpLetter& l) { return l.kind == OpKind::D; })) continue;
    long shift = 0;
    for (const auto& l : w) {
      if (l.kind == OpKind::S) ++shift;
      else if (l.kind == OpKind::Sstar) --shift;
    }
    Legs rest = k.second;
    rest.erase(rest.begin() + (leg - 1));
    out.add_term(k.first + mpq_class(shift) * phi, rest, c);
  }
  return out;
}

namespace {

SparseOp diagonal_op(int N, const std::function<double(int)>& f) {
  SparseOp m(N, N);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int k = 0; k < N; ++k) {
    const double v = f(k);
    if (v != 0.0) t.emplace_back(k, k, v);
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseOp shift_op(int N) {
  SparseOp m(N, N);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int k = 0; k + 1 < N; ++k) t.emplace_back(k + 1, k, 1.0);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseOp identity_op(Eigen::Index n) {
  SparseOp m(n, n);
  m.setIdentity();
  return m;
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  SparseOp out = Eigen::kroneckerProduct(a, b);
  return out;
}

}  // namespace

double norm_bound(const SparseOp& r) {
  if (r.nonZeros() == 0) return 0.0;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(r.cols());
  Eigen::VectorXd row = Eigen::VectorXd::Zero(r.rows());
  for (Eigen::Index k = 0; k < r.outerSize(); ++k) {
    for (SparseOp::InnerIterator it(r, k); it; ++it) {
      col(it.col()) += std::abs(it.value());
      row(it.row()) += std::abs(it.value());
    }
  }
  return std::sqrt(col.maxCoeff() * row.maxCoeff());
}

namespace {

SparseOp select_columns(const SparseOp& m, const std::vector<Eigen::Index>& cols) {
  SparseOp sel(m.cols(), static_cast<Eigen::Index>(cols.size()));
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::size_t k = 0; k < cols.size(); ++k) t.emplace_back(cols[k], static_cast<Eigen::Index>(k), 1.0);
  sel.setFromTriplets(t.begin(), t.end());
  return m * sel;
}

}  // namespace

SparseOp c_op(int n, int N, double q) {
  return diagonal_op(N, [&](int k) { return std::sqrt(1.0 - std::pow(q, n * k)); });
}

BaseOps base_ops(int N, double q) {
  if (N < 1) throw std::invalid_argument("base_ops: N must be positive");
  BaseOps b;
  b.I = identity_op(N);
  b.S = shift_op(N);
  b.Sstar = b.S.adjoint();
  b.C2 = c_op(2, N, q);
  b.C4 = c_op(4, N, q);
  b.D = diagonal_op(N, [&](int k) { return std::pow(q, k); });
  return b;
}

TruncatedMatrix materialize(const OpSymbolExpr& e, int N, double q, const PhaseBindings& bindings) {
  const int legs = e.legs();
  double dim = std::pow(static_cast<double>(N), legs);
  if (dim > static_cast<double>(kMaxDimension)) throw std::invalid_argument("materialize: dimension too large");
  const BaseOps b = base_ops(N, q);
  std::map<int, SparseOp> c_cache;
  std::map<OpWord, SparseOp> word_cache;
  const auto letter = [&](const OpLetter& l) -> const SparseOp& {
    switch (l.kind) {
      case OpKind::S: return b.S;
      case OpKind::Sstar: return b.Sstar;
      case OpKind::D: return b.D;
      case OpKind::C: break;
    }
    auto it = c_cache.find(l.n);
    if (it == c_cache.end()) it = c_cache.emplace(l.n, c_op(l.n, N, q)).first;
    return it->second;
  };
  const auto word = [&](const OpWord& w) -> const SparseOp& {
    auto it = word_cache.find(w);
    if (it != word_cache.end()) return it->second;
    SparseOp m = b.I;
    for (const auto& l : w) m = SparseOp(m * letter(l));
    return word_cache.emplace(w, std::move(m)).first->second;
  };
  const auto n = static_cast<Eigen::Index>(dim);
  TruncatedMatrix out{SparseOp(n, n), N, legs, e.guard()};
  for (const auto& [k, c] : e.terms()) {
    SparseOp m = identity_op(1);
    for (const auto& w : k.second) m = kron(m, word(w));
    out.m += (c.eval(q) * std::polar(1.0, k.first.value(bindings))) * m;
  }
  out.m.prune(Complex(0.0));
  return out;
}

std::vector<Eigen::Index> guard_indices(int N, int legs, int guard) {
  const int lim = N - guard;
  std::vector<Eigen::Index> out;
  if (lim <= 0) return out;
  Eigen::Index total = 1;
  for (int l = 0; l < legs; ++l) total *= N;
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rest = flat;
    bool ok = true;
    for (int l = 0; l < legs && ok; ++l) {
      ok = rest % N < lim;
      rest /= N;
    }
    if (ok) out.push_back(flat);
  }
  return out;
}

SparseOp guard_columns(const TruncatedMatrix& m) {
  return select_columns(m.m, guard_indices(m.N, m.legs, m.guard));
}

double guard_residual(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.N != b.N || a.legs != b.legs) throw std::invalid_argument("guard_residual: shape mismatch");
  TruncatedMatrix d{SparseOp(a.m - b.m), a.N, a.legs, std::max(a.guard, b.guard)};
  return norm_bound(guard_columns(d));
}

double op_norm(const DenseOp& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<DenseOp> svd(m);
  return svd.singularValues()(0);
}

namespace {

Eigen::VectorXcd seeded_start(Eigen::Index n) {
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = Complex(gauss(rng), gauss(rng));
  return v.normalized();
}

// Top Ritz value of the Hermitian operator `apply` after at most kmax steps of
// Lanczos with full reorthogonalization; never exceeds the top eigenvalue.
template <class Apply>
double lanczos_top(const Apply& apply, Eigen::Index n, Eigen::Index kmax, double rel_tol) {
  kmax = std::min(n, kmax);
  DenseOp V(n, kmax);
  std::vector<double> alpha, beta;
  V.col(0) = seeded_start(n);
  double top = 0;
  for (Eigen::Index j = 0; j < kmax; ++j) {
    Eigen::VectorXcd w = apply(V.col(j));
    alpha.push_back(V.col(j).dot(w).real());
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
    const double b = w.norm();
    const auto T = static_cast<Eigen::Index>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(Eigen::Map<Eigen::VectorXd>(alpha.data(), T),
                              Eigen::Map<Eigen::VectorXd>(beta.data(), T - 1), Eigen::ComputeEigenvectors);
    top = es.eigenvalues()(T - 1);
    if (b <= 1e-14 * std::max(std::abs(top), 1e-300)) break;
    if (b * std::abs(es.eigenvectors()(T - 1, T - 1)) <= rel_tol * std::abs(top)) break;
    beta.push_back(b);
    if (j + 1 < kmax) V.col(j + 1) = w / b;
  }
  return top;
}

using Ldlt = Eigen::SimplicialLDLT<SparseOp>;

// sigma I - G factors with positive pivots exactly when sigma exceeds the
// spectrum of G.
bool above_spectrum(const SparseOp& G, double sigma, Ldlt& f) {
  SparseOp id(G.rows(), G.cols());
  id.setIdentity();
  f.compute(SparseOp(Complex(sigma) * id - G));
  return f.info() == Eigen::Success && (f.vectorD().real().array() > 0).all();
}

// Largest eigenvalue of the positive semidefinite G by shift-invert Lanczos.
// The result r satisfies r <= lambda_max <= r (1 + 1e-12), the upper bound
// checked through the inertia of the shifted factorization.
std::optional<double> certified_top(const SparseOp& G) {
  const Eigen::Index n = G.cols();
  double upper = 0;
  for (Eigen::Index c = 0; c < G.outerSize(); ++c) {
    double sum = 0;
    for (SparseOp::InnerIterator it(G, c); it; ++it) sum += std::abs(it.value());
    upper = std::max(upper, sum);
  }
  if (upper == 0) return 0.0;
  const auto plain = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return G * x; };
  double lower = std::max(0.0, lanczos_top(plain, n, 20, 0.0));
  double delta = 1e-2;
  Ldlt f;
  for (int attempt = 0; attempt < 60; ++attempt) {
    const double sigma = lower > 0 ? std::min(lower * (1 + delta), upper * (1 + 1e-12)) : upper * (1 + 1e-12);
    if (!above_spectrum(G, sigma, f)) {
      lower = sigma;
      delta *= 4;
      continue;
    }
    const auto inverse = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return f.solve(x); };
    const double mu = lanczos_top(inverse, n, 80, 1e-15);
    const double est = sigma - 1 / mu;
    const double cert = est * (1 + 1e-12);
    if (cert >= sigma || above_spectrum(G, cert, f)) return est;
    lower = cert;
    delta = std::max(delta * 1e-3, 1e-10);
  }
  return std::nullopt;
}

// Components up to kDenseLimit use a dense SVD; above kShiftInvertLimit plain
// Lanczos bounds the fill-in.
constexpr Eigen::Index kDenseLimit = 128;
constexpr Eigen::Index kShiftInvertLimit = 12000;

double sparse_norm(const SparseOp& m) {
  const SparseOp G = SparseOp(m.adjoint()) * m;
  if (G.cols() <= kShiftInvertLimit) {
    if (const auto top = certified_top(G)) return std::sqrt(std::max(*top, 0.0));
  }
  const auto plain = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return G * x; };
  return std::sqrt(std::max(lanczos_top(plain, G.cols(), 400, 1e-11), 0.0));
}

// Columns joined by a shared nonzero row; the norm is the max over blocks.
std::vector<std::vector<Eigen::Index>> column_components(const SparseOp& m) {
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(m.cols()));
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<Eigen::Index>(k);
  const std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Eigen::Index> row_owner(static_cast<std::size_t>(m.rows()), -1);
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseOp::InnerIterator it(m, c); it; ++it) {
      auto& owner = row_owner[it.row()];
      if (owner < 0) owner = c;
      else parent[find(c)] = find(owner);
    }
  }
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (m.col(c).nonZeros() > 0) groups[find(c)].push_back(c);
  }
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& [root, cols] : groups) out.push_back(std::move(cols));
  return out;
}

}  // namespace

double op_norm(const SparseOp& m) {
  if (m.nonZeros() == 0) return 0.0;
  double best = 0.0;
  for (const auto& cols : column_components(m)) {
    std::map<Eigen::Index, Eigen::Index> rows;
    for (Eigen::Index c : cols) {
      for (SparseOp::InnerIterator it(m, c); it; ++it) rows.emplace(it.row(), 0);
    }
    Eigen::Index next = 0;
    for (auto& [r, slot] : rows) slot = next++;
    const auto nr = static_cast<Eigen::Index>(rows.size()), nc = static_cast<Eigen::Index>(cols.size());
    if (std::min(nr, nc) <= kDenseLimit) {
      DenseOp block = DenseOp::Zero(nr, nc);
      for (Eigen::Index k = 0; k < nc; ++k) {
        for (SparseOp::InnerIterator it(m, cols[k]); it; ++it) block(rows[it.row()], k) = it.value();
      }
      best = std::max(best, op_norm(block));
    } else {
      SparseOp block(nr, nc);
      std::vector<Eigen::Triplet<Complex>> t;
      for (Eigen::Index k = 0; k < nc; ++k) {
        for (SparseOp::InnerIterator it(m, cols[k]); it; ++it) t.emplace_back(rows[it.row()], k, it.value());
      }
      block.setFromTriplets(t.begin(), t.end());
      best = std::max(best, sparse_norm(block));
    }
  }
  return best;
}

double op_norm(const TruncatedMatrix& m) { return op_norm(m.m); }

double relation_residual(const Presentation& P, const RepSpec& spec, int N, double q,
                         const PhaseBindings& bindings) {
  if (P.id() != spec.algebra()) throw AlgebraMismatch("relation_residual: presentation and representation differ");
  double worst = 0.0;
  for (const auto& rel : P.relations()) {
    const OpSymbolExpr d = rep_image(rel.lhs, spec) - rep_image(rel.rhs, spec);
    const TruncatedMatrix m = materialize(d, N, q, bindings);
    worst = std::max(worst, norm_bound(guard_columns(m)));
  }
  return worst;
}

double cstar_identity_residual(int n, int N, int terms, double q) {
  const BaseOps b = base_ops(N, q);
  const SparseOp C = c_op(n, N, q);
  SparseOp series(N, N);
  SparseOp Sk = b.S, Skstar = b.Sstar;
  for (int k = 0; k < terms; ++k) {
    series += std::pow(q, n * k) * SparseOp(Sk * Skstar);
    Sk = Sk * b.S;
    Skstar = Skstar * b.Sstar;
  }
  series *= 1.0 - std::pow(q, n);
  return op_norm(DenseOp(SparseOp(C * C) - series));
}

double cstar_d_residual(int N, int terms, double q) {
  const BaseOps b = base_ops(N, q);
  SparseOp series(N, N);
  SparseOp Sk = b.I, Skstar = b.I;
  for (int k = 0; k < terms; ++k) {
    const SparseOp next = Sk * b.S, next_star = Skstar * b.Sstar;
    series += std::pow(q, k) * (SparseOp(Sk * Skstar) - SparseOp(next * next_star));
    Sk = next;
    Skstar = next_star;
  }
  return op_norm(DenseOp(b.D - series));
}

namespace {

DenseOp defect(const DenseOp& T, bool star) {
  const Eigen::Index n = T.rows();
  const DenseOp G = star ? DenseOp(T * T.adjoint()) : DenseOp(T.adjoint() * T);
  Eigen::SelfAdjointEigenSolver<DenseOp> es(DenseOp::Identity(n, n) - G);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DenseOp egervary_dilation(const DenseOp& T, int m) {
  if (T.rows() != T.cols()) throw std::invalid_argument("egervary_dilation: T must be square");
  if (m < 1) throw std::invalid_argument("egervary_dilation: m must be >= 1");
  if (op_norm(T) > 1.0 + 1e-12) throw std::invalid_argument("egervary_dilation: T is not a contraction");
  const Eigen::Index n = T.rows();
  DenseOp U = DenseOp::Zero((m + 1) * n, (m + 1) * n);
  U.block(0, 0, n, n) = T;
  U.block(0, m * n, n, n) = defect(T, true);
  U.block(n, 0, n, n) = defect(T, false);
  U.block(n, m * n, n, n) = -T.adjoint();
  for (int r = 2; r <= m; ++r) U.block(r * n, (r - 1) * n, n, n).setIdentity();
  return U;
}

SparseOp psi_image(const NcExpr& a, const DenseOp& U, int N, double q, PsiVariant variant, const Angle& phi,
                   const PhaseBindings& bindings) {
  if (a.algebra() != AlgebraId::PolMatSym) throw AlgebraMismatch("psi_image: expects a pol-matsym element");
  const BaseOps b = base_ops(N, q);
  const SparseOp Us = U.sparseView();
  const SparseOp IK = identity_op(U.rows());
  const SparseOp D2 = b.D * b.D, C4S = b.C4 * b.S, C2S = b.C2 * b.S;
  const SparseOp SC4 = b.Sstar * b.C4, SC2 = b.Sstar * b.C2;
  const Complex e = std::polar(1.0, phi.value(bindings));
  const double qinv = 1.0 / q;
  std::vector<SparseOp> gens;
  if (variant == PsiVariant::Psi) {
    gens.push_back(kron(kron(b.I, D2), Us) - qinv * kron(kron(SC4, SparseOp(C2S * C2S)), IK));
    gens.push_back(kron(kron(D2, C2S), IK));
    gens.push_back(kron(kron(C4S, b.I), IK));
  } else {
    gens.push_back(qinv * kron(Us, SparseOp(SC2 * SC2)) + e * kron(IK, D2));
    gens.push_back(-qinv * kron(Us, SparseOp(SC2 * b.D)) + e * kron(IK, SparseOp(C2S * b.D)));
    gens.push_back(q * kron(Us, D2) + e * kron(IK, SparseOp(C2S * C2S)));
  }
  const Eigen::Index dim = gens[0].rows();
  SparseOp out(dim, dim);
  for (const auto& [w, c] : a.terms()) {
    SparseOp m = identity_op(dim);
    for (Letter l : w) {
      if (l > 2) throw std::invalid_argument("psi_image: element must be holomorphic");
      m = m * gens[l];
    }
    out += c.eval(q) * m;
  }
  return out;
}

SparseOp compress_psi(const SparseOp& m, int N, int dilation_blocks, PsiVariant variant) {
  const Eigen::Index M = static_cast<Eigen::Index>(dilation_blocks) * N;
  std::vector<Eigen::Index> idx;
  if (variant == PsiVariant::Psi) {
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(N) * N; ++i) {
      for (Eigen::Index k = 0; k < N; ++k) idx.push_back(i * M + k);
    }
  } else {
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(N) * N; ++i) idx.push_back(i);
  }
  const SparseOp cols = select_columns(m, idx);
  return SparseOp(select_columns(SparseOp(cols.adjoint()), idx).adjoint());
}

namespace {

std::vector<SparseOp> materialized_generators(const RepSpec& spec, int N, double q, const PhaseBindings& bindings) {
  std::vector<SparseOp> out;
  for (const auto& g : generator_images(spec)) out.push_back(materialize(g, N, q, bindings).m);
  return out;
}

Eigen::VectorXcd vacuum(int N, int legs) {
  Eigen::Index dim = 1;
  for (int l = 0; l < legs; ++l) dim *= N;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0;
  return v;
}

}  // namespace

CoherentResult coherent_check(const RepSpec& spec, int N, double q, int degree, const PhaseBindings& bindings) {
  if (spec.algebra() != AlgebraId::PolMatSym || spec.phases.empty() || spec.legs() < 1) {
    throw std::invalid_argument("coherent_check: needs a phased pol-matsym representation on Fock legs");
  }
  const auto gens = materialized_generators(spec, N, q, bindings);
  const Eigen::VectorXcd omega = vacuum(N, spec.legs());
  const Complex e = std::polar(1.0, -spec.phases[0].value(bindings));
  CoherentResult r;
  r.z11_residual = (gens[3] * omega - e * omega).norm();
  r.z21_residual = (gens[4] * omega).norm();
  r.z22_residual = (gens[5] * omega).norm();

  std::vector<Eigen::VectorXcd> vecs;
  std::function<void(const Eigen::VectorXcd&, int)> dfs = [&](const Eigen::VectorXcd& v, int depth) {
    vecs.push_back(v);
    if (depth == degree) return;
    for (const auto& g : gens) dfs(g * v, depth + 1);
  };
  dfs(omega, 0);
  DenseOp V(omega.size(), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t k = 0; k < vecs.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = vecs[k];
  Eigen::ColPivHouseholderQR<DenseOp> qr(V);
  qr.setThreshold(1e-10);
  r.span_rank = static_cast<int>(qr.rank());
  const DenseOp Q = DenseOp(qr.householderQ()).leftCols(r.span_rank);

  r.cyclic = true;
  const int legs = spec.legs();
  for (Eigen::Index flat = 0; flat < omega.size() && r.cyclic; ++flat) {
    Eigen::Index rest = flat;
    int sum = 0;
    for (int l = 0; l < legs; ++l) {
      sum += static_cast<int>(rest % N);
      rest /= N;
    }
    if (sum > degree) continue;
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(omega.size());
    t(flat) = 1.0;
    r.cyclic = (t - Q * (Q.adjoint() * t)).norm() <= 1e-8;
  }
  return r;
}

double moment_match(const RepSpec& a, const RepSpec& b, int max_deg, int N, double q,
                    const PhaseBindings& bindings) {
  if (a.algebra() != b.algebra()) throw AlgebraMismatch("moment_match: representations of different algebras");
  const auto ga = materialized_generators(a, N, q, bindings);
  const auto gb = materialized_generators(b, N, q, bindings);
  double worst = 0.0;
  std::function<void(const Eigen::VectorXcd&, const Eigen::VectorXcd&, int)> dfs =
      [&](const Eigen::VectorXcd& va, const Eigen::VectorXcd& vb, int depth) {
        worst = std::max(worst, std::abs(va(0) - vb(0)));
        if (depth == max_deg) return;
        for (std::size_t l = 0; l < ga.size(); ++l) dfs(ga[l] * va, gb[l] * vb, depth + 1);
      };
  dfs(vacuum(N, a.legs()), vacuum(N, b.legs()), 0);
  return worst;
}

}  // namespace qshilov
