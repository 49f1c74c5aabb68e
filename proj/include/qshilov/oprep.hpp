// Truncated Fock-space operators: symbolic words in S, S*, C_n, D per tensor
// leg, the representation catalog, character substitution, norms and finite
// unitary dilations.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qshilov/ncalg.hpp"
#include "qshilov/scalar.hpp"

namespace qshilov {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;
using DenseOp = Eigen::MatrixXcd;
using PhaseBindings = std::map<std::string, double, std::less<>>;

/// Real angle a = pi_coeff * pi + sum_k coeff_k * symbol_k, kept exact.
class Angle {
public:
  Angle() = default;
  /// r * pi
  static Angle pi_times(const mpq_class& r);
  /// 2 pi j / n
  static Angle grid(long j, long n);
  static Angle symbol(const std::string& name, const mpq_class& coeff = 1);

  const mpq_class& pi_coeff() const { return pi_; }
  const std::map<std::string, mpq_class>& symbols() const { return sym_; }
  bool is_zero() const { return sgn(pi_) == 0 && sym_.empty(); }

  double value(const PhaseBindings& bindings = {}) const;
  std::string to_string() const;

  Angle& operator+=(const Angle& o);
  Angle& operator*=(const mpq_class& r);
  friend Angle operator+(Angle a, const Angle& b) { return a += b; }
  friend Angle operator-(Angle a) { return a *= mpq_class(-1); }
  friend Angle operator-(Angle a, const Angle& b) { return a += -b; }
  friend Angle operator*(const mpq_class& r, Angle a) { return a *= r; }
  friend bool operator==(const Angle& a, const Angle& b) { return a.pi_ == b.pi_ && a.sym_ == b.sym_; }
  friend bool operator<(const Angle& a, const Angle& b);

private:
  friend class OpSymbolExpr;
  mpq_class pi_{0};
  std::map<std::string, mpq_class> sym_;
};

enum class OpKind : std::uint8_t { S, Sstar, C, D };

struct OpLetter {
  OpKind kind;
  int n = 0;  // only for C
  friend auto operator<=>(const OpLetter&, const OpLetter&) = default;
};

using OpWord = std::vector<OpLetter>;

inline OpLetter op_S() { return {OpKind::S}; }
inline OpLetter op_Sstar() { return {OpKind::Sstar}; }
inline OpLetter op_C(int n) { return {OpKind::C, n}; }
inline OpLetter op_D() { return {OpKind::D}; }

/// Parses "S* C4", "C2 S C2 S", "D^2", "I".
OpWord parse_op_word(const std::string& text);
std::string to_string(const OpWord& w);

/// Finite sum of exact coefficient * e^{i angle} * (word_1 (x) ... (x) word_L).
/// Angles are folded into [0, pi/2) by moving quarter turns into the
/// coefficient, so equal expressions compare equal structurally.
class OpSymbolExpr {
public:
  using Legs = std::vector<OpWord>;
  using Key = std::pair<Angle, Legs>;
  using Terms = std::map<Key, LaurentScalar>;

  explicit OpSymbolExpr(int legs) : legs_(legs) {}
  static OpSymbolExpr identity(int legs, const LaurentScalar& c = 1, const Angle& phase = {});
  static OpSymbolExpr term(Legs legs, const LaurentScalar& c = 1, const Angle& phase = {});

  int legs() const { return legs_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Angle& phase, const Legs& words, const LaurentScalar& c);

  OpSymbolExpr& operator+=(const OpSymbolExpr& o);
  OpSymbolExpr& operator-=(const OpSymbolExpr& o);
  OpSymbolExpr& operator*=(const LaurentScalar& c);
  friend OpSymbolExpr operator+(OpSymbolExpr a, const OpSymbolExpr& b) { return a += b; }
  friend OpSymbolExpr operator-(OpSymbolExpr a, const OpSymbolExpr& b) { return a -= b; }
  friend OpSymbolExpr operator*(const LaurentScalar& c, OpSymbolExpr a) { return a *= c; }
  /// Leg-wise operator product.
  friend OpSymbolExpr operator*(const OpSymbolExpr& a, const OpSymbolExpr& b);
  friend bool operator==(const OpSymbolExpr& a, const OpSymbolExpr& b) {
    return a.legs_ == b.legs_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const OpSymbolExpr& a, const OpSymbolExpr& b) { return !(a == b); }

  OpSymbolExpr scaled(const Angle& phase) const;
  OpSymbolExpr adjoint() const;
  /// Largest number of S letters in any single leg word.
  int guard() const;
  std::string to_string() const;

private:
  int legs_;
  Terms terms_;
};

/// a (x) b with the legs of a first.
OpSymbolExpr tensor(const OpSymbolExpr& a, const OpSymbolExpr& b);

enum class Family : std::uint8_t {
  Fock, Tau, Omega, Nu, Theta, Pi0, RhoFock, RhoPhase, FPhi, Chi, FPhiCoact, ChiCoact
};

struct RepSpec {
  Family family;
  std::vector<Angle> phases;

  static RepSpec make(Family f, std::vector<Angle> phases = {});
  static RepSpec parse(const std::string& name, std::vector<Angle> phases = {});

  std::string name() const;
  int legs() const;
  AlgebraId algebra() const;
  std::size_t arity() const;
  std::string to_string() const;
};

std::string family_name(Family f);
std::vector<Family> all_families();

/// Images of every letter of the family's algebra, in alphabet order.
std::vector<OpSymbolExpr> generator_images(const RepSpec& spec);
OpSymbolExpr rep_image(const NcExpr& x, const RepSpec& spec);

/// Leg `leg` (1-based) replaced by the character S -> e^{i phi}, S* ->
/// e^{-i phi}, C_n -> 1, D -> 0.
OpSymbolExpr character_substitute(const OpSymbolExpr& e, int leg, const Angle& phi);

struct BaseOps {
  SparseOp I, S, Sstar, C2, C4, D;
};

/// S e_k = e_{k+1} with S e_{N-1} = 0; C_n e_k = sqrt(1 - q^{nk}) e_k; D e_k = q^k e_k.
BaseOps base_ops(int N, double q);
SparseOp c_op(int n, int N, double q);

struct TruncatedMatrix {
  SparseOp m;
  int N = 0;
  int legs = 0;
  int guard = 0;
};

/// Dense dimension cap for materialization (N^legs).
inline constexpr long kMaxDimension = 1L << 16;

TruncatedMatrix materialize(const OpSymbolExpr& e, int N, double q, const PhaseBindings& bindings = {});
/// Flat indices (leg 1 most significant) with every leg index < N - guard.
std::vector<Eigen::Index> guard_indices(int N, int legs, int guard);
/// Columns of m restricted to the guard block.
SparseOp guard_columns(const TruncatedMatrix& m);
/// Upper bound sqrt(||R||_1 ||R||_inf) of the 2-norm of (a - b) on the guard
/// block of the larger guard.
double guard_residual(const TruncatedMatrix& a, const TruncatedMatrix& b);

/// sqrt(||m||_1 ||m||_inf), an upper bound for the 2-norm.
double norm_bound(const SparseOp& m);
double op_norm(const SparseOp& m);
double op_norm(const DenseOp& m);
double op_norm(const TruncatedMatrix& m);

/// Max guard-block residual over the defining relations of P.
double relation_residual(const Presentation& P, const RepSpec& spec, int N, double q,
                         const PhaseBindings& bindings = {});

/// C_n^2 against (1 - q^n) sum_{k < terms} q^{nk} S^{k+1} S*^{k+1}.
double cstar_identity_residual(int n, int N, int terms, double q);
/// D against sum_{k < terms} q^k (S^k S*^k - S^{k+1} S*^{k+1}).
double cstar_d_residual(int N, int terms, double q);

/// (m+1)-block unitary U with P_H U^n |_H = T^n for 1 <= n <= m.
DenseOp egervary_dilation(const DenseOp& T, int m);

enum class PsiVariant : std::uint8_t { Psi, PsiPhi };

/// Image of a holomorphic element under Psi (U on leg 3) or Psi_phi (U on leg 1).
SparseOp psi_image(const NcExpr& a, const DenseOp& U, int N, double q, PsiVariant variant,
                   const Angle& phi = {}, const PhaseBindings& bindings = {});
/// Compression of a Psi/Psi_phi operator to the copy of H inside the dilation space.
SparseOp compress_psi(const SparseOp& m, int N, int dilation_blocks, PsiVariant variant);

struct CoherentResult {
  double z11_residual = 0;  // z11* Omega - e^{-i phi} Omega
  double z21_residual = 0;
  double z22_residual = 0;
  /// Every e_i (x) e_j with i + j <= degree lies in the span of w Omega.
  bool cyclic = false;
  int span_rank = 0;
};

CoherentResult coherent_check(const RepSpec& spec, int N, double q, int degree = 3,
                              const PhaseBindings& bindings = {});

/// max over *-words w of degree <= max_deg of |<A(w) Omega, Omega> - <B(w) Omega, Omega>|.
double moment_match(const RepSpec& a, const RepSpec& b, int max_deg, int N, double q,
                    const PhaseBindings& bindings = {});

}  // namespace qshilov
