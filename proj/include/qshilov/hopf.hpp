// Hopf structure of U_q(sl2), its pairing with C[SL2]_q, the module-algebra
// action on Pol(Mat2sym)_q and the coaction into Pol(Mat2sym)_q (x) C[SU2]_q.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qshilov/ncalg.hpp"
#include "qshilov/scalar.hpp"

namespace qshilov {

using ScalarMatrix = Eigen::Matrix<LaurentScalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Generator tables indexed by the uq-sl2 letter (F, K, Kinv, E).
struct HopfTables {
  std::vector<TensorExpr> coproduct;
  std::vector<LaurentScalar> counit;
  std::vector<NcExpr> antipode;
};

const HopfTables& hopf_tables();

TensorExpr coproduct(const NcExpr& x);
LaurentScalar counit(const NcExpr& x);
NcExpr antipode(const NcExpr& x);

/// Element of U (x) U (x) U, legs normalized.
using Tensor3 = std::map<std::array<Word, 3>, LaurentScalar>;

/// (Delta (x) id) Delta(x) - (id (x) Delta) Delta(x); empty iff coassociative on x.
Tensor3 coassociator(const NcExpr& x);
/// m (S (x) id) Delta(x) and m (id (x) S) Delta(x).
NcExpr antipode_left(const NcExpr& x);
NcExpr antipode_right(const NcExpr& x);

/// 2x2 image of a uq-sl2 letter in the fundamental representation.
const ScalarMatrix& fundamental_rep(Letter l);
/// rho^{(x) n} applied to the (n-1)-fold coproduct of x; leg 1 is the most
/// significant Kronecker factor.
ScalarMatrix rep_tensor_power(const NcExpr& x, int n);

/// <a, xi> for a in C[SL2]_q (c-su2-q alphabet) and xi in U_q(sl2).
LaurentScalar pairing(const NcExpr& a, const NcExpr& xi);
/// Delta(t_ij) = sum_k t_ik (x) t_kj, extended multiplicatively.
TensorExpr csl_coproduct(const NcExpr& a);

/// Base action table: image of a pol-matsym-q letter under a uq-sl2 letter.
const NcExpr& action_image(Letter xi, Letter z);
/// Module-algebra action of xi on f, result in normal form.
NcExpr act(const NcExpr& xi, const NcExpr& f);

/// Coaction images of the six pol-matsym-q letters.
struct CoactionTable {
  std::vector<TensorExpr> images;
};

/// Unreduced sum_{k,l} z_kl (x) t_ki t_lj for i, j in {1, 2}, with
/// z12 = q z21; `skip` drops the summand with (k, l) = *skip.
TensorExpr coaction_formula(int i, int j, std::optional<std::pair<int, int>> skip = std::nullopt);

const CoactionTable& coaction_table();
/// Table with one summand (k, l) dropped from the image of z_ij; starred
/// images follow from the mutated ones.
CoactionTable mutated_coaction_table(int i, int j, int k, int l);

TensorExpr coaction(const NcExpr& f, const CoactionTable& table = coaction_table());
/// Pairs the second leg of coaction(f) with xi.
NcExpr coaction_eval(const NcExpr& f, const NcExpr& xi);

struct CoactionMismatch {
  std::string f;
  std::string g;
};

struct CoactionReport {
  std::size_t pairs_checked = 0;
  std::vector<CoactionMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// The twelve elements whose ordered pairs are checked: the six letters,
/// z12, z12* and the four generators of the boundary ideal.
std::vector<std::pair<std::string, NcExpr>> coaction_sample();

/// D(fg) = D(f) D(g) for all ordered pairs of coaction_sample(), plus all
/// pairs of letter words with total degree <= max_deg.
CoactionReport verify_coaction_hom(int max_deg, const CoactionTable& table = coaction_table());

}  // namespace qshilov
