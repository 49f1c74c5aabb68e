// Noncommutative polynomials over LaurentScalar and presentation-driven
// rewriting to normal form.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qshilov/scalar.hpp"

namespace qshilov {

enum class AlgebraId : std::uint8_t { PolMatSym, CSU2, UqSl2, PolC };

std::string_view algebra_name(AlgebraId id);

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

/// Rewriting exceeded its step budget; the rule set is probably not terminating.
class IterationCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class AlgebraMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Formal finite sum of words with LaurentScalar coefficients.  Products via
/// operator* are plain concatenation; use nc_mul for the reduced product.
class NcExpr {
public:
  using Terms = std::map<Word, LaurentScalar>;

  explicit NcExpr(AlgebraId alg) : alg_(alg) {}
  NcExpr(AlgebraId alg, const LaurentScalar& c);
  static NcExpr word(AlgebraId alg, Word w, const LaurentScalar& c = 1);
  static NcExpr letter(AlgebraId alg, Letter l) { return word(alg, Word{l}); }

  AlgebraId algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const;
  /// Coefficient of the empty word.
  LaurentScalar constant_term() const;

  void add_term(const Word& w, const LaurentScalar& c);

  NcExpr& operator+=(const NcExpr& o);
  NcExpr& operator-=(const NcExpr& o);
  NcExpr& operator*=(const LaurentScalar& c);

  friend NcExpr operator+(NcExpr a, const NcExpr& b) { return a += b; }
  friend NcExpr operator-(NcExpr a, const NcExpr& b) { return a -= b; }
  friend NcExpr operator-(NcExpr a) { return a *= LaurentScalar(-1); }
  friend NcExpr operator*(const LaurentScalar& c, NcExpr a) { return a *= c; }
  friend NcExpr operator*(NcExpr a, const LaurentScalar& c) { return a *= c; }
  /// Unreduced concatenation product.
  friend NcExpr operator*(const NcExpr& a, const NcExpr& b);
  friend bool operator==(const NcExpr& a, const NcExpr& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const NcExpr& a, const NcExpr& b) { return !(a == b); }

private:
  AlgebraId alg_;
  Terms terms_;
};

/// Two-letter rewrite rule: pattern -> replacement.
struct RewriteRule {
  Word pattern;
  NcExpr replacement;
};

/// A defining relation lhs = rhs as written in the literature.
struct Relation {
  std::string label;
  NcExpr lhs;
  NcExpr rhs;
};

/// Generator alphabet, rewrite rules, star structure and defining relations
/// of one algebra.  Immutable once built by a preset.
class Presentation {
public:
  Presentation(AlgebraId id, std::string name, std::vector<std::string> alphabet);

  AlgebraId id() const { return id_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }

  Letter letter(std::string_view name) const;
  NcExpr gen(std::string_view name) const;
  NcExpr one() const { return NcExpr(id_, 1); }
  NcExpr zero() const { return NcExpr(id_); }
  /// Generator or registered alias (z12 = q z21).
  NcExpr symbol(std::string_view name) const;

  const std::vector<RewriteRule>& rules() const { return rules_; }
  /// Rule whose pattern is (a, b), if any.
  const RewriteRule* rule_for(Letter a, Letter b) const;

  const std::vector<Relation>& relations() const { return relations_; }
  bool has_star() const { return !star_images_.empty(); }
  /// Image of a single letter under the involution (already normal).
  const NcExpr& star_image(Letter l) const;

  std::size_t step_cap() const { return step_cap_; }
  void set_step_cap(std::size_t cap) { step_cap_ = cap; }

  // Construction helpers used by presets and by mutation tests.
  void add_rule(Word pattern, NcExpr replacement);
  void add_relation(std::string label, NcExpr lhs, NcExpr rhs);
  void set_star(std::vector<NcExpr> images);
  void add_alias(std::string name, NcExpr value);
  /// Copy of this presentation with rule `index` removed.
  Presentation without_rule(std::size_t index) const;

  std::string word_to_string(const Word& w) const;
  std::string to_string(const NcExpr& e) const;
  /// Full deterministic description (alphabet, rules, relations).
  std::string describe() const;

private:
  AlgebraId id_;
  std::string name_;
  std::vector<std::string> alphabet_;
  std::vector<RewriteRule> rules_;
  std::vector<int> rule_index_;  // alphabet_size^2 table, -1 when no rule
  std::vector<Relation> relations_;
  std::vector<NcExpr> star_images_;
  std::map<std::string, NcExpr, std::less<>> aliases_;
  std::size_t step_cap_ = 1'000'000;
};

/// Element of A (x) B with both legs kept in normal form by the operations
/// that take presentations.
class TensorExpr {
public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, LaurentScalar>;

  TensorExpr(AlgebraId left, AlgebraId right) : left_(left), right_(right) {}
  /// a (x) b, expanded bilinearly (legs not normalized).
  static TensorExpr product(const NcExpr& a, const NcExpr& b);

  AlgebraId left() const { return left_; }
  AlgebraId right() const { return right_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& a, const Word& b, const LaurentScalar& c);

  TensorExpr& operator+=(const TensorExpr& o);
  TensorExpr& operator-=(const TensorExpr& o);
  TensorExpr& operator*=(const LaurentScalar& c);
  friend TensorExpr operator+(TensorExpr a, const TensorExpr& b) { return a += b; }
  friend TensorExpr operator-(TensorExpr a, const TensorExpr& b) { return a -= b; }
  friend TensorExpr operator*(const LaurentScalar& c, TensorExpr a) { return a *= c; }
  /// Leg-wise concatenation, unreduced.
  friend TensorExpr operator*(const TensorExpr& a, const TensorExpr& b);
  friend bool operator==(const TensorExpr& a, const TensorExpr& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TensorExpr& a, const TensorExpr& b) { return !(a == b); }

private:
  AlgebraId left_;
  AlgebraId right_;
  Terms terms_;
};

TensorExpr normal_form(const TensorExpr& t, const Presentation& pa, const Presentation& pb);
TensorExpr tensor_mul(const TensorExpr& a, const TensorExpr& b, const Presentation& pa, const Presentation& pb);
/// (a (x) b)* = a* (x) b*
TensorExpr tensor_star(const TensorExpr& t, const Presentation& pa, const Presentation& pb);
std::string to_string(const TensorExpr& t, const Presentation& pa, const Presentation& pb);

/// Rewrites to the unique irreducible representative.
NcExpr normal_form(const NcExpr& e, const Presentation& p);
NcExpr nc_mul(const NcExpr& a, const NcExpr& b, const Presentation& p);
/// Antilinear antihomomorphism defined by the presentation's star table.
NcExpr nc_star(const NcExpr& e, const Presentation& p);
bool nc_equal(const NcExpr& a, const NcExpr& b, const Presentation& p);
bool is_normal(const Word& w, const Presentation& p);

/// Names: "pol-matsym-q", "c-su2-q", "uq-sl2", "pol-c-q".
Presentation preset(std::string_view name);
const Presentation& preset_ref(AlgebraId id);

struct ConfluenceViolation {
  Word word;
  std::size_t position_a;
  std::size_t position_b;
  NcExpr result_a;
  NcExpr result_b;
};

struct ConfluenceReport {
  std::size_t words_checked = 0;
  std::vector<ConfluenceViolation> violations;
  /// Defining relations whose two sides have different normal forms.
  std::vector<std::string> failed_relations;
  bool ok() const { return violations.empty() && failed_relations.empty(); }
};

/// Every word of length 3..max_deg: each one-step rewrite followed by
/// normal_form must agree.  Also checks the defining relations hold.
ConfluenceReport local_confluence_check(const Presentation& p, int max_deg = 3);

}  // namespace qshilov
