// Exact coefficient ring for the quantum algebras.
//
// Every q-dependent scalar is a Laurent polynomial in s = q^{1/2} with
// Gaussian-rational coefficients, optionally divided by a power of
// (s^4 - 1).  The localization is needed for the U_q(sl2) commutator
// [E, F] = (K - K^{-1}) / (q - q^{-1}); all other constants are Laurent
// polynomials.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

namespace qshilov {

class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::string to_string() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Element of Q(i)[s, s^{-1}, (s^4 - 1)^{-1}], with s^2 = q.
///
/// Stored canonically as numerator / (s^4 - 1)^k where the numerator is not
/// divisible by (s^4 - 1) whenever k > 0, and no zero coefficient is kept.
/// Equality is therefore structural.
class LaurentScalar {
public:
  LaurentScalar() = default;
  LaurentScalar(long c);  // NOLINT(google-explicit-constructor)
  LaurentScalar(const GaussianRational& c);  // NOLINT(google-explicit-constructor)

  /// c * s^exponent
  static LaurentScalar monomial(int exponent, const GaussianRational& c = 1);
  static LaurentScalar s_pow(int exponent) { return monomial(exponent); }
  static LaurentScalar q_pow(int exponent) { return monomial(2 * exponent); }
  static LaurentScalar i() { return GaussianRational::i(); }
  /// 1 / (q - q^{-1}) = s^2 / (s^4 - 1)
  static LaurentScalar inv_q_minus_qinv();

  bool is_zero() const { return coeffs_.empty(); }
  bool is_laurent() const { return denom_pow_ == 0; }
  int denominator_power() const { return denom_pow_; }
  const std::map<int, GaussianRational>& coefficients() const { return coeffs_; }

  /// Coefficient of s^exponent in the numerator.
  GaussianRational coefficient(int exponent) const;

  LaurentScalar conj() const;
  std::complex<double> eval(double q) const;

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar& operator*=(const LaurentScalar& o);

  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(LaurentScalar a, const LaurentScalar& b) { return a *= b; }
  friend LaurentScalar operator-(LaurentScalar a);
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    return a.denom_pow_ == b.denom_pow_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) { return !(a == b); }

  /// Deterministic text form, e.g. "s^2 - (1/2)i s^-1".
  std::string to_string() const;

private:
  void lift_to(int denom_pow);
  void reduce();

  std::map<int, GaussianRational> coeffs_;
  int denom_pow_ = 0;
};

LaurentScalar scalar_add(const LaurentScalar& a, const LaurentScalar& b);
LaurentScalar scalar_mul(const LaurentScalar& a, const LaurentScalar& b);
LaurentScalar scalar_conj(const LaurentScalar& a);
/// Substitutes s = sqrt(q); throws std::invalid_argument unless 0 < q < 1.
std::complex<double> scalar_eval(const LaurentScalar& a, double q);

inline std::ostream& operator<<(std::ostream& os, const LaurentScalar& a) { return os << a.to_string(); }

inline LaurentScalar q_pow(int k) { return LaurentScalar::q_pow(k); }
inline LaurentScalar s_pow(int k) { return LaurentScalar::s_pow(k); }

}  // namespace qshilov

namespace Eigen {

template <>
struct NumTraits<qshilov::LaurentScalar> : GenericNumTraits<qshilov::LaurentScalar> {
  using Real = qshilov::LaurentScalar;
  using NonInteger = qshilov::LaurentScalar;
  using Nested = qshilov::LaurentScalar;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static inline int digits10() { return 0; }
  static inline qshilov::LaurentScalar epsilon() { return 0; }
  static inline qshilov::LaurentScalar dummy_precision() { return 0; }
};

}  // namespace Eigen
