#include "qshilov/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qshilov {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  std::ostringstream os;
  if (sgn(im_) == 0) {
    os << re_;
  } else if (sgn(re_) == 0) {
    os << im_ << "i";
  } else {
    os << "(" << re_ << (sgn(im_) > 0 ? "+" : "") << im_ << "i)";
  }
  return os.str();
}

LaurentScalar::LaurentScalar(long c) : LaurentScalar(GaussianRational(c)) {}

LaurentScalar::LaurentScalar(const GaussianRational& c) {
  if (!c.is_zero()) coeffs_.emplace(0, c);
}

LaurentScalar LaurentScalar::monomial(int exponent, const GaussianRational& c) {
  LaurentScalar r;
  if (!c.is_zero()) r.coeffs_.emplace(exponent, c);
  return r;
}

LaurentScalar LaurentScalar::inv_q_minus_qinv() {
  LaurentScalar r = monomial(2);
  r.denom_pow_ = 1;
  return r;
}

GaussianRational LaurentScalar::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? GaussianRational{} : it->second;
}

LaurentScalar LaurentScalar::conj() const {
  LaurentScalar r;
  r.denom_pow_ = denom_pow_;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c.conj());
  return r;
}

std::complex<double> LaurentScalar::eval(double q) const {
  const double s = std::sqrt(q);
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : coeffs_) acc += c.to_complex() * std::pow(s, e);
  if (denom_pow_ > 0) acc /= std::pow(q * q - 1.0, denom_pow_);
  return acc;
}

// Multiplies the numerator by (s^4 - 1)^(target - current).
void LaurentScalar::lift_to(int target) {
  while (denom_pow_ < target) {
    std::map<int, GaussianRational> next;
    for (const auto& [e, c] : coeffs_) {
      next[e + 4] += c;
      next[e] -= c;
    }
    coeffs_.clear();
    for (auto& [e, c] : next)
      if (!c.is_zero()) coeffs_.emplace(e, std::move(c));
    ++denom_pow_;
  }
}

// Cancels common factors of (s^4 - 1) by synthetic division.
void LaurentScalar::reduce() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
  }
  if (coeffs_.empty()) {
    denom_pow_ = 0;
    return;
  }
  while (denom_pow_ > 0) {
    const int lo = coeffs_.begin()->first;
    const int hi = coeffs_.rbegin()->first;
    if (hi - lo < 4) return;
    std::vector<GaussianRational> poly(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, c] : coeffs_) poly[static_cast<std::size_t>(e - lo)] = c;
    std::vector<GaussianRational> quotient(poly.size() - 4);
    for (std::size_t d = poly.size() - 1; d >= 4; --d) {
      quotient[d - 4] = poly[d];
      poly[d - 4] += poly[d];
      poly[d] = GaussianRational{};
    }
    for (std::size_t d = 0; d < 4; ++d)
      if (!poly[d].is_zero()) return;
    coeffs_.clear();
    for (std::size_t d = 0; d < quotient.size(); ++d)
      if (!quotient[d].is_zero()) coeffs_.emplace(static_cast<int>(d) + lo, quotient[d]);
    --denom_pow_;
  }
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  if (o.denom_pow_ == denom_pow_) {
    for (const auto& [e, c] : o.coeffs_) coeffs_[e] += c;
  } else {
    LaurentScalar other = o;
    const int target = std::max(denom_pow_, o.denom_pow_);
    lift_to(target);
    other.lift_to(target);
    for (const auto& [e, c] : other.coeffs_) coeffs_[e] += c;
  }
  reduce();
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) {
  std::map<int, GaussianRational> prod;
  for (const auto& [ea, ca] : coeffs_)
    for (const auto& [eb, cb] : o.coeffs_) prod[ea + eb] += ca * cb;
  coeffs_ = std::move(prod);
  denom_pow_ += o.denom_pow_;
  reduce();
  return *this;
}

LaurentScalar operator-(LaurentScalar a) {
  for (auto& [e, c] : a.coeffs_) c = -c;
  return a;
}

std::string LaurentScalar::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [e, c] = *it;
    GaussianRational shown = c;
    if (!first) {
      if (sgn(c.im()) == 0 && sgn(c.re()) < 0) {
        os << " - ";
        shown = -c;
      } else {
        os << " + ";
      }
    }
    first = false;
    const bool unit = shown == GaussianRational(1);
    if (e == 0) {
      os << shown.to_string();
    } else {
      if (!unit) os << shown.to_string() << " ";
      os << "s";
      if (e != 1) os << "^" << e;
    }
  }
  if (denom_pow_ > 0) {
    std::string num = os.str();
    std::ostringstream wrapped;
    wrapped << "(" << num << ")/(s^4 - 1)";
    if (denom_pow_ > 1) wrapped << "^" << denom_pow_;
    return wrapped.str();
  }
  return os.str();
}

LaurentScalar scalar_add(const LaurentScalar& a, const LaurentScalar& b) { return a + b; }
LaurentScalar scalar_mul(const LaurentScalar& a, const LaurentScalar& b) { return a * b; }
LaurentScalar scalar_conj(const LaurentScalar& a) { return a.conj(); }

std::complex<double> scalar_eval(const LaurentScalar& a, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("scalar_eval: q must lie in (0, 1)");
  return a.eval(q);
}

}  // namespace qshilov
