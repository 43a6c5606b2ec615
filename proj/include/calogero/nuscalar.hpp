#pragma once

#include <optional>
#include <string>
#include <utility>

#include "calogero/nupoly.hpp"

namespace calogero {

/*
 * NuScalar: an exact rational function num(ν)/den(ν).
 *
 * Canonical form: num and den are coprime, and den has coprime integer
 * coefficients with a positive leading coefficient. Two equal rational
 * functions therefore have identical representations, and a polynomial has
 * den = 1.
 */
class NuScalar {
 public:
  NuScalar() : den_(Rat(1)) {}
  NuScalar(Rat constant) : num_(std::move(constant)), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  NuScalar(I constant) : NuScalar(Rat(constant)) {}  // NOLINT(google-explicit-constructor)
  NuScalar(NuPoly poly) : num_(std::move(poly)), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
  NuScalar(NuPoly num, NuPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static NuScalar nu() { return NuScalar(NuPoly::nu()); }

  const NuPoly& num() const { return num_; }
  const NuPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  std::optional<Rat> constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.coefficient(0);
  }

  /// Exact value at a rational coupling.
  Rat evaluate(const Rat& nu) const {
    const Rat d = den_.evaluate(nu);
    if (d.is_zero()) throw PoleError(den_.str());
    return num_.evaluate(nu) / d;
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  NuScalar& operator+=(const NuScalar& o) { return *this = *this + o; }
  NuScalar& operator-=(const NuScalar& o) { return *this = *this - o; }
  NuScalar& operator*=(const NuScalar& o) { return *this = *this * o; }
  NuScalar& operator/=(const NuScalar& o) { return *this = *this / o; }

  friend NuScalar operator+(const NuScalar& a, const NuScalar& b) {
    if (a.den_ == b.den_) {
      if (a.is_polynomial()) return NuScalar(a.num_ + b.num_);
      return NuScalar(a.num_ + b.num_, a.den_);
    }
    return NuScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend NuScalar operator-(const NuScalar& a) {
    NuScalar r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend NuScalar operator-(const NuScalar& a, const NuScalar& b) { return a + (-b); }
  friend NuScalar operator*(const NuScalar& a, const NuScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return NuScalar(a.num_ * b.num_);
    return NuScalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend NuScalar operator/(const NuScalar& a, const NuScalar& b) {
    if (b.is_zero()) throw DivideByZero();
    if (a.is_zero()) return {};
    return NuScalar(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const NuScalar&, const NuScalar&) = default;

 private:
  void canonicalize() {
    if (den_.is_zero()) throw DivideByZero();
    if (num_.is_zero()) {
      den_ = NuPoly(Rat(1));
      return;
    }
    if (den_.degree() > 0) {
      const NuPoly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
    const Rat f = den_.primitive_factor();
    num_ = num_.scaled(f);
    den_ = den_.scaled(f);
  }

  NuPoly num_;
  NuPoly den_;
};

inline NuScalar pow(const NuScalar& base, unsigned exponent) {
  NuScalar r(1);
  for (unsigned k = 0; k < exponent; ++k) r *= base;
  return r;
}

/// Lifts a scalar of either coefficient type into NuScalar.
inline NuScalar to_nu_scalar(const Rat& r) { return NuScalar(r); }
inline const NuScalar& to_nu_scalar(const NuScalar& s) { return s; }

inline Rat evaluate(const NuScalar& s, const Rat& nu) { return s.evaluate(nu); }
inline const Rat& evaluate(const Rat& r, const Rat&) { return r; }

}  // namespace calogero
