#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include "calogero/errors.hpp"

namespace calogero {

/*
 * Rat: an exact rational over arbitrary-precision integers.
 *
 * Always kept in lowest terms with a positive denominator, so equality is
 * structural. Wraps mpq_class rather than aliasing it: gmpxx returns expression
 * templates from its operators, which must never outlive their operands in
 * generic code.
 */
class Rat {
 public:
  Rat() = default;

  template <std::integral I>
  Rat(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>)
      value_ = static_cast<long>(value);
    else
      value_ = static_cast<unsigned long>(value);
  }

  template <std::integral I, std::integral J>
  Rat(I num, J den) {
    if (den == 0) throw DivideByZero();
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
  }

  explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  explicit Rat(const mpz_class& v) : value_(v) {}

  /// Parses "p/q" or "p"; the result is reduced.
  static Rat parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw ParseError("not a rational number: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    if (negative) n = -n;
    return Rat(mpq_class(n, d));
  }

  const mpq_class& get() const noexcept { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "p/q", or "p" when the denominator is one.
  std::string str() const { return value_.get_str(); }

  Rat abs() const { return Rat(mpq_class(::abs(value_))); }

  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DivideByZero();
    value_ /= o.value_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.value_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class value_;
};

inline Rat pow(Rat base, unsigned exponent) {
  Rat result(1);
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    base *= base;
    exponent >>= 1u;
  }
  return result;
}

inline Rat factorial(unsigned n) {
  Rat result(1);
  for (unsigned k = 2; k <= n; ++k) result *= Rat(k);
  return result;
}

}  // namespace calogero
