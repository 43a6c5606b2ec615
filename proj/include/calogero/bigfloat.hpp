#pragma once

#include <mpfr.h>

#include <algorithm>
#include <charconv>
#include <string>
#include <utility>

#include "calogero/rational.hpp"

namespace calogero {

/// RAII handle on an MPFR number. Every operation rounds to nearest; a binary
/// result takes the larger precision of its operands.
class BigFloat {
 public:
  static constexpr mpfr_prec_t default_precision = 128;

  explicit BigFloat(mpfr_prec_t bits = default_precision) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
  }
  BigFloat(long v, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_si(value_, v, MPFR_RNDN); }
  BigFloat(const Rat& r, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_q(value_, r.get().get_mpq_t(), MPFR_RNDN); }

  BigFloat(const BigFloat& o) : BigFloat(o.precision()) { mpfr_set(value_, o.value_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_prec_t{MPFR_PREC_MIN}) { mpfr_swap(value_, o.value_); }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(value_, o.value_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  /// Shortest decimal that identifies the value at its precision.
  std::string str() const {
    const auto digits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
    const int len = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, value_);
    std::string out(static_cast<std::size_t>(len) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Rg", digits, value_);
    out.resize(static_cast<std::size_t>(len));
    return out;
  }

  friend BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
    return r;
  }
  friend BigFloat abs(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_abs(r.value_, x.value_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  template <class Op>
  static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
    BigFloat r(std::max(a.precision(), b.precision()));
    op(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
  }

  mpfr_t value_;
};

/// Correctly rounded conversion of an exact rational to `bits` of precision.
inline BigFloat to_float(const Rat& r, mpfr_prec_t bits) { return BigFloat(r, bits); }

/// Nearest double.
inline double to_double(const Rat& r) { return to_float(r, 53).to_double(); }

/// Shortest round-trip decimal for a double, e.g. "0.3333333333333333".
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace calogero
