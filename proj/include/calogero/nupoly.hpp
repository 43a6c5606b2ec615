#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "calogero/rational.hpp"

namespace calogero {

/// Polynomial in the coupling ν with rational coefficients, stored in
/// ascending powers with no trailing zeros (the zero polynomial is empty).
class NuPoly {
 public:
  NuPoly() = default;
  NuPoly(Rat constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
  }
  NuPoly(std::initializer_list<Rat> ascending) : coeffs_(ascending) { trim(); }
  explicit NuPoly(std::vector<Rat> ascending) : coeffs_(std::move(ascending)) { trim(); }

  /// The indeterminate ν itself.
  static NuPoly nu() { return NuPoly{Rat(0), Rat(1)}; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == Rat(1); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coefficients() const { return coeffs_; }
  Rat coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }
  const Rat& leading() const { return coeffs_.back(); }

  Rat evaluate(const Rat& x) const {
    Rat acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  NuPoly& operator+=(const NuPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  NuPoly& operator-=(const NuPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  friend NuPoly operator+(NuPoly a, const NuPoly& b) { return a += b; }
  friend NuPoly operator-(NuPoly a, const NuPoly& b) { return a -= b; }
  friend NuPoly operator-(NuPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend NuPoly operator*(const NuPoly& a, const NuPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return NuPoly(std::move(out));
  }
  NuPoly& operator*=(const NuPoly& o) { return *this = *this * o; }

  NuPoly scaled(const Rat& factor) const {
    if (factor.is_zero()) return {};
    NuPoly r = *this;
    for (auto& c : r.coeffs_) c *= factor;
    return r;
  }

  /// Euclidean division over the rationals: *this = q·d + r with deg r < deg d.
  std::pair<NuPoly, NuPoly> divmod(const NuPoly& d) const {
    if (d.is_zero()) throw DivideByZero();
    NuPoly rem = *this;
    if (rem.degree() < d.degree()) return {NuPoly(), rem};
    std::vector<Rat> quot(static_cast<std::size_t>(rem.degree() - d.degree() + 1));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      const auto shift = static_cast<std::size_t>(rem.degree() - d.degree());
      const Rat factor = rem.leading() / d.leading();
      quot[shift] = factor;
      for (std::size_t k = 0; k < d.coeffs_.size(); ++k) rem.coeffs_[k + shift] -= factor * d.coeffs_[k];
      rem.trim();
    }
    return {NuPoly(std::move(quot)), rem};
  }

  NuPoly monic() const { return is_zero() ? NuPoly() : scaled(Rat(1) / leading()); }

  /// Factor f such that f·p has coprime integer coefficients and a positive
  /// leading coefficient.
  Rat primitive_factor() const {
    if (is_zero()) return Rat(1);
    mpz_class lcm_den = 1;
    for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get().get_den_mpz_t());
    mpz_class content = 0;
    for (const auto& c : coeffs_) {
      mpz_class scaled = c.get().get_num() * (lcm_den / c.get().get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat f{mpq_class(lcm_den, content)};
    return leading().sign() < 0 ? -f : f;
  }

  /// Readable form such as "2 + 3*nu + nu^2".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rat& c = coeffs_[k];
      if (c.is_zero()) continue;
      std::string mag = c.abs().str();
      if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
      else if (c.sign() < 0) out += "-";
      if (k == 0) {
        out += mag;
        continue;
      }
      if (mag != "1") out += (mag.find('/') != std::string::npos ? "(" + mag + ")" : mag) + "*";
      out += k == 1 ? "nu" : "nu^" + std::to_string(k);
    }
    return out;
  }

  friend bool operator==(const NuPoly&, const NuPoly&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

inline NuPoly gcd(NuPoly a, NuPoly b) {
  while (!b.is_zero()) {
    NuPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace detail {
inline std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  std::vector<mpz_class> out;
  if (v == 0 || v > mpz_class("1099511627776")) return out;
  const unsigned long n = v.get_ui();
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.emplace_back(d);
      if (d != n / d) out.emplace_back(n / d);
    }
  }
  return out;
}
}  // namespace detail

/// Rational roots of p by the rational root theorem, sorted, without repeats.
/// Candidates are only enumerated while |a0| and |an| stay below 2^40.
inline std::vector<Rat> rational_roots(const NuPoly& p) {
  std::vector<Rat> roots;
  if (p.degree() <= 0) return roots;
  NuPoly q = p.scaled(p.primitive_factor());
  std::size_t low = 0;
  while (q.coefficient(low).is_zero()) ++low;
  if (low > 0) roots.emplace_back(0);
  const mpz_class a0 = q.coefficient(low).numerator();
  const mpz_class an = q.leading().numerator();
  for (const auto& num : detail::divisors(a0)) {
    for (const auto& den : detail::divisors(an)) {
      for (int s : {1, -1}) {
        Rat cand{mpq_class(num * s, den)};
        if (q.evaluate(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace calogero
