#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/scalar.hpp"

namespace calogero {

/*
 * Single-mode deformed oscillator with a†a = φ(N), aa† = φ(N + 1).
 *
 * The built-in rule is the Calogero–Vasiliev algebra aa† − a†a = 1 + 2νK,
 * K = (−1)^N, for which φ(n) = n (n even) and n + 2ν (n odd). A general
 * algebra aa† − q a†a = G(N) can be supplied as a table of φ(1), φ(2), ...;
 * then G(n) = φ(n + 1) − q φ(n).
 */
class SingleModeAlgebra {
 public:
  explicit SingleModeAlgebra(NuScalar nu) : nu_(std::move(nu)) {}

  /// table[k − 1] = φ(k); φ(0) = 0 is implied.
  static SingleModeAlgebra from_table(std::vector<NuScalar> table) {
    SingleModeAlgebra alg(NuScalar(0));
    alg.nu_.reset();
    alg.table_ = std::move(table);
    return alg;
  }

  bool is_builtin() const { return nu_.has_value(); }
  const std::optional<NuScalar>& nu() const { return nu_; }

  NuScalar phi(std::size_t n) const {
    if (n == 0) return NuScalar(0);
    if (nu_) return NuScalar(static_cast<long>(n)) + (n % 2 == 1 ? NuScalar(2) * *nu_ : NuScalar(0));
    if (n > table_.size()) throw Error("structure function table has no entry for n = " + std::to_string(n));
    return table_[n - 1];
  }

  /// G(n) = φ(n + 1) − q φ(n).
  NuScalar structure_g(std::size_t n, const NuScalar& q = NuScalar(1)) const { return phi(n + 1) - q * phi(n); }

  /// φ(n) φ(n − 1) ··· φ(n − k + 1): the coefficient in a^k a†^n|0> = (...) a†^(n−k)|0>.
  NuScalar lowering_product(std::size_t n, std::size_t k) const {
    if (k > n) return NuScalar(0);
    NuScalar p(1);
    for (std::size_t j = 0; j < k; ++j) p *= phi(n - j);
    return p;
  }

  /// [φ(n)]! = φ(1) ··· φ(n).
  NuScalar phi_factorial(std::size_t n) const { return lowering_product(n, n); }

 private:
  std::optional<NuScalar> nu_;
  std::vector<NuScalar> table_;
};

enum class SeriesKind { alpha, beta, gamma, c };

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::alpha: return "alpha";
    case SeriesKind::beta: return "beta";
    case SeriesKind::gamma: return "gamma";
    case SeriesKind::c: return "c";
  }
  return "?";
}

/// Operator O = c0 + Σ_{k≥1} coeff_k a†^k a^k, characterised by its
/// eigenvalue on a†^n|0>.
struct DiagonalTarget {
  NuScalar constant;
  std::function<NuScalar(std::size_t)> eigenvalue;
};

/// aa† = φ(N + 1), K = (−1)^N, N = n. The constant term is the coefficient
/// of the identity in the expansion: 1, 1 and 0 respectively.
inline DiagonalTarget series_target(SeriesKind kind, const SingleModeAlgebra& alg) {
  switch (kind) {
    case SeriesKind::alpha:
      return {NuScalar(1), [alg](std::size_t n) { return alg.phi(n + 1); }};
    case SeriesKind::beta:
      return {NuScalar(1), [](std::size_t n) { return NuScalar(n % 2 == 0 ? 1 : -1); }};
    case SeriesKind::gamma:
      return {NuScalar(0), [](std::size_t n) { return NuScalar(static_cast<long>(n)); }};
    case SeriesKind::c:
      break;
  }
  throw Error("the c series is numeric; use c_series()");
}

/// Value of c0 + Σ_{k=1}^{K} coeff_k a†^k a^k on a†^n|0>.
inline NuScalar expansion_eigenvalue(const SingleModeAlgebra& alg, const NuScalar& constant,
                                     const std::vector<NuScalar>& coeffs, std::size_t n) {
  NuScalar v = constant;
  for (std::size_t k = 1; k <= std::min(n, coeffs.size()); ++k) v += coeffs[k - 1] * alg.lowering_product(n, k);
  return v;
}

/// Coefficients coeff_1..coeff_K solved from the triangular system
///   target(n) = c0 + Σ_{k≤n} coeff_k φ(n)···φ(n−k+1),   n = 1..K.
inline std::vector<NuScalar> series(SeriesKind kind, std::size_t terms, const SingleModeAlgebra& alg) {
  const DiagonalTarget target = series_target(kind, alg);
  std::vector<NuScalar> coeffs;
  coeffs.reserve(terms);
  for (std::size_t n = 1; n <= terms; ++n) {
    const NuScalar diag = alg.phi_factorial(n);
    if (diag.is_zero()) {
      std::size_t j = 1;
      while (!alg.phi(j).is_zero()) ++j;
      throw ZeroPhi(j);
    }
    const NuScalar partial = expansion_eigenvalue(alg, target.constant, coeffs, n);
    coeffs.push_back((target.eigenvalue(n) - partial) / diag);
  }
  return coeffs;
}

/*
 * The c series maps a onto bosons, a = (Σ_k c_k b†^k b^k) b. On normalized
 * Bose states a|n> = √φ(n) |n − 1>, so with f(m) = √(φ(m+1)/(m+1))
 *
 *   f(m) = Σ_{k=0}^{m} c_k m!/(m − k)!,
 *
 * solved for c_0..c_{K−1} in `bits` of precision. Needs a numeric coupling
 * with φ(n) > 0 for n = 1..K.
 */
inline std::vector<BigFloat> c_series(const SingleModeAlgebra& alg, std::size_t terms,
                                      mpfr_prec_t bits = BigFloat::default_precision) {
  std::vector<BigFloat> f;
  for (std::size_t m = 0; m < terms; ++m) {
    const auto phi = alg.phi(m + 1).constant_value();
    if (!phi) throw Error("the c series needs a numeric coupling");
    if (phi->sign() == 0) throw ZeroPhi(m + 1);
    if (phi->sign() < 0) throw Error("structure function is negative at n = " + std::to_string(m + 1));
    f.push_back(sqrt(BigFloat(*phi / Rat(m + 1), bits)));
  }
  std::vector<BigFloat> c;
  for (std::size_t k = 0; k < terms; ++k) {
    // Σ_{j<k} c_j k!/(k−j)!, with k!/(k−j)! built up as a falling factorial.
    BigFloat acc(0, bits);
    for (std::size_t j = 0; j < k; ++j) {
      BigFloat falling(1, bits);
      for (std::size_t t = 0; t < j; ++t) falling *= BigFloat(static_cast<long>(k - t), bits);
      acc += c[j] * falling;
    }
    BigFloat kfact(1, bits);
    for (std::size_t t = 2; t <= k; ++t) kfact *= BigFloat(static_cast<long>(t), bits);
    c.push_back((f[k] - acc) / kfact);
  }
  return c;
}

/// <n−1| (Σ_k c_k b†^k b^k) b |n> = √n Σ_{k<n} c_k (n−1)!/(n−1−k)!.
inline BigFloat bose_matrix_element(const std::vector<BigFloat>& c, std::size_t n, mpfr_prec_t bits) {
  BigFloat sum(0, bits);
  for (std::size_t k = 0; k < std::min(n, c.size()); ++k) {
    BigFloat falling(1, bits);
    for (std::size_t t = 0; t < k; ++t) falling *= BigFloat(static_cast<long>(n - 1 - t), bits);
    sum += c[k] * falling;
  }
  return sqrt(BigFloat(static_cast<long>(n), bits)) * sum;
}

/// <n|a†^m ... Gram element <0|a^m a†^n|0> = [φ(n)]! δ_mn.
inline NuScalar single_gram(const SingleModeAlgebra& alg, std::size_t m, std::size_t n) {
  return m == n ? alg.phi_factorial(n) : NuScalar(0);
}

/// ã = a N/φ(N) acts as ã a†^n|0> = n a†^(n−1)|0>; returns that coefficient.
inline long dual_action(const SingleModeAlgebra& alg, std::size_t n) {
  for (std::size_t k = 1; k <= n; ++k)
    if (alg.phi(k).is_zero()) throw ZeroPhi(k);
  return static_cast<long>(n);
}

/// <0|ã^m a†^n|0> from repeated dual actions: n! δ_mn.
inline long dual_vacuum_element(const SingleModeAlgebra& alg, std::size_t m, std::size_t n) {
  if (m != n) return 0;
  long v = 1;
  for (std::size_t k = n; k >= 1; --k) v *= dual_action(alg, k);
  return v;
}

}  // namespace calogero
