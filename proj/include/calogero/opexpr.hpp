#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/fock.hpp"
#include "calogero/gram.hpp"
#include "calogero/linalg.hpp"
#include "calogero/scalar.hpp"

namespace calogero {

/// Creation and annihilation content of a normally ordered word
/// a†^create a^annihilate.
struct WordKey {
  Occupation create;
  Occupation annihilate;

  auto operator<=>(const WordKey&) const = default;
};

/// Sum of normally ordered words. Words are kept sorted by (create, annihilate)
/// and zero coefficients are dropped.
template <Scalar S>
class OperatorExpr {
 public:
  using Words = std::map<WordKey, S>;

  explicit OperatorExpr(std::size_t modes = 0) : modes_(modes) {}

  static OperatorExpr scalar(std::size_t modes, const S& c) {
    OperatorExpr e(modes);
    e.add(Occupation(modes), Occupation(modes), c);
    return e;
  }
  static OperatorExpr identity(std::size_t modes) { return scalar(modes, S(1)); }
  static OperatorExpr word(const Occupation& create, const Occupation& annihilate, const S& c = S(1)) {
    OperatorExpr e(create.modes());
    e.add(create, annihilate, c);
    return e;
  }
  static OperatorExpr creation(std::size_t modes, std::size_t i) {
    detail::check_mode(i, modes);
    Occupation c(modes);
    ++c[i];
    return word(c, Occupation(modes));
  }
  static OperatorExpr annihilation(std::size_t modes, std::size_t i) {
    detail::check_mode(i, modes);
    Occupation a(modes);
    ++a[i];
    return word(Occupation(modes), a);
  }

  std::size_t modes() const { return modes_; }
  const Words& words() const { return words_; }
  bool is_zero() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }

  S coefficient(const Occupation& create, const Occupation& annihilate) const {
    auto it = words_.find(WordKey{create, annihilate});
    return it == words_.end() ? S(0) : it->second;
  }

  void add(const Occupation& create, const Occupation& annihilate, const S& c) {
    if (create.modes() != modes_ || annihilate.modes() != modes_) throw Error("word has the wrong mode count");
    if (c.is_zero()) return;
    auto [it, inserted] = words_.try_emplace(WordKey{create, annihilate}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) words_.erase(it);
    }
  }

  OperatorExpr& operator+=(const OperatorExpr& o) {
    for (const auto& [k, c] : o.words_) add(k.create, k.annihilate, c);
    return *this;
  }
  OperatorExpr& operator-=(const OperatorExpr& o) {
    for (const auto& [k, c] : o.words_) add(k.create, k.annihilate, -c);
    return *this;
  }
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const S& k, const OperatorExpr& e) {
    OperatorExpr r(e.modes_);
    for (const auto& [w, c] : e.words_) r.add(w.create, w.annihilate, k * c);
    return r;
  }

  /// Product of two expressions whose concatenation is already normally
  /// ordered: no word of `a` may annihilate while a word of `b` creates.
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    if (a.modes_ != b.modes_) throw Error("operator expressions have different mode counts");
    OperatorExpr r(a.modes_);
    for (const auto& [wa, ca] : a.words_)
      for (const auto& [wb, cb] : b.words_) {
        if (wa.annihilate.degree() > 0 && wb.create.degree() > 0) throw NotNormalOrdered();
        Occupation cre = wa.create;
        Occupation ann = wb.annihilate;
        for (std::size_t i = 0; i < a.modes_; ++i) {
          cre[i] += wb.create[i];
          ann[i] += wa.annihilate[i];
        }
        r.add(cre, ann, ca * cb);
      }
    return r;
  }

  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  std::string str() const {
    if (words_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : words_) {
      std::string ops;
      for (std::size_t i = 0; i < modes_; ++i)
        for (unsigned k = 0; k < w.create[i]; ++k) ops += " a" + std::to_string(i + 1) + "+";
      for (std::size_t i = 0; i < modes_; ++i)
        for (unsigned k = 0; k < w.annihilate[i]; ++k) ops += " a" + std::to_string(i + 1);
      out += (out.empty() ? "" : " + ") + ("(" + c.str() + ")") + ops;
    }
    return out;
  }

 private:
  std::size_t modes_;
  Words words_;
};

/// Hermitian conjugate for real coefficients: creations and annihilations swap.
template <Scalar S>
OperatorExpr<S> dagger(const OperatorExpr<S>& e) {
  OperatorExpr<S> r(e.modes());
  for (const auto& [w, c] : e.words()) r.add(w.annihilate, w.create, c);
  return r;
}

template <Scalar S>
OperatorExpr<S> pow(const OperatorExpr<S>& e, unsigned k) {
  OperatorExpr<S> r = OperatorExpr<S>::identity(e.modes());
  for (unsigned j = 0; j < k; ++j) r = r * e;
  return r;
}

/// Σ_i x_i a_i.
template <Scalar S>
OperatorExpr<S> linear_annihilation(const std::vector<S>& x) {
  OperatorExpr<S> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * OperatorExpr<S>::annihilation(x.size(), i);
  return r;
}

/// B_{m,n} = Σ_k a_k†^m a_k^n.
template <Scalar S = NuScalar>
OperatorExpr<S> b_block(unsigned m, unsigned n, std::size_t modes) {
  OperatorExpr<S> r(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    Occupation cre(modes), ann(modes);
    cre[k] = m;
    ann[k] = n;
    r.add(cre, ann, S(1));
  }
  return r;
}

/// Applies an expression word by word: annihilations first, then creations.
template <Scalar S>
FockState<S> apply(const CalogeroAlgebra<S>& alg, const OperatorExpr<S>& e, const FockState<S>& s) {
  if (e.modes() != alg.modes() || s.modes() != alg.modes()) throw Error("mode counts of expression and state differ");
  FockState<S> out(alg.modes());
  // Words sharing an annihilation part reuse the lowered state.
  std::map<Occupation, FockState<S>> lowered;
  for (const auto& [w, c] : e.words()) {
    auto it = lowered.find(w.annihilate);
    if (it == lowered.end()) {
      FockState<S> t = s;
      for (std::size_t i = 0; i < alg.modes() && !t.is_zero(); ++i)
        for (unsigned k = 0; k < w.annihilate[i] && !t.is_zero(); ++k) t = alg.annihilate(i, t);
      it = lowered.emplace(w.annihilate, std::move(t)).first;
    }
    FockState<S> t = it->second;
    for (std::size_t i = 0; i < alg.modes(); ++i)
      for (unsigned k = 0; k < w.create[i]; ++k) t = create(i, t);
    out += c * t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form expansions

enum class ClosedForm {
  exchange_12,              // K_12, three modes, through degree 2
  transition_1,             // N_1, three modes, through degree 2
  total_number,             // N, three modes, written with B blocks
  total_number_pairwise,    // N, three modes, written with pairwise differences
};

namespace detail {

inline OperatorExpr<NuScalar> lin(std::initializer_list<long> x) {
  std::vector<NuScalar> v;
  for (long c : x) v.emplace_back(c);
  return linear_annihilation(v);
}

}  // namespace detail

/*
 * Normally ordered expansions for M = 3 through degree 2, with
 * b12 = a1 − a2, b123 = a1 + a2 − 2a3, b23 = a2 − a3, b231 = a2 + a3 − 2a1:
 *
 *   K12 = 1 − b12†b12/(1+3ν) + b12†²b12²/(2(1+3ν)²)
 *           − ν b12†b123†b12b123/(2(1+3ν)²(2+3ν))
 *   N1  = a1†a1/(1+3ν) + ν a1†B01/(1+3ν) − ν a1†b231†b23²/(4(1+3ν)(2+3ν))
 *           − ν(1+ν) a1†b231†b231²/(4(1+3ν)²(2+3ν)) − ν a1†b23†b23b231/(2(1+3ν)²(2+3ν))
 *   N   = B11/(1+3ν) + ν B01†B01/(1+3ν) + ν/((1+3ν)²(2+3ν)) {2ν[3/2 B02† − 1/2 B01†²][3/2 B02 − 1/2 B01²]
 *           + 3B22 + B02†B02 − 2(B21B01 + B01†B12) + 2 Σ_i a_i†B11a_i}
 *
 * The pairwise form of N replaces the brace by
 *   Σ_{i<j} (a_i† − a_j†)²(a_i − a_j)² + 2ν [Σa_i†² − Σ_{i<j}a_i†a_j†][Σa_i² − Σ_{i<j}a_ia_j].
 */
inline OperatorExpr<NuScalar> closed_form_expansion(ClosedForm which) {
  using E = OperatorExpr<NuScalar>;
  constexpr std::size_t m = 3;
  const NuScalar nu = NuScalar::nu();
  const NuScalar p = NuScalar(1) + NuScalar(3) * nu;  // 1 + 3ν
  const NuScalar q = NuScalar(2) + NuScalar(3) * nu;  // 2 + 3ν
  const E one = E::identity(m);
  const E a1 = E::annihilation(m, 0);

  switch (which) {
    case ClosedForm::exchange_12: {
      const E b12 = detail::lin({1, -1, 0});
      const E b123 = detail::lin({1, 1, -2});
      return one - (NuScalar(1) / p) * (dagger(b12) * b12) +
             (NuScalar(1) / (NuScalar(2) * p * p)) * (pow(dagger(b12), 2) * pow(b12, 2)) -
             (nu / (NuScalar(2) * p * p * q)) * (dagger(b12) * dagger(b123) * b12 * b123);
    }
    case ClosedForm::transition_1: {
      const E b23 = detail::lin({0, 1, -1});
      const E b231 = detail::lin({-2, 1, 1});
      const E a1d = dagger(a1);
      return (NuScalar(1) / p) * (a1d * a1) + (nu / p) * (a1d * b_block(0, 1, m)) -
             (nu / (NuScalar(4) * p * q)) * (a1d * dagger(b231) * pow(b23, 2)) -
             (nu * (NuScalar(1) + nu) / (NuScalar(4) * p * p * q)) * (a1d * dagger(b231) * pow(b231, 2)) -
             (nu / (NuScalar(2) * p * p * q)) * (a1d * dagger(b23) * b23 * b231);
    }
    case ClosedForm::total_number: {
      const E b01 = b_block(0, 1, m);
      const E b02 = b_block(0, 2, m);
      const E mixed = NuScalar(Rat(3, 2)) * b02 - NuScalar(Rat(1, 2)) * pow(b01, 2);
      E sandwich(m);
      for (std::size_t i = 0; i < m; ++i)
        sandwich += E::creation(m, i) * b_block(1, 1, m) * E::annihilation(m, i);
      const E brace = NuScalar(2) * nu * (dagger(mixed) * mixed) + NuScalar(3) * b_block(2, 2, m) +
                      dagger(b02) * b02 -
                      NuScalar(2) * (b_block(2, 1, m) * b01 + dagger(b01) * b_block(1, 2, m)) +
                      NuScalar(2) * sandwich;
      return (NuScalar(1) / p) * b_block(1, 1, m) + (nu / p) * (dagger(b01) * b01) + (nu / (p * p * q)) * brace;
    }
    case ClosedForm::total_number_pairwise: {
      const E b01 = b_block(0, 1, m);
      E pairs(m), squares = b_block(0, 2, m), cross(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
          const E d = E::annihilation(m, i) - E::annihilation(m, j);
          pairs += pow(dagger(d), 2) * pow(d, 2);
          cross += E::annihilation(m, i) * E::annihilation(m, j);
        }
      const E mixed = squares - cross;
      return (NuScalar(1) / p) * b_block(1, 1, m) + (nu / p) * (dagger(b01) * b01) +
             (nu / (p * p * q)) * pairs + (NuScalar(2) * nu * nu / (p * p * q)) * (dagger(mixed) * mixed);
    }
  }
  throw Error("unknown closed-form expansion");
}

/// Σ_{k=0}^{D} (−1)^k/k! (a_i† − a_j†)^k (a_i − a_j)^k: the normally ordered
/// exponential that swaps two free-boson modes, truncated at degree D.
template <Scalar S = NuScalar>
OperatorExpr<S> boson_exchange(std::size_t modes, std::size_t i, std::size_t j, unsigned max_degree) {
  detail::check_mode(i, modes);
  detail::check_mode(j, modes);
  if (i == j) throw InvalidModePair(i);
  const OperatorExpr<S> d = OperatorExpr<S>::annihilation(modes, i) - OperatorExpr<S>::annihilation(modes, j);
  const OperatorExpr<S> dd = dagger(d);
  OperatorExpr<S> r(modes);
  for (unsigned k = 0; k <= max_degree; ++k) {
    const Rat c = Rat(k % 2 == 0 ? 1 : -1) / factorial(k);
    r += S(c) * (pow(dd, k) * pow(d, k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Targets and fitting

/// A degree-preserving operator given by its action on states.
struct FitTarget {
  enum class Kind { exchange, transition, total_number, product };
  Kind kind = Kind::total_number;
  std::size_t i = 0;
  std::size_t j = 0;

  static FitTarget exchange(std::size_t i, std::size_t j) { return {Kind::exchange, i, j}; }
  static FitTarget transition(std::size_t i, std::size_t j) { return {Kind::transition, i, j}; }
  static FitTarget total_number() { return {Kind::total_number, 0, 0}; }
  /// a_i a_j†
  static FitTarget product(std::size_t i, std::size_t j) { return {Kind::product, i, j}; }

  /// Short name with 1-based modes: K12, N12, N, AA12.
  std::string name() const {
    const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
    switch (kind) {
      case Kind::exchange: return "K" + ij;
      case Kind::transition: return "N" + ij;
      case Kind::total_number: return "N";
      case Kind::product: return "AA" + ij;
    }
    return "?";
  }
};

template <Scalar S>
FockState<S> target_action(const CalogeroAlgebra<S>& alg, const FitTarget& t, const FockState<S>& s) {
  switch (t.kind) {
    case FitTarget::Kind::exchange: return exchange(t.i, t.j, s);
    case FitTarget::Kind::transition: return transition_number(t.i, t.j, s);
    case FitTarget::Kind::total_number: {
      FockState<S> out(s.modes());
      for (std::size_t k = 0; k < s.modes(); ++k) out += transition_number(k, k, s);
      return out;
    }
    case FitTarget::Kind::product: return alg.annihilate(t.i, create(t.j, s));
  }
  throw Error("unknown fit target");
}

struct FitOptions {
  /// Require agreement only up to null states: <b|(expr − target)|s> = 0 for
  /// all b, s. Needed where the Gram matrix is singular, e.g. ν = −1/M.
  bool modulo_null = false;
  std::size_t threads = 1;
};

template <Scalar S>
struct FitResult {
  OperatorExpr<S> expr;
  std::size_t degree = 0;
  /// Pivots of the per-degree eliminations, in elimination order.
  std::vector<std::vector<S>> pivots;
  /// Couplings where a pivot vanishes or a coefficient has a pole.
  std::vector<Rat> singular_points;
  /// Size of the degree-≤D monomial set the result was re-verified on.
  std::size_t checked_states = 0;
};

namespace detail {

inline void collect_roots(const Rat&, std::set<Rat>&) {}
inline void collect_roots(const NuScalar& s, std::set<Rat>& out) {
  for (const auto& r : rational_roots(s.num())) out.insert(r);
  for (const auto& r : rational_roots(s.den())) out.insert(r);
}
inline void collect_poles(const Rat&, std::set<Rat>&) {}
inline void collect_poles(const NuScalar& s, std::set<Rat>& out) {
  for (const auto& r : rational_roots(s.den())) out.insert(r);
}

inline std::string coupling_str(const Rat& nu) { return nu.str(); }
inline std::string coupling_str(const NuScalar& nu) { return nu.str(); }

inline bool is_constant(const Rat&) { return true; }
inline bool is_constant(const NuScalar& s) { return s.is_constant(); }

/// <b|x> for every degree-d basis occupation b, via the Gram matrix.
template <Scalar S>
std::vector<S> project(const Matrix<S>& gram, const std::map<Occupation, std::size_t>& index, const FockState<S>& x) {
  std::vector<S> out(gram.rows(), S(0));
  for (const auto& [occ, c] : x.terms()) {
    const std::size_t o = index.at(occ);
    for (std::size_t b = 0; b < gram.rows(); ++b)
      if (!gram(b, o).is_zero()) out[b] = out[b] + gram(b, o) * c;
  }
  return out;
}

}  // namespace detail

/// Agreement of expression and target on every monomial of degree ≤ D:
/// exact state equality, or equality of all Gram projections with modulo_null.
/// Returns a description of the first disagreement.
template <Scalar S>
std::optional<std::string> check_fit(const CalogeroAlgebra<S>& alg, const FitTarget& t, const OperatorExpr<S>& e,
                                     std::size_t max_degree, bool modulo_null) {
  for (std::size_t d = 0; d <= max_degree; ++d) {
    const auto basis = multiset_basis(alg.modes(), d);
    Matrix<S> gram;
    std::map<Occupation, std::size_t> index;
    if (modulo_null) {
      gram = multiset_gram(alg, d);
      index = detail::index_of(basis);
    }
    for (const auto& occ : basis) {
      const auto s = FockState<S>::monomial(occ);
      const FockState<S> diff = apply(alg, e, s) - target_action(alg, t, s);
      if (diff.is_zero()) continue;
      if (!modulo_null) return "on " + occ.str() + ": expression minus target = " + diff.str();
      for (const auto& v : detail::project(gram, index, diff))
        if (!v.is_zero()) return "on " + occ.str() + ": difference " + diff.str() + " is not a null state";
    }
  }
  return std::nullopt;
}

/*
 * Fits c_0 + Σ X[cre, ann] a†^cre a^ann (|cre| = |ann| ≤ D) to a
 * degree-preserving target. A word of degree d kills states of lower degree
 * and sends a degree-d monomial |s> to <ann|s>|cre>, so degree by degree
 *
 *   Σ_ann X[o, ann] G_d[ann, s] = R[o, s],   R(s) = target(s) − (lower words)(s),
 *
 * one linear system in the Gram matrix per output occupation o. Free
 * variables of an underdetermined system are set to zero.
 */
template <Scalar S>
FitResult<S> fit_expansion(const CalogeroAlgebra<S>& alg, const FitTarget& t, std::size_t max_degree,
                           const FitOptions& opt = {}) {
  const std::size_t m = alg.modes();
  FitResult<S> out;
  out.expr = OperatorExpr<S>(m);
  out.degree = max_degree;
  std::set<Rat> singular;

  for (std::size_t d = 0; d <= max_degree; ++d) {
    const auto basis = multiset_basis(m, d);
    const auto index = detail::index_of(basis);
    const std::size_t n = basis.size();
    const Matrix<S> gram = multiset_gram(alg, d, opt.threads);

    // R[o, s]
    Matrix<S> resid(n, n, S(0));
    std::vector<FockState<S>> rs(n);
    parallel_for(n, opt.threads, [&](std::size_t s) {
      const auto st = FockState<S>::monomial(basis[s]);
      rs[s] = target_action(alg, t, st) - apply(alg, out.expr, st);
    });
    for (std::size_t s = 0; s < n; ++s)
      for (const auto& [occ, c] : rs[s].terms()) {
        auto it = index.find(occ);
        if (it == index.end()) throw Error("fit target does not preserve the particle number");
        resid(it->second, s) = c;
      }

    Matrix<S> x(n, n, S(0));  // x(ann, o) = X[o, ann]
    if (!opt.modulo_null) {
      Matrix<S> rhs(n, n);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t o = 0; o < n; ++o) rhs(s, o) = resid(o, s);
      auto sol = solve_echelon(gram, rhs);
      if (sol.inconsistent_rhs) {
        if (detail::is_constant(alg.nu())) throw ZeroPivot(detail::coupling_str(alg.nu()), d);
        throw Inconsistent("fit at degree " + std::to_string(d));
      }
      x = std::move(sol.x);
      out.pivots.push_back(std::move(sol.pivots));
    } else {
      // Σ_{o,a} G[b,o] X[o,a] G[a,s] = Σ_o G[b,o] R[o,s]; unknown X[o,a] has column o·n + a.
      Matrix<S> a(n * n, n * n, S(0));
      Matrix<S> rhs(n * n, 1, S(0));
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t s = 0; s < n; ++s) {
          const std::size_t row = b * n + s;
          for (std::size_t o = 0; o < n; ++o) {
            if (gram(b, o).is_zero()) continue;
            rhs(row, 0) = rhs(row, 0) + gram(b, o) * resid(o, s);
            for (std::size_t an = 0; an < n; ++an)
              if (!gram(an, s).is_zero()) a(row, o * n + an) = gram(b, o) * gram(an, s);
          }
        }
      auto sol = solve_echelon(a, rhs);
      if (sol.inconsistent_rhs) throw Inconsistent("null-state fit at degree " + std::to_string(d));
      for (std::size_t o = 0; o < n; ++o)
        for (std::size_t an = 0; an < n; ++an) x(an, o) = sol.x(o * n + an, 0);
      out.pivots.push_back(std::move(sol.pivots));
    }
    for (const auto& p : out.pivots.back()) detail::collect_roots(p, singular);
    for (std::size_t o = 0; o < n; ++o)
      for (std::size_t an = 0; an < n; ++an) {
        detail::collect_poles(x(an, o), singular);
        out.expr.add(basis[o], basis[an], x(an, o));
      }
  }

  if (auto bad = check_fit(alg, t, out.expr, max_degree, opt.modulo_null))
    throw Inconsistent("fitted expansion fails re-verification " + *bad);
  out.checked_states = monomials_up_to(m, max_degree).size();
  out.singular_points.assign(singular.begin(), singular.end());
  return out;
}

/// Whether two expressions act identically on every monomial of degree ≤ D.
template <Scalar S>
std::optional<std::string> compare_actions(const CalogeroAlgebra<S>& alg, const OperatorExpr<S>& x,
                                           const OperatorExpr<S>& y, std::size_t max_degree) {
  for (const auto& occ : monomials_up_to(alg.modes(), max_degree)) {
    const auto s = FockState<S>::monomial(occ);
    const FockState<S> diff = apply(alg, x, s) - apply(alg, y, s);
    if (!diff.is_zero()) return "on " + occ.str() + ": difference " + diff.str();
  }
  return std::nullopt;
}

/// Converts an expression to exact constants at a numeric coupling.
inline OperatorExpr<Rat> evaluate(const OperatorExpr<NuScalar>& e, const Rat& nu) {
  OperatorExpr<Rat> r(e.modes());
  for (const auto& [w, c] : e.words()) r.add(w.create, w.annihilate, c.evaluate(nu));
  return r;
}

}  // namespace calogero
