#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/parallel.hpp"
#include "calogero/scalar.hpp"

// Fock space of M commuting creation operators a_i† over a vacuum |0>, and
// the actions of the S_M-extended Heisenberg algebra
//   [a_i, a_j†] = (1 + ν Σ_k K_ik) δ_ij − ν K_ij,   K_ij|0> = |0>.
// Modes are 0-based throughout the C++ interface.

namespace calogero {

/// Occupation numbers (n_1, ..., n_M) of the monomial a_1†^n_1 ... a_M†^n_M |0>.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::size_t modes) : counts_(modes, 0) {}
  Occupation(std::initializer_list<unsigned> counts) : counts_(counts) {}
  explicit Occupation(std::vector<unsigned> counts) : counts_(std::move(counts)) {}

  std::size_t modes() const { return counts_.size(); }
  unsigned operator[](std::size_t i) const { return counts_[i]; }
  unsigned& operator[](std::size_t i) { return counts_[i]; }
  const std::vector<unsigned>& counts() const { return counts_; }
  unsigned degree() const { return std::accumulate(counts_.begin(), counts_.end(), 0u); }

  std::string str() const {
    std::string out = "|";
    for (std::size_t i = 0; i < counts_.size(); ++i) out += (i ? "," : "") + std::to_string(counts_[i]);
    return out + ">";
  }

  auto operator<=>(const Occupation&) const = default;

 private:
  std::vector<unsigned> counts_;
};

/// An index string (i_1, ..., i_n) labelling a†_{i_1} ... a†_{i_n}|0>.
using ModeSequence = std::vector<std::size_t>;

inline Occupation occupation_of(const ModeSequence& seq, std::size_t modes) {
  Occupation occ(modes);
  for (auto i : seq) {
    if (i >= modes) throw InvalidMode(i, modes);
    ++occ[i];
  }
  return occ;
}

/// Nondecreasing index string of an occupation.
inline ModeSequence sorted_sequence(const Occupation& occ) {
  ModeSequence seq;
  for (std::size_t i = 0; i < occ.modes(); ++i) seq.insert(seq.end(), occ[i], i);
  return seq;
}

/// Sparse linear combination of occupation monomials. Zero coefficients are
/// never stored; terms iterate in lexicographic occupation order.
template <Scalar S>
class FockState {
 public:
  using Terms = std::map<Occupation, S>;

  explicit FockState(std::size_t modes = 0) : modes_(modes) {}

  static FockState vacuum(std::size_t modes) { return monomial(Occupation(modes)); }
  static FockState monomial(const Occupation& occ, S coef = S(1)) {
    FockState s(occ.modes());
    s.add(occ, coef);
    return s;
  }

  std::size_t modes() const { return modes_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Total degree when every term has the same degree.
  std::optional<unsigned> homogeneous_degree() const {
    std::optional<unsigned> deg;
    for (const auto& [occ, c] : terms_) {
      if (deg && *deg != occ.degree()) return std::nullopt;
      deg = occ.degree();
    }
    return deg;
  }

  void add(const Occupation& occ, const S& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(occ, coef);
    if (!inserted) {
      it->second = it->second + coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FockState& operator+=(const FockState& o) {
    for (const auto& [occ, c] : o.terms_) add(occ, c);
    return *this;
  }
  FockState& operator-=(const FockState& o) {
    for (const auto& [occ, c] : o.terms_) add(occ, -c);
    return *this;
  }
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(const S& k, const FockState& s) {
    FockState r(s.modes_);
    if (k.is_zero()) return r;
    for (const auto& [occ, c] : s.terms_) r.terms_.emplace(occ, k * c);
    return r;
  }

  friend bool operator==(const FockState&, const FockState&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [occ, c] : terms_) out += (out.empty() ? "" : " + ") + ("(" + c.str() + ")") + occ.str();
    return out;
  }

 private:
  std::size_t modes_;
  Terms terms_;
};

namespace detail {
inline void check_mode(std::size_t i, std::size_t modes) {
  if (i >= modes) throw InvalidMode(i, modes);
}

/// Applies f(occ, coef, out) to every term, accumulating into a fresh state.
template <Scalar S, class F>
FockState<S> map_terms(const FockState<S>& s, F&& f) {
  FockState<S> out(s.modes());
  for (const auto& [occ, c] : s.terms()) f(occ, c, out);
  return out;
}
}  // namespace detail

/// a_i†: creations commute, so this increments n_i.
template <Scalar S>
FockState<S> create(std::size_t i, const FockState<S>& s) {
  detail::check_mode(i, s.modes());
  return detail::map_terms(s, [i](Occupation occ, const S& c, FockState<S>& out) {
    ++occ[i];
    out.add(occ, c);
  });
}

/// K_ij: swaps the occupations of modes i and j.
template <Scalar S>
FockState<S> exchange(std::size_t i, std::size_t j, const FockState<S>& s) {
  detail::check_mode(i, s.modes());
  detail::check_mode(j, s.modes());
  if (i == j) throw InvalidModePair(i);
  return detail::map_terms(s, [i, j](Occupation occ, const S& c, FockState<S>& out) {
    std::swap(occ[i], occ[j]);
    out.add(occ, c);
  });
}

/// N_ij = a_i† ã_j: moves one quantum from mode j to mode i with weight n_j.
template <Scalar S>
FockState<S> transition_number(std::size_t i, std::size_t j, const FockState<S>& s) {
  detail::check_mode(i, s.modes());
  detail::check_mode(j, s.modes());
  return detail::map_terms(s, [i, j](Occupation occ, const S& c, FockState<S>& out) {
    const unsigned nj = occ[j];
    if (nj == 0) return;
    --occ[j];
    ++occ[i];
    out.add(occ, S(static_cast<long>(nj)) * c);
  });
}

/// ã_i: the ordinary bosonic lowering, n_i |..., n_i − 1, ...>.
template <Scalar S>
FockState<S> dual_annihilate(std::size_t i, const FockState<S>& s) {
  detail::check_mode(i, s.modes());
  return detail::map_terms(s, [i](Occupation occ, const S& c, FockState<S>& out) {
    const unsigned ni = occ[i];
    if (ni == 0) return;
    --occ[i];
    out.add(occ, S(static_cast<long>(ni)) * c);
  });
}

/// Applies a permutation of mode labels: mode i becomes mode perm[i].
inline Occupation relabel(const Occupation& occ, const std::vector<std::size_t>& perm) {
  Occupation out(occ.modes());
  for (std::size_t i = 0; i < occ.modes(); ++i) out[perm[i]] = occ[i];
  return out;
}

template <Scalar S>
FockState<S> relabel(const FockState<S>& s, const std::vector<std::size_t>& perm) {
  return detail::map_terms(s, [&perm](const Occupation& occ, const S& c, FockState<S>& out) {
    out.add(relabel(occ, perm), c);
  });
}

/*
 * The Calogero algebra at coupling ν over M modes.
 *
 * The annihilation action on a monomial is
 *
 *   a_i |n> = n_i |n − e_i>
 *           + ν Σ_{j≠i} sgn(n_i − n_j) Σ_{k=1}^{|n_i−n_j|} |n; slot i = min+k−1, slot j = max−k>
 *
 * with min/max taken over (n_i, n_j) and sgn(0) = 0. Each term lowers the
 * total degree by exactly one.
 */
template <Scalar S>
class CalogeroAlgebra {
 public:
  CalogeroAlgebra(std::size_t modes, S nu) : modes_(modes), nu_(std::move(nu)) {
    if (modes == 0) throw Error("the algebra needs at least one mode");
  }

  std::size_t modes() const { return modes_; }
  const S& nu() const { return nu_; }

  /// 1 + Mν; norms are positive exactly when this is.
  S positivity_margin() const { return S(1) + S(static_cast<long>(modes_)) * nu_; }

  /// E_0 = (M/2)(1 + ν(M − 1)).
  S ground_energy() const {
    const auto m = static_cast<long>(modes_);
    return S(Rat(m, 2)) * (S(1) + nu_ * S(m - 1));
  }

  FockState<S> annihilate(std::size_t i, const Occupation& occ) const {
    FockState<S> out(modes_);
    lower_into(i, occ, S(1), out);
    return out;
  }

  FockState<S> annihilate(std::size_t i, const FockState<S>& s) const {
    detail::check_mode(i, modes_);
    FockState<S> out(modes_);
    for (const auto& [occ, c] : s.terms()) lower_into(i, occ, c, out);
    return out;
  }

  /// [a_i, a_j†] evaluated through its exchange-operator expression.
  FockState<S> commutator_action(std::size_t i, std::size_t j, const FockState<S>& s) const {
    detail::check_mode(i, modes_);
    detail::check_mode(j, modes_);
    if (i != j) return (-nu_) * exchange(i, j, s);
    FockState<S> out = s;
    for (std::size_t l = 0; l < modes_; ++l)
      if (l != i) out += nu_ * exchange(i, l, s);
    return out;
  }

  /// <bra|ket>: annihilates the bra's quanta from the ket, reads |0>.
  S inner_product(const Occupation& bra, const FockState<S>& ket) const {
    FockState<S> s = ket;
    for (std::size_t i = 0; i < bra.modes() && !s.is_zero(); ++i)
      for (unsigned k = 0; k < bra[i] && !s.is_zero(); ++k) s = annihilate(i, s);
    return s.coefficient(Occupation(modes_));
  }

  S inner_product(const ModeSequence& bra, const FockState<S>& ket) const {
    return inner_product(occupation_of(bra, modes_), ket);
  }

 private:
  void lower_into(std::size_t i, const Occupation& occ, const S& c, FockState<S>& out) const {
    detail::check_mode(i, modes_);
    const unsigned ni = occ[i];
    if (ni > 0) {
      Occupation down = occ;
      --down[i];
      out.add(down, S(static_cast<long>(ni)) * c);
    }
    if (nu_.is_zero()) return;
    const S nu_c = nu_ * c;
    const S minus_nu_c = -nu_c;
    for (std::size_t j = 0; j < modes_; ++j) {
      if (j == i || occ[j] == ni) continue;
      const unsigned lo = std::min(ni, occ[j]);
      const unsigned hi = std::max(ni, occ[j]);
      const S& w = ni > occ[j] ? nu_c : minus_nu_c;
      Occupation t = occ;
      for (unsigned k = 1; k <= hi - lo; ++k) {
        t[i] = lo + k - 1;
        t[j] = hi - k;
        out.add(t, w);
      }
    }
  }

  std::size_t modes_;
  S nu_;
};

/// Symbolic-coupling algebra; constant couplings are lifted into NuScalar.
using AlgebraParams = CalogeroAlgebra<NuScalar>;

/// Whether 1 + Mν > 0, when the coupling is a known number.
inline std::optional<bool> positivity_flag(const CalogeroAlgebra<Rat>& alg) {
  return alg.positivity_margin().sign() > 0;
}
inline std::optional<bool> positivity_flag(const CalogeroAlgebra<NuScalar>& alg) {
  if (auto v = alg.positivity_margin().constant_value()) return v->sign() > 0;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bases

enum class BasisKind { sequence, multiset };

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

inline std::size_t multiset_count(std::size_t modes, std::size_t n) {
  // C(M + n − 1, n)
  std::size_t r = 1;
  for (std::size_t k = 1; k <= n; ++k) r = r * (modes + k - 1) / k;
  return r;
}

inline void check_limits(std::size_t modes, std::size_t n, BasisKind kind, const Config& cfg) {
  if (modes > cfg.max_modes) throw BasisTooLarge("mode count", modes, cfg.max_modes);
  if (n > cfg.max_degree) throw BasisTooLarge("particle number", n, cfg.max_degree);
  const std::size_t size =
      kind == BasisKind::sequence ? checked_power(modes, n, cfg.max_basis) : multiset_count(modes, n);
  if (size > cfg.max_basis) throw BasisTooLarge("basis", size, cfg.max_basis);
}

/// All M^n index strings in lexicographic order.
inline std::vector<ModeSequence> sequence_basis(std::size_t modes, std::size_t n, const Config& cfg = {}) {
  check_limits(modes, n, BasisKind::sequence, cfg);
  std::vector<ModeSequence> out;
  ModeSequence cur(n, 0);
  while (true) {
    out.push_back(cur);
    std::size_t pos = n;
    while (pos > 0 && cur[pos - 1] + 1 == modes) cur[--pos] = 0;
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

/// The C(M+n−1, n) occupations of degree n, ordered like their nondecreasing
/// index strings: (1,1), (1,2), ..., (M,M) for n = 2.
inline std::vector<Occupation> multiset_basis(std::size_t modes, std::size_t n) {
  std::vector<Occupation> out;
  ModeSequence cur(n, 0);
  while (true) {
    out.push_back(occupation_of(cur, modes));
    std::size_t pos = n;
    while (pos > 0 && cur[pos - 1] + 1 == modes) --pos;
    if (pos == 0) break;
    const std::size_t v = cur[pos - 1] + 1;
    for (std::size_t k = pos - 1; k < n; ++k) cur[k] = v;
  }
  return out;
}

/// Basis of degree-n states as index strings; multiset strings are nondecreasing.
inline std::vector<ModeSequence> enumerate_basis(std::size_t modes, std::size_t n, BasisKind kind,
                                                 const Config& cfg = {}) {
  if (kind == BasisKind::sequence) return sequence_basis(modes, n, cfg);
  check_limits(modes, n, kind, cfg);
  std::vector<ModeSequence> out;
  for (const auto& occ : multiset_basis(modes, n)) out.push_back(sorted_sequence(occ));
  return out;
}

/// Every monomial of degree ≤ max_degree, grouped by degree.
inline std::vector<Occupation> monomials_up_to(std::size_t modes, std::size_t max_degree) {
  std::vector<Occupation> out;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    auto level = multiset_basis(modes, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace calogero
