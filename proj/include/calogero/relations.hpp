#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/fock.hpp"
#include "calogero/parallel.hpp"
#include "calogero/scalar.hpp"

namespace calogero {

/// Outcome of checking one operator identity on every monomial of degree ≤ D.
struct RelationReport {
  std::string name;
  std::string statement;
  std::size_t modes = 0;
  std::size_t max_degree = 0;
  std::size_t states = 0;
  std::size_t checks = 0;
  bool passed = true;
  std::optional<std::string> counterexample;
  /// Set by the mapping check: whether 1 + Mν > 0, when ν is a number.
  std::optional<bool> positivity;
};

struct RelationInfo {
  const char* name;
  const char* statement;
};

inline const std::vector<RelationInfo>& relation_catalog() {
  static const std::vector<RelationInfo> catalog = {
      {"number-operators", "[N_ij, a_k+] = d_jk a_i+, [N_ij, N_kl] = d_jk N_il - d_il N_kj, [N_i, N_j] = 0, N = degree"},
      {"exchange-group", "K_ij^2 = 1, K_ij = K_ji, K_ij K_jk = K_jk K_ik = K_ik K_ij, K_ij a_j = a_i K_ij, "
                         "K_ij a_k = a_k K_ij, K_ij |0> = |0>"},
      {"exchange-from-transitions", "K_ij = N_ji^n_i N_ij^n_j / (n_i + n_j)! on each monomial"},
      {"heisenberg", "[a_i, a_j] = 0, [a_i, a_j+] = (1 + nu sum_k K_ik) d_ij - nu K_ij"},
      {"triple", "[a_i, B01+] = 1, a_i C_ij = C_ij a_j, a_i C_ji = C_ji a_j, a_k C_ij = C_ij a_k, C_ij = C_ji, "
                 "and hermitian counterparts, with C_ij = [a_i, a_j+]"},
      {"vacuum", "a_i |0> = 0, a_i a_j+ |0> = -nu |0> for i != j"},
      {"consistency", "C_ij^2 = nu^2, [a_k, C_ij^2] = 0, C_ij C_jk = C_jk C_ik = C_ik C_ij"},
      {"normal-order", "a_i a_j+ = -nu K_ij + a_j+ a_i (i != j), a_i a_i+ = 1 + a_i+ a_i + nu sum_l K_il"},
      {"dual", "[at_i, a_j+] = d_ij, [at_i, at_j] = 0"},
      {"hamiltonian", "(1/2) sum_i {a_i, a_i+} = N + E_0"},
      {"mapping", "[a_i, a_j] = 0, [N_i, a_j+] = d_ij a_i+; reports whether 1 + M nu > 0"},
  };
  return catalog;
}

inline const RelationInfo& relation_info(const std::string& name) {
  for (const auto& r : relation_catalog())
    if (name == r.name) return r;
  throw UnknownRelation(name);
}

/// "all" or a comma-separated list of relation names.
inline std::vector<std::string> parse_relation_list(const std::string& text) {
  std::vector<std::string> out;
  if (text == "all") {
    for (const auto& r : relation_catalog()) out.emplace_back(r.name);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    relation_info(item);
    out.push_back(item);
  }
  if (out.empty()) throw UnknownRelation(text);
  return out;
}

namespace detail {

/// Collects equalities checked on one state; remembers the first failure.
template <Scalar S>
struct Checker {
  std::size_t checks = 0;
  std::optional<std::string> failure;

  void eq(const FockState<S>& lhs, const FockState<S>& rhs, const std::string& what) {
    ++checks;
    if (!failure && !(lhs == rhs)) failure = what + ": " + lhs.str() + " != " + rhs.str();
  }
};

inline std::string label(const std::string& op, std::initializer_list<std::size_t> modes) {
  std::string s = op + "(";
  bool first = true;
  for (auto m : modes) {
    s += (first ? "" : ",") + std::to_string(m + 1);
    first = false;
  }
  return s + ")";
}

/// Operators used by the checks, all defined through their actions.
template <Scalar S>
struct Ops {
  const CalogeroAlgebra<S>& alg;

  FockState<S> a(std::size_t i, const FockState<S>& s) const { return alg.annihilate(i, s); }
  FockState<S> ad(std::size_t i, const FockState<S>& s) const { return create(i, s); }
  FockState<S> K(std::size_t i, std::size_t j, const FockState<S>& s) const { return exchange(i, j, s); }
  FockState<S> N(std::size_t i, std::size_t j, const FockState<S>& s) const { return transition_number(i, j, s); }
  FockState<S> at(std::size_t i, const FockState<S>& s) const { return dual_annihilate(i, s); }
  /// C_ij = [a_i, a_j†] from the actions, with no reference to K.
  FockState<S> C(std::size_t i, std::size_t j, const FockState<S>& s) const {
    return a(i, ad(j, s)) - ad(j, a(i, s));
  }
};

template <Scalar S>
void check_state(const std::string& name, const CalogeroAlgebra<S>& alg, const Occupation& occ, Checker<S>& ck) {
  const std::size_t m = alg.modes();
  const Ops<S> op{alg};
  const FockState<S> s = FockState<S>::monomial(occ);
  const FockState<S> zero(m);
  const S nu = alg.nu();
  const std::string at = " on " + occ.str();

  if (name == "number-operators") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
          const auto lhs = op.N(i, j, op.ad(k, s)) - op.ad(k, op.N(i, j, s));
          ck.eq(lhs, j == k ? op.ad(i, s) : zero, label("[N,a+]", {i, j, k}) + at);
          for (std::size_t l = 0; l < m; ++l) {
            const auto comm = op.N(i, j, op.N(k, l, s)) - op.N(k, l, op.N(i, j, s));
            FockState<S> rhs(m);
            if (j == k) rhs += op.N(i, l, s);
            if (i == l) rhs -= op.N(k, j, s);
            ck.eq(comm, rhs, label("[N,N]", {i, j, k, l}) + at);
          }
        }
      }
    FockState<S> total(m);
    for (std::size_t i = 0; i < m; ++i) total += op.N(i, i, s);
    ck.eq(total, S(static_cast<long>(occ.degree())) * s, "N = degree" + at);
  } else if (name == "exchange-group") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        ck.eq(op.K(i, j, op.K(i, j, s)), s, label("K^2", {i, j}) + at);
        ck.eq(op.K(i, j, s), op.K(j, i, s), label("K_ij=K_ji", {i, j}) + at);
        ck.eq(op.K(i, j, op.a(j, s)), op.a(i, op.K(i, j, s)), label("K_ij a_j", {i, j}) + at);
        ck.eq(op.K(i, j, op.ad(j, s)), op.ad(i, op.K(i, j, s)), label("K_ij a_j+", {i, j}) + at);
        for (std::size_t k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          ck.eq(op.K(i, j, op.a(k, s)), op.a(k, op.K(i, j, s)), label("K_ij a_k", {i, j, k}) + at);
          const auto x = op.K(i, j, op.K(j, k, s));
          ck.eq(x, op.K(j, k, op.K(i, k, s)), label("braid", {i, j, k}) + at);
          ck.eq(x, op.K(i, k, op.K(i, j, s)), label("braid", {i, j, k}) + at);
        }
      }
    if (occ.degree() == 0)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) ck.eq(op.K(i, j, s), s, label("K|0>", {i, j}));
  } else if (name == "exchange-from-transitions") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        FockState<S> t = s;
        for (unsigned k = 0; k < occ[j]; ++k) t = op.N(i, j, t);
        for (unsigned k = 0; k < occ[i]; ++k) t = op.N(j, i, t);
        t = S(Rat(1) / factorial(occ[i] + occ[j])) * t;
        ck.eq(t, op.K(i, j, s), label("K from N", {i, j}) + at);
      }
  } else if (name == "heisenberg") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        ck.eq(op.a(i, op.a(j, s)), op.a(j, op.a(i, s)), label("[a,a]", {i, j}) + at);
        ck.eq(op.C(i, j, s), alg.commutator_action(i, j, s), label("[a,a+]", {i, j}) + at);
      }
  } else if (name == "triple") {
    for (std::size_t i = 0; i < m; ++i) {
      FockState<S> sum(m), sum_h(m);
      for (std::size_t j = 0; j < m; ++j) {
        sum += op.C(i, j, s);
        sum_h += op.C(j, i, s);
      }
      ck.eq(sum, s, label("[a,B01+]", {i}) + at);
      ck.eq(sum_h, s, label("[B01,a+]", {i}) + at);
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        ck.eq(op.C(i, j, s), op.C(j, i, s), label("C_ij=C_ji", {i, j}) + at);
        ck.eq(op.a(i, op.C(i, j, s)), op.C(i, j, op.a(j, s)), label("a_i C_ij", {i, j}) + at);
        ck.eq(op.a(i, op.C(j, i, s)), op.C(j, i, op.a(j, s)), label("a_i C_ji", {i, j}) + at);
        ck.eq(op.C(j, i, op.ad(i, s)), op.ad(j, op.C(j, i, s)), label("C_ji a_i+", {i, j}) + at);
        ck.eq(op.C(i, j, op.ad(i, s)), op.ad(j, op.C(i, j, s)), label("C_ij a_i+", {i, j}) + at);
        for (std::size_t k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          ck.eq(op.a(k, op.C(i, j, s)), op.C(i, j, op.a(k, s)), label("a_k C_ij", {i, j, k}) + at);
          ck.eq(op.C(i, j, op.ad(k, s)), op.ad(k, op.C(i, j, s)), label("C_ij a_k+", {i, j, k}) + at);
        }
      }
    }
  } else if (name == "vacuum") {
    if (occ.degree() != 0) return;
    for (std::size_t i = 0; i < m; ++i) {
      ck.eq(op.a(i, s), zero, label("a|0>", {i}));
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) ck.eq(op.a(i, op.ad(j, s)), (-nu) * s, label("a_i a_j+|0>", {i, j}));
    }
  } else if (name == "consistency") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const auto c2 = op.C(i, j, op.C(i, j, s));
        ck.eq(c2, (nu * nu) * s, label("C^2", {i, j}) + at);
        for (std::size_t k = 0; k < m; ++k) {
          ck.eq(op.a(k, c2), op.C(i, j, op.C(i, j, op.a(k, s))), label("[a_k,C^2]", {i, j, k}) + at);
          if (k == i || k == j) continue;
          const auto x = op.C(i, j, op.C(j, k, s));
          ck.eq(x, op.C(j, k, op.C(i, k, s)), label("C C", {i, j, k}) + at);
          ck.eq(x, op.C(i, k, op.C(i, j, s)), label("C C", {i, j, k}) + at);
        }
      }
  } else if (name == "normal-order") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto lhs = op.a(i, op.ad(j, s));
        if (i != j) {
          ck.eq(lhs, (-nu) * op.K(i, j, s) + op.ad(j, op.a(i, s)), label("a_i a_j+", {i, j}) + at);
        } else {
          FockState<S> rhs = s + op.ad(i, op.a(i, s));
          for (std::size_t l = 0; l < m; ++l)
            if (l != i) rhs += nu * op.K(i, l, s);
          ck.eq(lhs, rhs, label("a_i a_i+", {i}) + at);
        }
      }
  } else if (name == "dual") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        ck.eq(op.at(i, op.ad(j, s)) - op.ad(j, op.at(i, s)), i == j ? s : zero, label("[at,a+]", {i, j}) + at);
        ck.eq(op.at(i, op.at(j, s)), op.at(j, op.at(i, s)), label("[at,at]", {i, j}) + at);
      }
  } else if (name == "hamiltonian") {
    FockState<S> h(m);
    for (std::size_t i = 0; i < m; ++i) h += op.a(i, op.ad(i, s)) + op.ad(i, op.a(i, s));
    h = S(Rat(1, 2)) * h;
    ck.eq(h, (S(static_cast<long>(occ.degree())) + alg.ground_energy()) * s, "H = N + E0" + at);
  } else if (name == "mapping") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        ck.eq(op.a(i, op.a(j, s)), op.a(j, op.a(i, s)), label("[a,a]", {i, j}) + at);
        ck.eq(op.N(i, i, op.ad(j, s)) - op.ad(j, op.N(i, i, s)), i == j ? op.ad(i, s) : zero,
              label("[N_i,a+]", {i, j}) + at);
      }
  } else {
    throw UnknownRelation(name);
  }
}

}  // namespace detail

/// Checks one named relation on every monomial of degree ≤ max_degree.
/// The first counterexample in monomial order is reported.
template <Scalar S>
RelationReport verify_relation(const std::string& name, const CalogeroAlgebra<S>& alg, std::size_t max_degree,
                               const Config& cfg = {}) {
  const RelationInfo& info = relation_info(name);
  check_limits(alg.modes(), max_degree, BasisKind::multiset, cfg);
  const auto states = monomials_up_to(alg.modes(), max_degree);
  std::vector<detail::Checker<S>> results(states.size());
  parallel_for(states.size(), cfg.threads,
               [&](std::size_t k) { detail::check_state(name, alg, states[k], results[k]); });

  RelationReport rep;
  rep.name = info.name;
  rep.statement = info.statement;
  rep.modes = alg.modes();
  rep.max_degree = max_degree;
  rep.states = states.size();
  for (const auto& r : results) {
    rep.checks += r.checks;
    if (r.failure && !rep.counterexample) rep.counterexample = r.failure;
  }
  rep.passed = !rep.counterexample;
  if (name == "mapping") rep.positivity = positivity_flag(alg);
  return rep;
}

}  // namespace calogero
