#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/fock.hpp"
#include "calogero/linalg.hpp"
#include "calogero/parallel.hpp"
#include "calogero/scalar.hpp"

namespace calogero {

/// Matrix of scalar products <I|J> of the degree-n monomials a†_{i_1}···a†_{i_n}|0>.
template <Scalar S>
struct GramMatrix {
  std::size_t modes = 0;
  std::size_t particles = 0;
  S nu{};
  BasisKind kind = BasisKind::sequence;
  std::vector<ModeSequence> basis;
  Matrix<S> entries;

  std::size_t size() const { return basis.size(); }
};

namespace detail {

inline std::map<Occupation, std::size_t> index_of(const std::vector<Occupation>& basis) {
  std::map<Occupation, std::size_t> idx;
  for (std::size_t k = 0; k < basis.size(); ++k) idx.emplace(basis[k], k);
  return idx;
}

inline std::size_t first_occupied(const Occupation& occ) {
  std::size_t i = 0;
  while (occ[i] == 0) ++i;
  return i;
}

}  // namespace detail

/*
 * Multiset Gram matrix of degree n, built level by level. Annihilators
 * commute, so <b|o> = <b − e_i| a_i |o> for any occupied mode i of b; a_i|o>
 * lands in degree n − 1 where the previous level already has every entry.
 */
template <Scalar S>
Matrix<S> multiset_gram(const CalogeroAlgebra<S>& alg, std::size_t n, std::size_t threads = 1) {
  const std::size_t m = alg.modes();
  Matrix<S> prev(1, 1, S(1));
  std::vector<Occupation> prev_basis = multiset_basis(m, 0);
  for (std::size_t d = 1; d <= n; ++d) {
    const std::vector<Occupation> basis = multiset_basis(m, d);
    const auto prev_index = detail::index_of(prev_basis);
    Matrix<S> cur(basis.size(), basis.size(), S(0));
    // Lowered kets do not depend on the row, so compute each a_i|o> once.
    std::vector<std::vector<FockState<S>>> lowered(m, std::vector<FockState<S>>(basis.size()));
    parallel_for(m * basis.size(), threads, [&](std::size_t k) {
      lowered[k / basis.size()][k % basis.size()] = alg.annihilate(k / basis.size(), basis[k % basis.size()]);
    });
    parallel_for(basis.size(), threads, [&](std::size_t r) {
      const std::size_t i = detail::first_occupied(basis[r]);
      Occupation down = basis[r];
      --down[i];
      const std::size_t pr = prev_index.at(down);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        S sum(0);
        for (const auto& [occ, coef] : lowered[i][c].terms()) sum = sum + coef * prev(pr, prev_index.at(occ));
        cur(r, c) = sum;
      }
    });
    prev = std::move(cur);
    prev_basis = basis;
  }
  return prev;
}

/// Gram matrix over the requested basis. Sequence entries depend only on the
/// occupation classes of the two index strings, so they are read off the
/// multiset matrix.
template <Scalar S>
GramMatrix<S> build_gram(const CalogeroAlgebra<S>& alg, std::size_t n, BasisKind kind, const Config& cfg = {}) {
  const std::size_t m = alg.modes();
  check_limits(m, n, kind, cfg);
  GramMatrix<S> g;
  g.modes = m;
  g.particles = n;
  g.nu = alg.nu();
  g.kind = kind;
  g.basis = enumerate_basis(m, n, kind, cfg);

  const Matrix<S> ms = multiset_gram(alg, n, cfg.threads);
  if (kind == BasisKind::multiset) {
    g.entries = ms;
    return g;
  }
  const auto idx = detail::index_of(multiset_basis(m, n));
  std::vector<std::size_t> cls(g.basis.size());
  for (std::size_t k = 0; k < g.basis.size(); ++k) cls[k] = idx.at(occupation_of(g.basis[k], m));
  g.entries = Matrix<S>(g.basis.size(), g.basis.size());
  for (std::size_t r = 0; r < g.basis.size(); ++r)
    for (std::size_t c = 0; c < g.basis.size(); ++c) g.entries(r, c) = ms(cls[r], cls[c]);
  return g;
}

/// Entry by entry through repeated annihilation; independent of build_gram.
template <Scalar S>
Matrix<S> gram_by_inner_products(const CalogeroAlgebra<S>& alg, const std::vector<ModeSequence>& basis) {
  Matrix<S> out(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c)
      out(r, c) = alg.inner_product(basis[r], FockState<S>::monomial(occupation_of(basis[c], alg.modes())));
  return out;
}

inline Matrix<Rat> evaluate(const Matrix<NuScalar>& m, const Rat& nu) {
  return m.map([&nu](const NuScalar& s) { return s.evaluate(nu); });
}

inline Matrix<Rat> exact_entries(const GramMatrix<Rat>& g) { return g.entries; }
inline Matrix<Rat> exact_entries(const GramMatrix<NuScalar>& g) {
  const auto v = g.nu.constant_value();
  if (!v) throw Error("Gram matrix has a symbolic coupling; evaluate it at a number first");
  return evaluate(g.entries, *v);
}

// ---------------------------------------------------------------------------
// Two-particle entries

/// The four distinct values taken by two-particle Gram entries:
///   a = <ii|ii>, b = <ii|jj> = <ii|ij> = <ij|ik>, c = <ii|jk> = <ij|kl>, d = <ij|ij>.
enum class TwoParticleKind { a, b, c, d };

inline char to_char(TwoParticleKind k) { return "abcd"[static_cast<int>(k)]; }

inline NuScalar two_particle_entry(TwoParticleKind kind, std::size_t modes) {
  const NuScalar nu = NuScalar::nu();
  const NuScalar m(static_cast<long>(modes));
  const NuScalar one(1);
  switch (kind) {
    case TwoParticleKind::a:
      return (one + nu * (m - one)) * (NuScalar(2) + nu * (m - one)) - nu * nu * (m - one);
    case TwoParticleKind::b:
      return -nu - nu * nu * (m - NuScalar(2));
    case TwoParticleKind::c:
      return NuScalar(2) * nu * nu;
    case TwoParticleKind::d:
      return (one + nu * (m - one)) * (one + nu * (m - NuScalar(2)));
  }
  throw Error("unknown two-particle entry kind");
}

/// Which of a, b, c, d the entry <row|col> is, for index strings of length 2.
inline TwoParticleKind classify_two_particle(const ModeSequence& row, const ModeSequence& col) {
  if (row.size() != 2 || col.size() != 2) throw Error("two-particle classification needs index strings of length 2");
  auto sorted = [](ModeSequence s) {
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    return s;
  };
  const ModeSequence r = sorted(row);
  const ModeSequence c = sorted(col);
  const bool rr = r[0] == r[1];
  const bool cr = c[0] == c[1];
  if (r == c) return rr ? TwoParticleKind::a : TwoParticleKind::d;
  if (rr && cr) return TwoParticleKind::b;
  auto contains = [](const ModeSequence& s, std::size_t i) { return s[0] == i || s[1] == i; };
  if (rr) return contains(c, r[0]) ? TwoParticleKind::b : TwoParticleKind::c;
  if (cr) return contains(r, c[0]) ? TwoParticleKind::b : TwoParticleKind::c;
  const bool shared = contains(c, r[0]) || contains(c, r[1]);
  return shared ? TwoParticleKind::b : TwoParticleKind::c;
}

// ---------------------------------------------------------------------------
// Eigenfamilies

/// A family of exact eigenvectors of the sequence-basis Gram matrix:
/// representatives spanning an eigenspace of the given dimension.
struct EigenFamily {
  std::string name;
  std::size_t particles = 0;
  std::size_t min_modes = 1;
  std::function<NuScalar(std::size_t)> eigenvalue;
  std::function<std::size_t(std::size_t)> degeneracy;
  /// Coordinates in the sequence basis of the given mode count.
  std::function<std::vector<std::vector<Rat>>(std::size_t)> vectors;

  bool applies(std::size_t modes) const { return modes >= min_modes; }
};

namespace detail {

inline NuScalar margin(std::size_t modes) { return NuScalar(1) + NuScalar(static_cast<long>(modes)) * NuScalar::nu(); }

/// Sequence coordinates of x†y†|0> for one-particle coefficient vectors x, y.
inline std::vector<Rat> symmetric_product(const std::vector<Rat>& x, const std::vector<Rat>& y) {
  const std::size_t m = x.size();
  std::vector<Rat> v(m * m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) v[p * m + q] = x[p] * y[q] + y[p] * x[q];
  return v;
}

inline std::vector<Rat> unit(std::size_t modes, std::size_t i) {
  std::vector<Rat> e(modes);
  e[i] = 1;
  return e;
}

inline std::vector<Rat> difference(std::size_t modes, std::size_t i, std::size_t j) {
  std::vector<Rat> e(modes);
  e[i] = 1;
  e[j] = -1;
  return e;
}

}  // namespace detail

/// B_{0,1}†|0> with eigenvalue 1, and (a_1† − a_i†)|0> with eigenvalue 1 + Mν.
inline std::vector<EigenFamily> one_particle_families() {
  EigenFamily center{"center of mass", 1, 1, [](std::size_t) { return NuScalar(1); },
                     [](std::size_t) { return std::size_t{1}; },
                     [](std::size_t m) { return std::vector<std::vector<Rat>>{std::vector<Rat>(m, Rat(1))}; }};
  EigenFamily relative{"relative", 1, 2, detail::margin, [](std::size_t m) { return m - 1; },
                       [](std::size_t m) {
                         std::vector<std::vector<Rat>> vs;
                         for (std::size_t i = 1; i < m; ++i) vs.push_back(detail::difference(m, 0, i));
                         return vs;
                       }};
  return {center, relative};
}

/*
 * Two-particle eigenspaces. Together with the all-ones vector (eigenvalue 2,
 * the state B_{0,1}†²|0>) they account for all M² eigenvalues:
 *   0                       [a_i†, a_j†]|0>                      M(M−1)/2
 *   2(1 + Mν)               ({a_i†, B_{0,1}†} − 2B_{0,2}†)|0>    M
 *   (1 + Mν)(2 + Mν)        M ≥ 3, see below                     M − 1
 *   2(1 + Mν)(1 + ν(M−1))   M ≥ 4, (a_i† − a_j†)(a_k† − a_l†)|0> M(M − 3)/2
 */
inline std::vector<EigenFamily> two_particle_families() {
  std::vector<EigenFamily> out;
  out.push_back({"null", 2, 2, [](std::size_t) { return NuScalar(0); },
                 [](std::size_t m) { return m * (m - 1) / 2; },
                 [](std::size_t m) {
                   std::vector<std::vector<Rat>> vs;
                   for (std::size_t p = 0; p < m; ++p)
                     for (std::size_t q = p + 1; q < m; ++q) {
                       std::vector<Rat> v(m * m);
                       v[p * m + q] = 1;
                       v[q * m + p] = -1;
                       vs.push_back(v);
                     }
                   return vs;
                 }});
  out.push_back({"single-mode excess", 2, 2,
                 [](std::size_t m) { return NuScalar(2) * detail::margin(m); }, [](std::size_t m) { return m; },
                 [](std::size_t m) {
                   std::vector<std::vector<Rat>> vs;
                   for (std::size_t i = 0; i < m; ++i) {
                     std::vector<Rat> v(m * m);
                     for (std::size_t k = 0; k < m; ++k) {
                       v[i * m + k] += 1;
                       v[k * m + i] += 1;
                       v[k * m + k] -= 2;
                     }
                     vs.push_back(v);
                   }
                   return vs;
                 }});
  // {(a_i† − a_1†), B_{0,1}†} − M(a_i†² − a_1†²)
  out.push_back({"center-relative", 2, 3,
                 [](std::size_t m) {
                   return detail::margin(m) * (NuScalar(2) + NuScalar(static_cast<long>(m)) * NuScalar::nu());
                 },
                 [](std::size_t m) { return m - 1; },
                 [](std::size_t m) {
                   std::vector<std::vector<Rat>> vs;
                   const std::vector<Rat> ones(m, Rat(1));
                   for (std::size_t i = 1; i < m; ++i) {
                     std::vector<Rat> v = detail::symmetric_product(detail::difference(m, i, 0), ones);
                     v[i * m + i] -= Rat(static_cast<long>(m));
                     v[0] += Rat(static_cast<long>(m));
                     vs.push_back(v);
                   }
                   return vs;
                 }});
  out.push_back({"relative pair", 2, 4,
                 [](std::size_t m) {
                   return NuScalar(2) * detail::margin(m) *
                          (NuScalar(1) + NuScalar::nu() * NuScalar(static_cast<long>(m) - 1));
                 },
                 [](std::size_t m) { return m * (m - 3) / 2; },
                 [](std::size_t m) {
                   std::vector<std::vector<Rat>> vs;
                   for (std::size_t i = 0; i < m; ++i)
                     for (std::size_t j = i + 1; j < m; ++j)
                       for (std::size_t k = i + 1; k < m; ++k)
                         for (std::size_t l = k + 1; l < m; ++l)
                           if (k != j && l != j)
                             vs.push_back(detail::symmetric_product(detail::difference(m, i, j),
                                                                    detail::difference(m, k, l)));
                   return vs;
                 }});
  out.push_back({"center of mass", 2, 2, [](std::size_t) { return NuScalar(2); },
                 [](std::size_t) { return std::size_t{1}; },
                 [](std::size_t m) { return std::vector<std::vector<Rat>>{std::vector<Rat>(m * m, Rat(1))}; }});
  return out;
}

inline std::vector<EigenFamily> eigenfamilies(std::size_t particles) {
  if (particles == 1) return one_particle_families();
  if (particles == 2) return two_particle_families();
  throw Error("eigenfamilies are tabulated for one and two particles only");
}

struct FamilyCheck {
  std::string name;
  bool passed = false;
  std::size_t vectors = 0;
  std::size_t rank = 0;
  std::size_t degeneracy = 0;
  std::optional<std::string> failure;
};

/// A·v = λ·v as an exact identity in ν for every representative, and the
/// representatives span exactly `degeneracy` dimensions.
inline FamilyCheck verify_eigenfamily(const EigenFamily& f, const GramMatrix<NuScalar>& g) {
  const std::size_t m = g.modes;
  FamilyCheck out;
  out.name = f.name;
  if (g.kind != BasisKind::sequence || g.particles != f.particles)
    throw Error("eigenfamily '" + f.name + "' needs the sequence-basis matrix for its particle number");
  if (!f.applies(m)) throw Error("eigenfamily '" + f.name + "' needs at least " + std::to_string(f.min_modes) + " modes");
  const NuScalar lambda = f.eigenvalue(m);
  const auto vs = f.vectors(m);
  out.vectors = vs.size();
  out.degeneracy = f.degeneracy(m);
  for (std::size_t k = 0; k < vs.size() && !out.failure; ++k) {
    const auto& v = vs[k];
    for (std::size_t r = 0; r < g.size(); ++r) {
      NuScalar lhs(0);
      for (std::size_t c = 0; c < g.size(); ++c)
        if (!v[c].is_zero()) lhs = lhs + g.entries(r, c) * NuScalar(v[c]);
      const NuScalar rhs = lambda * NuScalar(v[r]);
      if (!(lhs == rhs)) {
        out.failure = "vector " + std::to_string(k) + ", coordinate " + std::to_string(r) + ": (A v) = " + lhs.str() +
                      ", lambda v = " + rhs.str();
        break;
      }
    }
  }
  Matrix<Rat> span(vs.size(), g.size());
  for (std::size_t k = 0; k < vs.size(); ++k)
    for (std::size_t c = 0; c < g.size(); ++c) span(k, c) = vs[k][c];
  out.rank = rank_exact(span);
  if (!out.failure && out.rank != out.degeneracy)
    out.failure = "representatives span " + std::to_string(out.rank) + " dimensions, expected " +
                  std::to_string(out.degeneracy);
  out.passed = !out.failure;
  return out;
}

/// Σ degeneracy · eigenvalue over the families applicable at M.
inline NuScalar family_trace(const std::vector<EigenFamily>& fams, std::size_t modes) {
  NuScalar t(0);
  for (const auto& f : fams)
    if (f.applies(modes)) t = t + NuScalar(static_cast<long>(f.degeneracy(modes))) * f.eigenvalue(modes);
  return t;
}

/// The eigenvalue multiset predicted by the families, sorted ascending.
inline std::vector<Rat> family_spectrum(const std::vector<EigenFamily>& fams, std::size_t modes, const Rat& nu) {
  std::vector<Rat> out;
  for (const auto& f : fams) {
    if (!f.applies(modes)) continue;
    const Rat v = f.eigenvalue(modes).evaluate(nu);
    out.insert(out.end(), f.degeneracy(modes), v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <Scalar S>
S trace(const Matrix<S>& m) {
  S t(0);
  for (std::size_t k = 0; k < m.rows(); ++k) t = t + m(k, k);
  return t;
}

// ---------------------------------------------------------------------------
// Spectra and positivity

struct SpectrumReport {
  Rat nu;
  std::vector<double> eigenvalues;
  std::size_t rank = 0;
  std::size_t multiset_dim = 0;
  double min_eigenvalue = 0.0;
  bool positive = false;
};

inline Matrix<double> to_double(const Matrix<Rat>& m) {
  return m.map([](const Rat& r) { return calogero::to_double(r); });
}

/// Eigenvalues of the sequence-basis matrix at a numeric coupling; the rank
/// comes from exact elimination on the multiset matrix.
inline SpectrumReport spectrum(std::size_t modes, std::size_t n, const Rat& nu, const Config& cfg = {},
                               double tol = 1e-10) {
  const CalogeroAlgebra<Rat> alg(modes, nu);
  const GramMatrix<Rat> g = build_gram(alg, n, BasisKind::sequence, cfg);
  SpectrumReport rep;
  rep.nu = nu;
  rep.eigenvalues = jacobi_eigenvalues(to_double(g.entries), tol);
  rep.multiset_dim = multiset_count(modes, n);
  rep.rank = rank_exact(multiset_gram(alg, n, cfg.threads));
  rep.min_eigenvalue = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front();
  const double tr = std::abs(to_double(trace(g.entries)));
  rep.positive = rep.min_eigenvalue >= -1e-9 * (1.0 + tr) && rep.rank == rep.multiset_dim;
  return rep;
}

/// Zero-eigenvalue threshold |λ| ≤ 1e−9 (1 + |trace|).
inline std::size_t count_zero_eigenvalues(const std::vector<double>& eig) {
  double tr = 0.0;
  for (double e : eig) tr += e;
  std::size_t k = 0;
  for (double e : eig)
    if (std::abs(e) <= 1e-9 * (1.0 + std::abs(tr))) ++k;
  return k;
}

struct ScanPoint {
  Rat nu;
  std::optional<SpectrumReport> report;
  std::string error;
};

/// min, min + step, ... up to and including max when it lies on the grid.
inline std::vector<Rat> rational_grid(const Rat& min, const Rat& max, const Rat& step) {
  if (step.sign() <= 0) throw Error("grid step must be positive");
  if (max < min) throw Error("grid maximum is below its minimum");
  std::vector<Rat> out;
  for (Rat v = min; v <= max; v = v + step) out.push_back(v);
  return out;
}

/// One report per grid point. A failure at one point is recorded and the scan
/// continues.
inline std::vector<ScanPoint> positivity_scan(std::size_t modes, std::size_t n, const std::vector<Rat>& grid,
                                              const Config& cfg = {}, double tol = 1e-10) {
  check_limits(modes, n, BasisKind::sequence, cfg);
  std::vector<ScanPoint> out(grid.size());
  Config inner = cfg;
  inner.threads = 1;
  parallel_for(grid.size(), cfg.threads, [&](std::size_t k) {
    out[k].nu = grid[k];
    try {
      out[k].report = spectrum(modes, n, grid[k], inner, tol);
    } catch (const std::exception& e) {
      out[k].error = e.what();
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Critical coupling ν = −1/M

struct CriticalLevel {
  std::size_t particles = 0;
  Rat expected_entry;
  std::size_t dimension = 0;
  std::size_t rank = 0;
  Rat eigenvalue;
  std::optional<std::string> deviation;
  bool passed = false;
};

/// At ν = −1/M every k-particle entry is k!/M^k, the matrix has rank one and
/// its only nonzero eigenvalue, the trace (k!/M^k)·M^k, is k!.
inline std::vector<CriticalLevel> critical_check(std::size_t modes, std::size_t kmax, const Config& cfg = {}) {
  if (modes < 1) throw Error("the critical check needs at least one mode");
  const Rat nu(-1, static_cast<long>(modes));
  const CalogeroAlgebra<Rat> alg(modes, nu);
  std::vector<CriticalLevel> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const GramMatrix<Rat> g = build_gram(alg, k, BasisKind::sequence, cfg);
    CriticalLevel lvl;
    lvl.particles = k;
    lvl.expected_entry = factorial(static_cast<unsigned>(k)) / pow(Rat(static_cast<long>(modes)), static_cast<unsigned>(k));
    lvl.dimension = g.size();
    for (std::size_t r = 0; r < g.size() && !lvl.deviation; ++r)
      for (std::size_t c = 0; c < g.size(); ++c)
        if (g.entries(r, c) != lvl.expected_entry) {
          lvl.deviation = "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " + g.entries(r, c).str() +
                          ", expected " + lvl.expected_entry.str();
          break;
        }
    lvl.rank = rank_exact(g.entries);
    lvl.eigenvalue = trace(g.entries);
    if (!lvl.deviation && lvl.rank != 1) lvl.deviation = "rank " + std::to_string(lvl.rank) + ", expected 1";
    const Rat kfact = factorial(static_cast<unsigned>(k));
    if (!lvl.deviation && lvl.eigenvalue != kfact)
      lvl.deviation = "eigenvalue " + lvl.eigenvalue.str() + ", expected " + kfact.str();
    lvl.passed = !lvl.deviation;
    out.push_back(lvl);
  }
  return out;
}

}  // namespace calogero
