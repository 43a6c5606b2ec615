#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "calogero/gram.hpp"

using namespace calogero;

namespace {

const NuScalar nu = NuScalar::nu();

NuScalar poly(std::initializer_list<long> ascending) {
  std::vector<Rat> c;
  for (long x : ascending) c.emplace_back(x);
  return NuScalar(NuPoly(c));
}

GramMatrix<NuScalar> symbolic_gram(std::size_t m, std::size_t n, BasisKind kind = BasisKind::sequence) {
  return build_gram(CalogeroAlgebra<NuScalar>(m, nu), n, kind);
}

// Layout of the printed two-particle matrices, written out by hand.
void expect_layout(const GramMatrix<NuScalar>& g, const std::vector<std::string>& rows,
                   const std::map<char, NuScalar>& values) {
  ASSERT_EQ(g.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c)
      EXPECT_EQ(g.entries(r, c), values.at(rows[r][c])) << "entry (" << r << "," << c << ")";
}

std::vector<double> sorted_doubles(const std::vector<Rat>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(to_double(x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(BuildGram, TwoModesTwoParticles) {
  const auto g = symbolic_gram(2, 2);
  // basis 11, 12, 21, 22
  expect_layout(g, {"abbb", "bddb", "bddb", "bbba"},
                {{'a', poly({2, 3})}, {'b', poly({0, -1})}, {'d', poly({1, 1})}});
}

TEST(BuildGram, ThreeModesTwoParticles) {
  const auto g = symbolic_gram(3, 2);
  // basis 11, 12, 13, 21, 22, 23, 31, 32, 33
  expect_layout(g,
                {
                    "abbbbcbcb",
                    "bdbdbbbbc",
                    "bbdbcbdbb",
                    "bdbdbbbbc",
                    "bbcbabcbb",
                    "cbbbbdbdb",
                    "bbdbcbdbb",
                    "cbbbbdbdb",
                    "bcbcbbbba",
                },
                {{'a', poly({2, 6, 2})}, {'b', poly({0, -1, -1})}, {'c', poly({0, 0, 2})}, {'d', poly({1, 3, 2})}});
}

TEST(BuildGram, FreeBosonsAreDiagonal) {
  const auto g = build_gram(CalogeroAlgebra<Rat>(3, Rat(0)), 2, BasisKind::multiset);
  for (std::size_t r = 0; r < g.size(); ++r)
    for (std::size_t c = 0; c < g.size(); ++c) {
      const auto occ = occupation_of(g.basis[r], 3);
      Rat expected(0);
      if (r == c) {
        expected = Rat(1);
        for (unsigned k : occ.counts()) expected = expected * factorial(k);
      }
      EXPECT_EQ(g.entries(r, c), expected);
    }
}

TEST(BuildGram, SingleModeIsFactorial) {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto g = symbolic_gram(1, n);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g.entries(0, 0), NuScalar(factorial(static_cast<unsigned>(n))));
  }
}

TEST(BuildGram, MatchesEntrywiseInnerProducts) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      const CalogeroAlgebra<NuScalar> alg(m, nu);
      for (BasisKind kind : {BasisKind::sequence, BasisKind::multiset}) {
        const auto g = build_gram(alg, n, kind);
        const auto oracle = gram_by_inner_products(alg, g.basis);
        for (std::size_t r = 0; r < g.size(); ++r)
          for (std::size_t c = 0; c < g.size(); ++c)
            EXPECT_EQ(g.entries(r, c), oracle(r, c)) << "M=" << m << " n=" << n;
      }
    }
}

TEST(BuildGram, Symmetric) {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(symbolic_gram(m, n).entries.is_symmetric());
}

TEST(BuildGram, PositionPermutationInvariance) {
  // Permuting bra and ket strings by the same π changes no entry.
  const auto g = symbolic_gram(3, 3);
  std::map<ModeSequence, std::size_t> idx;
  for (std::size_t k = 0; k < g.size(); ++k) idx[g.basis[k]] = k;
  std::vector<std::size_t> pi{0, 1, 2};
  do {
    auto permute = [&](const ModeSequence& s) {
      ModeSequence out(s.size());
      for (std::size_t p = 0; p < s.size(); ++p) out[p] = s[pi[p]];
      return out;
    };
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < g.size(); ++c)
        EXPECT_EQ(g.entries(idx[permute(g.basis[r])], idx[permute(g.basis[c])]), g.entries(r, c));
  } while (std::next_permutation(pi.begin(), pi.end()));
}

TEST(BuildGram, ModeRelabelInvariance) {
  const auto g = symbolic_gram(3, 2);
  std::map<ModeSequence, std::size_t> idx;
  for (std::size_t k = 0; k < g.size(); ++k) idx[g.basis[k]] = k;
  std::vector<std::size_t> sigma{0, 1, 2};
  do {
    auto relabelled = [&](ModeSequence s) {
      for (auto& i : s) i = sigma[i];
      return s;
    };
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < g.size(); ++c)
        EXPECT_EQ(g.entries(idx[relabelled(g.basis[r])], idx[relabelled(g.basis[c])]), g.entries(r, c));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(BuildGram, SequenceAndMultisetRanksAgree) {
  for (const Rat& x : {Rat(-1, 3), Rat(-1, 4), Rat(0), Rat(1, 2), Rat(-1, 2), Rat(2)}) {
    const CalogeroAlgebra<Rat> alg(3, x);
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_EQ(rank_exact(build_gram(alg, n, BasisKind::sequence).entries),
                rank_exact(build_gram(alg, n, BasisKind::multiset).entries))
          << "nu=" << x.str() << " n=" << n;
  }
}

TEST(BuildGram, GuardRejectsLargeBases) {
  Config cfg;
  cfg.max_basis = 50;
  EXPECT_THROW(build_gram(CalogeroAlgebra<NuScalar>(3, nu), 4, BasisKind::sequence, cfg), BasisTooLarge);
  EXPECT_NO_THROW(build_gram(CalogeroAlgebra<NuScalar>(3, nu), 4, BasisKind::multiset, cfg));
}

TEST(TwoParticle, SpecificValues) {
  EXPECT_EQ(two_particle_entry(TwoParticleKind::d, 2), poly({1, 1}));
  EXPECT_EQ(two_particle_entry(TwoParticleKind::a, 3), poly({2, 6, 2}));
  for (std::size_t m = 2; m <= 6; ++m) EXPECT_EQ(two_particle_entry(TwoParticleKind::c, m), poly({0, 0, 2}));
}

TEST(TwoParticle, ClosedFormsMatchBuiltMatrices) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto g = symbolic_gram(m, 2);
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < g.size(); ++c)
        EXPECT_EQ(g.entries(r, c), two_particle_entry(classify_two_particle(g.basis[r], g.basis[c]), m))
            << "M=" << m;
  }
}

TEST(TwoParticle, RowSumsAreTwo) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto g = symbolic_gram(m, 2);
    for (std::size_t r = 0; r < g.size(); ++r) {
      NuScalar sum(0);
      for (std::size_t c = 0; c < g.size(); ++c) sum = sum + g.entries(r, c);
      EXPECT_EQ(sum, NuScalar(2));
    }
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank_exact(build_gram(CalogeroAlgebra<Rat>(3, Rat(-1, 3)), 2, BasisKind::sequence).entries), 1u);
  EXPECT_EQ(rank_exact(build_gram(CalogeroAlgebra<Rat>(2, Rat(0)), 2, BasisKind::multiset).entries), 3u);
  EXPECT_EQ(rank_exact(build_gram(CalogeroAlgebra<Rat>(2, Rat(1)), 1, BasisKind::sequence).entries), 2u);
}

TEST(Spectrum, Examples) {
  auto expect_eigs = [](const SpectrumReport& r, std::vector<double> expected) {
    ASSERT_EQ(r.eigenvalues.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(r.eigenvalues[k], expected[k], 1e-9);
  };
  expect_eigs(spectrum(2, 2, Rat(1)), {0, 2, 6, 6});
  expect_eigs(spectrum(3, 1, Rat(1)), {1, 4, 4});
  const auto crit = spectrum(2, 1, Rat(-1, 2));
  expect_eigs(crit, {0, 1});
  EXPECT_EQ(crit.rank, 1u);
  EXPECT_FALSE(crit.positive);
  EXPECT_EQ(count_zero_eigenvalues(crit.eigenvalues), 1u);
}

TEST(EigenFamilies, OneParticle) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto g = symbolic_gram(m, 1);
    for (const auto& f : one_particle_families()) {
      if (!f.applies(m)) continue;
      const auto check = verify_eigenfamily(f, g);
      EXPECT_TRUE(check.passed) << f.name << " M=" << m << ": " << check.failure.value_or("");
    }
    EXPECT_EQ(family_trace(one_particle_families(), m), trace(g.entries));
  }
}

TEST(EigenFamilies, TwoParticle) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto g = symbolic_gram(m, 2);
    std::size_t total = 0;
    for (const auto& f : two_particle_families()) {
      if (!f.applies(m)) continue;
      const auto check = verify_eigenfamily(f, g);
      EXPECT_TRUE(check.passed) << f.name << " M=" << m << ": " << check.failure.value_or("");
      total += check.degeneracy;
    }
    EXPECT_EQ(total, m * m);
    const NuScalar mm(static_cast<long>(m));
    const NuScalar closed = mm * two_particle_entry(TwoParticleKind::a, m) +
                            mm * (mm - NuScalar(1)) * two_particle_entry(TwoParticleKind::d, m);
    EXPECT_EQ(trace(g.entries), closed);
    EXPECT_EQ(family_trace(two_particle_families(), m), closed);
  }
}

TEST(EigenFamilies, BrokenFamilyIsReported) {
  auto f = one_particle_families()[1];
  f.eigenvalue = [](std::size_t) { return NuScalar(1); };
  const auto check = verify_eigenfamily(f, symbolic_gram(3, 1));
  EXPECT_FALSE(check.passed);
  ASSERT_TRUE(check.failure.has_value());
  EXPECT_NE(check.failure->find("coordinate"), std::string::npos);
}

TEST(EigenFamilies, NumericSpectraMatch) {
  for (std::size_t m = 2; m <= 4; ++m)
    for (const Rat& x : {Rat(-1, 5), Rat(0), Rat(1, 3), Rat(1)}) {
      const auto predicted = sorted_doubles(family_spectrum(two_particle_families(), m, x));
      const auto r = spectrum(m, 2, x);
      ASSERT_EQ(r.eigenvalues.size(), predicted.size());
      for (std::size_t k = 0; k < predicted.size(); ++k) EXPECT_NEAR(r.eigenvalues[k], predicted[k], 1e-9);
    }
}

TEST(Critical, Examples) {
  const auto two = critical_check(2, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].expected_entry, Rat(1, 2));
  EXPECT_EQ(two[0].eigenvalue, Rat(1));
  EXPECT_EQ(two[1].expected_entry, Rat(1, 2));
  EXPECT_EQ(two[1].eigenvalue, Rat(2));
  const auto three = critical_check(3, 2);
  EXPECT_EQ(three[1].expected_entry, Rat(2, 9));
  EXPECT_EQ(three[1].rank, 1u);
  for (const auto& lvl : two) EXPECT_TRUE(lvl.passed);
  for (const auto& lvl : three) EXPECT_TRUE(lvl.passed);
}

TEST(Positivity, ScanExamples) {
  const auto pts = positivity_scan(3, 2, {Rat(-1, 2), Rat(-1, 3), Rat(1, 2)});
  ASSERT_EQ(pts.size(), 3u);
  ASSERT_TRUE(pts[0].report && pts[1].report && pts[2].report);
  EXPECT_FALSE(pts[0].report->positive);
  EXPECT_LT(pts[0].report->min_eigenvalue, -0.5);
  EXPECT_EQ(pts[1].report->rank, 1u);
  EXPECT_FALSE(pts[1].report->positive);
  EXPECT_TRUE(pts[2].report->positive);
  EXPECT_EQ(pts[2].report->rank, 6u);
}

TEST(Positivity, ScanIsDeterministicAcrossThreads) {
  const auto grid = rational_grid(Rat(-1, 2), Rat(1, 2), Rat(1, 8));
  Config one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = positivity_scan(3, 2, grid, one);
  const auto b = positivity_scan(3, 2, grid, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].nu, b[k].nu);
    EXPECT_EQ(a[k].report->eigenvalues, b[k].report->eigenvalues);
    EXPECT_EQ(a[k].report->rank, b[k].report->rank);
  }
}

TEST(Positivity, GridIncludesEndpoint) {
  const auto grid = rational_grid(Rat(-1, 2), Rat(1), Rat(1, 64));
  EXPECT_EQ(grid.size(), 97u);
  EXPECT_EQ(grid.back(), Rat(1));
  EXPECT_THROW(rational_grid(Rat(0), Rat(1), Rat(0)), Error);
}
