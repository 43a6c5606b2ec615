#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "calogero/fock.hpp"

using namespace calogero;

namespace {

using State = FockState<NuScalar>;
const NuScalar nu = NuScalar::nu();

State ket(std::initializer_list<unsigned> occ, NuScalar c = NuScalar(1)) { return State::monomial(Occupation(occ), c); }

std::vector<std::vector<std::size_t>> permutations(std::size_t m) {
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST(Create, IncrementsOccupation) {
  EXPECT_EQ(create(0, State::vacuum(2)), ket({1, 0}));
  EXPECT_EQ(create(1, ket({1, 0})), ket({1, 1}));
  EXPECT_EQ(create(0, ket({0, 1})), ket({1, 1}));
  EXPECT_EQ(create(0, ket({2, 0}, NuScalar(3))), ket({3, 0}, NuScalar(3)));
  EXPECT_THROW(create(2, ket({1, 0})), InvalidMode);
}

TEST(Annihilate, OneQuantumOfTwoModes) {
  // a_1 a_1† a_2† |0> = (1 + ν(M − 2)) a_2†|0>
  const AlgebraParams alg(3, nu);
  EXPECT_EQ(alg.annihilate(0, ket({1, 1, 0})), ket({0, 1, 0}, NuScalar(1) + nu));
}

TEST(Annihilate, OtherModeSquared) {
  // a_1 a_2†² |0> = −ν (a_1† + a_2†)|0>
  const AlgebraParams alg(2, nu);
  EXPECT_EQ(alg.annihilate(0, ket({0, 2})), ket({1, 0}, -nu) + ket({0, 1}, -nu));
}

TEST(Annihilate, SameModeSquared) {
  // a_1 a_1†² |0> = (2 + ν(M − 2)) a_1†|0> + ν B_{0,1}†|0>
  const AlgebraParams alg(3, nu);
  const State expected = ket({1, 0, 0}, NuScalar(2) + nu) + ket({1, 0, 0}, nu) + ket({0, 1, 0}, nu) + ket({0, 0, 1}, nu);
  EXPECT_EQ(alg.annihilate(0, ket({2, 0, 0})), expected);
}

TEST(Annihilate, FreeBosonLimit) {
  const CalogeroAlgebra<Rat> alg(3, Rat(0));
  EXPECT_EQ(alg.annihilate(0, FockState<Rat>::monomial(Occupation{1, 1, 1})),
            FockState<Rat>::monomial(Occupation{0, 1, 1}));
}

TEST(Annihilate, VacuumAndDegree) {
  const AlgebraParams alg(3, nu);
  EXPECT_TRUE(alg.annihilate(1, State::vacuum(3)).is_zero());
  for (const auto& occ : monomials_up_to(3, 4)) {
    if (occ.degree() == 0) continue;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto out = alg.annihilate(i, State::monomial(occ));
      if (!out.is_zero()) EXPECT_EQ(out.homogeneous_degree(), occ.degree() - 1);
    }
  }
}

TEST(Annihilate, EqualOccupationsDoNotMix) {
  // sgn(0) = 0: with n_1 = n_2 only the n_1 term survives.
  const AlgebraParams alg(2, nu);
  EXPECT_EQ(alg.annihilate(0, ket({1, 1})), ket({0, 1}));
  EXPECT_EQ(alg.annihilate(0, ket({2, 2})), ket({1, 2}, NuScalar(2)));
}

TEST(Exchange, SwapsOccupations) {
  EXPECT_EQ(exchange(0, 1, ket({2, 0, 1})), ket({0, 2, 1}));
  const State s = ket({2, 0, 1}) + ket({1, 1, 1}, nu);
  EXPECT_EQ(exchange(0, 1, exchange(0, 1, s)), s);
  EXPECT_EQ(exchange(0, 1, State::vacuum(2)), State::vacuum(2));
  EXPECT_THROW(exchange(1, 1, s), InvalidModePair);
}

TEST(TransitionNumber, MovesOneQuantum) {
  EXPECT_EQ(transition_number(0, 1, ket({0, 2})), ket({1, 1}, NuScalar(2)));
  EXPECT_EQ(transition_number(0, 0, ket({3, 1})), ket({3, 1}, NuScalar(3)));
  EXPECT_TRUE(transition_number(0, 1, ket({1, 0})).is_zero());
}

TEST(DualAnnihilate, BosonicLowering) {
  EXPECT_EQ(dual_annihilate(0, ket({2, 1})), ket({1, 1}, NuScalar(2)));
  EXPECT_TRUE(dual_annihilate(1, ket({3, 0})).is_zero());
  const State s = dual_annihilate(0, dual_annihilate(0, ket({2, 0})));
  EXPECT_EQ(s.coefficient(Occupation(2)), NuScalar(2));
}

TEST(InnerProduct, TableValues) {
  const AlgebraParams three(3, nu);
  EXPECT_EQ(three.inner_product(ModeSequence{0, 1}, ket({1, 1, 0})), NuScalar(1) + NuScalar(3) * nu + NuScalar(2) * nu * nu);
  const AlgebraParams two(2, nu);
  EXPECT_EQ(two.inner_product(ModeSequence{0, 0}, ket({0, 2})), -nu);
  const CalogeroAlgebra<Rat> free(2, Rat(0));
  EXPECT_EQ(free.inner_product(ModeSequence{0}, FockState<Rat>::monomial(Occupation{0, 1})), Rat(0));
}

TEST(InnerProduct, SymmetricOnMonomials) {
  const AlgebraParams alg(3, nu);
  for (unsigned d = 1; d <= 3; ++d) {
    const auto basis = multiset_basis(3, d);
    for (const auto& x : basis)
      for (const auto& y : basis) EXPECT_EQ(alg.inner_product(x, State::monomial(y)), alg.inner_product(y, State::monomial(x)));
  }
}

TEST(InnerProduct, DifferentDegreesAreOrthogonal) {
  const AlgebraParams alg(2, nu);
  EXPECT_TRUE(alg.inner_product(ModeSequence{0}, ket({1, 1})).is_zero());
}

TEST(CommutatorAction, VacuumValues) {
  for (std::size_t m = 2; m <= 4; ++m) {
    const AlgebraParams alg(m, nu);
    EXPECT_EQ(alg.commutator_action(0, 1, State::vacuum(m)), (-nu) * State::vacuum(m));
  }
  const AlgebraParams alg(3, nu);
  EXPECT_EQ(alg.commutator_action(0, 0, State::vacuum(3)), (NuScalar(1) + NuScalar(2) * nu) * State::vacuum(3));
  const State s = ket({2, 0, 1});
  EXPECT_EQ(alg.commutator_action(0, 1, alg.commutator_action(0, 1, s)), (nu * nu) * s);
}

TEST(GroundEnergy, Values) {
  EXPECT_EQ(AlgebraParams(3, nu).ground_energy(), NuScalar(Rat(3, 2)) * (NuScalar(1) + NuScalar(2) * nu));
  EXPECT_EQ(AlgebraParams(1, nu).ground_energy(), NuScalar(Rat(1, 2)));
  EXPECT_EQ(CalogeroAlgebra<Rat>(3, Rat(1)).ground_energy(), Rat(9, 2));
}

TEST(Basis, Enumeration) {
  const auto seq = enumerate_basis(2, 2, BasisKind::sequence);
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[0], (ModeSequence{0, 0}));
  EXPECT_EQ(seq[1], (ModeSequence{0, 1}));
  EXPECT_EQ(seq[2], (ModeSequence{1, 0}));
  EXPECT_EQ(seq[3], (ModeSequence{1, 1}));
  EXPECT_EQ(enumerate_basis(3, 2, BasisKind::sequence).size(), 9u);
  EXPECT_EQ(enumerate_basis(3, 2, BasisKind::multiset).size(), 6u);
  EXPECT_EQ(multiset_count(5, 3), 35u);
}

TEST(Basis, GuardReportsSize) {
  Config cfg;
  cfg.max_basis = 100;
  try {
    enumerate_basis(3, 5, BasisKind::sequence, cfg);
    FAIL() << "expected BasisTooLarge";
  } catch (const BasisTooLarge& e) {
    EXPECT_EQ(e.size(), 101u);  // capped report: anything above the limit
  }
  EXPECT_THROW(enumerate_basis(7, 1, BasisKind::sequence), BasisTooLarge);
  EXPECT_THROW(enumerate_basis(2, 7, BasisKind::multiset), BasisTooLarge);
}

// ---------------------------------------------------------------------------
// Properties on all monomials of small degree

TEST(Properties, AnnihilatorsCommute) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const AlgebraParams alg(m, nu);
    for (const auto& occ : monomials_up_to(m, m <= 3 ? 5 : 4)) {
      const State s = State::monomial(occ);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          ASSERT_EQ(alg.annihilate(i, alg.annihilate(j, s)), alg.annihilate(j, alg.annihilate(i, s))) << occ.str();
    }
  }
}

TEST(Properties, CommutatorMatchesActions) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const AlgebraParams alg(m, nu);
    for (const auto& occ : monomials_up_to(m, 4)) {
      const State s = State::monomial(occ);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          ASSERT_EQ(alg.commutator_action(i, j, s), alg.annihilate(i, create(j, s)) - create(j, alg.annihilate(i, s)))
              << occ.str() << " i=" << i << " j=" << j;
    }
  }
}

TEST(Properties, ExchangeBraid) {
  for (const auto& occ : monomials_up_to(3, 4)) {
    const State s = State::monomial(occ);
    const State x = exchange(0, 1, exchange(1, 2, s));
    EXPECT_EQ(x, exchange(1, 2, exchange(0, 2, s)));
    EXPECT_EQ(x, exchange(0, 2, exchange(0, 1, s)));
  }
}

TEST(Properties, NumberOperatorAlgebra) {
  const std::size_t m = 3;
  for (const auto& occ : monomials_up_to(m, 3)) {
    const State s = State::monomial(occ);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
          const State lhs = transition_number(i, j, create(k, s)) - create(k, transition_number(i, j, s));
          EXPECT_EQ(lhs, j == k ? create(i, s) : State(m));
        }
        EXPECT_EQ(transition_number(i, i, transition_number(j, j, s)), transition_number(j, j, transition_number(i, i, s)));
      }
  }
}

TEST(Properties, DualCanonicalPair) {
  const std::size_t m = 3;
  for (const auto& occ : monomials_up_to(m, 3)) {
    const State s = State::monomial(occ);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_EQ(dual_annihilate(i, create(j, s)) - create(j, dual_annihilate(i, s)), i == j ? s : State(m));
        EXPECT_EQ(dual_annihilate(i, dual_annihilate(j, s)), dual_annihilate(j, dual_annihilate(i, s)));
      }
  }
}

TEST(Properties, ExchangeFromTransitions) {
  for (const auto& occ : monomials_up_to(3, 4)) {
    const State s = State::monomial(occ);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        State t = s;
        for (unsigned k = 0; k < occ[j]; ++k) t = transition_number(i, j, t);
        for (unsigned k = 0; k < occ[i]; ++k) t = transition_number(j, i, t);
        EXPECT_EQ(NuScalar(Rat(1) / factorial(occ[i] + occ[j])) * t, exchange(i, j, s)) << occ.str();
      }
  }
}

TEST(Properties, TotalNumberCountsDegree) {
  for (const auto& occ : monomials_up_to(4, 3)) {
    const State s = State::monomial(occ);
    State total(4);
    for (std::size_t i = 0; i < 4; ++i) total += transition_number(i, i, s);
    EXPECT_EQ(total, NuScalar(static_cast<long>(occ.degree())) * s);
  }
}

TEST(Properties, HamiltonianIsNumberPlusGroundEnergy) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const AlgebraParams alg(m, nu);
    for (const auto& occ : monomials_up_to(m, 4)) {
      const State s = State::monomial(occ);
      State h(m);
      for (std::size_t i = 0; i < m; ++i) h += alg.annihilate(i, create(i, s)) + create(i, alg.annihilate(i, s));
      EXPECT_EQ(NuScalar(Rat(1, 2)) * h, (NuScalar(static_cast<long>(occ.degree())) + alg.ground_energy()) * s);
    }
  }
}

TEST(Properties, RelabelingCommutesWithActions) {
  const std::size_t m = 3;
  const AlgebraParams alg(m, nu);
  for (const auto& perm : permutations(m)) {
    for (const auto& occ : monomials_up_to(m, 3)) {
      const State s = State::monomial(occ);
      for (std::size_t i = 0; i < m; ++i) {
        EXPECT_EQ(relabel(alg.annihilate(i, s), perm), alg.annihilate(perm[i], relabel(s, perm)));
        EXPECT_EQ(relabel(create(i, s), perm), create(perm[i], relabel(s, perm)));
      }
      for (const auto& other : multiset_basis(m, occ.degree()))
        EXPECT_EQ(alg.inner_product(other, s), alg.inner_product(relabel(other, perm), relabel(s, perm)));
    }
  }
}

TEST(Properties, MappingPreconditionFlag) {
  EXPECT_EQ(positivity_flag(CalogeroAlgebra<Rat>(3, Rat(-1, 4))), true);
  EXPECT_EQ(positivity_flag(CalogeroAlgebra<Rat>(3, Rat(-1, 3))), false);
  EXPECT_FALSE(positivity_flag(AlgebraParams(3, nu)).has_value());
}
