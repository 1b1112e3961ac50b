#include <gtest/gtest.h>

#include <random>

#include "dieudonne/errors.hpp"
#include "dieudonne/isocrystal.hpp"
#include "dieudonne/random.hpp"

using namespace dieudonne;

namespace {

NewtonPolygon poly(std::initializer_list<NewtonPart> parts) { return NewtonPolygon{std::vector<NewtonPart>(parts)}; }

PadicMatrix basis_vector(const RingPtr& R, int h, int i) {
  PadicMatrix v(R, h, 1);
  v.at(i, 0) = R->one();
  return v;
}

}  // namespace

TEST(StandardModule, Slopes) {
  auto R = make_witt_ring(3, 1, 30);
  EXPECT_EQ(newton_polygon(standard_module(1, 0, 1, R)), poly({{1, 0, 1}}));
  EXPECT_EQ(newton_polygon(standard_module(1, 1, 1, R)), poly({{1, 1, 1}}));
  EXPECT_EQ(newton_polygon(standard_module(2, 1, 1, R)), poly({{2, 1, 1}}));
  EXPECT_EQ(newton_polygon(standard_module(2, 3, 2, R)), poly({{2, 3, 2}}));
  EXPECT_EQ(standard_module(2, 1, 1, R).rank(), 3);
  EXPECT_THROW(standard_module(2, 2, 1, R), ArgumentError);
  EXPECT_THROW(standard_module(0, 0, 1, R), ArgumentError);
}

TEST(StandardModule, EtaleAndSupersingularRelations) {
  auto R = make_witt_ring(5, 1, 20);
  auto M = standard_module(1, 0, 1, R);
  EXPECT_TRUE(M.ambient()->frobenius_matrix().equals(PadicMatrix::from_ints(R, 1, 1, {1})));
  EXPECT_TRUE(M.ambient()->verschiebung().A.equals(PadicMatrix::from_ints(R, 1, 1, {5})));
  auto S = standard_module(1, 1, 1, R);
  SemilinearOp F = S.ambient()->frobenius();
  EXPECT_TRUE(F.apply(basis_vector(R, 2, 0)).equals(basis_vector(R, 2, 1)));
  EXPECT_TRUE(F.apply(basis_vector(R, 2, 1)).equals(basis_vector(R, 2, 0).scaled(1)));
}

TEST(DirectSum, OrdinaryAndSuperspecial) {
  auto R = make_witt_ring(2, 2, 24);
  auto ord = direct_sum(standard_module(1, 0, 1, R), standard_module(0, 1, 1, R));
  EXPECT_EQ(newton_polygon(ord), poly({{1, 0, 1}, {0, 1, 1}}));
  auto ss = direct_sum(standard_module(1, 1, 1, R), standard_module(1, 1, 1, R));
  EXPECT_EQ(newton_polygon(ss), poly({{1, 1, 2}}));
  EXPECT_EQ(ss, standard_module(1, 1, 2, R));
  auto M = standard_module(2, 1, 1, R);
  EXPECT_EQ(direct_sum(M, *Ambient::zero(R)), M);
}

TEST(DualModule, SlopesAndDoubleDual) {
  auto R = make_witt_ring(3, 2, 30);
  EXPECT_EQ(newton_polygon(dual_module(standard_module(1, 1, 1, R))), poly({{1, 1, 1}}));
  EXPECT_EQ(newton_polygon(dual_module(standard_module(1, 0, 1, R))), poly({{0, 1, 1}}));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10; ++it) {
    auto beta = random_polygon(4, rng);
    auto M = random_submodule(random_frame(standard_module(beta, R), rng), 2, rng);
    auto Mt = dual_module(M);
    EXPECT_EQ(newton_polygon(Mt), beta.dual());
    auto Mtt = dual_module(Mt);
    EXPECT_TRUE(Mtt.ambient()->frobenius_matrix().equals(M.ambient()->frobenius_matrix()));
    EXPECT_EQ(Mtt.lattice(), M.lattice());
  }
}

TEST(Ambient, FrobeniusTimesVerschiebungIsP) {
  std::mt19937_64 rng(12);
  for (int p : {2, 3, 5}) {
    auto R = make_witt_ring(p, 3, 24);
    auto M = random_frame(standard_module(random_polygon(5, rng), R), rng);
    SemilinearOp F = M.ambient()->frobenius(), V = M.ambient()->verschiebung();
    for (int k = 0; k < 5; ++k) {
      PadicMatrix v = random_integral_matrix(R, 5, 1, rng);
      EXPECT_TRUE(F.apply(V.apply(v)).equals(v.scaled(1)));
      EXPECT_TRUE(V.apply(F.apply(v)).equals(v.scaled(1)));
    }
  }
}

TEST(NewtonPolygon, IsogenyInvariant) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 20; ++it) {
    auto R = make_witt_ring(it % 2 ? 2 : 3, 1 + it % 3, 30);
    auto beta = random_polygon(2 + it % 4, rng);
    auto M = random_frame(standard_module(beta, R), rng);
    EXPECT_EQ(newton_polygon(M), beta);
    EXPECT_EQ(newton_polygon(random_submodule(M, 3, rng)), beta);
    EXPECT_EQ(beta.height(), M.rank());
  }
}

TEST(NewtonPolygon, LowPrecisionRaises) {
  // det F^4 has valuation 4 * 3 = 12, outside an 8-digit window.
  auto R = make_witt_ring(2, 4, 8);
  auto M = direct_sum(standard_module(2, 1, 1, R), standard_module(1, 2, 1, R));
  EXPECT_THROW(newton_polygon(M), PrecisionError);
}

TEST(Isotypic, IsoclinicIsSingleIdentityComponent) {
  auto R = make_witt_ring(3, 1, 30);
  auto M = standard_module(1, 1, 2, R);
  auto dec = isotypic_decomposition(M);
  ASSERT_EQ(dec.components.size(), 1u);
  EXPECT_TRUE(dec.components[0].projector().equals(PadicMatrix::identity(R, 4)));
}

TEST(Isotypic, OrdinarySplitsIntoRankOne) {
  auto R = make_witt_ring(2, 1, 30);
  std::mt19937_64 rng(14);
  auto M = random_submodule(random_frame(standard_module(poly({{1, 0, 1}, {0, 1, 1}}), R), rng), 2, rng);
  auto dec = isotypic_decomposition(M);
  ASSERT_EQ(dec.components.size(), 2u);
  EXPECT_EQ(dec.components[0].rank, 1);
  EXPECT_EQ(dec.components[1].rank, 1);
  EXPECT_EQ(dec.components[0].slope, (Slope{1, 0}));
  EXPECT_EQ(dec.components[1].slope, (Slope{0, 1}));
}

TEST(Isotypic, ProjectorIdentities) {
  std::mt19937_64 rng(15);
  for (int it = 0; it < 12; ++it) {
    auto R = make_witt_ring(it % 2 ? 3 : 2, 1 + it % 2, 40);
    NewtonPolygon beta;
    do {
      beta = random_polygon(3 + it % 3, rng);
    } while (beta.parts.size() < 2);
    auto M = random_submodule(random_frame(standard_module(beta, R), rng), 2, rng);
    auto dec = isotypic_decomposition(M);
    ASSERT_EQ(dec.components.size(), beta.parts.size());
    const PadicMatrix& A = M.ambient()->frobenius_matrix();
    PadicMatrix sum(R, M.rank(), M.rank());
    for (size_t i = 0; i < dec.components.size(); ++i) {
      PadicMatrix P = dec.components[i].projector();
      EXPECT_TRUE((P * P).equals(P));
      EXPECT_TRUE((P * A).equals(A * P.frobenius(1)));
      for (size_t j = 0; j < dec.components.size(); ++j) {
        if (i != j) EXPECT_TRUE((P * dec.components[j].projector()).is_zero());
      }
      sum = sum + P;
      EXPECT_EQ(dec.components[i].rank, beta.parts[i].r * (beta.parts[i].a + beta.parts[i].b));
    }
    EXPECT_TRUE(sum.equals(PadicMatrix::identity(R, M.rank())));
  }
}

TEST(Isotypic, HighSlopeSplitKeepsPrecision) {
  // Slopes 2/3 and 1 over F_{p^2}: F^6 has root valuations 4 and 6, the dual 2 and 0.
  std::mt19937_64 rng(17);
  for (int p : {2, 3}) {
    auto R = make_witt_ring(p, 2, 48);
    auto M = random_frame(random_submodule(standard_module(poly({{1, 2, 1}, {0, 1, 1}}), R), 2, rng), rng);
    auto dec = isotypic_decomposition(M);
    ASSERT_EQ(dec.components.size(), 2u);
    const PadicMatrix& A = M.ambient()->frobenius_matrix();
    for (const auto& c : dec.components) {
      EXPECT_GE(c.F.A.prec(), 30);
      EXPECT_TRUE((A * c.embed.frobenius(1)).equals(c.embed * c.F.A));
      EXPECT_TRUE((c.coords * c.embed).equals(PadicMatrix::identity(R, c.rank)));
    }
    EXPECT_EQ(dec.components[0].slope, (Slope{1, 2}));
    EXPECT_EQ(dec.components[1].slope, (Slope{0, 1}));
  }
}

TEST(Isotypic, ComponentLatticesHaveFiniteIndex) {
  // beta = (1,0) + (1,1): M contains M_0 + M_{1/2}, which contains p^c M.
  auto R = make_witt_ring(3, 1, 30);
  std::mt19937_64 rng(16);
  for (int it = 0; it < 10; ++it) {
    auto M = random_submodule(random_frame(standard_module(poly({{1, 0, 1}, {1, 1, 1}}), R), rng), 2, rng);
    auto dec = isotypic_decomposition(M);
    ASSERT_EQ(dec.components.size(), 2u);
    EXPECT_EQ(dec.components[0].rank, 1);
    EXPECT_EQ(dec.components[1].rank, 2);
    std::vector<Lattice> parts;
    for (const auto& c : dec.components) {
      Lattice Ml = c.restrict(M.lattice());
      EXPECT_EQ(Ml, Lattice::standard(R, c.rank));
      parts.push_back(Ml);
    }
    Lattice inner = dec.assemble(parts);
    EXPECT_TRUE(M.lattice().contains(inner));
    bool found = false;
    for (int c = 0; c <= 6 && !found; ++c) found = inner.contains(M.lattice().scaled(c));
    EXPECT_TRUE(found);
  }
}

TEST(Skeleton, SupersingularStandardBasis) {
  auto R = make_witt_ring(3, 2, 30);
  auto M = standard_module(1, 1, 1, R);
  auto dec = isotypic_decomposition(M);
  Skeleton sk = skeleton(dec.components[0]);
  EXPECT_EQ(sk.field_degree, 2);
  EXPECT_EQ(sk.basis.cols(), 4);
  // e_0 and e_1 satisfy F^2 e = p e and lie in the skeleton.
  Lattice coords = sk.coordinates_of(Lattice::standard(sk.ring, 2));
  EXPECT_EQ(coords.length(), 0);
  PadicMatrix vec = sk.vectors();
  SemilinearOp Fn = sk.component.normalized_power();
  EXPECT_TRUE(Fn.apply(vec).equals(vec));
}

TEST(Skeleton, EtaleIsFixedVectors) {
  auto R = make_witt_ring(5, 1, 20);
  auto dec = isotypic_decomposition(standard_module(1, 0, 1, R));
  Skeleton sk = skeleton(dec.components[0]);
  EXPECT_EQ(sk.field_degree, 1);
  EXPECT_EQ(sk.basis.cols(), 1);
}

TEST(Skeleton, GaloisTwistedSupersingular) {
  std::mt19937_64 rng(17);
  for (int p : {2, 3}) {
    for (int m : {1, 2, 3}) {
      auto R = make_witt_ring(p, m, 30);
      auto S = standard_module(1, 1, 2, R);
      // F = u * standard with u a random Teichmuller unit.
      std::uniform_int_distribution<int> j(0, 1000);
      Elem u = R->pow(R->generator(), static_cast<u128>(j(rng)));
      auto amb = Ambient::make(S.ambient()->frobenius_matrix().times(u));
      DieudonneModule M(amb, Lattice::standard(R, 4));
      auto dec = isotypic_decomposition(M);
      Skeleton sk = skeleton(dec.components[0]);
      EXPECT_LE(sk.field_degree, 2 * std::lcm(m, 2));
      PadicMatrix vec = sk.vectors();
      EXPECT_TRUE(sk.component.normalized_power().apply(vec).equals_mod(vec, 30 - 2 - 4));
      EXPECT_EQ(Lattice::from_generators(vec).rank(), 4);
    }
  }
}

TEST(Skeleton, CapRaisesExtensionError) {
  auto R = make_witt_ring(2, 1, 20);
  auto dec = isotypic_decomposition(standard_module(1, 1, 1, R));
  EXPECT_THROW(skeleton(dec.components[0], 1), ExtensionError);
  try {
    skeleton(dec.components[0], 1);
  } catch (const ExtensionError& e) {
    EXPECT_EQ(e.required_degree(), 2);
  }
}

TEST(Pi0, SupersingularShiftsBasis) {
  auto R = make_witt_ring(3, 1, 20);
  auto dec = isotypic_decomposition(standard_module(1, 1, 1, R));
  const auto& c = dec.components[0];
  EXPECT_TRUE(pi0_apply(c, basis_vector(R, 2, 0)).equals(basis_vector(R, 2, 1)));
  EXPECT_TRUE(pi0_apply(c, pi0_apply(c, basis_vector(R, 2, 0))).equals(basis_vector(R, 2, 0).scaled(1)));
}

TEST(Pi0, EtaleIsP) {
  auto R = make_witt_ring(3, 1, 20);
  auto dec = isotypic_decomposition(standard_module(1, 0, 1, R));
  EXPECT_EQ(bezout_pair(1, 0), (std::pair<int, int>{1, 0}));
  EXPECT_TRUE(pi0_apply(dec.components[0], basis_vector(R, 1, 0)).equals(basis_vector(R, 1, 0).scaled(1)));
}

TEST(Pi0, BezoutChoiceIrrelevantOnSkeleton) {
  std::mt19937_64 rng(18);
  auto R = make_witt_ring(2, 1, 30);
  auto M = random_frame(standard_module(2, 1, 1, R), rng);
  auto dec = isotypic_decomposition(M);
  const auto& c = dec.components[0];
  Skeleton sk = skeleton(c);
  PadicMatrix vec = sk.vectors();
  // (x, y) = (0, 1) and (-1, 3): 0*2 + 1*1 = 1 and -1*2 + 3*1 = 1.
  SemilinearOp pi_a = sk.component.F;
  SemilinearOp pi_b = sk.component.F.power(3).compose(sk.component.V().power(-1));
  EXPECT_TRUE(pi_a.apply(vec).equals_mod(pi_b.apply(vec), 30 - 3 - 4));
  EXPECT_TRUE(sk.component.pi0().power(3).apply(vec).equals(vec.scaled(1)));
}
