#include <gtest/gtest.h>

#include <random>

#include "dieudonne/errors.hpp"
#include "dieudonne/sslocus.hpp"

using namespace dieudonne;

namespace {

SuperspecialBase base_over(int p, int m) { return superspecial_base(make_witt_ring(p, m, default_precision(p, 4))); }

}  // namespace

TEST(SuperspecialBase, Relations) {
  SuperspecialBase B = base_over(3, 2);
  const RingPtr& R = B.M1.ring();
  SemilinearOp F = B.M1.ambient()->frobenius();
  SemilinearOp F2 = F.compose(F);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    PadicMatrix v(R, 4, 1);
    for (int k = 0; k < 4; ++k) v.at(k, 0) = R->random(rng);
    v.normalize();
    // sigma^2 is the identity on W(F_9), so F^2 v = -p v.
    EXPECT_TRUE((F2.apply(v) + v.scaled(1)).is_zero());
  }
  EXPECT_EQ(newton_polygon(B.M1), (NewtonPolygon{{{1, 1, 2}}}));
  EXPECT_TRUE(is_minimal(B.M1).is_minimal);
  EXPECT_THROW(superspecial_base(make_witt_ring(3, 1, 20)), ArgumentError);
}

TEST(SuperspecialBase, EndomorphismRingIsMaximal) {
  SuperspecialBase B = base_over(2, 2);
  EndoOrder E = endomorphism_ring(B.M1);
  EXPECT_EQ(E.dimension(), 16);
  EXPECT_EQ(coindex(E), 0);
  EXPECT_EQ(reduction_shape(E).dimension, 8);
}

TEST(PointModule, InputValidation) {
  SuperspecialBase B = base_over(2, 4);
  const WittRing& R = *B.M1.ring();
  EXPECT_THROW(point_module(B, R.zero(), R.zero()), ArgumentError);
  EXPECT_THROW(point_module(B, R.generator(), R.one()), ArgumentError);
  EXPECT_THROW(point_module(B, R.one(), R.add(R.one(), R.from_int(2))), ArgumentError);
  FamilyPoint x = point_module(B, R.one(), R.generator());
  EXPECT_EQ(index_exponent(x.module.lattice(), B.M1.lattice()), 1);
}

TEST(PointModule, DistinctPointsGiveDistinctLattices) {
  SuperspecialBase B = base_over(2, 4);
  const WittRing& R = *B.M1.ring();
  std::vector<Lattice> seen;
  seen.push_back(point_module(B, R.zero(), R.one()).module.lattice());
  seen.push_back(point_module(B, R.one(), R.zero()).module.lattice());
  for (int j = 0; j < 15; ++j) seen.push_back(point_module(B, R.one(), R.pow(R.generator(), j)).module.lattice());
  for (size_t i = 0; i < seen.size(); ++i) {
    for (size_t k = i + 1; k < seen.size(); ++k) EXPECT_NE(seen[i], seen[k]) << i << " " << k;
  }
}

TEST(FieldLevel, ConwayTower) {
  auto R16 = make_witt_ring(2, 4, 10);
  const WittRing& R = *R16;
  EXPECT_EQ(field_level(R16, R.one(), R.zero()), 1);
  EXPECT_EQ(field_level(R16, R.zero(), R.one()), 1);
  EXPECT_EQ(field_level(R16, R.one(), R.generator()), 2);
  // t^5 generates F_4 inside F_16.
  EXPECT_EQ(field_level(R16, R.one(), R.pow(R.generator(), 5)), 1);
  auto R64 = make_witt_ring(2, 6, 10);
  EXPECT_EQ(field_level(R64, R64->one(), R64->generator()), 3);
  EXPECT_EQ(field_level(R64, R64->one(), R64->pow(R64->generator(), 21)), 1);
}

TEST(CpProfile, SuperspecialPoints) {
  SuperspecialBase B = base_over(3, 2);
  const WittRing& R = *B.M1.ring();
  for (int j = 0; j < 8; ++j) {
    FamilyPoint x = point_module(B, R.one(), R.pow(R.generator(), j));
    PointProfile prof = c_p_profile(B, x);
    EXPECT_EQ(prof.c_p, 0);
    EXPECT_TRUE(prof.is_minimal);
    EXPECT_EQ(prof.shape.detected_case, 1);
  }
}

TEST(CpProfile, LevelTwoIsFour) {
  SuperspecialBase B = base_over(3, 4);
  for (const auto& x : sample_points(B, 2, 4, 7)) {
    PointProfile prof = c_p_profile(B, x);
    EXPECT_EQ(prof.c_p, 4);
    EXPECT_EQ(prof.shape.dimension, 4);
    EXPECT_TRUE(prof.shape.contains_scalars);
    EXPECT_TRUE(prof.shape.quadratic_generator);
    EXPECT_TRUE(prof.shape_matches);
    EXPECT_FALSE(prof.is_minimal);
    EXPECT_TRUE(prof.sub_is_base);
    EXPECT_EQ(prof.length_sub, 1);
  }
}

TEST(CpProfile, LevelThreeIsSix) {
  SuperspecialBase B = base_over(2, 6);
  for (const auto& x : sample_points(B, 3, 3, 9)) {
    PointProfile prof = c_p_profile(B, x);
    EXPECT_EQ(prof.c_p, 6);
    EXPECT_EQ(prof.shape.dimension, 2);
    EXPECT_EQ(prof.shape.detected_case, 3);
    EXPECT_EQ(prof.field_degree, 12);
  }
}

TEST(CpProfile, GaloisConjugatesAgree) {
  SuperspecialBase B = base_over(2, 6);
  const WittRing& R = *B.M1.ring();
  for (const auto& x : sample_points(B, 3, 2, 21)) {
    FamilyPoint y = point_module(B, R.one(), R.frobenius(x.b, 1));
    EXPECT_EQ(y.field_level, x.field_level);
    EXPECT_EQ(c_p_profile(B, y).c_p, c_p_profile(B, x).c_p);
  }
}

TEST(Stratification, PTwoLevelTwo) {
  StratumTable t = stratification(2, 2);
  EXPECT_EQ(t.rows.size(), 17u);
  EXPECT_EQ(t.counts[0], 5);
  EXPECT_EQ(t.counts[4], 17);
  EXPECT_EQ(t.counts[6], 17);
  EXPECT_TRUE(t.ok());
  EXPECT_EQ(t.to_csv().substr(0, 22), "a,b,field_level,c_p\n0,");
}

TEST(Stratification, PThreeLevelOne) {
  StratumTable t = stratification(3, 1);
  EXPECT_EQ(t.rows.size(), 10u);
  for (const auto& r : t.rows) EXPECT_EQ(r.profile.c_p, 0);
  EXPECT_TRUE(t.ok());
  EXPECT_THROW(stratification(3, 5), ArgumentError);
}
