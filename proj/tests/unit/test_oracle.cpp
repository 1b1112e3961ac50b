#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "dieudonne/errors.hpp"
#include "dieudonne/minimal.hpp"
#include "dieudonne/oracle.hpp"
#include "dieudonne/random.hpp"

using namespace dieudonne;

namespace {

// All sublattices B H of colength <= max_len for H in lower-triangular Hermite form,
// over W = Z_p, kept when F, V-stable.
std::vector<Lattice> brute_force_stable(const DieudonneModule& M, int max_len) {
  const RingPtr& R = M.ring();
  const int h = M.rank(), p = R->p();
  std::vector<Lattice> out;
  std::vector<int> e(static_cast<size_t>(h), 0);
  std::function<void(int, int)> pick = [&](int i, int left) {
    if (i == h) {
      // Enumerate the entries left of each pivot.
      std::vector<std::pair<int, int>> slots;
      std::vector<int> bound;
      for (int r = 0; r < h; ++r) {
        int pe = 1;
        for (int k = 0; k < e[r]; ++k) pe *= p;
        for (int c = 0; c < r; ++c) {
          if (pe > 1) {
            slots.push_back({r, c});
            bound.push_back(pe);
          }
        }
      }
      std::vector<int> val(slots.size(), 0);
      while (true) {
        PadicMatrix H(R, h, h);
        for (int r = 0; r < h; ++r) H.at(r, r) = R->mul_pow(R->one(), e[r]);
        for (size_t s = 0; s < slots.size(); ++s) H.at(slots[s].first, slots[s].second) = R->from_int(val[s]);
        H.normalize();
        Lattice L = Lattice::from_generators(M.basis() * H);
        try {
          DieudonneModule N(M.ambient(), L);
          out.push_back(L);
        } catch (const ArgumentError&) {
        }
        size_t s = 0;
        while (s < val.size() && ++val[s] == bound[s]) val[s++] = 0;
        if (s == val.size()) break;
      }
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[i] = x;
      pick(i + 1, left - x);
    }
  };
  pick(0, max_len);
  return out;
}

bool same_set(std::vector<Lattice> a, std::vector<Lattice> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || x == y;
    if (!found) return false;
  }
  return true;
}

std::vector<DieudonneModule> supersingular_samples(int p, int m, int count, int depth, std::uint64_t seed) {
  auto R = make_witt_ring(p, m, default_precision(p, 4));
  std::mt19937_64 rng(seed);
  std::vector<DieudonneModule> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_frame(random_submodule(standard_module(1, 1, 2, R), depth, rng), rng));
  }
  return out;
}

}  // namespace

TEST(StableLattices, ChainSearchMatchesBruteForce) {
  auto R = make_witt_ring(2, 1, 30);
  std::mt19937_64 rng(3);
  const std::vector<NewtonPolygon> shapes = {NewtonPolygon{{{1, 1, 2}}}, NewtonPolygon{{{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}},
                                             NewtonPolygon{{{2, 1, 1}}}};
  for (const auto& beta : shapes) {
    DieudonneModule M = random_frame(random_submodule(standard_module(beta, R), 2, rng), rng);
    auto chain = stable_sublattices(M, 2);
    auto brute = brute_force_stable(M, 2);
    EXPECT_TRUE(same_set(chain, brute)) << beta.to_string() << " " << chain.size() << " vs " << brute.size();
  }
}

TEST(StableLattices, ChainSearchMatchesBruteForceAtPThree) {
  auto R = make_witt_ring(3, 1, 30);
  std::mt19937_64 rng(5);
  DieudonneModule M = random_frame(random_submodule(standard_module(1, 1, 2, R), 2, rng), rng);
  EXPECT_TRUE(same_set(stable_sublattices(M, 2), brute_force_stable(M, 2)));
}

TEST(StableLattices, OverlatticesContainModule) {
  for (const auto& M : supersingular_samples(2, 2, 3, 1, 7)) {
    for (const auto& L : stable_overlattices(M, 2)) {
      EXPECT_TRUE(L.contains(M.lattice()));
      EXPECT_LE(M.lattice().length() - L.length(), 2);
    }
  }
}

TEST(ExhaustiveMinimal, AgreesWithFixpoint) {
  for (const auto& M : supersingular_samples(2, 4, 6, 2, 11)) {
    MinimalIsogenyData d = minimal_isogeny(M);
    ExhaustiveMinimal ex = exhaustive_minimal_modules(M, 2);
    EXPECT_TRUE(ex.sub_dominates);
    EXPECT_TRUE(ex.over_dominates);
    if (d.length_sub <= 2) {
      ASSERT_TRUE(ex.sub.has_value());
      EXPECT_EQ(*ex.sub, d.sub.lattice());
    } else {
      EXPECT_FALSE(ex.sub.has_value());
    }
    if (d.length_over <= 2) {
      ASSERT_TRUE(ex.over.has_value());
      EXPECT_EQ(*ex.over, d.over.lattice());
    } else {
      EXPECT_FALSE(ex.over.has_value());
    }
  }
}

TEST(ExhaustiveMinimal, FindsNonMinimalPoint) {
  // M1 + W (f1 + t f2) / p over F_16 sits one step above its minimal submodule.
  auto R = make_witt_ring(2, 4, default_precision(2, 4));
  DieudonneModule M = standard_module(1, 1, 2, R);
  PadicMatrix g(R, 4, 1);
  g.at(1, 0) = R->one();
  g.at(3, 0) = R->generator();
  g.set_shift(1);
  g.normalize();
  DieudonneModule N(M.ambient(), Lattice::from_generators(PadicMatrix::hcat(M.basis(), g)));
  ExhaustiveMinimal ex = exhaustive_minimal_modules(N, 2);
  ASSERT_TRUE(ex.sub.has_value());
  EXPECT_EQ(*ex.sub, M.lattice());
  EXPECT_GE(ex.stable_subs, 2);
  EXPECT_THROW(stable_sublattices(N, -1), ArgumentError);
}
