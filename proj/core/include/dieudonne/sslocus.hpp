#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dieudonne/endo.hpp"

namespace dieudonne {

/// Rank-4 module with basis e1, f1, e2, f2 and F e_i = f_i, F f_i = -p e_i.
struct SuperspecialBase {
  DieudonneModule M1;
};

/// ArgumentError unless the residue degree of `ring` is even.
SuperspecialBase superspecial_base(const RingPtr& ring);

/// Point [a : b] of P^1 over the residue field of the base ring, with its module
/// M_x = M1 + W (a f1 + b f2) / p.
struct FamilyPoint {
  Elem a;
  Elem b;
  /// Least k with [a : b] in P^1(F_{p^{2k}}).
  int field_level = 0;
  DieudonneModule module;
};

/// Least k with [a : b] defined over F_{p^{2k}} inside the Conway tower of `ring`.
int field_level(const RingPtr& ring, const Elem& a, const Elem& b);

/// a, b Teichmüller and normalized (first nonzero coordinate 1). ArgumentError on the
/// zero pair or unnormalized input.
FamilyPoint point_module(const SuperspecialBase& base, const Elem& a, const Elem& b);

/// Image of End(M_x) in R / Pi R = M_2(F_{p^2}), R the stored maximal order.
struct ReductionShape {
  /// F_p-dimension of the image: 8, 4 or 2 for the three cases.
  int dimension = 0;
  /// 1: all of M_2(F_{p^2}); 2: a quadratic field over F_{p^2}; 3: scalars F_{p^2}.
  int detected_case = 0;
  bool contains_scalars = false;
  /// Image is F_{p^2}[X] for one X with irreducible characteristic polynomial.
  bool quadratic_generator = false;
};

ReductionShape reduction_shape(const EndoOrder& O);

/// Shape case predicted for a point of the given field level (1, 2, or 3 for level >= 3).
int expected_case(int field_level);
/// Co-index predicted for that case: 0, 4, 6.
int expected_coindex(int field_level);

struct PointProfile {
  int c_p = 0;
  ReductionShape shape;
  bool shape_matches = false;
  bool is_minimal = false;
  /// W-length of M_x / (M_x)_min.
  int length_sub = 0;
  /// (M_x)_min == M1.
  bool sub_is_base = false;
  int field_degree = 0;
  int precision = 0;
};

PointProfile c_p_profile(const SuperspecialBase& base, const FamilyPoint& x);

struct StratumRow {
  /// 0 or 1.
  int a = 0;
  /// Discrete log of b with respect to the generator t of F_{p^{2 k_max}}; -1 for b = 0.
  int b_log = -1;
  int field_level = 0;
  PointProfile profile;
  /// "0", "1" or "t^j".
  std::string b_label() const;
};

struct StratumTable {
  int p = 0;
  int k_max = 0;
  int field_degree = 0;
  int precision = 0;
  std::vector<StratumRow> rows;
  /// counts[m] = |V_m| = #{x : c_p(x) <= m}, m = 0..6.
  std::array<int, 7> counts{};
  int expected_v0 = 0;
  int expected_v4 = 0;
  bool filtration_holds = false;
  bool counts_hold = false;
  /// Every point has the predicted co-index and shape, and the four superspecial
  /// criteria agree.
  bool points_hold = false;
  bool ok() const noexcept { return filtration_holds && counts_hold && points_hold; }

  std::string to_csv() const;
};

/// Enumerates P^1(F_{p^{2 k_max}}) and profiles every point.
StratumTable stratification(int p, int k_max, int precision = 0);

/// Fills counts and the assertion flags from rows.
void summarize(StratumTable& table);

/// `count` random points of exact field level `level`, over F_{p^{2 level}}.
std::vector<FamilyPoint> sample_points(const SuperspecialBase& base, int level, int count, std::uint64_t seed);

}  // namespace dieudonne
