#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dieudonne/endo.hpp"

namespace dieudonne {

struct HarnessOptions {
  int p = 2;
  int h = 4;
  /// Base sample size n; the harness draws 2n lattices and compares maxima at n and 2n.
  int samples = 100;
  std::uint64_t seed = 1;
  /// Lattices lie between p^depth M and M for a standard M.
  int depth = 2;
  /// Only the polygon (1,1) x h/2.
  bool supersingular_only = false;
  int max_height = 6;
  /// Residue degree of the sampling ring.
  int degree = 2;
  /// Residue degree used for the polygon (1,1) x h/2, whose non-minimal lattices need
  /// points outside P^1(F_{p^2}).
  int supersingular_degree = 4;
};

/// Per-sample measurements.
struct HarnessSample {
  std::string polygon;
  int length_sub = 0;
  int length_over = 0;
  int annihilator = 0;
  int coindex = 0;
  int dimension = 0;
};

/// One row of the bound harness report, per polygon.
struct ManinBoundRow {
  int h = 0;
  std::string polygon;
  int samples = 0;
  int max_length_sub = 0;
  int max_annihilator = 0;
  int max_coindex = 0;
  /// coindex <= annihilator * dim End^0 held on every sample of the row.
  bool coindex_bound_holds = true;
};

struct ManinBoundReport {
  HarnessOptions options;
  int precision = 0;
  std::vector<ManinBoundRow> rows;
  std::vector<HarnessSample> samples;
  /// Overall maxima after n and after 2n draws.
  int max_length_sub = 0;
  int max_length_sub_doubled = 0;
  int max_annihilator = 0;
  int max_annihilator_doubled = 0;
  int max_coindex = 0;
  int max_coindex_doubled = 0;
  bool coindex_bound_holds = true;

  bool stable() const noexcept {
    return max_length_sub == max_length_sub_doubled && max_annihilator == max_annihilator_doubled &&
           max_coindex == max_coindex_doubled;
  }
  /// Columns h,polygon,samples,max_length_sub,max_annihilator,max_coindex.
  std::string to_csv() const;
};

/// Samples random F, V-stable lattices of height h across Newton polygons and records
/// minimal-isogeny lengths, annihilator exponents and co-indices. ArgumentError when
/// h exceeds max_height or sample counts are not positive.
ManinBoundReport manin_bound_harness(const HarnessOptions& options);

}  // namespace dieudonne
