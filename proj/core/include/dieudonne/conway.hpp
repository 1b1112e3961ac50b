#pragma once

#include <vector>

namespace dieudonne {

/// Conway polynomial of F_{p^m}, coefficients low degree first (monic).
///
/// The built-in table covers p <= 13 and m <= 12. Entries in the file named by
/// the environment variable DIEUDONNE_CONWAY_TABLE take precedence; each line is
/// "p m c_0 c_1 ... c_m" and '#' starts a comment.
///
/// Throws ConwayError when no polynomial is known.
const std::vector<int>& conway_polynomial(int p, int m);

bool has_conway_polynomial(int p, int m);

namespace detail {

struct ConwayEntry {
  int p;
  int m;
  std::vector<int> coeffs;
};

const std::vector<ConwayEntry>& builtin_conway_table();

}  // namespace detail

}  // namespace dieudonne
