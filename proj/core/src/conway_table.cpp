// Generated by tools/gen_conway_table.py. Do not edit.

#include "dieudonne/conway.hpp"

namespace dieudonne::detail {

// p, m, coefficients c_0 .. c_m (low degree first, c_m = 1)
const std::vector<ConwayEntry>& builtin_conway_table() {
  static const std::vector<ConwayEntry> table = {
      {2, 1, {1, 1}},
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 12, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
      {3, 1, {1, 1}},
      {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 0, 0, 2, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {3, 6, {2, 2, 1, 0, 2, 0, 1}},
      {3, 7, {1, 0, 2, 0, 0, 0, 0, 1}},
      {3, 8, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
      {3, 9, {1, 1, 2, 2, 0, 0, 0, 0, 0, 1}},
      {3, 10, {2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1}},
      {3, 11, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {3, 12, {2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1}},
      {5, 1, {3, 1}},
      {5, 2, {2, 4, 1}},
      {5, 3, {3, 3, 0, 1}},
      {5, 4, {2, 4, 4, 0, 1}},
      {5, 5, {3, 4, 0, 0, 0, 1}},
      {5, 6, {2, 0, 1, 4, 1, 0, 1}},
      {5, 7, {3, 3, 0, 0, 0, 0, 0, 1}},
      {5, 8, {2, 4, 3, 0, 1, 0, 0, 0, 1}},
      {5, 9, {3, 1, 0, 2, 0, 0, 0, 0, 0, 1}},
      {5, 10, {2, 1, 4, 2, 3, 3, 0, 0, 0, 0, 1}},
      {5, 11, {3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {5, 12, {2, 2, 3, 4, 4, 0, 1, 1, 0, 0, 0, 0, 1}},
      {7, 1, {4, 1}},
      {7, 2, {3, 6, 1}},
      {7, 3, {4, 0, 6, 1}},
      {7, 4, {3, 4, 5, 0, 1}},
      {7, 5, {4, 1, 0, 0, 0, 1}},
      {7, 6, {3, 6, 4, 5, 1, 0, 1}},
      {7, 7, {4, 6, 0, 0, 0, 0, 0, 1}},
      {7, 8, {3, 2, 6, 4, 0, 0, 0, 0, 1}},
      {7, 9, {4, 6, 0, 1, 6, 0, 0, 0, 0, 1}},
      {7, 10, {3, 3, 2, 1, 4, 1, 1, 0, 0, 0, 1}},
      {7, 11, {4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {7, 12, {3, 0, 5, 0, 4, 2, 3, 5, 2, 0, 0, 0, 1}},
      {11, 1, {9, 1}},
      {11, 2, {2, 7, 1}},
      {11, 3, {9, 2, 0, 1}},
      {11, 4, {2, 10, 8, 0, 1}},
      {11, 5, {9, 0, 10, 0, 0, 1}},
      {11, 6, {2, 7, 6, 4, 3, 0, 1}},
      {11, 7, {9, 4, 0, 0, 0, 0, 0, 1}},
      {11, 8, {2, 7, 1, 7, 7, 0, 0, 0, 1}},
      {11, 9, {9, 8, 9, 0, 0, 0, 0, 0, 0, 1}},
      {11, 10, {2, 6, 6, 10, 8, 7, 0, 0, 0, 0, 1}},
      {11, 11, {9, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {11, 12, {2, 5, 6, 5, 5, 2, 4, 1, 1, 0, 0, 0, 1}},
      {13, 1, {11, 1}},
      {13, 2, {2, 12, 1}},
      {13, 3, {11, 2, 0, 1}},
      {13, 4, {2, 12, 3, 0, 1}},
      {13, 5, {11, 4, 0, 0, 0, 1}},
      {13, 6, {2, 11, 11, 10, 0, 0, 1}},
      {13, 7, {11, 3, 0, 0, 0, 0, 0, 1}},
      {13, 8, {2, 3, 2, 12, 8, 0, 0, 0, 1}},
      {13, 9, {11, 12, 12, 8, 12, 0, 0, 0, 0, 1}},
      {13, 10, {2, 1, 1, 8, 5, 7, 0, 0, 0, 0, 1}},
      {13, 11, {11, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {13, 12, {2, 4, 1, 1, 3, 11, 8, 5, 1, 0, 0, 0, 1}},
  };
  return table;
}

}  // namespace dieudonne::detail
