#pragma once

#include <optional>
#include <vector>

#include "dieudonne/isocrystal.hpp"

namespace dieudonne {

/// Every F, V-stable sublattice L of M with length(M / L) <= max_length, M included.
///
/// Colength-one sublattices are the kernels of nonzero functionals on M / pM. A stable
/// one has a quotient killed by F or by V, so every functional vanishing on the image of
/// F or of V mod p is scanned and its kernel is tested for stability through the
/// reductions of F and V on the basis. Longer colengths recurse from the stable
/// colength-one lattices, which reaches every stable lattice because the finite quotient
/// M / L always has a Dieudonne submodule of length one.
std::vector<Lattice> stable_sublattices(const DieudonneModule& M, int max_length);

/// Every F, V-stable lattice L containing M with length(L / M) <= max_length, as duals of
/// the stable sublattices of the dual module.
std::vector<Lattice> stable_overlattices(const DieudonneModule& M, int max_length);

/// Minimal sub- and overmodules found by exhaustive search among lattices at W-length
/// <= max_length from M.
struct ExhaustiveMinimal {
  /// Largest minimal stable sublattice found; empty when none is in range.
  std::optional<Lattice> sub;
  /// Smallest minimal stable overlattice found.
  std::optional<Lattice> over;
  int stable_subs = 0;
  int stable_overs = 0;
  int minimal_subs = 0;
  int minimal_overs = 0;
  /// The chosen lattice contains (resp. is contained in) every other minimal candidate.
  bool sub_dominates = true;
  bool over_dominates = true;
};

ExhaustiveMinimal exhaustive_minimal_modules(const DieudonneModule& M, int max_length = 2);

}  // namespace dieudonne
