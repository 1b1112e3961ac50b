#pragma once

#include <random>

#include "dieudonne/isocrystal.hpp"

namespace dieudonne {

/// Random matrix with entries uniform in W / p^N.
PadicMatrix random_integral_matrix(const RingPtr& ring, int rows, int cols, std::mt19937_64& rng);

/// Random element of GL_h(W).
PadicMatrix random_unimodular(const RingPtr& ring, int h, std::mt19937_64& rng);

/// Random F, V-stable sublattice of M of W-length at most `depth`, reached by `depth`
/// random steps of length at most one. It contains p^depth M.
DieudonneModule random_submodule(const DieudonneModule& M, int depth, std::mt19937_64& rng);

/// M expressed in a random W-basis: the ambient changes to G^{-1} A sigma(G) and the
/// lattice to G^{-1} M, for random G in GL_h(W) scaled by random p-powers per column.
DieudonneModule random_frame(const DieudonneModule& M, std::mt19937_64& rng);

/// Random polygon of height h (uniform over the coprime pairs that fit).
NewtonPolygon random_polygon(int h, std::mt19937_64& rng);

}  // namespace dieudonne
