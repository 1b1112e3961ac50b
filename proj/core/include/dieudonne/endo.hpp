#pragma once

#include <random>
#include <string>
#include <vector>

#include "dieudonne/minimal.hpp"

namespace dieudonne {

/// M_r(D) with D the central division algebra of invariant b/n over Q_p.
struct AlgebraFactor {
  int r = 0;
  int n = 0;
  int b = 0;
  friend bool operator==(const AlgebraFactor&, const AlgebraFactor&) = default;
};

struct AlgebraStructure {
  std::vector<AlgebraFactor> factors;
  /// dim over Q_p: sum of r^2 n^2.
  int dimension() const noexcept;
  std::string to_string() const;
  friend bool operator==(const AlgebraStructure&, const AlgebraStructure&) = default;
};

AlgebraStructure endomorphism_algebra(const NewtonPolygon& beta);
AlgebraStructure endomorphism_algebra(const DieudonneModule& M);

/// Label of a maximal-order basis element E_{ik} phi_{c_t} Pi^s in component `component`.
struct OrderBasisLabel {
  int component = 0;
  int i = 0;
  int k = 0;
  int t = 0;
  int s = 0;
};

/// W-basis of a minimal component lattice of the form Pi_0^j f_i (columns ordered by i, then j),
/// on which F acts by the standard block matrix. L is given over the skeleton field.
PadicMatrix standard_basis(const Skeleton& sk, const Lattice& L);

/// Block matrix of F on the standard basis of M(a, b)^r.
PadicMatrix standard_block_matrix(const RingPtr& ring, int a, int b, int r);

/// Maximal order End(M^min) of a minimal module, realized as ambient operators over the
/// field needed by the skeletons.
struct MaximalOrder {
  RingPtr ring;
  RingPtr zp;
  /// The minimal module, over `ring`.
  DieudonneModule module;
  AlgebraStructure structure;
  /// Z_p-basis of the order (h x h ambient matrices over `ring`).
  std::vector<PadicMatrix> basis;
  std::vector<OrderBasisLabel> labels;
  /// Z_p matrix whose columns are the vectorized basis elements.
  PadicMatrix vectorized() const;
};

/// ArgumentError unless M is minimal.
MaximalOrder maximal_order_basis(const DieudonneModule& M, int max_degree = kMaxDegree);

/// A Z_p-order inside a stored maximal order.
struct EndoOrder {
  MaximalOrder maximal;
  /// D x D over Z_p: columns are the order basis in maximal-order coordinates.
  PadicMatrix coords;
  int coindex_exponent = 0;
  /// Least N2 with p^{N2} M^min in M for the source module; -1 for orders not built from a module.
  int annihilator_exponent = -1;

  int dimension() const noexcept { return coords.rows(); }
  /// Order basis as ambient operators over maximal.ring.
  std::vector<PadicMatrix> basis() const;
  /// Coordinates in the maximal-order basis of an ambient operator over maximal.ring;
  /// RankError if it is not in the Q_p-span.
  PadicMatrix coordinates_of(const PadicMatrix& op) const;
  /// Structure constants of the order basis reduced mod p, as table[i][j][k].
  std::vector<std::vector<std::vector<int>>> multiplication_table_mod_p() const;
};

/// End(M) = {phi in End(M^min) : phi(M) in M}.
EndoOrder endomorphism_ring(const DieudonneModule& M, int max_degree = kMaxDegree);
/// Z_p-span of the given operators inside R. ArgumentError unless it is a full-rank
/// subring containing 1.
EndoOrder suborder(MaximalOrder R, const std::vector<PadicMatrix>& generators);
int coindex(const EndoOrder& O);
bool is_maximal(const EndoOrder& O);

/// Maximal order End(L') where L' is the minimal overmodule of O h(M^min) for a random
/// h in the maximal order. It contains O and equals g R g^{-1} for a unit g of End^0.
MaximalOrder random_conjugate_maximal_order(const EndoOrder& O, std::mt19937_64& rng);
/// v_p [R' : O]; InternalError when O is not contained in R'.
int coindex_against(const EndoOrder& O, const MaximalOrder& other);

/// Independent oracle: Z_p-basis of {X integral on the lattice basis of M over `ring` :
/// X F = F X}, vectorized in lattice-basis coordinates, by one kernel computation.
PadicMatrix endomorphisms_by_kernel(const DieudonneModule& M, const RingPtr& ring);
/// O basis vectorized in lattice-basis coordinates of M (same layout as the oracle).
PadicMatrix vectorized_on_module(const EndoOrder& O, const DieudonneModule& M);

}  // namespace dieudonne
