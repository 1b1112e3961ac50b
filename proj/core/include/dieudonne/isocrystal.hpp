#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dieudonne/lattice.hpp"

namespace dieudonne {

/// Reduced pair (a, b) of slope b / (a + b).
struct Slope {
  int a = 0;
  int b = 0;
  int n() const noexcept { return a + b; }
  friend bool operator==(const Slope&, const Slope&) = default;
  /// Orders by b / (a + b).
  friend bool operator<(const Slope& x, const Slope& y) noexcept { return x.b * y.n() < y.b * x.n(); }
};

struct NewtonPart {
  int a = 0;
  int b = 0;
  int r = 0;
  Slope slope() const noexcept { return {a, b}; }
  friend bool operator==(const NewtonPart&, const NewtonPart&) = default;
};

/// Multiset sum of r_i (a_i, b_i), parts sorted by slope.
struct NewtonPolygon {
  std::vector<NewtonPart> parts;

  int height() const noexcept;
  /// Swaps every (a, b) to (b, a).
  NewtonPolygon dual() const;
  /// e.g. "(1,0)x1+(0,1)x1"
  std::string to_string() const;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

/// Integers (x, y) with x a + y b = 1, normalized: y = 1, x = 0 when a = 0; otherwise
/// 0 <= y < a (y = 0 when b = 0).
std::pair<int, int> bezout_pair(int a, int b);

class Ambient;
using AmbientPtr = std::shared_ptr<const Ambient>;

/// Isocrystal B(F_{p^m})^h with F(v) = A sigma(v). V is derived as p F^{-1}.
class Ambient {
 public:
  /// Validates that A is square and invertible.
  explicit Ambient(PadicMatrix A);
  /// Ambient of rank 0, the unit for direct sums.
  static AmbientPtr zero(RingPtr ring);
  static AmbientPtr make(PadicMatrix A) { return std::make_shared<const Ambient>(std::move(A)); }

  const RingPtr& ring() const noexcept { return ring_; }
  int rank() const noexcept { return h_; }
  const PadicMatrix& frobenius_matrix() const noexcept { return A_; }
  SemilinearOp frobenius() const { return {A_, 1}; }
  SemilinearOp verschiebung() const;

  AmbientPtr base_change(const RingEmbedding& emb) const;
  /// Dual isocrystal on the dual coordinates: F = p (A^{-1})^T.
  AmbientPtr dual() const;
  bool same_as(const Ambient& o) const;

 private:
  Ambient() = default;
  RingPtr ring_;
  int h_ = 0;
  PadicMatrix A_;
};

/// F, V-stable full-rank lattice in an ambient isocrystal.
class DieudonneModule {
 public:
  /// Throws ArgumentError unless the lattice is F- and V-stable.
  DieudonneModule(AmbientPtr ambient, Lattice lattice);
  static DieudonneModule from_basis(AmbientPtr ambient, const PadicMatrix& basis);

  const AmbientPtr& ambient() const noexcept { return ambient_; }
  const Lattice& lattice() const noexcept { return lattice_; }
  const RingPtr& ring() const noexcept { return ambient_->ring(); }
  int rank() const noexcept { return ambient_->rank(); }
  PadicMatrix basis() const { return lattice_.basis(); }
  /// Matrix of F on the lattice basis (integral).
  PadicMatrix frobenius_on_basis() const;

  DieudonneModule base_change(const RingEmbedding& emb) const;
  /// Same lattice in the given ambient, which must agree with the current one.
  DieudonneModule rebind(AmbientPtr ambient) const;

  friend bool operator==(const DieudonneModule& x, const DieudonneModule& y);

 private:
  AmbientPtr ambient_;
  Lattice lattice_;
};

/// Standard block M(a, b)^r: basis e_0, ..., e_{n-1} per block with F e_i = e_{i+b},
/// V e_i = e_{i+a} and e_{i+n} = p e_i.
DieudonneModule standard_module(int a, int b, int r, RingPtr ring);
DieudonneModule standard_module(const NewtonPolygon& beta, RingPtr ring);

DieudonneModule direct_sum(const DieudonneModule& x, const DieudonneModule& y);
/// Sum with a rank-0 ambient: returns x.
DieudonneModule direct_sum(const DieudonneModule& x, const Ambient& zero);

/// Hom_W(M, W) with F = V^*, on the dual ambient.
DieudonneModule dual_module(const DieudonneModule& M);

/// Slopes of F, from the characteristic polynomial of F^m = A sigma(A) ... sigma^{m-1}(A).
NewtonPolygon newton_polygon(const DieudonneModule& M);

/// One isotypic component N_lambda in a fixed coordinate frame. Component coordinates
/// come from a W-basis of M cap N_lambda for the module the decomposition was built from,
/// so that lattice is the standard lattice in these coordinates.
struct IsotypicComponent {
  Slope slope;
  int multiplicity = 0;
  int rank = 0;
  /// h x d: component coordinates to ambient coordinates.
  PadicMatrix embed;
  /// d x h: ambient coordinates to component coordinates (zero on other components).
  PadicMatrix coords;
  /// F restricted to the component, in component coordinates.
  SemilinearOp F;

  PadicMatrix projector() const { return embed * coords; }
  SemilinearOp V() const;
  /// F^y V^x for the normalized Bezout pair of the slope.
  SemilinearOp pi0() const;
  /// p^{-b} F^n; the skeleton is its fixed space.
  SemilinearOp normalized_power() const;
  /// Image of an ambient lattice under the projection, in component coordinates.
  Lattice project(const Lattice& L) const;
  /// L cap N_lambda in component coordinates.
  Lattice restrict(const Lattice& L) const;
  /// Dual component: coordinates dual to these, F = p (C^{-1})^T, slope (b, a).
  IsotypicComponent dual() const;
  IsotypicComponent base_change(const RingEmbedding& emb) const;
};

struct IsotypicDecomposition {
  NewtonPolygon polygon;
  std::vector<IsotypicComponent> components;

  /// Ambient lattice generated by component lattices (one per component).
  Lattice assemble(const std::vector<Lattice>& parts) const;
  IsotypicDecomposition base_change(const RingEmbedding& emb) const;
};

/// Isotypic decomposition in the frame adapted to M (see IsotypicComponent).
IsotypicDecomposition isotypic_decomposition(const DieudonneModule& M);

/// Z_p-structure of the skeleton {v : F^n v = p^b v} of one component, over W(F_{p^L}).
struct Skeleton {
  Slope slope;
  int field_degree = 0;
  /// W(F_{p^L}) and Z_p, both at the component precision.
  RingPtr ring;
  RingPtr zp;
  /// (d L) x (n d) over Z_p: saturated basis of W(F_{p^L})^d cap skeleton.
  PadicMatrix basis;
  /// Component over W(F_{p^L}).
  IsotypicComponent component;

  /// Skeleton vectors as d x (n d) columns over W(F_{p^L}).
  PadicMatrix vectors() const;
  /// Z_p-lattice (in skeleton coordinates) of L cap skeleton for a lattice L of the
  /// component given over W(F_{p^L}).
  Lattice coordinates_of(const Lattice& L) const;
  /// Vectors of a skeleton-coordinate matrix, as columns over W(F_{p^L}).
  PadicMatrix realize(const PadicMatrix& x) const;
  /// Matrix over Z_p of Pi_0 on skeleton coordinates.
  PadicMatrix pi0_matrix() const;
};

/// Solves for the skeleton, enlarging the field F_{p^m} -> F_{p^L} with L a multiple of
/// lcm(m, n) until the solution space has full dimension. ExtensionError beyond max_degree.
Skeleton skeleton(const IsotypicComponent& component, int max_degree = kMaxDegree);

/// Pi_0 v for columns v in component coordinates.
PadicMatrix pi0_apply(const IsotypicComponent& component, const PadicMatrix& v);

}  // namespace dieudonne
