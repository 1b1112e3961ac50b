#pragma once

#include <string>
#include <vector>

#include "dieudonne/matrix.hpp"

namespace dieudonne {

/// Full-rank W-lattice in B(F_{p^m})^h, stored in canonical form p^{-shift} * H where H is
/// the lower-triangular column Hermite form: H(i,i) = p^{e_i}, zeros above the diagonal,
/// and every entry left of a pivot reduced coefficientwise into [0, p^{e_i}). The shift
/// is chosen so that H has no common factor p. Two lattices are equal iff their
/// canonical forms agree, and the form is exact (not a truncation).
class Lattice {
 public:
  Lattice() = default;

  static Lattice standard(RingPtr ring, int h);
  /// W-span of the columns of `gens`. The generators are known modulo p^{prec}; the span
  /// is pinned down exactly when its index in the integral normalization stays below
  /// p^{prec - guard - 1}, and PrecisionError is raised otherwise. RankError when the
  /// columns do not span the whole space.
  static Lattice from_generators(const PadicMatrix& gens, int guard = kGuardDigits);
  /// {v : D v integral} for D of full column rank.
  static Lattice from_integrality(const PadicMatrix& D);

  const RingPtr& ring() const noexcept { return ring_; }
  int rank() const noexcept { return h_; }
  int shift() const noexcept { return shift_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  /// Integral Hermite form H.
  const PadicMatrix& hermite() const noexcept { return H_; }
  /// Basis matrix p^{-shift} H (columns).
  PadicMatrix basis() const;

  /// W-length of W^h / L when L is contained in W^h; in general the signed length
  /// sum(e_i) - h * shift, additive along chains.
  int length() const;

  Lattice operator+(const Lattice& o) const;
  Lattice intersect(const Lattice& o) const;
  /// {x : x^T v in W for all v in L}.
  Lattice dual() const;
  /// p^e L.
  Lattice scaled(int e) const;
  /// A sigma^twist(L); A must be invertible.
  Lattice image(const PadicMatrix& A, int twist = 0) const;
  Lattice base_change(const RingEmbedding& emb) const;

  bool contains(const Lattice& o) const;
  /// Every column of v lies in L.
  bool contains_vectors(const PadicMatrix& v) const;

  friend bool operator==(const Lattice& a, const Lattice& b);
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

  std::string to_string() const;

 private:
  RingPtr ring_;
  int h_ = 0;
  int shift_ = 0;
  std::vector<int> pivots_;
  PadicMatrix H_;
};

/// W-length of big / small; ContainmentError unless small is contained in big.
int index_exponent(const Lattice& big, const Lattice& small);

/// Least e >= 0 with p^e * outer contained in inner (inner contained in outer).
int annihilator_exponent(const Lattice& outer, const Lattice& inner);

/// Semilinear map v -> A sigma^twist(v) on column vectors.
struct SemilinearOp {
  PadicMatrix A;
  int twist = 0;

  PadicMatrix apply(const PadicMatrix& v) const { return A * v.frobenius(twist); }
  Lattice apply(const Lattice& L) const { return L.image(A, twist); }
  /// this o inner
  SemilinearOp compose(const SemilinearOp& inner) const;
  SemilinearOp inverse() const;
  /// n-fold composite; negative n uses the inverse.
  SemilinearOp power(int n) const;
  SemilinearOp scaled(int e) const { return {A.scaled(e), twist}; }
  SemilinearOp base_change(const RingEmbedding& emb) const { return {A.base_change(emb), twist}; }
};

}  // namespace dieudonne
