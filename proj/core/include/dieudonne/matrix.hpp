#pragma once

#include <string>
#include <vector>

#include "dieudonne/witt.hpp"

namespace dieudonne {

/// Digits below the end of a precision window that are never trusted to separate a
/// quantity from zero.
inline constexpr int kGuardDigits = 4;

/// Matrix over B(F_{p^m}) stored as p^{-shift} * X with X integral and known modulo p^prec.
///
/// Every operation keeps X free of a common factor p (unless X is zero) and propagates
/// the precision window, so a result never claims more digits than it has.
class PadicMatrix {
 public:
  PadicMatrix() = default;
  /// Zero matrix known to full precision.
  PadicMatrix(RingPtr ring, int rows, int cols);
  static PadicMatrix identity(RingPtr ring, int n);
  /// Matrix with small integer entries (row-major).
  static PadicMatrix from_ints(RingPtr ring, int rows, int cols, const std::vector<std::int64_t>& v);

  const RingPtr& ring() const noexcept { return ring_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int shift() const noexcept { return shift_; }
  int prec() const noexcept { return prec_; }

  /// Integral part X.
  Elem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Elem& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  WittElement entry(int i, int j) const;

  /// Raw setters for builders; call normalize() afterwards.
  void set_shift(int s) noexcept { shift_ = s; }
  void set_prec(int prec) noexcept { prec_ = prec; }
  /// Removes a common p-power from X, reduces entries modulo p^prec.
  void normalize();

  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix operator+(const PadicMatrix& o) const;
  PadicMatrix operator-(const PadicMatrix& o) const;
  PadicMatrix operator-() const;
  /// p^e times this matrix.
  PadicMatrix scaled(int e) const;
  /// Entrywise product with an integral ring element.
  PadicMatrix times(const Elem& c) const;
  PadicMatrix frobenius(int k) const;
  PadicMatrix transpose() const;
  PadicMatrix block(int r0, int c0, int nr, int nc) const;
  PadicMatrix column(int j) const { return block(0, j, rows_, 1); }
  PadicMatrix select_columns(const std::vector<int>& idx) const;
  static PadicMatrix hcat(const PadicMatrix& a, const PadicMatrix& b);
  static PadicMatrix vcat(const PadicMatrix& a, const PadicMatrix& b);
  static PadicMatrix hcat(const std::vector<PadicMatrix>& parts);
  /// Block-diagonal sum.
  static PadicMatrix diag_sum(const PadicMatrix& a, const PadicMatrix& b);

  /// Minimum valuation of the entries of the value; prec - shift when zero.
  int valuation() const;
  bool is_zero() const;
  bool is_integral() const { return is_zero() || valuation() >= 0; }
  /// Equality of values within the common precision window.
  bool equals(const PadicMatrix& o) const;
  /// Equality with at least `digits` agreeing digits below the integral scale.
  bool equals_mod(const PadicMatrix& o, int digits) const;

  PadicMatrix inverse() const;
  PadicMatrix pow(long long e) const;
  PadicMatrix base_change(const RingEmbedding& emb) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  int rows_ = 0;
  int cols_ = 0;
  int shift_ = 0;
  int prec_ = 0;
  std::vector<Elem> a_;
};

/// U * A * V = diag(p^{e_0}, ..., p^{e_{r-1}}, 0, ...) with U, V invertible over W.
struct SmithForm {
  PadicMatrix U;
  PadicMatrix V;
  /// Exponents of the nonzero diagonal entries of the value, nondecreasing.
  std::vector<int> exponents;
  int rank = 0;
  /// Remaining diagonal entries vanish in the window: their exponent is >= zero_bound.
  int zero_bound = 0;
};

/// Smith normal form by full pivoting. A pivot whose valuation falls inside the guard
/// band (the last `guard` digits of the window) raises PrecisionError naming the pivot.
SmithForm smith_normal_form(const PadicMatrix& A, int guard = 0);

/// Right kernel: columns of V belonging to vanishing diagonal entries (saturated basis).
PadicMatrix kernel(const PadicMatrix& A, int guard = kGuardDigits);

/// Left inverse of a matrix of full column rank.
PadicMatrix left_inverse(const PadicMatrix& A);

/// Characteristic polynomial det(x I - X) of the integral part X of a square matrix,
/// coefficients low degree first (n + 1 entries, monic). Division free.
std::vector<Elem> charpoly_integral(const PadicMatrix& A);

/// Z_p-linear flattening of matrices over W(F_{p^L}) through the power basis 1, t, ..., t^{L-1}.
/// An r x c matrix becomes an (rL) x (cL) matrix over the Z_p ring `zp`.
PadicMatrix flatten_linear(const PadicMatrix& A, const RingPtr& zp);
/// Matrix of sigma^k on W(F_{p^L}) in the power basis, applied blockwise to vectors of length n.
PadicMatrix frobenius_matrix(const RingPtr& ring, int k, int n, const RingPtr& zp);
/// Column vector over Z_p listing the coefficients of every entry (row-major, then power basis).
PadicMatrix vectorize(const PadicMatrix& A, const RingPtr& zp);
/// Inverse of vectorize: an (r c L) x 1 column over Z_p becomes an r x c matrix over `ring`.
PadicMatrix unvectorize(const PadicMatrix& v, const RingPtr& ring, int rows, int cols);
/// Columns over Z_p of length nL read as length-n vectors over W(F_{p^L}).
PadicMatrix unflatten_columns(const PadicMatrix& v, const RingPtr& ring);
/// Inverse of unflatten_columns.
PadicMatrix flatten_columns(const PadicMatrix& v, const RingPtr& zp);

/// Sum of elementary-divisor exponents of C = L1^{-1} L2 (square, full rank bases).
/// Throws ContainmentError when C is not integral and RankError when a basis is singular.
enum class IndexKind { WLength, ZpIndex };
int lattice_index_exponent(const PadicMatrix& L1, const PadicMatrix& L2, IndexKind kind = IndexKind::WLength);

}  // namespace dieudonne
