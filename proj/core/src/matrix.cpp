#include "dieudonne/matrix.hpp"

#include <algorithm>
#include <utility>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

void check_same_ring(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.ring() != b.ring()) throw ArgumentError("matrices over different rings");
}

int min_valuation(const WittRing& R, const std::vector<Elem>& v, int cap) {
  int best = cap;
  for (const Elem& e : v) {
    best = std::min(best, R.valuation(e));
    if (best == 0) break;
  }
  return best;
}

}  // namespace

PadicMatrix::PadicMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), prec_(ring_->precision()),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

PadicMatrix PadicMatrix::identity(RingPtr ring, int n) {
  PadicMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

PadicMatrix PadicMatrix::from_ints(RingPtr ring, int rows, int cols, const std::vector<std::int64_t>& v) {
  if (static_cast<int>(v.size()) != rows * cols) throw ArgumentError("from_ints: size mismatch");
  PadicMatrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = ring->from_int(v[static_cast<size_t>(i * cols + j)]);
  }
  m.normalize();
  return m;
}

WittElement PadicMatrix::entry(int i, int j) const {
  WittElement e(ring_, ring_->reduce(at(i, j), prec_), shift_);
  return e;
}

void PadicMatrix::normalize() {
  if (prec_ < 1) throw PrecisionError("precision window exhausted");
  const WittRing& R = *ring_;
  if (prec_ > R.precision()) prec_ = R.precision();
  for (Elem& e : a_) e = R.reduce(e, prec_);
  int v = min_valuation(R, a_, prec_);
  if (v == 0 || v >= prec_) return;
  for (Elem& e : a_) e = R.div_pow(e, v);
  prec_ -= v;
  shift_ -= v;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  check_same_ring(*this, o);
  if (cols_ != o.rows_) throw ArgumentError("matrix product: dimension mismatch");
  const WittRing& R = *ring_;
  PadicMatrix r(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Elem& x = at(i, k);
      if (R.is_zero(x)) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Elem& y = o.at(k, j);
        if (R.is_zero(y)) continue;
        r.at(i, j) = R.fma(r.at(i, j), x, y);
      }
    }
  }
  int v1 = min_valuation(R, a_, prec_);
  int v2 = min_valuation(R, o.a_, o.prec_);
  r.shift_ = shift_ + o.shift_;
  r.prec_ = std::min({R.precision(), prec_ + v2, o.prec_ + v1});
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
  check_same_ring(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix sum: dimension mismatch");
  const WittRing& R = *ring_;
  int s = std::max(shift_, o.shift_);
  int d1 = s - shift_, d2 = s - o.shift_;
  PadicMatrix r(ring_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = R.add(R.mul_pow(a_[k], d1), R.mul_pow(o.a_[k], d2));
  r.shift_ = s;
  r.prec_ = std::min({R.precision(), prec_ + d1, o.prec_ + d2});
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::operator-() const {
  PadicMatrix r = *this;
  for (Elem& e : r.a_) e = ring_->neg(e);
  return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const { return *this + (-o); }

PadicMatrix PadicMatrix::scaled(int e) const {
  PadicMatrix r = *this;
  r.shift_ -= e;
  return r;
}

PadicMatrix PadicMatrix::times(const Elem& c) const {
  const WittRing& R = *ring_;
  PadicMatrix r = *this;
  for (Elem& e : r.a_) e = R.mul(e, c);
  r.prec_ = std::min(R.precision(), prec_ + R.valuation(c));
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::frobenius(int k) const {
  PadicMatrix r = *this;
  for (Elem& e : r.a_) e = ring_->frobenius(e, k);
  return r;
}

PadicMatrix PadicMatrix::transpose() const {
  PadicMatrix r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  }
  r.shift_ = shift_;
  r.prec_ = prec_;
  return r;
}

PadicMatrix PadicMatrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw ArgumentError("block out of range");
  PadicMatrix r(ring_, nr, nc);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  }
  r.shift_ = shift_;
  r.prec_ = prec_;
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::select_columns(const std::vector<int>& idx) const {
  PadicMatrix r(ring_, rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
  }
  r.shift_ = shift_;
  r.prec_ = prec_;
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::hcat(const std::vector<PadicMatrix>& parts) {
  if (parts.empty()) throw ArgumentError("hcat of nothing");
  const RingPtr& ring = parts[0].ring_;
  const WittRing& R = *ring;
  int rows = parts[0].rows_, cols = 0, s = parts[0].shift_;
  for (const auto& m : parts) {
    check_same_ring(parts[0], m);
    if (m.rows_ != rows) throw ArgumentError("hcat: row mismatch");
    cols += m.cols_;
    s = std::max(s, m.shift_);
  }
  PadicMatrix r(ring, rows, cols);
  int prec = R.precision();
  int off = 0;
  for (const auto& m : parts) {
    int d = s - m.shift_;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < m.cols_; ++j) r.at(i, off + j) = R.mul_pow(m.at(i, j), d);
    }
    prec = std::min(prec, m.prec_ + d);
    off += m.cols_;
  }
  r.shift_ = s;
  r.prec_ = prec;
  r.normalize();
  return r;
}

PadicMatrix PadicMatrix::hcat(const PadicMatrix& a, const PadicMatrix& b) { return hcat(std::vector<PadicMatrix>{a, b}); }

PadicMatrix PadicMatrix::vcat(const PadicMatrix& a, const PadicMatrix& b) {
  return hcat(a.transpose(), b.transpose()).transpose();
}

PadicMatrix PadicMatrix::diag_sum(const PadicMatrix& a, const PadicMatrix& b) {
  check_same_ring(a, b);
  PadicMatrix top = hcat(a, PadicMatrix(a.ring_, a.rows_, b.cols_));
  PadicMatrix bottom = hcat(PadicMatrix(a.ring_, b.rows_, a.cols_), b);
  return vcat(top, bottom);
}

int PadicMatrix::valuation() const {
  int v = min_valuation(*ring_, a_, prec_);
  return v - shift_;
}

bool PadicMatrix::is_zero() const { return min_valuation(*ring_, a_, prec_) >= prec_; }

bool PadicMatrix::equals(const PadicMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return (*this - o).is_zero();
}

bool PadicMatrix::equals_mod(const PadicMatrix& o, int digits) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  PadicMatrix d = *this - o;
  return d.is_zero() || d.valuation() >= digits;
}

PadicMatrix PadicMatrix::inverse() const {
  if (rows_ != cols_) throw ArgumentError("inverse of a non-square matrix");
  return left_inverse(*this);
}

PadicMatrix PadicMatrix::pow(long long e) const {
  if (rows_ != cols_) throw ArgumentError("power of a non-square matrix");
  if (e < 0) return inverse().pow(-e);
  PadicMatrix result = identity(ring_, rows_);
  PadicMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

PadicMatrix PadicMatrix::base_change(const RingEmbedding& emb) const {
  if (emb.source() != ring_) throw ArgumentError("base change from the wrong ring");
  PadicMatrix r(emb.target(), rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = emb(a_[k]);
  r.shift_ = shift_;
  r.prec_ = prec_;
  return r;
}

std::string PadicMatrix::to_string() const {
  std::string s = "p^" + std::to_string(-shift_) + " * [";
  for (int i = 0; i < rows_; ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < cols_; ++j) s += (j ? " " : "") + ring_->to_string(ring_->reduce(at(i, j), prec_));
  }
  return s + "] (mod p^" + std::to_string(prec_) + ")";
}

SmithForm smith_normal_form(const PadicMatrix& A, int guard) {
  const WittRing& R = *A.ring();
  const int r = A.rows(), c = A.cols(), P = A.prec();
  std::vector<Elem> X(static_cast<size_t>(r) * c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) X[static_cast<size_t>(i) * c + j] = A.at(i, j);
  }
  PadicMatrix U = PadicMatrix::identity(A.ring(), r);
  PadicMatrix V = PadicMatrix::identity(A.ring(), c);
  auto x = [&](int i, int j) -> Elem& { return X[static_cast<size_t>(i) * c + j]; };
  auto val = [&](const Elem& e) { return std::min(R.valuation(e), P); };

  SmithForm out;
  int vmax = 0;
  int k = 0;
  for (; k < std::min(r, c); ++k) {
    int best = P, bi = -1, bj = -1;
    for (int i = k; i < r && best > 0; ++i) {
      for (int j = k; j < c; ++j) {
        int v = val(x(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (best == 0) break;
        }
      }
    }
    if (best >= P) break;
    if (best >= P - guard) {
      throw PrecisionError("smith normal form: pivot " + std::to_string(k) + " has valuation " +
                           std::to_string(best) + " inside the guard band of a " + std::to_string(P) +
                           "-digit window");
    }
    if (bi != k) {
      for (int j = 0; j < c; ++j) std::swap(x(k, j), x(bi, j));
      for (int j = 0; j < r; ++j) std::swap(U.at(k, j), U.at(bi, j));
    }
    if (bj != k) {
      for (int i = 0; i < r; ++i) std::swap(x(i, k), x(i, bj));
      for (int i = 0; i < c; ++i) std::swap(V.at(i, k), V.at(i, bj));
    }
    Elem uinv = R.inverse(R.div_pow(x(k, k), best));
    for (int j = k + 1; j < c; ++j) x(k, j) = R.mul(x(k, j), uinv);
    for (int j = 0; j < r; ++j) U.at(k, j) = R.mul(U.at(k, j), uinv);
    x(k, k) = R.mul_pow(R.one(), best);
    for (int i = k + 1; i < r; ++i) {
      if (val(x(i, k)) >= P) continue;
      Elem q = R.div_pow(x(i, k), best);
      x(i, k) = R.zero();
      for (int j = k + 1; j < c; ++j) x(i, j) = R.sub(x(i, j), R.mul(q, x(k, j)));
      for (int j = 0; j < r; ++j) U.at(i, j) = R.sub(U.at(i, j), R.mul(q, U.at(k, j)));
    }
    for (int j = k + 1; j < c; ++j) {
      if (val(x(k, j)) >= P) continue;
      Elem q = R.div_pow(x(k, j), best);
      x(k, j) = R.zero();
      for (int i = 0; i < c; ++i) V.at(i, j) = R.sub(V.at(i, j), R.mul(q, V.at(i, k)));
    }
    out.exponents.push_back(best - A.shift());
    vmax = std::max(vmax, best);
  }
  out.rank = k;
  out.zero_bound = P - A.shift();
  U.set_prec(P - vmax);
  V.set_prec(P - vmax);
  U.normalize();
  V.normalize();
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

PadicMatrix kernel(const PadicMatrix& A, int guard) {
  SmithForm s = smith_normal_form(A, guard);
  std::vector<int> idx;
  for (int j = s.rank; j < A.cols(); ++j) idx.push_back(j);
  if (idx.empty()) return PadicMatrix(A.ring(), A.cols(), 0);
  return s.V.select_columns(idx);
}

PadicMatrix left_inverse(const PadicMatrix& A) {
  SmithForm s = smith_normal_form(A);
  const int c = A.cols();
  if (s.rank < c) throw RankError("matrix does not have full column rank at working precision");
  int emax = 0;
  for (int e : s.exponents) emax = std::max(emax, e + A.shift());
  // X^+ = V diag(p^{-e_k}) U_top = p^{-emax} V diag(p^{emax - e_k}) U_top.
  PadicMatrix Ut = s.U.block(0, 0, c, A.rows());
  const WittRing& R = *A.ring();
  PadicMatrix D(A.ring(), c, c);
  for (int k = 0; k < c; ++k) D.at(k, k) = R.mul_pow(R.one(), emax - (s.exponents[k] + A.shift()));
  PadicMatrix out = s.V * D * Ut;
  out.set_shift(out.shift() + emax - A.shift());
  out.normalize();
  return out;
}

std::vector<Elem> charpoly_integral(const PadicMatrix& A) {
  const int n = A.rows();
  if (A.cols() != n) throw ArgumentError("characteristic polynomial of a non-square matrix");
  const WittRing& R = *A.ring();
  if (n == 0) return {R.one()};
  // Berkowitz: coefficients in descending degree order.
  std::vector<Elem> C{R.one(), R.neg(A.at(0, 0))};
  for (int r = 1; r < n; ++r) {
    std::vector<Elem> t(static_cast<size_t>(r) + 2);
    t[0] = R.one();
    t[1] = R.neg(A.at(r, r));
    // w = Asub^k S, starting with S = A[0..r)[r].
    std::vector<Elem> w(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) w[i] = A.at(i, r);
    for (int k = 0; k < r; ++k) {
      Elem dot = R.zero();
      for (int i = 0; i < r; ++i) dot = R.fma(dot, A.at(r, i), w[i]);
      t[k + 2] = R.neg(dot);
      std::vector<Elem> nw(static_cast<size_t>(r));
      for (int i = 0; i < r; ++i) {
        Elem acc = R.zero();
        for (int j = 0; j < r; ++j) acc = R.fma(acc, A.at(i, j), w[j]);
        nw[i] = acc;
      }
      w = std::move(nw);
    }
    std::vector<Elem> next(static_cast<size_t>(r) + 2);
    for (int i = 0; i < r + 2; ++i) {
      Elem acc = R.zero();
      for (int j = 0; j <= std::min(i, r); ++j) acc = R.fma(acc, t[i - j], C[j]);
      next[i] = acc;
    }
    C = std::move(next);
  }
  std::reverse(C.begin(), C.end());
  return C;
}

PadicMatrix flatten_linear(const PadicMatrix& A, const RingPtr& zp) {
  const WittRing& R = *A.ring();
  const int L = R.degree();
  std::vector<Elem> tpow(static_cast<size_t>(L));
  tpow[0] = R.one();
  for (int l = 1; l < L; ++l) tpow[l] = R.mul(tpow[l - 1], R.generator());
  PadicMatrix out(zp, A.rows() * L, A.cols() * L);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      const Elem& a = A.at(i, j);
      if (R.is_zero(a)) continue;
      for (int l = 0; l < L; ++l) {
        Elem col = L == 1 ? a : R.mul(a, tpow[l]);
        for (int q = 0; q < L; ++q) out.at(i * L + q, j * L + l) = zp->scalar(col.c[q]);
      }
    }
  }
  out.set_shift(A.shift());
  out.set_prec(A.prec());
  out.normalize();
  return out;
}

PadicMatrix frobenius_matrix(const RingPtr& ring, int k, int n, const RingPtr& zp) {
  const WittRing& R = *ring;
  const int L = R.degree();
  PadicMatrix out(zp, n * L, n * L);
  for (int l = 0; l < L; ++l) {
    Elem e;
    e.c[l] = 1;
    Elem img = R.frobenius(e, k);
    for (int b = 0; b < n; ++b) {
      for (int q = 0; q < L; ++q) out.at(b * L + q, b * L + l) = zp->scalar(img.c[q]);
    }
  }
  return out;
}

PadicMatrix vectorize(const PadicMatrix& A, const RingPtr& zp) {
  const int L = A.ring()->degree();
  PadicMatrix out(zp, A.rows() * A.cols() * L, 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      for (int l = 0; l < L; ++l) out.at((i * A.cols() + j) * L + l, 0) = zp->scalar(A.at(i, j).c[l]);
    }
  }
  out.set_shift(A.shift());
  out.set_prec(A.prec());
  out.normalize();
  return out;
}

PadicMatrix unvectorize(const PadicMatrix& v, const RingPtr& ring, int rows, int cols) {
  const int L = ring->degree();
  if (v.rows() != rows * cols * L || v.cols() != 1) throw ArgumentError("unvectorize: size mismatch");
  PadicMatrix out(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int l = 0; l < L; ++l) out.at(i, j).c[l] = v.at((i * cols + j) * L + l, 0).c[0];
    }
  }
  out.set_shift(v.shift());
  out.set_prec(v.prec());
  out.normalize();
  return out;
}

PadicMatrix unflatten_columns(const PadicMatrix& v, const RingPtr& ring) {
  const int L = ring->degree();
  if (v.rows() % L != 0) throw ArgumentError("unflatten_columns: size mismatch");
  const int n = v.rows() / L;
  PadicMatrix out(ring, n, v.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < v.cols(); ++j) {
      for (int l = 0; l < L; ++l) out.at(i, j).c[l] = v.at(i * L + l, j).c[0];
    }
  }
  out.set_shift(v.shift());
  out.set_prec(v.prec());
  out.normalize();
  return out;
}

PadicMatrix flatten_columns(const PadicMatrix& v, const RingPtr& zp) {
  const int L = v.ring()->degree();
  PadicMatrix out(zp, v.rows() * L, v.cols());
  for (int i = 0; i < v.rows(); ++i) {
    for (int j = 0; j < v.cols(); ++j) {
      for (int l = 0; l < L; ++l) out.at(i * L + l, j) = zp->scalar(v.at(i, j).c[l]);
    }
  }
  out.set_shift(v.shift());
  out.set_prec(v.prec());
  out.normalize();
  return out;
}

int lattice_index_exponent(const PadicMatrix& L1, const PadicMatrix& L2, IndexKind kind) {
  if (L1.rows() != L1.cols() || L2.rows() != L2.cols() || L1.rows() != L2.rows()) {
    throw ArgumentError("lattice bases must be square of equal size");
  }
  PadicMatrix C = left_inverse(L1) * L2;
  SmithForm s = smith_normal_form(C);
  if (s.rank < C.cols()) throw RankError("sublattice basis is rank deficient");
  int total = 0;
  for (int e : s.exponents) {
    if (e < 0) throw ContainmentError("second lattice is not contained in the first");
    total += e;
  }
  return kind == IndexKind::ZpIndex ? total * L1.ring()->degree() : total;
}

}  // namespace dieudonne
