#include "dieudonne/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "dieudonne/errors.hpp"

namespace dieudonne {

Lattice Lattice::standard(RingPtr ring, int h) {
  Lattice L;
  L.ring_ = ring;
  L.h_ = h;
  L.pivots_.assign(static_cast<size_t>(h), 0);
  L.H_ = PadicMatrix::identity(ring, h);
  return L;
}

Lattice Lattice::from_generators(const PadicMatrix& gens, int guard) {
  const RingPtr& ring = gens.ring();
  const WittRing& R = *ring;
  const int h = gens.rows(), k = gens.cols();
  const int P = gens.prec();
  if (h == 0) throw RankError("lattice of rank 0");
  if (k < h) throw RankError("fewer generators than the rank");

  // Column-major working copy.
  std::vector<std::vector<Elem>> col(static_cast<size_t>(k), std::vector<Elem>(static_cast<size_t>(h)));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < h; ++i) col[j][i] = gens.at(i, j);
  }
  auto val = [&](const Elem& e) { return std::min(R.valuation(e), P); };

  std::vector<int> e(static_cast<size_t>(h));
  for (int i = 0; i < h; ++i) {
    int best = P, bj = -1;
    for (int j = i; j < k; ++j) {
      int v = val(col[j][i]);
      if (v < best) {
        best = v;
        bj = j;
        if (v == 0) break;
      }
    }
    if (bj < 0) throw RankError("generators do not span a full-rank lattice at working precision");
    std::swap(col[i], col[bj]);
    Elem uinv = R.inverse(R.div_pow(col[i][i], best));
    for (int r = i + 1; r < h; ++r) col[i][r] = R.mul(col[i][r], uinv);
    for (int r = 0; r < i; ++r) col[i][r] = R.zero();
    col[i][i] = R.mul_pow(R.one(), best);
    for (int j = i + 1; j < k; ++j) {
      if (val(col[j][i]) >= P) {
        col[j][i] = R.zero();
        continue;
      }
      Elem q = R.div_pow(col[j][i], best);
      col[j][i] = R.zero();
      for (int r = i + 1; r < h; ++r) col[j][r] = R.sub(col[j][r], R.mul(q, col[i][r]));
    }
    e[i] = best;
  }
  const int total = std::accumulate(e.begin(), e.end(), 0);
  if (total > P - guard - 1) {
    throw PrecisionError("lattice of index p^" + std::to_string(total) + " cannot be pinned down by generators known mod p^" +
                         std::to_string(P));
  }
  // Reduce entries left of each pivot.
  for (int i = 1; i < h; ++i) {
    for (int j = 0; j < i; ++j) {
      Elem x = R.reduce(col[j][i], P);
      Elem r = R.reduce(x, e[i]);
      if (r == x) {
        col[j][i] = x;
        continue;
      }
      Elem q = R.div_pow(R.sub(x, r), e[i]);
      col[j][i] = r;
      for (int rr = i + 1; rr < h; ++rr) col[j][rr] = R.sub(col[j][rr], R.mul(q, col[i][rr]));
    }
  }
  // Remove the common p-power.
  int content = P;
  for (int j = 0; j < h; ++j) {
    for (int i = j; i < h; ++i) content = std::min(content, R.valuation(R.reduce(col[j][i], P)));
  }
  Lattice L;
  L.ring_ = ring;
  L.h_ = h;
  L.shift_ = gens.shift() - content;
  L.pivots_.resize(static_cast<size_t>(h));
  L.H_ = PadicMatrix(ring, h, h);
  for (int j = 0; j < h; ++j) {
    for (int i = j; i < h; ++i) {
      Elem x = R.reduce(col[j][i], e[i]);
      if (i == j) x = R.mul_pow(R.one(), e[i]);
      L.H_.at(i, j) = R.div_pow(x, content);
    }
  }
  for (int i = 0; i < h; ++i) L.pivots_[i] = e[i] - content;
  return L;
}

Lattice Lattice::from_integrality(const PadicMatrix& D) {
  const int c = D.cols();
  SmithForm s = smith_normal_form(D);
  if (s.rank < c) throw RankError("integrality conditions do not bound every coordinate");
  int dmax = *std::max_element(s.exponents.begin(), s.exponents.end());
  const WittRing& R = *D.ring();
  // Generators V diag(p^{-d_k}) = p^{-dmax} V diag(p^{dmax - d_k}).
  PadicMatrix G = s.V;
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < c; ++i) G.at(i, j) = R.mul_pow(G.at(i, j), dmax - s.exponents[j]);
  }
  G.set_shift(dmax);
  G.normalize();
  return from_generators(G);
}

PadicMatrix Lattice::basis() const {
  PadicMatrix b = H_;
  b.set_shift(shift_);
  return b;
}

int Lattice::length() const { return std::accumulate(pivots_.begin(), pivots_.end(), 0) - h_ * shift_; }

Lattice Lattice::operator+(const Lattice& o) const {
  if (ring_ != o.ring_ || h_ != o.h_) throw ArgumentError("sum of lattices in different spaces");
  return from_generators(PadicMatrix::hcat(basis(), o.basis()));
}

Lattice Lattice::dual() const { return from_integrality(basis().transpose()); }

Lattice Lattice::intersect(const Lattice& o) const {
  if (ring_ != o.ring_ || h_ != o.h_) throw ArgumentError("intersection of lattices in different spaces");
  return (dual() + o.dual()).dual();
}

Lattice Lattice::scaled(int e) const {
  Lattice L = *this;
  L.shift_ -= e;
  return L;
}

Lattice Lattice::image(const PadicMatrix& A, int twist) const {
  return from_generators(A * basis().frobenius(twist));
}

Lattice Lattice::base_change(const RingEmbedding& emb) const {
  return from_generators(basis().base_change(emb));
}

bool Lattice::contains(const Lattice& o) const { return (*this + o) == *this; }

bool Lattice::contains_vectors(const PadicMatrix& v) const {
  if (v.cols() == 0) return true;
  return from_generators(PadicMatrix::hcat(basis(), v)) == *this;
}

bool operator==(const Lattice& a, const Lattice& b) {
  if (a.ring_ != b.ring_ || a.h_ != b.h_ || a.shift_ != b.shift_ || a.pivots_ != b.pivots_) return false;
  for (int i = 0; i < a.h_; ++i) {
    for (int j = 0; j < i; ++j) {
      if (!(a.H_.at(i, j) == b.H_.at(i, j))) return false;
    }
  }
  return true;
}

std::string Lattice::to_string() const { return basis().to_string(); }

int index_exponent(const Lattice& big, const Lattice& small) {
  if (!big.contains(small)) throw ContainmentError("lattice is not contained in the reference lattice");
  return small.length() - big.length();
}

int annihilator_exponent(const Lattice& outer, const Lattice& inner) {
  PadicMatrix C = inner.basis().inverse() * outer.basis();
  if (C.is_zero()) return 0;
  return std::max(0, -C.valuation());
}

SemilinearOp SemilinearOp::compose(const SemilinearOp& inner) const {
  return {A * inner.A.frobenius(twist), twist + inner.twist};
}

SemilinearOp SemilinearOp::inverse() const { return {A.inverse().frobenius(-twist), -twist}; }

SemilinearOp SemilinearOp::power(int n) const {
  if (n < 0) return inverse().power(-n);
  SemilinearOp r{PadicMatrix::identity(A.ring(), A.rows()), 0};
  for (int i = 0; i < n; ++i) r = compose(r);
  return r;
}

}  // namespace dieudonne
