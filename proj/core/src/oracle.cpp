#include "dieudonne/oracle.hpp"

#include <algorithm>

#include "dieudonne/errors.hpp"
#include "dieudonne/minimal.hpp"

namespace dieudonne {

namespace {

// Entries of an integral matrix reduced mod p, as elements of F_{p^m} = W / p.
std::vector<Elem> residues(const PadicMatrix& X) {
  const WittRing& R = *X.ring();
  if (!X.is_integral()) throw InternalError("oracle: operator is not integral on the lattice");
  std::vector<Elem> out(static_cast<size_t>(X.rows() * X.cols()));
  if (X.shift() < 0) return out;
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < X.cols(); ++j) out[static_cast<size_t>(i * X.cols() + j)] = R.reduce(X.at(i, j), 1);
  }
  return out;
}

std::vector<Elem> field_elements(const WittRing& Fq) {
  const int p = Fq.p(), m = Fq.degree();
  std::vector<Elem> all;
  std::vector<int> digit(static_cast<size_t>(m), 0);
  while (true) {
    Elem e{};
    for (int i = 0; i < m; ++i) e.c[i] = static_cast<u128>(digit[static_cast<size_t>(i)]);
    all.push_back(e);
    int i = 0;
    while (i < m && ++digit[static_cast<size_t>(i)] == p) digit[static_cast<size_t>(i++)] = 0;
    if (i == m) break;
  }
  return all;
}

// Row vector lambda * X for an h x h residue matrix.
std::vector<Elem> row_times(const WittRing& Fq, const std::vector<Elem>& lambda, const std::vector<Elem>& X, int h) {
  std::vector<Elem> out(static_cast<size_t>(h), Fq.zero());
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < h; ++i) out[j] = Fq.add(out[j], Fq.mul(lambda[i], X[static_cast<size_t>(i * h + j)]));
  }
  return out;
}

// v lies on the line of lambda, whose entry at `lead` is 1.
bool proportional(const WittRing& Fq, const std::vector<Elem>& v, const std::vector<Elem>& lambda, int lead) {
  for (size_t j = 0; j < v.size(); ++j) {
    if (!(Fq.sub(v[j], Fq.mul(v[lead], lambda[j])) == Fq.zero())) return false;
  }
  return true;
}

// Basis of {lambda : lambda X = 0} for an h x h residue matrix, by row reduction of X^T.
std::vector<std::vector<Elem>> left_kernel(const WittRing& Fq, const std::vector<Elem>& X, int h) {
  std::vector<std::vector<Elem>> rows(static_cast<size_t>(h), std::vector<Elem>(static_cast<size_t>(h)));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) rows[i][j] = X[static_cast<size_t>(j * h + i)];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < h && r < h; ++c) {
    int piv = -1;
    for (int i = r; i < h; ++i) {
      if (!Fq.is_zero(rows[i][c])) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    const Elem inv = Fq.inverse(rows[r][c]);
    for (auto& x : rows[r]) x = Fq.mul(x, inv);
    for (int i = 0; i < h; ++i) {
      if (i == r || Fq.is_zero(rows[i][c])) continue;
      const Elem f = rows[i][c];
      for (int k = 0; k < h; ++k) rows[i][k] = Fq.sub(rows[i][k], Fq.mul(f, rows[r][k]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::vector<Elem>> basis;
  for (int f = 0; f < h; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<Elem> v(static_cast<size_t>(h), Fq.zero());
    v[f] = Fq.one();
    for (size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = Fq.neg(rows[k][f]);
    basis.push_back(v);
  }
  return basis;
}

// Points of P(span(basis)), each scaled so that its first nonzero entry is 1.
void projective_points(const WittRing& Fq, const std::vector<std::vector<Elem>>& basis,
                       const std::vector<Elem>& field, std::vector<std::vector<Elem>>& out) {
  const size_t d = basis.size(), q = field.size();
  if (d == 0) return;
  const size_t h = basis[0].size();
  for (size_t first = 0; first < d; ++first) {
    size_t total = 1;
    for (size_t k = first + 1; k < d; ++k) total *= q;
    for (size_t idx = 0; idx < total; ++idx) {
      std::vector<Elem> v = basis[first];
      size_t rest = idx;
      for (size_t k = first + 1; k < d; ++k) {
        const Elem& a = field[rest % q];
        rest /= q;
        for (size_t j = 0; j < h; ++j) v[j] = Fq.add(v[j], Fq.mul(a, basis[k][j]));
      }
      size_t lead = 0;
      while (Fq.is_zero(v[lead])) ++lead;
      const Elem inv = Fq.inverse(v[lead]);
      for (auto& x : v) x = Fq.mul(x, inv);
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
}

// Stable colength-one sublattices of a Dieudonne lattice. The length-one quotient has
// F = 0 or V = 0, so the functional kills the image of F or of V mod p.
std::vector<Lattice> stable_hyperplanes(const DieudonneModule& M, const WittRing& Fq,
                                        const std::vector<Elem>& field) {
  const RingPtr& ring = M.ring();
  const int h = M.rank();
  const PadicMatrix B = M.basis();
  const PadicMatrix X = M.frobenius_on_basis();
  const PadicMatrix Y = SemilinearOp{X, 1}.inverse().scaled(1).A;
  const std::vector<Elem> Xr = residues(X), Yr = residues(Y);

  std::vector<std::vector<Elem>> candidates;
  projective_points(Fq, left_kernel(Fq, Xr, h), field, candidates);
  projective_points(Fq, left_kernel(Fq, Yr, h), field, candidates);

  std::vector<Lattice> out;
  for (const auto& lambda : candidates) {
    int lead = 0;
    while (Fq.is_zero(lambda[lead])) ++lead;
    // F(B c) = B X sigma(c): need sigma^{-1}(lambda X) on the line of lambda; for V
    // (twist -1) need sigma(lambda Y) there.
    std::vector<Elem> mu = row_times(Fq, lambda, Xr, h), nu = row_times(Fq, lambda, Yr, h);
    for (auto& e : mu) e = Fq.frobenius(e, -1);
    for (auto& e : nu) e = Fq.frobenius(e, 1);
    if (!proportional(Fq, mu, lambda, lead) || !proportional(Fq, nu, lambda, lead)) continue;

    PadicMatrix K(ring, h, h);
    for (int j = 0; j < h; ++j) {
      if (j == lead) {
        K.at(lead, j) = ring->from_int(ring->p());
      } else {
        K.at(j, j) = ring->one();
        // Lift of -lambda_j: coefficients in [0, p) negated.
        K.at(lead, j) = ring->neg(lambda[j]);
      }
    }
    K.normalize();
    out.push_back(Lattice::from_generators(B * K));
  }
  return out;
}

void add_unique(std::vector<Lattice>& all, const Lattice& L) {
  for (const auto& x : all) {
    if (x == L) return;
  }
  all.push_back(L);
}

}  // namespace

std::vector<Lattice> stable_sublattices(const DieudonneModule& M, int max_length) {
  if (max_length < 0) throw ArgumentError("max_length must be nonnegative");
  RingPtr fq = make_witt_ring(M.ring()->p(), M.ring()->degree(), 1);
  const std::vector<Elem> field = field_elements(*fq);
  std::vector<Lattice> all{M.lattice()};
  std::vector<Lattice> layer{M.lattice()};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Lattice> next;
    for (const auto& L : layer) {
      for (const auto& S : stable_hyperplanes(DieudonneModule(M.ambient(), L), *fq, field)) add_unique(next, S);
    }
    for (const auto& S : next) add_unique(all, S);
    layer = std::move(next);
  }
  return all;
}

std::vector<Lattice> stable_overlattices(const DieudonneModule& M, int max_length) {
  std::vector<Lattice> out;
  for (const auto& L : stable_sublattices(dual_module(M), max_length)) out.push_back(L.dual());
  return out;
}

ExhaustiveMinimal exhaustive_minimal_modules(const DieudonneModule& M, int max_length) {
  ExhaustiveMinimal r;
  std::vector<Lattice> subs, overs;
  const auto down = stable_sublattices(M, max_length);
  const auto up = stable_overlattices(M, max_length);
  r.stable_subs = static_cast<int>(down.size());
  r.stable_overs = static_cast<int>(up.size());
  for (const auto& L : down) {
    if (is_minimal(DieudonneModule(M.ambient(), L)).is_minimal) subs.push_back(L);
  }
  for (const auto& L : up) {
    if (is_minimal(DieudonneModule(M.ambient(), L)).is_minimal) overs.push_back(L);
  }
  r.minimal_subs = static_cast<int>(subs.size());
  r.minimal_overs = static_cast<int>(overs.size());
  // Largest sub = least colength; smallest over = least length above M.
  for (const auto& L : subs) {
    if (!r.sub || L.length() < r.sub->length()) r.sub = L;
  }
  for (const auto& L : overs) {
    if (!r.over || L.length() > r.over->length()) r.over = L;
  }
  for (const auto& L : subs) r.sub_dominates = r.sub_dominates && r.sub->contains(L);
  for (const auto& L : overs) r.over_dominates = r.over_dominates && L.contains(*r.over);
  return r;
}

}  // namespace dieudonne
