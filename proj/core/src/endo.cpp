#include "dieudonne/endo.hpp"

#include <numeric>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

// Least L (multiple of the base degree) over which every component has a skeleton.
int common_skeleton_degree(const IsotypicDecomposition& dec, int base_degree, int max_degree) {
  int L = base_degree;
  for (const auto& c : dec.components) L = std::lcm(L, skeleton(c, max_degree).field_degree);
  if (L > max_degree) throw ExtensionError("skeletons of all components need F_{p^" + std::to_string(L) + "}", L);
  return L;
}

int inverse_mod(int b, int n) {
  if (n == 1) return 0;
  for (int mu = 1; mu < n; ++mu) {
    if ((mu * b) % n == 1) return mu;
  }
  throw InternalError("slope numerator not invertible modulo n");
}

PadicMatrix select_rows(const PadicMatrix& A, const std::vector<int>& rows) {
  return A.transpose().select_columns(rows).transpose();
}

// Number of unit elementary divisors: the rank of the reduction mod p.
int rank_mod_p(const PadicMatrix& A) {
  if (A.cols() == 0 || A.is_zero()) return 0;
  SmithForm s = smith_normal_form(A);
  int r = 0;
  for (int e : s.exponents) r += e == 0 ? 1 : 0;
  return r;
}

int residue_mod_p(const PadicMatrix& y, int k) {
  const WittRing& R = *y.ring();
  const int s = y.shift();
  Elem e = s >= 0 ? R.div_pow(y.at(k, 0), s) : R.mul_pow(y.at(k, 0), -s);
  return static_cast<int>(e.c[0] % static_cast<u128>(R.p()));
}

PadicMatrix vectorize_all(const std::vector<PadicMatrix>& ops, const RingPtr& zp) {
  std::vector<PadicMatrix> cols;
  cols.reserve(ops.size());
  for (const auto& X : ops) cols.push_back(vectorize(X, zp));
  return PadicMatrix::hcat(cols);
}

std::vector<PadicMatrix> unvectorize_all(const PadicMatrix& V, const RingPtr& ring, int h) {
  std::vector<PadicMatrix> ops;
  ops.reserve(V.cols());
  for (int j = 0; j < V.cols(); ++j) ops.push_back(unvectorize(V.column(j), ring, h, h));
  return ops;
}

// Coordinates y with V y = v; RankError when v is outside the span.
PadicMatrix solve_in_span(const PadicMatrix& V, const PadicMatrix& v) {
  PadicMatrix y = left_inverse(V) * v;
  if (!(V * y).equals(v)) throw RankError("operator is not in the span of the order basis");
  return y;
}

}  // namespace

int AlgebraStructure::dimension() const noexcept {
  int d = 0;
  for (const auto& f : factors) d += f.r * f.r * f.n * f.n;
  return d;
}

std::string AlgebraStructure::to_string() const {
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (i) s += " x ";
    s += "M_" + std::to_string(f.r) + "(";
    s += f.n == 1 ? std::string("Q_p") : "D[" + std::to_string(f.b) + "/" + std::to_string(f.n) + "]";
    s += ")";
  }
  return s;
}

AlgebraStructure endomorphism_algebra(const NewtonPolygon& beta) {
  AlgebraStructure s;
  for (const auto& part : beta.parts) s.factors.push_back({part.r, part.a + part.b, part.b});
  return s;
}

AlgebraStructure endomorphism_algebra(const DieudonneModule& M) { return endomorphism_algebra(newton_polygon(M)); }

PadicMatrix standard_block_matrix(const RingPtr& ring, int a, int b, int r) {
  return standard_module(a, b, r, ring).ambient()->frobenius_matrix();
}

PadicMatrix standard_basis(const Skeleton& sk, const Lattice& L) {
  const IsotypicComponent& c = sk.component;
  const int d = c.rank, n = sk.slope.n(), r = c.multiplicity;
  PadicMatrix cand = sk.realize(sk.coordinates_of(L).basis());
  PadicMatrix Lb = L.basis();
  PadicMatrix Lbinv = Lb.inverse();
  SmithForm q = smith_normal_form(Lbinv * c.pi0().apply(L).basis());
  // L / Pi_0 L is killed by p; its coordinates are the rows with exponent 1.
  std::vector<int> rows;
  for (int k = 0; k < d; ++k) {
    int e = k < static_cast<int>(q.exponents.size()) ? q.exponents[k] : q.zero_bound;
    if (e > 1) throw InternalError("Pi_0 L does not contain p L on a minimal component");
    if (e == 1) rows.push_back(k);
  }
  if (static_cast<int>(rows.size()) != r) throw InternalError("L / Pi_0 L has the wrong dimension");
  PadicMatrix to_quotient = select_rows(q.U * Lbinv, rows);

  std::vector<PadicMatrix> chosen;
  PadicMatrix images;
  for (int j = 0; j < cand.cols() && static_cast<int>(chosen.size()) < r; ++j) {
    PadicMatrix img = to_quotient * cand.column(j);
    PadicMatrix trial = chosen.empty() ? img : PadicMatrix::hcat(images, img);
    if (rank_mod_p(trial) > static_cast<int>(chosen.size())) {
      chosen.push_back(cand.column(j));
      images = std::move(trial);
    }
  }
  if (static_cast<int>(chosen.size()) != r) throw InternalError("skeleton does not span L / Pi_0 L");

  std::vector<PadicMatrix> cols;
  for (const auto& f : chosen) {
    PadicMatrix v = f;
    for (int j = 0; j < n; ++j) {
      cols.push_back(v);
      v = pi0_apply(c, v);
    }
  }
  PadicMatrix S = PadicMatrix::hcat(cols);
  if (Lattice::from_generators(S) != L) throw InternalError("standard basis does not span the component lattice");
  PadicMatrix T = S.inverse() * c.F.A * S.frobenius(1);
  if (!T.equals(standard_block_matrix(sk.ring, sk.slope.a, sk.slope.b, r))) {
    throw InternalError("F is not standard on the chosen basis");
  }
  return S;
}

PadicMatrix MaximalOrder::vectorized() const { return vectorize_all(basis, zp); }

MaximalOrder maximal_order_basis(const DieudonneModule& M, int max_degree) {
  if (!is_minimal(M).is_minimal) throw ArgumentError("maximal order basis needs a minimal module");
  IsotypicDecomposition dec = isotypic_decomposition(M);
  const RingPtr& base = M.ring();
  const int p = base->p(), prec = base->precision();
  const int L = common_skeleton_degree(dec, base->degree(), max_degree);
  RingPtr ring = make_witt_ring(p, L, prec);
  RingEmbedding emb(base, ring);
  DieudonneModule ML = M.base_change(emb);
  IsotypicDecomposition decL = dec.base_change(emb);
  MaximalOrder R{ring, make_witt_ring(p, 1, prec), ML, endomorphism_algebra(dec.polygon), {}, {}};
  const WittRing& W = *ring;

  for (size_t ci = 0; ci < decL.components.size(); ++ci) {
    const IsotypicComponent& c = decL.components[ci];
    Skeleton sk = skeleton(c, max_degree);
    if (sk.field_degree != L) throw InternalError("skeleton field changed after base change");
    PadicMatrix S = standard_basis(sk, c.restrict(ML.lattice()));
    PadicMatrix Sinv = S.inverse();
    const int n = c.slope.n(), r = c.multiplicity, d = c.rank;
    const int mu = inverse_mod(c.slope.b % n, n);
    RingPtr wn = make_witt_ring(p, n, prec);
    const Elem g = RingEmbedding(wn, ring)(wn->generator());
    Elem ct = W.one();
    for (int t = 0; t < n; ++t, ct = W.mul(ct, g)) {
      for (int s = 0; s < n; ++s) {
        // phi_c Pi^s on one block: e_j -> c_{j+s} e_{j+s}, indices mod n with a factor p on wrap.
        PadicMatrix Y(ring, n, n);
        for (int j = 0; j < n; ++j) {
          const int k = (j + s) % n;
          Elem v = W.frobenius(ct, mu * k);
          if (j + s >= n) v = W.mul_pow(v, 1);
          Y.at(k, j) = v;
        }
        for (int i = 0; i < r; ++i) {
          for (int k = 0; k < r; ++k) {
            PadicMatrix X(ring, d, d);
            for (int u = 0; u < n; ++u) {
              for (int v = 0; v < n; ++v) X.at(i * n + u, k * n + v) = Y.at(u, v);
            }
            X.normalize();
            R.basis.push_back(c.embed * (S * X * Sinv) * c.coords);
            R.labels.push_back({static_cast<int>(ci), i, k, t, s});
          }
        }
      }
    }
  }
  return R;
}

std::vector<PadicMatrix> EndoOrder::basis() const {
  return unvectorize_all(maximal.vectorized() * coords, maximal.ring, maximal.module.rank());
}

PadicMatrix EndoOrder::coordinates_of(const PadicMatrix& op) const {
  return solve_in_span(maximal.vectorized(), vectorize(op, maximal.zp));
}

std::vector<std::vector<std::vector<int>>> EndoOrder::multiplication_table_mod_p() const {
  std::vector<PadicMatrix> ops = basis();
  const int D = static_cast<int>(ops.size());
  PadicMatrix V = vectorize_all(ops, maximal.zp);
  PadicMatrix Vinv = left_inverse(V);
  std::vector<std::vector<std::vector<int>>> table(D, std::vector<std::vector<int>>(D, std::vector<int>(D)));
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      PadicMatrix v = vectorize(ops[i] * ops[j], maximal.zp);
      PadicMatrix y = Vinv * v;
      if (!(V * y).equals(v) || !y.is_integral()) throw InternalError("order is not closed under multiplication");
      for (int k = 0; k < D; ++k) table[i][j][k] = residue_mod_p(y, k);
    }
  }
  return table;
}

EndoOrder endomorphism_ring(const DieudonneModule& M, int max_degree) {
  DieudonneModule over = minimal_overmodule(M);
  MaximalOrder R = maximal_order_basis(over, max_degree);
  RingEmbedding emb(M.ring(), R.ring);
  PadicMatrix B = M.lattice().base_change(emb).basis();
  PadicMatrix Binv = B.inverse();
  const int D = static_cast<int>(R.basis.size());
  std::vector<PadicMatrix> conds;
  conds.reserve(D);
  for (const auto& X : R.basis) conds.push_back(Binv * X * B);
  // x in Z_p^D with sum x_i X_i integral on the basis of M.
  PadicMatrix stacked = PadicMatrix::vcat(PadicMatrix::identity(R.zp, D), vectorize_all(conds, R.zp));
  Lattice O = Lattice::from_integrality(stacked);
  EndoOrder E{std::move(R), O.basis(), O.length(), annihilator_exponent(over.lattice(), M.lattice())};
  if (E.coindex_exponent < 0) throw InternalError("order is not contained in the maximal order");
  if (!O.contains(Lattice::standard(E.maximal.zp, D).scaled(E.annihilator_exponent))) {
    throw InternalError("p^N2 End(M^min) is not contained in End(M)");
  }
  return E;
}

EndoOrder suborder(MaximalOrder R, const std::vector<PadicMatrix>& generators) {
  PadicMatrix V = R.vectorized();
  PadicMatrix Y;
  try {
    Y = solve_in_span(V, vectorize_all(generators, R.zp));
  } catch (const RankError&) {
    throw ArgumentError("generators are not in the span of the maximal order");
  }
  if (!Y.is_integral()) throw ArgumentError("generators are not in the maximal order");
  Lattice O = Lattice::from_generators(Y);
  EndoOrder E{std::move(R), O.basis(), O.length(), -1};
  if (!O.contains_vectors(E.coordinates_of(PadicMatrix::identity(E.maximal.ring, E.maximal.module.rank())))) {
    throw ArgumentError("span does not contain the identity");
  }
  try {
    E.multiplication_table_mod_p();
  } catch (const InternalError&) {
    throw ArgumentError("span is not closed under multiplication");
  }
  return E;
}

int coindex(const EndoOrder& O) { return O.coindex_exponent; }

bool is_maximal(const EndoOrder& O) { return O.coindex_exponent == 0; }

MaximalOrder random_conjugate_maximal_order(const EndoOrder& O, std::mt19937_64& rng) {
  const MaximalOrder& R = O.maximal;
  const WittRing& W = *R.ring;
  const int p = W.p();
  std::uniform_int_distribution<int> coef(0, p * p - 1);
  std::vector<PadicMatrix> ops = O.basis();
  for (int attempt = 0; attempt < 64; ++attempt) {
    PadicMatrix h(R.ring, R.module.rank(), R.module.rank());
    for (const auto& X : R.basis) h = h + X.times(W.from_int(coef(rng)));
    Lattice image;
    try {
      image = R.module.lattice().image(h);
    } catch (const RankError&) {
      continue;
    } catch (const PrecisionError&) {
      continue;
    }
    std::vector<PadicMatrix> gens;
    for (const auto& op : ops) gens.push_back(op * image.basis());
    DieudonneModule stable(R.module.ambient(), Lattice::from_generators(PadicMatrix::hcat(gens)));
    MaximalOrder other = maximal_order_basis(minimal_overmodule(stable), W.degree());
    if (other.ring != R.ring) throw InternalError("conjugate maximal order lives over a different field");
    return other;
  }
  throw InternalError("no invertible element found in 64 random draws");
}

int coindex_against(const EndoOrder& O, const MaximalOrder& other) {
  if (other.ring != O.maximal.ring) throw ArgumentError("maximal orders over different fields");
  PadicMatrix Vr = other.vectorized();
  PadicMatrix Vo = vectorize_all(O.basis(), other.zp);
  PadicMatrix Y;
  try {
    Y = solve_in_span(Vr, Vo);
  } catch (const RankError&) {
    throw InternalError("order does not lie in the span of the maximal order");
  }
  if (!Y.is_integral()) throw InternalError("order is not contained in the maximal order");
  return Lattice::from_generators(Y).length();
}

PadicMatrix endomorphisms_by_kernel(const DieudonneModule& M, const RingPtr& ring) {
  DieudonneModule ML = M.ring() == ring ? M : M.base_change(RingEmbedding(M.ring(), ring));
  const WittRing& W = *ring;
  const int h = M.rank(), L = W.degree();
  RingPtr zp = make_witt_ring(W.p(), 1, W.precision());
  PadicMatrix A = ML.frobenius_on_basis();
  std::vector<PadicMatrix> cols;
  Elem tl = W.one();
  std::vector<Elem> powers;
  for (int l = 0; l < L; ++l, tl = W.mul(tl, W.generator())) powers.push_back(tl);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < h; ++c) {
      for (int l = 0; l < L; ++l) {
        PadicMatrix X(ring, h, h);
        X.at(r, c) = powers[l];
        X.normalize();
        cols.push_back(vectorize(X * A - A * X.frobenius(1), zp));
      }
    }
  }
  return kernel(PadicMatrix::hcat(cols));
}

PadicMatrix vectorized_on_module(const EndoOrder& O, const DieudonneModule& M) {
  const RingPtr& ring = O.maximal.ring;
  PadicMatrix B = (M.ring() == ring ? M.lattice() : M.lattice().base_change(RingEmbedding(M.ring(), ring))).basis();
  PadicMatrix Binv = B.inverse();
  std::vector<PadicMatrix> ops;
  for (const auto& X : O.basis()) ops.push_back(Binv * X * B);
  return vectorize_all(ops, O.maximal.zp);
}

}  // namespace dieudonne
