#include "dieudonne/isocrystal.hpp"

#include <algorithm>
#include <numeric>

#include "dieudonne/conway.hpp"
#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

PadicMatrix twisted_power_product(const PadicMatrix& X, int count) {
  PadicMatrix T = PadicMatrix::identity(X.ring(), X.rows());
  for (int i = 0; i < count; ++i) T = T * X.frobenius(i);
  return T;
}

// Polynomials over Z/p^P as coefficient vectors, low degree first.
using Poly = std::vector<u128>;

Poly poly_mul(const ResidueRing& Z, const Poly& f, const Poly& g) {
  Poly r(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j) r[i + j] = Z.add(r[i + j], Z.mul(f[i], g[j]));
  }
  return r;
}

// Hensel lifting of psi = G U over Z/p^P, psi monic of degree D, psi = x^a ubar mod p with
// ubar(0) != 0. Returns (G, U), both monic.
std::pair<Poly, Poly> hensel_split(const ResidueRing& Z, const Poly& psi, int a, int P) {
  const int p = Z.p();
  const int D = static_cast<int>(psi.size()) - 1;
  const int d0 = D - a;
  auto modp = [&](u128 x) { return static_cast<std::int64_t>(x % static_cast<u128>(p)); };
  auto inv_p = [&](std::int64_t x) {
    std::int64_t r = 1, b = ((x % p) + p) % p;
    for (int e = p - 2; e > 0; e >>= 1, b = b * b % p) {
      if (e & 1) r = r * b % p;
    }
    return r;
  };
  std::vector<std::int64_t> ubar(static_cast<size_t>(d0) + 1);
  for (int i = 0; i <= d0; ++i) ubar[i] = modp(psi[static_cast<size_t>(a + i)]);
  // t = ubar^{-1} mod x^a, s = (1 - t ubar) / x^a.
  std::vector<std::int64_t> t(static_cast<size_t>(a), 0);
  if (a > 0) {
    std::int64_t u0inv = inv_p(ubar[0]);
    for (int i = 0; i < a; ++i) {
      std::int64_t acc = i == 0 ? 1 : 0;
      for (int j = 1; j <= std::min(i, d0); ++j) acc -= ubar[j] * t[i - j] % p;
      t[i] = ((acc % p + p) % p) * u0inv % p;
    }
  }
  Poly G(static_cast<size_t>(a) + 1, 0), U(static_cast<size_t>(d0) + 1, 0);
  G[a] = 1;
  for (int i = 0; i <= d0; ++i) U[i] = static_cast<u128>(ubar[i]);
  for (int k = 1; k < P; ++k) {
    Poly prod = poly_mul(Z, G, U);
    std::vector<std::int64_t> e(static_cast<size_t>(D), 0);
    for (int i = 0; i < D; ++i) {
      u128 diff = Z.mod_pow(Z.sub(psi[i], prod[i]), k + 1);
      if (Z.mod_pow(diff, k) != 0) throw InternalError("slope factorization lost its congruence");
      e[i] = modp(Z.div_pow(diff, k));
    }
    // dG = e t mod x^a; dU = (e - dG ubar) / x^a.
    std::vector<std::int64_t> dG(static_cast<size_t>(a), 0);
    for (int i = 0; i < a; ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j <= i; ++j) acc = (acc + e[j] * t[i - j]) % p;
      dG[i] = acc;
    }
    std::vector<std::int64_t> rem(e.begin(), e.end());
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j <= d0; ++j) {
        if (i + j < D) rem[i + j] = ((rem[i + j] - dG[i] * ubar[j]) % p + p) % p;
      }
    }
    for (int i = 0; i < a; ++i) {
      if (rem[i] != 0) throw InternalError("slope factorization: Bezout step failed");
    }
    for (int i = 0; i < a; ++i) G[i] = Z.add(G[i], Z.mul_pow(static_cast<u128>(dG[i]), k));
    for (int i = 0; i < d0; ++i) U[i] = Z.add(U[i], Z.mul_pow(static_cast<u128>(rem[a + i]), k));
  }
  for (u128& x : G) x = Z.mod_pow(x, P);
  for (u128& x : U) x = Z.mod_pow(x, P);
  return {G, U};
}

PadicMatrix evaluate_at(const Poly& f, const PadicMatrix& T, int prec) {
  const RingPtr& ring = T.ring();
  const int h = T.rows();
  auto scalar_matrix = [&](u128 c) {
    PadicMatrix S(ring, h, h);
    for (int i = 0; i < h; ++i) S.at(i, i) = ring->scalar(c);
    S.set_prec(prec);
    S.normalize();
    return S;
  };
  PadicMatrix acc = scalar_matrix(f.back());
  for (int i = static_cast<int>(f.size()) - 2; i >= 0; --i) acc = acc * T + scalar_matrix(f[i]);
  return acc;
}

}  // namespace

int NewtonPolygon::height() const noexcept {
  int h = 0;
  for (const auto& part : parts) h += part.r * (part.a + part.b);
  return h;
}

NewtonPolygon NewtonPolygon::dual() const {
  NewtonPolygon d;
  for (const auto& part : parts) d.parts.push_back({part.b, part.a, part.r});
  std::sort(d.parts.begin(), d.parts.end(), [](const NewtonPart& x, const NewtonPart& y) { return x.slope() < y.slope(); });
  return d;
}

std::string NewtonPolygon::to_string() const {
  std::string s;
  for (const auto& part : parts) {
    if (!s.empty()) s += "+";
    s += "(" + std::to_string(part.a) + "," + std::to_string(part.b) + ")x" + std::to_string(part.r);
  }
  return s;
}

std::pair<int, int> bezout_pair(int a, int b) {
  if (a < 0 || b < 0 || std::gcd(a, b) != 1) throw ArgumentError("slope pair must be coprime and nonnegative");
  if (a == 0) return {0, 1};
  if (b == 0) return {1, 0};
  for (int y = 0; y < a; ++y) {
    if ((y * b) % a == 1 % a) return {(1 - y * b) / a, y};
  }
  throw InternalError("no Bezout pair");
}

Ambient::Ambient(PadicMatrix A) : ring_(A.ring()), h_(A.rows()), A_(std::move(A)) {
  if (A_.rows() != A_.cols()) throw ArgumentError("Frobenius matrix must be square");
  if (h_ == 0) throw ArgumentError("ambient of rank 0: use Ambient::zero");
  try {
    (void)left_inverse(A_);
  } catch (const RankError&) {
    throw ArgumentError("Frobenius matrix is not invertible at working precision");
  }
}

AmbientPtr Ambient::zero(RingPtr ring) {
  auto* a = new Ambient();
  a->ring_ = ring;
  a->A_ = PadicMatrix(ring, 0, 0);
  return AmbientPtr(a);
}

SemilinearOp Ambient::verschiebung() const { return SemilinearOp{A_, 1}.inverse().scaled(1); }

AmbientPtr Ambient::base_change(const RingEmbedding& emb) const {
  if (h_ == 0) return zero(emb.target());
  return make(A_.base_change(emb));
}

AmbientPtr Ambient::dual() const {
  if (h_ == 0) return zero(ring_);
  return make(A_.inverse().transpose().scaled(1));
}

bool Ambient::same_as(const Ambient& o) const {
  if (this == &o) return true;
  return ring_ == o.ring_ && h_ == o.h_ && (h_ == 0 || A_.equals(o.A_));
}

DieudonneModule::DieudonneModule(AmbientPtr ambient, Lattice lattice)
    : ambient_(std::move(ambient)), lattice_(std::move(lattice)) {
  if (!ambient_ || ambient_->rank() == 0) throw ArgumentError("Dieudonne module of rank 0");
  if (lattice_.ring() != ambient_->ring() || lattice_.rank() != ambient_->rank()) {
    throw ArgumentError("lattice does not live in the ambient");
  }
  PadicMatrix X = frobenius_on_basis();
  if (!X.is_integral()) throw ArgumentError("lattice is not stable under F");
  PadicMatrix Vm = SemilinearOp{X, 1}.inverse().scaled(1).A;
  if (!Vm.is_integral()) throw ArgumentError("lattice is not stable under V");
}

DieudonneModule DieudonneModule::from_basis(AmbientPtr ambient, const PadicMatrix& basis) {
  return DieudonneModule(std::move(ambient), Lattice::from_generators(basis));
}

PadicMatrix DieudonneModule::frobenius_on_basis() const {
  PadicMatrix B = lattice_.basis();
  return B.inverse() * ambient_->frobenius_matrix() * B.frobenius(1);
}

DieudonneModule DieudonneModule::base_change(const RingEmbedding& emb) const {
  return DieudonneModule(ambient_->base_change(emb), lattice_.base_change(emb));
}

DieudonneModule DieudonneModule::rebind(AmbientPtr ambient) const {
  if (!ambient->same_as(*ambient_)) throw ArgumentError("rebinding to a different ambient");
  DieudonneModule M = *this;
  M.ambient_ = std::move(ambient);
  return M;
}

bool operator==(const DieudonneModule& x, const DieudonneModule& y) {
  return x.ambient_->same_as(*y.ambient_) && x.lattice_ == y.lattice_;
}

DieudonneModule standard_module(int a, int b, int r, RingPtr ring) {
  if (a < 0 || b < 0 || (a == 0 && b == 0) || std::gcd(a, b) != 1) {
    throw ArgumentError("standard module needs a coprime pair (a, b) != (0, 0)");
  }
  if (r < 1) throw ArgumentError("multiplicity must be positive");
  const int n = a + b, h = r * n;
  const WittRing& R = *ring;
  PadicMatrix A(ring, h, h);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < n; ++i) {
      int j = i + b;
      if (j < n) {
        A.at(k * n + j, k * n + i) = R.one();
      } else {
        A.at(k * n + j - n, k * n + i) = R.from_int(R.p());
      }
    }
  }
  A.normalize();
  return DieudonneModule(Ambient::make(A), Lattice::standard(ring, h));
}

DieudonneModule standard_module(const NewtonPolygon& beta, RingPtr ring) {
  if (beta.parts.empty()) throw ArgumentError("empty Newton polygon");
  DieudonneModule M = standard_module(beta.parts[0].a, beta.parts[0].b, beta.parts[0].r, ring);
  for (size_t i = 1; i < beta.parts.size(); ++i) {
    M = direct_sum(M, standard_module(beta.parts[i].a, beta.parts[i].b, beta.parts[i].r, ring));
  }
  return M;
}

DieudonneModule direct_sum(const DieudonneModule& x, const DieudonneModule& y) {
  if (x.ring() != y.ring()) throw ArgumentError("direct sum of modules over different rings");
  AmbientPtr amb = Ambient::make(PadicMatrix::diag_sum(x.ambient()->frobenius_matrix(), y.ambient()->frobenius_matrix()));
  return DieudonneModule::from_basis(amb, PadicMatrix::diag_sum(x.basis(), y.basis()));
}

DieudonneModule direct_sum(const DieudonneModule& x, const Ambient& zero) {
  if (zero.rank() != 0) throw ArgumentError("expected a rank-0 ambient");
  if (zero.ring() != x.ring()) throw ArgumentError("direct sum of modules over different rings");
  return x;
}

DieudonneModule dual_module(const DieudonneModule& M) {
  return DieudonneModule(M.ambient()->dual(), M.lattice().dual());
}

NewtonPolygon newton_polygon(const DieudonneModule& M) {
  const WittRing& R = *M.ring();
  const int m = R.degree(), h = M.rank();
  PadicMatrix T = twisted_power_product(M.frobenius_on_basis(), m);
  const int P = T.prec();
  std::vector<Elem> chi = charpoly_integral(T);
  std::vector<int> v(static_cast<size_t>(h) + 1);
  for (int i = 0; i <= h; ++i) v[i] = R.valuation(R.reduce(chi[i], P));
  if (v[0] >= P - kGuardDigits) {
    throw PrecisionError("Newton polygon: det F^" + std::to_string(m) + " has valuation >= " +
                         std::to_string(P - kGuardDigits) + ", beyond the trusted window of " + std::to_string(P) +
                         " digits");
  }
  // Lower convex hull of (i, v_i); a segment of horizontal length l and drop d carries l
  // roots of valuation d / l (for the integral part; the value adds -shift).
  NewtonPolygon poly;
  int i = 0;
  while (i < h) {
    int best = -1;
    for (int j = i + 1; j <= h; ++j) {
      if (v[j] >= P) continue;
      // compare slopes (v_j - v_i)/(j - i), keep the smallest, farthest on ties
      if (best < 0 || (v[j] - v[i]) * (best - i) <= (v[best] - v[i]) * (j - i)) best = j;
    }
    const int len = best - i;
    int num = (v[i] - v[best]) - T.shift() * len;
    int den = len * m;
    int g = std::gcd(num, den);
    int b = num / g, n = den / g;
    if (b < 0 || b > n) throw InternalError("slope outside [0, 1]: F or V is not integral");
    if (len % n != 0) throw InternalError("Newton polygon segment of length not divisible by its denominator");
    poly.parts.push_back({n - b, b, len / n});
    i = best;
  }
  std::sort(poly.parts.begin(), poly.parts.end(), [](const NewtonPart& x, const NewtonPart& y) { return x.slope() < y.slope(); });
  // Merge equal slopes (can only arise from ties split by precision noise).
  NewtonPolygon merged;
  for (const auto& part : poly.parts) {
    if (!merged.parts.empty() && merged.parts.back().slope() == part.slope()) {
      merged.parts.back().r += part.r;
    } else {
      merged.parts.push_back(part);
    }
  }
  return merged;
}

SemilinearOp IsotypicComponent::V() const { return F.inverse().scaled(1); }

SemilinearOp IsotypicComponent::pi0() const {
  auto [x, y] = bezout_pair(slope.a, slope.b);
  return F.power(y).compose(V().power(x));
}

SemilinearOp IsotypicComponent::normalized_power() const { return F.power(slope.n()).scaled(-slope.b); }

Lattice IsotypicComponent::project(const Lattice& L) const { return Lattice::from_generators(coords * L.basis()); }

Lattice IsotypicComponent::restrict(const Lattice& L) const {
  return Lattice::from_integrality(L.basis().inverse() * embed);
}

IsotypicComponent IsotypicComponent::dual() const {
  IsotypicComponent d;
  d.slope = {slope.b, slope.a};
  d.multiplicity = multiplicity;
  d.rank = rank;
  d.embed = coords.transpose();
  d.coords = embed.transpose();
  d.F = {F.A.inverse().transpose().scaled(1), 1};
  return d;
}

IsotypicComponent IsotypicComponent::base_change(const RingEmbedding& emb) const {
  IsotypicComponent c = *this;
  c.embed = embed.base_change(emb);
  c.coords = coords.base_change(emb);
  c.F = F.base_change(emb);
  return c;
}

Lattice IsotypicDecomposition::assemble(const std::vector<Lattice>& parts) const {
  if (parts.size() != components.size()) throw ArgumentError("one lattice per component expected");
  std::vector<PadicMatrix> gens;
  for (size_t i = 0; i < parts.size(); ++i) gens.push_back(components[i].embed * parts[i].basis());
  return Lattice::from_generators(PadicMatrix::hcat(gens));
}

IsotypicDecomposition IsotypicDecomposition::base_change(const RingEmbedding& emb) const {
  IsotypicDecomposition d;
  d.polygon = polygon;
  for (const auto& c : components) d.components.push_back(c.base_change(emb));
  return d;
}

namespace {

// Digits spent by the slope splitting of F^{mk} below: each split of the lowest remaining
// slope costs its root valuation times the remaining degree.
int split_cost(const NewtonPolygon& polygon, int m, bool dual) {
  int k = 1;
  for (const auto& part : polygon.parts) {
    const int n = part.a + part.b, top = dual ? part.a : part.b;
    k = std::lcm(k, n / std::gcd(m * top, n));
  }
  std::vector<NewtonPart> parts = polygon.parts;
  if (dual) std::reverse(parts.begin(), parts.end());
  int cost = 0, D = polygon.height();
  for (size_t s = 0; s + 1 < parts.size(); ++s) {
    const int n = parts[s].a + parts[s].b, top = dual ? parts[s].a : parts[s].b;
    cost += k * m * top / n * D;
    D -= parts[s].r * n;
  }
  return cost;
}

IsotypicDecomposition decompose_by_frobenius(const DieudonneModule& M, const NewtonPolygon& polygon);

}  // namespace

IsotypicDecomposition isotypic_decomposition(const DieudonneModule& M) {
  const NewtonPolygon polygon = newton_polygon(M);
  const int m = M.ring()->degree();
  if (polygon.parts.size() == 1 || split_cost(polygon, m, true) >= split_cost(polygon, m, false)) {
    return decompose_by_frobenius(M, polygon);
  }
  // Split the dual, where the high slopes become low ones, and transpose back: the slope
  // lambda part of M is dual to the slope 1 - lambda part of the dual.
  const DieudonneModule D = dual_module(M);
  const IsotypicDecomposition dd = decompose_by_frobenius(D, newton_polygon(D));
  const PadicMatrix& A = M.ambient()->frobenius_matrix();
  IsotypicDecomposition out;
  out.polygon = polygon;
  for (auto it = dd.components.rbegin(); it != dd.components.rend(); ++it) {
    IsotypicComponent c;
    c.slope = {it->slope.b, it->slope.a};
    c.multiplicity = it->multiplicity;
    c.rank = it->rank;
    c.embed = it->coords.transpose();
    c.coords = it->embed.transpose();
    c.F = {c.coords * A * c.embed.frobenius(1), 1};
    out.components.push_back(std::move(c));
  }
  return out;
}

namespace {

IsotypicDecomposition decompose_by_frobenius(const DieudonneModule& M, const NewtonPolygon& polygon) {
  IsotypicDecomposition out;
  out.polygon = polygon;
  const RingPtr& ring = M.ring();
  const WittRing& R = *ring;
  const int h = M.rank(), m = R.degree();
  const PadicMatrix B = M.basis();
  const PadicMatrix Binv = B.inverse();
  const PadicMatrix X = M.frobenius_on_basis();

  if (out.polygon.parts.size() == 1) {
    const NewtonPart& part = out.polygon.parts[0];
    out.components.push_back({part.slope(), part.r, h, B, Binv, {X, 1}});
    return out;
  }

  // T' = (F^m)^k has integral root valuations k m b / n.
  int k = 1;
  for (const auto& part : out.polygon.parts) {
    int n = part.a + part.b;
    int den = n / std::gcd(m * part.b, n);
    k = std::lcm(k, den);
  }
  PadicMatrix Tk = twisted_power_product(X, m).pow(k);
  int P = Tk.prec();
  const ResidueRing& Z = R.residues();
  std::vector<Elem> chi_int = charpoly_integral(Tk);
  // Coefficients of the characteristic polynomial of the value p^{-shift} X_int.
  Poly f(static_cast<size_t>(h) + 1);
  for (int i = 0; i <= h; ++i) {
    Elem c = R.reduce(chi_int[i], P);
    if (!R.is_scalar(c)) throw InternalError("characteristic polynomial of F^m is not defined over Z_p");
    f[i] = Z.mod_pow(Z.mul_pow(c.c[0], -Tk.shift() * (h - i)), P);
  }

  std::vector<Poly> factors;
  for (size_t s = 0; s + 1 < out.polygon.parts.size(); ++s) {
    const NewtonPart& part = out.polygon.parts[s];
    const int n = part.a + part.b;
    const int v0 = k * m * part.b / n;
    const int d0 = part.r * n;
    const int D = static_cast<int>(f.size()) - 1;
    const int a = D - d0;
    const int Pn = P - v0 * D;
    if (Pn < kGuardDigits + 1) throw PrecisionError("isotypic decomposition: slopes cannot be separated at this precision");
    Poly psi(f.size());
    for (int i = 0; i <= D; ++i) {
      int need = v0 * (D - i);
      if (Z.valuation(Z.mod_pow(f[i], P)) < need) throw InternalError("slope factorization: coefficient below the polygon");
      psi[i] = Z.mod_pow(Z.div_pow(Z.mod_pow(f[i], P), need), Pn);
    }
    for (int i = 0; i < a; ++i) {
      if (psi[i] % static_cast<u128>(Z.p()) != 0) throw PrecisionError("isotypic decomposition: residual polynomial has the wrong shape");
    }
    if (psi[a] % static_cast<u128>(Z.p()) == 0) throw PrecisionError("isotypic decomposition: residual polynomial has the wrong shape");
    auto [G, U] = hensel_split(Z, psi, a, Pn);
    Poly g(static_cast<size_t>(d0) + 1), w(static_cast<size_t>(a) + 1);
    for (int i = 0; i <= d0; ++i) g[i] = Z.mod_pow(Z.mul_pow(U[i], v0 * (d0 - i)), Pn);
    for (int i = 0; i <= a; ++i) w[i] = Z.mod_pow(Z.mul_pow(G[i], v0 * (a - i)), Pn);
    factors.push_back(g);
    f = w;
    P = Pn;
  }
  factors.push_back(f);

  std::vector<PadicMatrix> Qs;
  for (size_t s = 0; s < factors.size(); ++s) {
    const NewtonPart& part = out.polygon.parts[s];
    PadicMatrix K = kernel(evaluate_at(factors[s], Tk, P));
    if (K.cols() != part.r * (part.a + part.b)) {
      throw PrecisionError("isotypic decomposition: component of slope " + std::to_string(part.b) + "/" +
                           std::to_string(part.a + part.b) + " has the wrong dimension at this precision");
    }
    Qs.push_back(K);
  }
  PadicMatrix Q = PadicMatrix::hcat(Qs);
  PadicMatrix Qinv = Q.inverse();
  int off = 0;
  for (size_t s = 0; s < Qs.size(); ++s) {
    const NewtonPart& part = out.polygon.parts[s];
    const int d = Qs[s].cols();
    PadicMatrix rows = Qinv.block(off, 0, d, h);
    IsotypicComponent c{part.slope(), part.r, d, B * Qs[s], rows * Binv, {rows * X * Qs[s].frobenius(1), 1}};
    out.components.push_back(std::move(c));
    off += d;
  }
  return out;
}

}  // namespace

PadicMatrix Skeleton::vectors() const { return realize(PadicMatrix::identity(zp, basis.cols())); }

Lattice Skeleton::coordinates_of(const Lattice& L) const {
  if (L.ring() != ring) throw ArgumentError("lattice must be given over the skeleton field");
  PadicMatrix D = flatten_linear(L.basis().inverse(), zp) * basis;
  return Lattice::from_integrality(D);
}

PadicMatrix Skeleton::realize(const PadicMatrix& x) const { return unflatten_columns(basis * x, ring); }

PadicMatrix Skeleton::pi0_matrix() const {
  SemilinearOp pi = component.pi0();
  PadicMatrix img = flatten_linear(pi.A, zp) * frobenius_matrix(ring, pi.twist, component.rank, zp) * basis;
  return left_inverse(basis) * img;
}

Skeleton skeleton(const IsotypicComponent& component, int max_degree) {
  const RingPtr& base = component.F.A.ring();
  const int p = base->p(), m = base->degree(), N = base->precision();
  const int n = component.slope.n(), b = component.slope.b, d = component.rank;
  const int step = std::lcm(m, n);
  RingPtr zp = make_witt_ring(p, 1, N);
  for (int L = step; L <= max_degree; L += step) {
    if (!has_conway_polynomial(p, L)) break;
    RingPtr ring = make_witt_ring(p, L, N);
    RingEmbedding emb(base, ring);
    IsotypicComponent cl = component.base_change(emb);
    SemilinearOp Fn = cl.F.power(n);
    PadicMatrix Phi = flatten_linear(Fn.A, zp) * frobenius_matrix(ring, n, d, zp) -
                      PadicMatrix::identity(zp, d * L).scaled(b);
    PadicMatrix K = kernel(Phi);
    if (K.cols() == n * d) return Skeleton{component.slope, L, ring, zp, K, cl};
    if (K.cols() > n * d) throw InternalError("skeleton larger than its component");
  }
  int next = (max_degree / step + 1) * step;
  throw ExtensionError("skeleton of slope " + std::to_string(b) + "/" + std::to_string(n) +
                           " needs a residue field beyond F_{p^" + std::to_string(max_degree) + "}",
                       next);
}

PadicMatrix pi0_apply(const IsotypicComponent& component, const PadicMatrix& v) { return component.pi0().apply(v); }

}  // namespace dieudonne
