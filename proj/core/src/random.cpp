#include "dieudonne/random.hpp"

#include <numeric>

#include "dieudonne/errors.hpp"

namespace dieudonne {

PadicMatrix random_integral_matrix(const RingPtr& ring, int rows, int cols, std::mt19937_64& rng) {
  PadicMatrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = ring->random(rng);
  }
  m.normalize();
  return m;
}

PadicMatrix random_unimodular(const RingPtr& ring, int h, std::mt19937_64& rng) {
  const WittRing& R = *ring;
  // Unit lower times unit upper triangular with unit diagonals, then a random permutation.
  PadicMatrix Lo = PadicMatrix::identity(ring, h), Up = PadicMatrix::identity(ring, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      if (i > j) Lo.at(i, j) = R.random(rng);
      if (i < j) Up.at(i, j) = R.random(rng);
    }
    Elem u = R.random(rng);
    u.c[0] = R.residues().add(R.residues().mul_pow(u.c[0], 1), 1);
    Up.at(i, i) = u;
  }
  std::vector<int> perm(static_cast<size_t>(h));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return (Lo * Up).select_columns(perm);
}

DieudonneModule random_submodule(const DieudonneModule& M, int depth, std::mt19937_64& rng) {
  const RingPtr& ring = M.ring();
  const int h = M.rank();
  // Walk down one step at a time on the dual side: for a Dieudonne lattice D and
  // u in F D cap V D, the lattice D + W u / p is again F, V-stable.
  AmbientPtr dual_amb = M.ambient()->dual();
  SemilinearOp F = dual_amb->frobenius(), V = dual_amb->verschiebung();
  Lattice D = M.lattice().dual();
  for (int step = 0; step < depth; ++step) {
    Lattice X = F.apply(D).intersect(V.apply(D));
    PadicMatrix u = X.basis() * random_integral_matrix(ring, h, 1, rng);
    D = Lattice::from_generators(PadicMatrix::hcat(D.basis(), u.scaled(-1)));
  }
  return DieudonneModule(M.ambient(), D.dual());
}

DieudonneModule random_frame(const DieudonneModule& M, std::mt19937_64& rng) {
  const RingPtr& ring = M.ring();
  const int h = M.rank();
  PadicMatrix G = random_unimodular(ring, h, rng);
  std::uniform_int_distribution<int> e(0, 1);
  PadicMatrix D(ring, h, h);
  for (int i = 0; i < h; ++i) D.at(i, i) = ring->mul_pow(ring->one(), e(rng));
  G = G * D;
  PadicMatrix Ginv = G.inverse();
  AmbientPtr amb = Ambient::make(Ginv * M.ambient()->frobenius_matrix() * G.frobenius(1));
  return DieudonneModule::from_basis(amb, Ginv * M.basis());
}

NewtonPolygon random_polygon(int h, std::mt19937_64& rng) {
  std::vector<Slope> pairs;
  for (int n = 1; n <= h; ++n) {
    for (int b = 0; b <= n; ++b) {
      if (std::gcd(b, n - b) == 1) pairs.push_back({n - b, b});
    }
  }
  NewtonPolygon poly;
  int left = h;
  while (left > 0) {
    std::vector<Slope> fit;
    for (const Slope& s : pairs) {
      if (s.n() <= left) fit.push_back(s);
    }
    Slope s = fit[std::uniform_int_distribution<size_t>(0, fit.size() - 1)(rng)];
    left -= s.n();
    bool merged = false;
    for (auto& part : poly.parts) {
      if (part.slope() == s) {
        ++part.r;
        merged = true;
      }
    }
    if (!merged) poly.parts.push_back({s.a, s.b, 1});
  }
  std::sort(poly.parts.begin(), poly.parts.end(), [](const NewtonPart& x, const NewtonPart& y) { return x.slope() < y.slope(); });
  return poly;
}

}  // namespace dieudonne
