#include "dieudonne/minimal.hpp"

#include <numeric>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

int iteration_cap(const Lattice& L) { return 4 * L.rank() * L.ring()->precision(); }

}  // namespace

MinimalityCertificate is_minimal(const DieudonneModule& M) {
  IsotypicDecomposition dec = isotypic_decomposition(M);
  MinimalityCertificate cert;
  std::vector<Lattice> parts;
  cert.is_minimal = true;
  for (const auto& c : dec.components) {
    Lattice L = c.restrict(M.lattice());
    ComponentCertificate cc;
    cc.slope = c.slope;
    // F^n L = p^b L: containment plus equal length.
    Lattice image = c.normalized_power().apply(L);
    cc.frobenius_condition = L.contains(image) && image.length() == L.length();
    cc.pi0_condition = L.contains(c.pi0().apply(L));
    cert.is_minimal = cert.is_minimal && cc.frobenius_condition && cc.pi0_condition;
    cert.components.push_back(cc);
    parts.push_back(std::move(L));
  }
  cert.split = dec.assemble(parts) == M.lattice();
  cert.is_minimal = cert.is_minimal && cert.split;
  return cert;
}

Lattice component_overmodule(const IsotypicComponent& c, const Lattice& L0) {
  SemilinearOp up = c.normalized_power();
  SemilinearOp down = up.inverse();
  SemilinearOp pi = c.pi0();
  Lattice L = L0;
  const int cap = iteration_cap(L0);
  for (int it = 0; it < cap; ++it) {
    Lattice next = L + up.apply(L) + down.apply(L) + pi.apply(L);
    if (next == L) return L;
    L = std::move(next);
  }
  throw InternalError("minimal overmodule: fixpoint not reached within " + std::to_string(cap) + " steps");
}

Lattice component_submodule(const IsotypicComponent& c, const Lattice& L0) {
  SemilinearOp up = c.normalized_power();
  SemilinearOp down = up.inverse();
  SemilinearOp pi_inv = c.pi0().inverse();
  Lattice L = L0;
  const int cap = iteration_cap(L0);
  for (int it = 0; it < cap; ++it) {
    Lattice next = L.intersect(up.apply(L)).intersect(down.apply(L)).intersect(pi_inv.apply(L));
    if (next == L) return L;
    L = std::move(next);
  }
  throw InternalError("minimal submodule: fixpoint not reached within " + std::to_string(cap) + " steps");
}

Lattice component_submodule_skeleton(const Skeleton& sk, const Lattice& L) {
  Lattice X = sk.coordinates_of(L);
  PadicMatrix P = sk.pi0_matrix();
  PadicMatrix Pinv = P.inverse();
  // Largest Pi_0-stable sublattice: intersection of Pi_0^{-j} X for 0 <= j < n.
  Lattice Y = X;
  PadicMatrix step = Pinv;
  for (int j = 1; j < sk.slope.n(); ++j) {
    Y = Y.intersect(X.image(step));
    step = step * Pinv;
  }
  return Lattice::from_generators(sk.realize(Y.basis()));
}

Lattice component_overmodule_skeleton(const Skeleton& dual_sk, const Lattice& L) {
  return component_submodule_skeleton(dual_sk, L.dual()).dual();
}

DieudonneModule minimal_overmodule(const DieudonneModule& M) {
  IsotypicDecomposition dec = isotypic_decomposition(M);
  std::vector<Lattice> parts;
  for (const auto& c : dec.components) parts.push_back(component_overmodule(c, c.project(M.lattice())));
  return DieudonneModule(M.ambient(), dec.assemble(parts));
}

DieudonneModule minimal_submodule(const DieudonneModule& M) {
  DieudonneModule over_dual = minimal_overmodule(dual_module(M));
  return DieudonneModule(M.ambient(), over_dual.lattice().dual());
}

DieudonneModule minimal_submodule_fixpoint(const DieudonneModule& M) {
  IsotypicDecomposition dec = isotypic_decomposition(M);
  std::vector<Lattice> parts;
  for (const auto& c : dec.components) parts.push_back(component_submodule(c, c.restrict(M.lattice())));
  return DieudonneModule(M.ambient(), dec.assemble(parts));
}

SkeletonRoute minimal_modules_by_skeleton(const DieudonneModule& M, int max_degree) {
  IsotypicDecomposition dec = isotypic_decomposition(M);
  const RingPtr& base = M.ring();
  int L = base->degree();
  for (const auto& c : dec.components) L = std::lcm(L, skeleton(c, max_degree).field_degree);
  if (L > max_degree) {
    throw ExtensionError("skeletons of all components need F_{p^" + std::to_string(L) + "}", L);
  }
  RingPtr ring = make_witt_ring(base->p(), L, base->precision());
  RingEmbedding emb(base, ring);
  DieudonneModule ML = M.base_change(emb);
  IsotypicDecomposition decL = dec.base_change(emb);
  std::vector<Lattice> sub_parts, over_parts;
  for (const auto& c : decL.components) {
    Skeleton sk = skeleton(c, max_degree);
    Skeleton dsk = skeleton(c.dual(), max_degree);
    if (sk.field_degree != L || dsk.field_degree != L) throw InternalError("skeleton field changed after base change");
    sub_parts.push_back(component_submodule_skeleton(sk, c.restrict(ML.lattice())));
    over_parts.push_back(component_overmodule_skeleton(dsk, c.project(ML.lattice())));
  }
  return SkeletonRoute{ring, DieudonneModule(ML.ambient(), decL.assemble(sub_parts)),
                       DieudonneModule(ML.ambient(), decL.assemble(over_parts))};
}

MinimalIsogenyData minimal_isogeny(const DieudonneModule& M) {
  MinimalIsogenyData d{minimal_submodule(M), minimal_overmodule(M), 0, 0, 0};
  d.length_sub = index_exponent(M.lattice(), d.sub.lattice());
  d.length_over = index_exponent(d.over.lattice(), M.lattice());
  d.annihilator_exponent = annihilator_exponent(d.over.lattice(), M.lattice());
  return d;
}

TransportedEndomorphism transport_endomorphism(const DieudonneModule& M, const PadicMatrix& phi) {
  return transport_endomorphism(M, minimal_isogeny(M), phi);
}

TransportedEndomorphism transport_endomorphism(const DieudonneModule& M, const MinimalIsogenyData& data,
                                               const PadicMatrix& phi) {
  const int h = M.rank();
  if (phi.ring() != M.ring() || phi.rows() != h || phi.cols() != h) {
    throw ArgumentError("endomorphism must be an h x h matrix over the module ring");
  }
  const PadicMatrix& A = M.ambient()->frobenius_matrix();
  if (!(phi * A).equals(A * phi.frobenius(1))) throw ArgumentError("operator does not commute with F");
  auto on = [&](const Lattice& L) {
    PadicMatrix B = L.basis();
    return B.inverse() * phi * B;
  };
  if (!on(M.lattice()).is_integral()) throw ArgumentError("operator does not preserve M");
  TransportedEndomorphism t{on(data.sub.lattice()), on(data.over.lattice())};
  if (!t.on_sub.is_integral() || !t.on_over.is_integral()) {
    throw InternalError("endomorphism of M does not stabilize its minimal sub/overmodule");
  }
  return t;
}

}  // namespace dieudonne
