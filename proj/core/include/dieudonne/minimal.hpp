#pragma once

#include <vector>

#include "dieudonne/isocrystal.hpp"

namespace dieudonne {

struct ComponentCertificate {
  Slope slope;
  /// F^n M_lambda = p^b M_lambda
  bool frobenius_condition = false;
  /// Pi_0 M_lambda contained in M_lambda
  bool pi0_condition = false;
};

struct MinimalityCertificate {
  bool is_minimal = false;
  /// M is the direct sum of the M_lambda = M cap N_lambda
  bool split = false;
  std::vector<ComponentCertificate> components;
};

MinimalityCertificate is_minimal(const DieudonneModule& M);

/// Smallest lattice containing L with F^n L = p^b L and Pi_0 L in L, by increasing
/// fixpoint (component coordinates).
Lattice component_overmodule(const IsotypicComponent& c, const Lattice& L);
/// Largest such lattice inside L, by decreasing fixpoint.
Lattice component_submodule(const IsotypicComponent& c, const Lattice& L);
/// Largest such lattice inside L computed from the skeleton: the W-span of the largest
/// Pi_0-stable sublattice of L cap skeleton. L must be given over the skeleton field.
Lattice component_submodule_skeleton(const Skeleton& sk, const Lattice& L);
/// Overmodule through the dual component.
Lattice component_overmodule_skeleton(const Skeleton& dual_sk, const Lattice& L);

/// Smallest minimal module containing M (increasing fixpoint per component).
DieudonneModule minimal_overmodule(const DieudonneModule& M);
/// Biggest minimal submodule, computed as ((M^t)^min)^t.
DieudonneModule minimal_submodule(const DieudonneModule& M);
/// Biggest minimal submodule by decreasing fixpoint per component.
DieudonneModule minimal_submodule_fixpoint(const DieudonneModule& M);

/// Skeleton route results, over the common skeleton field of all components.
struct SkeletonRoute {
  RingPtr ring;
  DieudonneModule sub;
  DieudonneModule over;
};
SkeletonRoute minimal_modules_by_skeleton(const DieudonneModule& M, int max_degree = kMaxDegree);

struct MinimalIsogenyData {
  DieudonneModule sub;
  DieudonneModule over;
  /// W-length of M / M_min; the minimal isogeny has degree p^{length_sub}.
  int length_sub = 0;
  /// W-length of M^min / M.
  int length_over = 0;
  /// Least N2 with p^{N2} M^min contained in M.
  int annihilator_exponent = 0;
};

MinimalIsogenyData minimal_isogeny(const DieudonneModule& M);

/// An endomorphism phi of M (ambient matrix commuting with F, phi(M) in M) on the
/// bases of M_min and M^min.
struct TransportedEndomorphism {
  PadicMatrix on_sub;
  PadicMatrix on_over;
};
TransportedEndomorphism transport_endomorphism(const DieudonneModule& M, const PadicMatrix& phi);
/// Same, with the minimal modules already known.
TransportedEndomorphism transport_endomorphism(const DieudonneModule& M, const MinimalIsogenyData& data,
                                               const PadicMatrix& phi);

}  // namespace dieudonne
