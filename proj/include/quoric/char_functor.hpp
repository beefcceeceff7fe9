#pragma once

#include <map>
#include <optional>

#include "quoric/conj_class.hpp"
#include "quoric/face_complex.hpp"

namespace quoric {

// Characteristic functor lambda: faces of K_X -> conjugacy classes of Q^ambient.
struct CharFunctor {
  int ambient = 0;
  std::map<Mask, ConjClass> table;

  const ConjClass& at(Mask sigma) const;
};

struct CharacteristicPair {
  FaceComplex complex;
  CharFunctor functor;
};

struct FunctorReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks completeness over K, rank(lambda(sigma)) = |sigma| with lambda(empty)
// trivial, monotonicity for the subclass order, and injectivity on the 2^n
// local faces of every vertex (local acceptability).
FunctorReport validate_functor(const CharacteristicPair& p);

// All functors extending the given facet labels (facet index -> characteristic
// set).  Ambient rank may exceed the corner dimension of K.
std::vector<CharFunctor> infer_from_facets(const FaceComplex& k, int ambient,
                                           const std::map<int, Mask>& facet_labels,
                                           std::uint64_t max_candidates = 10'000'000);

// Census of all valid functors on K with values in classes of Q^ambient.
std::vector<CharFunctor> enumerate_functors(const FaceComplex& k, int ambient,
                                            std::uint64_t max_candidates = 10'000'000);

CanonicalSubgroup canonical_subgroup_at(const CharacteristicPair& p, Mask sigma);

// Face poset with each face labeled by its orbit-type class; hasse lists the
// covering pairs (node index of sigma, node index of sigma + one facet).
struct OrbitTypePoset {
  struct Node {
    Mask simplex;
    ConjClass cls;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> hasse;
};

OrbitTypePoset orbit_type_poset(const CharacteristicPair& p);

// Point of the canonical model M(lambda) presented by a group element over a
// face; two presentations are equal iff the faces agree and q^{-1} q' lies in
// the canonical subgroup of that face.
struct OrbitPoint {
  GroupElement q;
  Mask face = 0;
};

bool orbit_rep_equal(const CharacteristicPair& p, const OrbitPoint& x, const OrbitPoint& y,
                     double tol = default_tol);

// Equivalence of characteristic pairs: a face-complex isomorphism psi with
// lambda(psi(sigma)) = lambda'(sigma) for every sigma.  facet_map sends facets
// of pp.complex to facets of p.complex.  The weak variant also searches over
// coordinate permutations of [n] applied to the classes of pp (a deliberate
// extension of exact equivalence); the permutation used is reported.
struct EquivalenceResult {
  std::optional<std::vector<int>> facet_map;
  std::optional<std::vector<int>> coordinate_permutation;  // weak mode only
  std::uint64_t nodes_explored = 0;
};

EquivalenceResult equivalence_search(const CharacteristicPair& p, const CharacteristicPair& pp,
                                     std::uint64_t max_nodes = 10'000'000);
EquivalenceResult weak_equivalence_search(const CharacteristicPair& p,
                                          const CharacteristicPair& pp,
                                          std::uint64_t max_nodes = 10'000'000);

// Join of two pairs over product(k1, k2); right-hand classes are shifted past
// the left ambient rank.
CharacteristicPair pair_product(const CharacteristicPair& p1, const CharacteristicPair& p2);

// Stable serialization used for census ordering and hashing.
std::string canonical_form(const FaceComplex& k, const CharFunctor& f);
std::uint64_t census_hash(const std::string& canonical);

}  // namespace quoric
