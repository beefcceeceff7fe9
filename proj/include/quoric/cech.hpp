#pragma once

#include <array>
#include <map>
#include <optional>

#include "quoric/char_functor.hpp"
#include "quoric/quaternion.hpp"

namespace quoric::cech {

// Finite nerve of a patch cover: patches, overlap edges, triple overlaps.
// Every triple must have its three edges present.
struct Nerve {
  int patch_count = 0;
  std::vector<std::pair<int, int>> edges;      // normalized a < b, sorted
  std::vector<std::array<int, 3>> triples;     // sorted a < b < c, sorted

  static Nerve make(int patches, std::vector<std::pair<int, int>> edges,
                    std::vector<std::array<int, 3>> triples);

  bool has_edge(int a, int b) const;
};

// Q^rank-valued 1-cochain on the nerve; theta_{ba} is derived as the inverse
// of the stored theta_{ab}, and theta_{aa} is the identity.
struct Cochain1 {
  int rank = 1;
  std::map<std::pair<int, int>, GroupElement> values;  // keys a < b

  GroupElement theta(int a, int b) const;
  void set(int a, int b, GroupElement g);
};

struct Cochain0 {
  int rank = 1;
  std::vector<GroupElement> values;  // one per patch
};

struct CocycleReport {
  bool valid = true;
  struct Violation {
    std::array<int, 3> triple;
    double residual;
  };
  std::vector<Violation> violations;
};

// theta_{ab} theta_{bc} theta_{ca} = 1 on every triple, within tol.
CocycleReport verify_cocycle(const Nerve& n, const Cochain1& theta, double tol = default_tol);

// Gauge action theta'_{ab} = eta_a theta_{ab} eta_b^{-1}; preserves cocycles.
Cochain1 coboundary_act(const Cochain0& eta, const Cochain1& theta);

struct ChordHolonomy {
  std::pair<int, int> chord;
  GroupElement holonomy;
};

enum class TreeStrategy { bfs, dfs };

// Gauge fixing along a spanning forest: the returned gauge satisfies
// eta_a theta_{ab} eta_b^{-1} = 1 on every edge when all chord holonomies
// vanish; otherwise the nontrivial chord holonomies are the obstruction
// (the Euler-class datum of the cover).
struct TrivializeResult {
  std::optional<Cochain0> gauge;
  std::vector<ChordHolonomy> obstructions;
  std::vector<std::pair<int, int>> tree_edges;
};

TrivializeResult trivialize(const Nerve& n, const Cochain1& theta, double tol = default_tol,
                           TreeStrategy strategy = TreeStrategy::bfs, int root = 0);

// Patch cover of the orbit-type model: each patch sits inside the stratum of
// one face of the pair's complex.
struct Cover {
  Nerve nerve;
  std::vector<Mask> patch_face;
};

// Per-patch constant section values q_a = eta_a^{-1} of the orbit-type model;
// overlap consistency q_a^{-1} theta_{ab} q_b in lambda-hat of the overlap
// face is asserted within 10*tol.
struct SectionTable {
  std::vector<GroupElement> values;
  std::vector<Mask> faces;
  double max_residual = 0;
};

SectionTable section_from_trivialization(const CharacteristicPair& p, const Cover& cover,
                                         const Cochain1& theta, const Cochain0& gauge,
                                         double tol = default_tol);

// trivialize + section_from_trivialization; on obstruction the section is
// absent and the chord holonomies are reported.
struct SectionResult {
  std::optional<SectionTable> section;
  std::vector<ChordHolonomy> obstructions;
};

SectionResult synthesize_section(const CharacteristicPair& p, const Cover& cover,
                                 const Cochain1& theta, double tol = default_tol);

// Barycentric-style subdivision of the overlap structure: every edge gains a
// midpoint patch, every triple a center patch; the refined cochain restricts
// the old transport.  Requires a valid cocycle and preserves the triviality
// verdict.
std::pair<Nerve, Cochain1> refine_barycentric(const Nerve& n, const Cochain1& theta,
                                              double tol = default_tol);

// Fan-triangulated disk: center patch 0, ring patches 1..ring.
Nerve fan_nerve(int ring);

// Cover of one stratum of the pair by a fan-triangulated disk.
Cover disk_cover(const CharacteristicPair& p, Mask face, int ring);

// Conjugacy of unit quaternions tested per coordinate by real part (and the
// imaginary norm it determines).
bool conjugate_equivalent(const Quaternion& p, const Quaternion& q, double tol = default_tol);
bool conjugate_equivalent(const GroupElement& p, const GroupElement& q,
                          double tol = default_tol);

}  // namespace quoric::cech
