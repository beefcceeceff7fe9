#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quoric/common.hpp"

namespace quoric {

// Face structure of a nice n-manifold with corners, recorded as the downward
// closed family K_X of facet sets with nonempty intersection.  A codimension-k
// face is a size-k member; the empty set stands for the interior.
struct FaceComplex {
  int corner_dim = 0;                    // n
  std::vector<std::string> facet_names;
  std::vector<Mask> simplices;           // sorted ascending as integers; holds 0
  bool homotopy_polytope = true;         // builders set this; loaders trust input

  int facet_count() const { return static_cast<int>(facet_names.size()); }
  bool contains(Mask s) const;
  std::vector<Mask> maximal_simplices() const;
  // Vertices of X = faces of codimension n.
  std::vector<Mask> vertices() const;

  int facet_index(const std::string& name) const;  // -1 when absent

  // Downward closure of the given maximal simplices; validates sizes.
  static FaceComplex from_maximal(int n, std::vector<std::string> names,
                                  const std::vector<Mask>& maximal,
                                  bool homotopy_polytope = true);
};

struct NicenessReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks downward closure, presence of the empty face and all facets, the
// size bound, rank coverage 0..n, and purity when flagged homotopy-polytope.
NicenessReport validate_nice(const FaceComplex& k);

// Corner of the n-simplex: n+1 facets, every subset of size <= n is a face.
FaceComplex simplex_corner(int n);
// Corner of the n-cube: n opposite facet pairs; faces avoid opposite pairs.
FaceComplex cube_corner(int n);
// Boundary of an m-gon (m >= 3): m facets in a cycle, faces are single facets
// and adjacent pairs.
FaceComplex polygon_corner(int m);
// Product corner structure: join of the two complexes.
FaceComplex product(const FaceComplex& k1, const FaceComplex& k2);

// Faces of dimension <= k, i.e. codimension >= n-k.
std::vector<Mask> skeleton(const FaceComplex& k, int dim);

// Chart data at a vertex sigma_v: the fixed bijection {1..n} -> facets of
// sigma_v (sorted facet order) used to identify local faces with subsets of [n].
struct VertexChart {
  Mask vertex = 0;
  std::vector<int> order;  // position p (0-based) -> facet index

  Mask to_facets(Mask subset_of_n) const;   // subsets of [n] -> facet sets
  Mask to_positions(Mask facet_set) const;  // inverse on subsets of the vertex
};

VertexChart restrict_to_vertex(const FaceComplex& k, Mask sigma_v);

// Facet bijection search k1 -> k2 preserving the simplex families.  The
// optional predicates prune by facet pair and by fully mapped simplex (a
// simplex of k1 together with its image); both must accept on a hit.  Returns
// the image table and the number of search nodes explored; a nullopt map
// means the search was exhausted.
struct IsoSearchResult {
  std::optional<std::vector<int>> facet_map;
  std::uint64_t nodes_explored = 0;
};

IsoSearchResult find_complex_isomorphism(
    const FaceComplex& k1, const FaceComplex& k2,
    const std::function<bool(int, int)>& facet_compatible = nullptr,
    const std::function<bool(Mask, Mask)>& simplex_compatible = nullptr,
    std::uint64_t max_nodes = 10'000'000);

}  // namespace quoric
