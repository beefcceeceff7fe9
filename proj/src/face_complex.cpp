#include "quoric/face_complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace quoric {

bool FaceComplex::contains(Mask s) const {
  return std::binary_search(simplices.begin(), simplices.end(), s);
}

std::vector<Mask> FaceComplex::maximal_simplices() const {
  std::vector<Mask> out;
  for (Mask s : simplices) {
    bool maximal = true;
    for (Mask t : simplices)
      if (t != s && (t & s) == s) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<Mask> FaceComplex::vertices() const {
  std::vector<Mask> out;
  for (Mask s : simplices)
    if (popcount(s) == corner_dim) out.push_back(s);
  return out;
}

int FaceComplex::facet_index(const std::string& name) const {
  for (int i = 0; i < facet_count(); ++i)
    if (facet_names[i] == name) return i;
  return -1;
}

FaceComplex FaceComplex::from_maximal(int n, std::vector<std::string> names,
                                      const std::vector<Mask>& maximal, bool homotopy_polytope) {
  if (n < 0) throw domain_error("from_maximal: negative corner dimension");
  if (names.size() > 63) throw domain_error("from_maximal: too many facets");
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw domain_error("from_maximal: duplicate facet names");
  }
  Mask universe = names.empty() ? 0 : ((Mask{1} << names.size()) - 1);
  std::set<Mask> closed;
  closed.insert(0);
  for (Mask m : maximal) {
    if (m & ~universe) throw domain_error("from_maximal: facet index out of range");
    if (popcount(m) > n) throw domain_error("from_maximal: simplex larger than corner dimension");
    // all subsets of m
    Mask sub = m;
    while (true) {
      closed.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & m;
    }
  }
  FaceComplex k;
  k.corner_dim = n;
  k.facet_names = std::move(names);
  k.simplices.assign(closed.begin(), closed.end());
  k.homotopy_polytope = homotopy_polytope;
  return k;
}

NicenessReport validate_nice(const FaceComplex& k) {
  NicenessReport rep;
  auto flag = [&](std::string v) {
    rep.valid = false;
    rep.violations.push_back(std::move(v));
  };

  if (!k.contains(0)) flag("empty face missing");
  for (int i = 0; i < k.facet_count(); ++i)
    if (!k.contains(Mask{1} << i)) flag("facet " + k.facet_names[i] + " is not a face");

  for (Mask s : k.simplices) {
    if (popcount(s) > k.corner_dim)
      flag("face " + mask_to_string(s) + " exceeds corner dimension");
    Mask rest = s;
    while (rest) {
      Mask bit = rest & (~rest + 1);
      if (!k.contains(s & ~bit)) {
        flag("family not downward closed at " + mask_to_string(s));
        break;
      }
      rest &= rest - 1;
    }
  }

  std::vector<int> rank_count(k.corner_dim + 1, 0);
  for (Mask s : k.simplices) {
    int c = popcount(s);
    if (c <= k.corner_dim) ++rank_count[c];
  }
  for (int c = 0; c <= k.corner_dim; ++c)
    if (rank_count[c] == 0) flag("no face of codimension " + std::to_string(c));

  if (k.homotopy_polytope) {
    for (Mask s : k.maximal_simplices())
      if (popcount(s) != k.corner_dim)
        flag("maximal face " + mask_to_string(s) + " has size != corner dimension");
  }
  return rep;
}

FaceComplex simplex_corner(int n) {
  if (n < 1) throw domain_error("simplex_corner: n must be >= 1");
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back("f" + std::to_string(i));
  std::vector<Mask> maximal;
  Mask full = (Mask{1} << (n + 1)) - 1;
  for (int i = 0; i <= n; ++i) maximal.push_back(full & ~(Mask{1} << i));
  return FaceComplex::from_maximal(n, std::move(names), maximal);
}

FaceComplex cube_corner(int n) {
  if (n < 1) throw domain_error("cube_corner: n must be >= 1");
  if (n > 20) throw size_guard_error("cube_corner: too many vertices");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) {
    names.push_back("x" + std::to_string(i) + "-");
    names.push_back("x" + std::to_string(i) + "+");
  }
  // maximal faces pick one facet from each opposite pair
  std::vector<Mask> maximal;
  for (Mask pick = 0; pick < (Mask{1} << n); ++pick) {
    Mask m = 0;
    for (int i = 0; i < n; ++i)
      m |= Mask{1} << (2 * i + ((pick >> i) & 1));
    maximal.push_back(m);
  }
  return FaceComplex::from_maximal(n, std::move(names), maximal);
}

FaceComplex polygon_corner(int m) {
  if (m < 3) throw domain_error("polygon_corner: need at least 3 edges");
  if (m > 62) throw domain_error("polygon_corner: too many edges");
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("e" + std::to_string(i));
  std::vector<Mask> maximal;
  for (int i = 0; i < m; ++i)
    maximal.push_back((Mask{1} << i) | (Mask{1} << ((i + 1) % m)));
  return FaceComplex::from_maximal(2, std::move(names), maximal);
}

FaceComplex product(const FaceComplex& k1, const FaceComplex& k2) {
  int f1 = k1.facet_count();
  if (f1 + k2.facet_count() > 63) throw domain_error("product: too many facets");
  FaceComplex k;
  k.corner_dim = k1.corner_dim + k2.corner_dim;
  for (const auto& nm : k1.facet_names) k.facet_names.push_back("L:" + nm);
  for (const auto& nm : k2.facet_names) k.facet_names.push_back("R:" + nm);
  std::set<Mask> joined;
  for (Mask a : k1.simplices)
    for (Mask b : k2.simplices) joined.insert(a | (b << f1));
  k.simplices.assign(joined.begin(), joined.end());
  k.homotopy_polytope = k1.homotopy_polytope && k2.homotopy_polytope;
  return k;
}

std::vector<Mask> skeleton(const FaceComplex& k, int dim) {
  if (dim < 0 || dim > k.corner_dim) throw domain_error("skeleton: dimension out of range");
  std::vector<Mask> out;
  for (Mask s : k.simplices)
    if (popcount(s) >= k.corner_dim - dim) out.push_back(s);
  return out;
}

Mask VertexChart::to_facets(Mask subset_of_n) const {
  Mask out = 0;
  for (std::size_t p = 0; p < order.size(); ++p)
    if (subset_of_n & (Mask{1} << p)) out |= Mask{1} << order[p];
  return out;
}

Mask VertexChart::to_positions(Mask facet_set) const {
  if (facet_set & ~vertex) throw domain_error("chart: set not contained in the vertex");
  Mask out = 0;
  for (std::size_t p = 0; p < order.size(); ++p)
    if (facet_set & (Mask{1} << order[p])) out |= Mask{1} << p;
  return out;
}

VertexChart restrict_to_vertex(const FaceComplex& k, Mask sigma_v) {
  if (popcount(sigma_v) != k.corner_dim || !k.contains(sigma_v))
    throw domain_error("restrict_to_vertex: not a vertex of the complex");
  VertexChart chart;
  chart.vertex = sigma_v;
  for (int i = 0; i < k.facet_count(); ++i)
    if (sigma_v & (Mask{1} << i)) chart.order.push_back(i);
  return chart;
}

namespace {

struct IsoSearch {
  const FaceComplex& k1;
  const FaceComplex& k2;
  const std::function<bool(int, int)>& compatible;
  const std::function<bool(Mask, Mask)>& simplex_ok;
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;
  std::vector<int> image;    // k1 facet -> k2 facet, -1 unset
  std::vector<int> used;     // k2 facet claimed
  std::vector<std::vector<int>> degree1, degree2;  // facet -> count per size

  IsoSearch(const FaceComplex& a, const FaceComplex& b,
            const std::function<bool(int, int)>& comp,
            const std::function<bool(Mask, Mask)>& simp, std::uint64_t maxn)
      : k1(a), k2(b), compatible(comp), simplex_ok(simp), max_nodes(maxn) {
    degree1 = degrees(k1);
    degree2 = degrees(k2);
    image.assign(k1.facet_count(), -1);
    used.assign(k2.facet_count(), 0);
  }

  static std::vector<std::vector<int>> degrees(const FaceComplex& k) {
    std::vector<std::vector<int>> d(k.facet_count(),
                                    std::vector<int>(k.corner_dim + 1, 0));
    for (Mask s : k.simplices) {
      int c = popcount(s);
      for (int i : indices_of(s)) ++d[i - 1][std::min(c, k.corner_dim)];
    }
    return d;
  }

  // check every simplex of k1 fully mapped and containing facet f, both ways
  bool locally_consistent(int f) const {
    for (Mask s : k1.simplices) {
      if (!(s & (Mask{1} << f))) continue;
      Mask img = 0;
      bool full = true;
      for (int i : indices_of(s)) {
        int m = image[i - 1];
        if (m < 0) {
          full = false;
          break;
        }
        img |= Mask{1} << m;
      }
      if (full) {
        if (!k2.contains(img)) return false;
        if (simplex_ok && !simplex_ok(s, img)) return false;
      }
    }
    Mask mapped1 = 0, mapped2 = 0;
    for (int i = 0; i < k1.facet_count(); ++i)
      if (image[i] >= 0) {
        mapped1 |= Mask{1} << i;
        mapped2 |= Mask{1} << image[i];
      }
    for (Mask s : k2.simplices) {
      if ((s & mapped2) != s) continue;
      Mask pre = 0;
      for (int i = 0; i < k1.facet_count(); ++i)
        if (image[i] >= 0 && (s & (Mask{1} << image[i]))) pre |= Mask{1} << i;
      if (!k1.contains(pre)) return false;
    }
    return true;
  }

  bool extend(int f) {
    if (f == k1.facet_count()) return true;
    for (int g = 0; g < k2.facet_count(); ++g) {
      if (used[g]) continue;
      if (degree1[f] != degree2[g]) continue;
      if (compatible && !compatible(f, g)) continue;
      if (++nodes > max_nodes) throw size_guard_error("isomorphism search: node budget exceeded");
      image[f] = g;
      used[g] = 1;
      if (locally_consistent(f) && extend(f + 1)) return true;
      image[f] = -1;
      used[g] = 0;
    }
    return false;
  }
};

}  // namespace

IsoSearchResult find_complex_isomorphism(const FaceComplex& k1, const FaceComplex& k2,
                                         const std::function<bool(int, int)>& facet_compatible,
                                         const std::function<bool(Mask, Mask)>& simplex_compatible,
                                         std::uint64_t max_nodes) {
  IsoSearchResult res;
  if (k1.facet_count() != k2.facet_count() || k1.corner_dim != k2.corner_dim ||
      k1.simplices.size() != k2.simplices.size())
    return res;
  IsoSearch search(k1, k2, facet_compatible, simplex_compatible, max_nodes);
  bool found = search.extend(0);
  res.nodes_explored = search.nodes;
  if (found) res.facet_map = search.image;
  return res;
}

}  // namespace quoric
