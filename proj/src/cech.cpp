#include "quoric/cech.hpp"

#include <algorithm>
#include <deque>

namespace quoric::cech {

Nerve Nerve::make(int patches, std::vector<std::pair<int, int>> edges,
                  std::vector<std::array<int, 3>> triples) {
  Nerve n;
  n.patch_count = patches;
  for (auto& [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= patches || b >= patches)
      throw domain_error("nerve: bad overlap edge");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  n.edges = std::move(edges);
  for (auto& t : triples) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) throw domain_error("nerve: degenerate triple");
    if (!n.has_edge(t[0], t[1]) || !n.has_edge(t[1], t[2]) || !n.has_edge(t[0], t[2]))
      throw domain_error("nerve: triple without its edges");
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  n.triples = std::move(triples);
  return n;
}

bool Nerve::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

GroupElement Cochain1::theta(int a, int b) const {
  if (a == b) return GroupElement::identity(rank);
  bool flip = a > b;
  if (flip) std::swap(a, b);
  auto it = values.find({a, b});
  if (it == values.end())
    throw domain_error("cochain: no value on edge (" + std::to_string(a) + "," +
                       std::to_string(b) + ")");
  return flip ? it->second.inverse() : it->second;
}

void Cochain1::set(int a, int b, GroupElement g) {
  if (a == b) throw domain_error("cochain: diagonal edge");
  if (g.rank() != rank) throw domain_error("cochain: value rank mismatch");
  if (a > b) {
    std::swap(a, b);
    g = g.inverse();
  }
  values[{a, b}] = std::move(g);
}

CocycleReport verify_cocycle(const Nerve& n, const Cochain1& theta, double tol) {
  CocycleReport rep;
  for (const auto& e : n.edges) theta.theta(e.first, e.second);  // missing -> domain_error
  for (const auto& t : n.triples) {
    GroupElement prod =
        theta.theta(t[0], t[1]) * theta.theta(t[1], t[2]) * theta.theta(t[2], t[0]);
    double r = distance(prod, GroupElement::identity(theta.rank));
    if (r > tol) {
      rep.valid = false;
      rep.violations.push_back({t, r});
    }
  }
  return rep;
}

Cochain1 coboundary_act(const Cochain0& eta, const Cochain1& theta) {
  if (static_cast<int>(eta.values.size()) == 0) throw domain_error("coboundary: empty gauge");
  if (eta.rank != theta.rank) throw domain_error("coboundary: rank mismatch");
  Cochain1 out;
  out.rank = theta.rank;
  for (const auto& [e, g] : theta.values) {
    if (e.first >= static_cast<int>(eta.values.size()) ||
        e.second >= static_cast<int>(eta.values.size()))
      throw domain_error("coboundary: gauge is too short");
    out.values[e] = eta.values[e.first] * g * eta.values[e.second].inverse();
  }
  return out;
}

TrivializeResult trivialize(const Nerve& n, const Cochain1& theta, double tol,
                            TreeStrategy strategy, int root) {
  if (n.patch_count <= 0) throw domain_error("trivialize: empty nerve");
  if (root < 0 || root >= n.patch_count) throw domain_error("trivialize: bad root");
  for (const auto& e : n.edges) theta.theta(e.first, e.second);  // missing -> domain_error

  std::vector<std::vector<int>> adj(n.patch_count);
  for (const auto& [a, b] : n.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  TrivializeResult res;
  Cochain0 eta;
  eta.rank = theta.rank;
  eta.values.assign(n.patch_count, GroupElement::identity(theta.rank));
  std::vector<int> seen(n.patch_count, 0);
  std::vector<std::pair<int, int>> tree;

  // spanning forest: preferred root first, remaining components in index order
  std::vector<int> roots;
  roots.push_back(root);
  for (int v = 0; v < n.patch_count; ++v) roots.push_back(v);
  for (int r : roots) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::deque<int> work{r};
    while (!work.empty()) {
      int v;
      if (strategy == TreeStrategy::bfs) {
        v = work.front();
        work.pop_front();
      } else {
        v = work.back();
        work.pop_back();
      }
      for (int w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        // gauge transported so that eta_v theta_{vw} eta_w^{-1} = 1
        eta.values[w] = eta.values[v] * theta.theta(v, w);
        tree.emplace_back(std::min(v, w), std::max(v, w));
        work.push_back(w);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  res.tree_edges = tree;

  for (const auto& [a, b] : n.edges) {
    if (std::binary_search(tree.begin(), tree.end(), std::make_pair(a, b))) continue;
    GroupElement h = eta.values[a] * theta.theta(a, b) * eta.values[b].inverse();
    if (!is_identity(h, tol)) res.obstructions.push_back({{a, b}, h});
  }
  if (res.obstructions.empty()) res.gauge = std::move(eta);
  return res;
}

SectionTable section_from_trivialization(const CharacteristicPair& p, const Cover& cover,
                                         const Cochain1& theta, const Cochain0& gauge,
                                         double tol) {
  const Nerve& n = cover.nerve;
  if (static_cast<int>(cover.patch_face.size()) != n.patch_count)
    throw domain_error("section: cover must assign a face to every patch");
  if (static_cast<int>(gauge.values.size()) != n.patch_count)
    throw domain_error("section: gauge size mismatch");
  for (Mask f : cover.patch_face)
    if (!p.complex.contains(f)) throw domain_error("section: patch over a non-face");

  SectionTable table;
  table.faces = cover.patch_face;
  table.values.reserve(n.patch_count);
  for (int a = 0; a < n.patch_count; ++a) table.values.push_back(gauge.values[a].inverse());

  for (const auto& [a, b] : n.edges) {
    if (cover.patch_face[a] != cover.patch_face[b])
      throw domain_error("section: overlap crosses strata");
    // gluing law q_a = theta_{ab} q_b, i.e. eta_a theta_{ab} eta_b^{-1} = 1
    GroupElement glue = table.values[a].inverse() * theta.theta(a, b) * table.values[b];
    double r = distance(glue, GroupElement::identity(theta.rank));
    table.max_residual = std::max(table.max_residual, r);
    if (r > 10 * tol) throw domain_error("section: gauge does not trivialize the cocycle");
    if (!member(canonical_subgroup_at(p, cover.patch_face[a]), glue, 10 * tol))
      throw domain_error("section: section values do not glue in the model");
  }
  return table;
}

SectionResult synthesize_section(const CharacteristicPair& p, const Cover& cover,
                                 const Cochain1& theta, double tol) {
  SectionResult res;
  TrivializeResult triv = trivialize(cover.nerve, theta, tol);
  if (!triv.gauge) {
    res.obstructions = std::move(triv.obstructions);
    return res;
  }
  res.section = section_from_trivialization(p, cover, theta, *triv.gauge, tol);
  return res;
}

std::pair<Nerve, Cochain1> refine_barycentric(const Nerve& n, const Cochain1& theta,
                                              double tol) {
  CocycleReport check = verify_cocycle(n, theta, tol);
  if (!check.valid) throw domain_error("refine: not a cocycle");

  // new patches: originals, one midpoint per edge, one center per triple
  int next = n.patch_count;
  std::map<std::pair<int, int>, int> midpoint;
  for (const auto& e : n.edges) midpoint[e] = next++;
  std::map<std::array<int, 3>, int> center;
  for (const auto& t : n.triples) center[t] = next++;

  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> triples;
  Cochain1 out;
  out.rank = theta.rank;

  auto add_edge = [&](int a, int b, const GroupElement& g) {
    edges.emplace_back(std::min(a, b), std::max(a, b));
    out.set(a, b, g);
  };

  // split each edge (a < b): transport theta_{ab} sits on the a-side half
  for (const auto& [a, b] : n.edges) {
    int m = midpoint.at({a, b});
    add_edge(a, m, theta.theta(a, b));
    add_edge(b, m, GroupElement::identity(theta.rank));
  }

  // cone each triple over its center; spokes transport along the hexagon
  for (const auto& t : n.triples) {
    int c = center.at(t);
    auto mid = [&](int x, int y) { return midpoint.at({std::min(x, y), std::max(x, y)}); };
    int hex[6] = {t[0], mid(t[0], t[1]), t[1], mid(t[1], t[2]), t[2], mid(t[2], t[0])};
    std::vector<GroupElement> spoke(6, GroupElement::identity(theta.rank));
    // theta on subdivided edges, looked up from `out`
    for (int i = 1; i < 6; ++i)
      spoke[i] = out.theta(hex[i], hex[i - 1]) * spoke[i - 1];
    for (int i = 0; i < 6; ++i) add_edge(hex[i], c, spoke[i]);
    for (int i = 0; i < 6; ++i)
      triples.push_back({hex[i], hex[(i + 1) % 6], c});
  }

  Nerve refined = Nerve::make(next, std::move(edges), std::move(triples));
  return {std::move(refined), std::move(out)};
}

Nerve fan_nerve(int ring) {
  if (ring < 3) throw domain_error("fan_nerve: need at least 3 ring patches");
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> triples;
  for (int i = 1; i <= ring; ++i) {
    int j = i % ring + 1;
    edges.emplace_back(0, i);
    edges.emplace_back(i, j);
    triples.push_back({0, i, j});
  }
  return Nerve::make(ring + 1, std::move(edges), std::move(triples));
}

Cover disk_cover(const CharacteristicPair& p, Mask face, int ring) {
  if (!p.complex.contains(face)) throw domain_error("disk_cover: not a face");
  Cover cover;
  cover.nerve = fan_nerve(ring);
  cover.patch_face.assign(cover.nerve.patch_count, face);
  return cover;
}

bool conjugate_equivalent(const Quaternion& p, const Quaternion& q, double tol) {
  require_unit(p, 1e-6, "conjugate_equivalent");
  require_unit(q, 1e-6, "conjugate_equivalent");
  return std::abs(p.a - q.a) <= tol;
}

bool conjugate_equivalent(const GroupElement& p, const GroupElement& q, double tol) {
  if (p.rank() != q.rank()) throw domain_error("conjugate_equivalent: rank mismatch");
  for (int i = 0; i < p.rank(); ++i)
    if (!conjugate_equivalent(p.coords[i], q.coords[i], tol)) return false;
  return true;
}

}  // namespace quoric::cech
