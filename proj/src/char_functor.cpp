#include "quoric/char_functor.hpp"

#include <algorithm>
#include <numeric>

namespace quoric {

const ConjClass& CharFunctor::at(Mask sigma) const {
  auto it = table.find(sigma);
  if (it == table.end()) throw domain_error("functor has no value at " + mask_to_string(sigma));
  return it->second;
}

FunctorReport validate_functor(const CharacteristicPair& p) {
  FunctorReport rep;
  auto flag = [&](std::string v) {
    rep.valid = false;
    rep.violations.push_back(std::move(v));
  };
  const FaceComplex& k = p.complex;
  const CharFunctor& f = p.functor;

  for (Mask s : k.simplices)
    if (!f.table.count(s)) flag("no class assigned at " + mask_to_string(s));
  for (const auto& [s, cls] : f.table) {
    if (!k.contains(s)) flag("class assigned at non-face " + mask_to_string(s));
    if (cls.ambient != f.ambient) flag("ambient rank mismatch at " + mask_to_string(s));
    if (cls.rank() != popcount(s))
      flag("rank(lambda) != |sigma| at " + mask_to_string(s));
  }
  if (!rep.valid) return rep;

  for (Mask s : k.simplices)
    for (Mask t : k.simplices) {
      if (s == t || (s & t) != s) continue;
      if (!subclass(f.at(s), f.at(t)))
        flag("not monotone: " + mask_to_string(s) + " into " + mask_to_string(t));
    }

  for (Mask v : k.vertices()) {
    std::vector<ConjClass> seen;
    Mask sub = v;
    bool injective = true;
    while (injective) {
      const ConjClass& c = f.at(sub);
      for (const auto& prev : seen)
        if (prev == c) {
          flag("not injective on the local faces of vertex " + mask_to_string(v));
          injective = false;
          break;
        }
      seen.push_back(c);
      if (sub == 0) break;
      sub = (sub - 1) & v;
    }
  }
  return rep;
}

namespace {

struct FunctorSearch {
  const FaceComplex& k;
  int ambient;
  std::uint64_t max_candidates;
  std::uint64_t nodes = 0;                       // candidate trials, guarded
  std::vector<Mask> order;                       // simplices sorted by size
  std::vector<std::vector<ConjClass>> classes_by_rank;
  std::map<Mask, ConjClass> assigned;
  std::vector<CharFunctor> out;

  FunctorSearch(const FaceComplex& k_, int ambient_, std::uint64_t maxc)
      : k(k_), ambient(ambient_), max_candidates(maxc) {
    order = k.simplices;
    std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
      if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
      return a < b;
    });
    int max_rank = 0;
    for (Mask s : order) max_rank = std::max(max_rank, popcount(s));
    for (int r = 0; r <= max_rank; ++r)
      classes_by_rank.push_back(r <= ambient ? enumerate_classes(ambient, r)
                                             : std::vector<ConjClass>{});
  }

  bool admissible(Mask s, const ConjClass& c) const {
    for (const auto& [t, ct] : assigned) {
      if ((t & s) == t && t != s && !subclass(ct, c)) return false;
      if ((s & t) == s && t != s && !subclass(c, ct)) return false;
      // injectivity inside a common vertex
      if (c == ct) {
        Mask both = s | t;
        for (Mask v : k.simplices)
          if (popcount(v) == k.corner_dim && (v & both) == both) return false;
      }
    }
    return true;
  }

  // full pairwise recheck; pre-seeded labels bypass the incremental pruning
  bool leaf_valid() const {
    for (const auto& [s, cs] : assigned)
      for (const auto& [t, ct] : assigned) {
        if (s == t) continue;
        if ((s & t) == s && !subclass(cs, ct)) return false;
        if (cs == ct) {
          Mask both = s | t;
          for (Mask v : k.simplices)
            if (popcount(v) == k.corner_dim && (v & both) == both) return false;
        }
      }
    return true;
  }

  void search(std::size_t pos) {
    if (pos == order.size()) {
      if (!leaf_valid()) return;
      CharFunctor f;
      f.ambient = ambient;
      f.table = assigned;
      out.push_back(std::move(f));
      return;
    }
    Mask s = order[pos];
    if (assigned.count(s)) {
      search(pos + 1);
      return;
    }
    for (const ConjClass& c : classes_by_rank[popcount(s)]) {
      if (++nodes > max_candidates)
        throw size_guard_error("functor enumeration: candidate budget exceeded");
      if (!admissible(s, c)) continue;
      assigned.emplace(s, c);
      search(pos + 1);
      assigned.erase(s);
    }
  }
};

}  // namespace

std::vector<CharFunctor> infer_from_facets(const FaceComplex& k, int ambient,
                                           const std::map<int, Mask>& facet_labels,
                                           std::uint64_t max_candidates) {
  if (ambient < 0 || ambient > 63) throw domain_error("infer_from_facets: bad ambient rank");
  FunctorSearch search(k, ambient, max_candidates);
  for (const auto& [facet, gamma] : facet_labels) {
    if (facet < 0 || facet >= k.facet_count())
      throw domain_error("infer_from_facets: facet index out of range");
    search.assigned.emplace(Mask{1} << facet, make_class(ambient, {gamma}));
  }
  // seed consistency: a fixed label could already clash
  for (const auto& [s, c] : search.assigned)
    if (!k.contains(s) || c.rank() != popcount(s))
      throw domain_error("infer_from_facets: label on a non-facet");
  search.search(0);
  return search.out;
}

std::vector<CharFunctor> enumerate_functors(const FaceComplex& k, int ambient,
                                            std::uint64_t max_candidates) {
  if (ambient < 0 || ambient > 63) throw domain_error("enumerate_functors: bad ambient rank");
  FunctorSearch search(k, ambient, max_candidates);
  search.search(0);
  std::sort(search.out.begin(), search.out.end(),
            [&](const CharFunctor& a, const CharFunctor& b) {
              return canonical_form(k, a) < canonical_form(k, b);
            });
  return search.out;
}

CanonicalSubgroup canonical_subgroup_at(const CharacteristicPair& p, Mask sigma) {
  if (!p.complex.contains(sigma))
    throw domain_error("canonical_subgroup_at: not a face of the complex");
  return canonical_subgroup(p.functor.at(sigma));
}

OrbitTypePoset orbit_type_poset(const CharacteristicPair& p) {
  OrbitTypePoset poset;
  std::map<Mask, int> index;
  for (Mask s : p.complex.simplices) {
    index[s] = static_cast<int>(poset.nodes.size());
    poset.nodes.push_back({s, p.functor.at(s)});
  }
  for (Mask s : p.complex.simplices)
    for (int f = 0; f < p.complex.facet_count(); ++f) {
      Mask t = s | (Mask{1} << f);
      if (t != s && p.complex.contains(t)) poset.hasse.emplace_back(index[s], index[t]);
    }
  return poset;
}

bool orbit_rep_equal(const CharacteristicPair& p, const OrbitPoint& x, const OrbitPoint& y,
                     double tol) {
  if (!p.complex.contains(x.face) || !p.complex.contains(y.face))
    throw domain_error("orbit_rep_equal: point over a non-face");
  if (x.face != y.face) return false;
  return member(canonical_subgroup_at(p, x.face), x.q.inverse() * y.q, tol);
}

namespace {

EquivalenceResult search_with_classes(const CharacteristicPair& p, const CharacteristicPair& pp,
                                      const std::map<Mask, ConjClass>& pp_table,
                                      std::uint64_t max_nodes) {
  EquivalenceResult res;
  for (Mask s : pp.complex.simplices)
    if (!pp_table.count(s)) throw domain_error("equivalence search: incomplete functor");
  // facet pruning by identical rank-1 classes; every fully mapped simplex must
  // carry identical classes, so the found bijection is exact by construction
  auto facet_ok = [&](int fpp, int fp) {
    return pp_table.at(Mask{1} << fpp) == p.functor.at(Mask{1} << fp);
  };
  auto simplex_ok = [&](Mask s, Mask img) { return pp_table.at(s) == p.functor.at(img); };
  IsoSearchResult iso =
      find_complex_isomorphism(pp.complex, p.complex, facet_ok, simplex_ok, max_nodes);
  res.nodes_explored = iso.nodes_explored;
  res.facet_map = iso.facet_map;
  return res;
}

}  // namespace

EquivalenceResult equivalence_search(const CharacteristicPair& p, const CharacteristicPair& pp,
                                     std::uint64_t max_nodes) {
  if (p.functor.ambient != pp.functor.ambient) return {};
  return search_with_classes(p, pp, pp.functor.table, max_nodes);
}

EquivalenceResult weak_equivalence_search(const CharacteristicPair& p,
                                          const CharacteristicPair& pp,
                                          std::uint64_t max_nodes) {
  if (p.functor.ambient != pp.functor.ambient) return {};
  const int n = p.functor.ambient;
  if (n > 8) throw size_guard_error("weak equivalence: coordinate permutation budget exceeded");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  EquivalenceResult last;
  do {
    std::map<Mask, ConjClass> permuted;
    for (const auto& [s, c] : pp.functor.table) {
      std::vector<Mask> sets;
      for (Mask set : c.sets) {
        Mask img = 0;
        for (int i : indices_of(set)) img |= Mask{1} << (perm[i - 1] - 1);
        sets.push_back(img);
      }
      permuted.emplace(s, make_class(n, std::move(sets)));
    }
    EquivalenceResult res = search_with_classes(p, pp, permuted, max_nodes);
    last.nodes_explored += res.nodes_explored;
    if (res.facet_map) {
      last.facet_map = res.facet_map;
      last.coordinate_permutation = perm;
      return last;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return last;
}

CharacteristicPair pair_product(const CharacteristicPair& p1, const CharacteristicPair& p2) {
  CharacteristicPair p;
  p.complex = product(p1.complex, p2.complex);
  const int f1 = p1.complex.facet_count();
  const int n1 = p1.functor.ambient;
  p.functor.ambient = n1 + p2.functor.ambient;
  for (const auto& [s1, c1] : p1.functor.table)
    for (const auto& [s2, c2] : p2.functor.table) {
      std::vector<Mask> sets = c1.sets;
      for (Mask s : c2.sets) sets.push_back(s << n1);
      p.functor.table.emplace(s1 | (s2 << f1), make_class(p.functor.ambient, std::move(sets)));
    }
  return p;
}

std::string canonical_form(const FaceComplex& k, const CharFunctor& f) {
  std::string s = "n=" + std::to_string(k.corner_dim) + ";amb=" + std::to_string(f.ambient) + ";";
  for (Mask m : k.simplices) {
    s += mask_to_string(m) + "->" + to_string(f.at(m)) + ";";
  }
  return s;
}

std::uint64_t census_hash(const std::string& canonical) {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace quoric
