#include "quoric/conj_class.hpp"

#include <algorithm>
#include <limits>

namespace quoric {

bool class_less(const ConjClass& a, const ConjClass& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  for (int i = 0; i < a.rank(); ++i) {
    if (a.sets[i] != b.sets[i]) return mask_list_less(a.sets[i], b.sets[i]);
  }
  return false;
}

bool is_valid_class(int n, const std::vector<Mask>& sets) {
  if (n < 0 || n > 63) return false;
  Mask universe = n == 0 ? 0 : ((Mask{1} << n) - 1);
  Mask seen = 0;
  for (Mask s : sets) {
    if (s == 0) return false;            // nonempty
    if (s & ~universe) return false;     // inside [n]
    if (s & seen) return false;          // pairwise disjoint
    seen |= s;
  }
  return true;
}

ConjClass make_class(int n, std::vector<Mask> sets) {
  if (!is_valid_class(n, sets))
    throw domain_error("make_class: not a family of disjoint nonempty subsets of [n]");
  // disjoint nonempty sets have distinct minima, so min-index order is the
  // lexicographic order on index lists
  std::sort(sets.begin(), sets.end(),
            [](Mask a, Mask b) { return min_index(a) < min_index(b); });
  return ConjClass{n, std::move(sets)};
}

ConjClass make_class_indices(int n, const std::vector<std::vector<int>>& sets) {
  std::vector<Mask> masks;
  masks.reserve(sets.size());
  for (const auto& s : sets) {
    for (int i : s)
      if (i < 1 || i > n) throw domain_error("make_class: index outside [n]");
    masks.push_back(mask_of(s));
  }
  return make_class(n, std::move(masks));
}

bool subclass(const ConjClass& c1, const ConjClass& c2) {
  if (c1.ambient != c2.ambient) throw domain_error("subclass: ambient rank mismatch");
  for (Mask gamma : c1.sets) {
    Mask covered = 0;
    for (Mask delta : c2.sets) {
      if (delta & gamma) {
        if (delta & ~gamma) return false;  // straddles the boundary of gamma
        covered |= delta;
      }
    }
    if (covered != gamma) return false;
  }
  return true;
}

namespace {

// saturating count of families: sum_s C(n,s) * S(s,k)
unsigned long long count_families(int n, int k) {
  const unsigned long long cap = std::numeric_limits<unsigned long long>::max() / 4;
  // Stirling numbers of the second kind up to n
  std::vector<std::vector<unsigned long long>> st(n + 1,
                                                  std::vector<unsigned long long>(k + 1, 0));
  st[0][0] = 1;
  for (int s = 1; s <= n; ++s)
    for (int j = 1; j <= k; ++j) {
      unsigned long long v = st[s - 1][j - 1];
      unsigned long long w = st[s - 1][j];
      v = std::min(cap, v + std::min(cap / std::max(1, j), w) * j);
      st[s][j] = v;
    }
  std::vector<unsigned long long> binom(n + 1, 0);
  binom[0] = 1;
  for (int s = 1; s <= n; ++s)
    for (int j = s; j >= 1; --j) binom[j] = std::min(cap, binom[j] + binom[j - 1]);
  unsigned long long total = 0;
  for (int s = 0; s <= n; ++s) {
    unsigned long long t = (st[s][k] > 0 && binom[s] > cap / st[s][k])
                               ? cap
                               : binom[s] * st[s][k];
    total = std::min(cap, total + t);
  }
  return total;
}

void enumerate_rec(int n, int k, int elem, std::vector<Mask>& blocks,
                   std::vector<ConjClass>& out) {
  int remaining = n - elem + 1;
  if (static_cast<int>(blocks.size()) + remaining < k) return;  // cannot reach k blocks
  if (elem > n) {
    if (static_cast<int>(blocks.size()) == k) out.push_back(ConjClass{n, blocks});
    return;
  }
  Mask bit = Mask{1} << (elem - 1);
  // leave elem out of the support
  enumerate_rec(n, k, elem + 1, blocks, out);
  // put elem into an existing block
  for (auto& b : blocks) {
    b |= bit;
    enumerate_rec(n, k, elem + 1, blocks, out);
    b &= ~bit;
  }
  // open a new block (always appended, so blocks stay ordered by minimum)
  if (static_cast<int>(blocks.size()) < k) {
    blocks.push_back(bit);
    enumerate_rec(n, k, elem + 1, blocks, out);
    blocks.pop_back();
  }
}

}  // namespace

std::vector<ConjClass> enumerate_classes(int n, int k) {
  if (n < 0 || n > 63 || k < 0) throw domain_error("enumerate_classes: bad arguments");
  if (k > n) return {};
  if (k == 0) return {ConjClass::trivial(n)};
  if (count_families(n, k) > 20'000'000ull)
    throw size_guard_error("enumerate_classes: class count exceeds budget");
  std::vector<ConjClass> out;
  std::vector<Mask> blocks;
  enumerate_rec(n, k, 1, blocks, out);
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

std::vector<ConjClass> enumerate_all_classes(int n) {
  std::vector<ConjClass> out;
  for (int k = 0; k <= n; ++k) {
    auto part = enumerate_classes(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<int> CanonicalSubgroup::pattern(int i) const {
  if (i < 0 || i >= rank()) throw domain_error("pattern: generator index out of range");
  std::vector<int> v(ambient, 0);
  for (int j : indices_of(supports[i])) v[j - 1] = 1;
  return v;
}

CanonicalSubgroup canonical_subgroup(const ConjClass& c) {
  return CanonicalSubgroup{c.ambient, c.sets};
}

bool member(const CanonicalSubgroup& h, const GroupElement& s, double tol) {
  if (s.rank() != h.ambient) throw domain_error("member: rank mismatch");
  Mask used = 0;
  for (Mask supp : h.supports) {
    auto idx = indices_of(supp);
    const Quaternion& ref = s.coords[idx.front() - 1];
    for (int j : idx)
      if (distance(s.coords[j - 1], ref) > tol) return false;
    used |= supp;
  }
  for (int j = 1; j <= h.ambient; ++j) {
    if (used & (Mask{1} << (j - 1))) continue;
    if (distance(s.coords[j - 1], Quaternion::one()) > tol) return false;
  }
  return true;
}

namespace {

// element of the representative Q(u^1,...,u^k): coordinate j of gamma_l is
// psi_{u_j}(t_l), coordinates off the support are 1
GroupElement rep_element(int n, const std::vector<Mask>& sets,
                         const std::vector<std::vector<Quaternion>>& twists,
                         const std::vector<Quaternion>& t) {
  GroupElement g = GroupElement::identity(n);
  for (std::size_t l = 0; l < sets.size(); ++l) {
    auto idx = indices_of(sets[l]);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Quaternion& u = twists[l][p];
      g.coords[idx[p] - 1] = u * t[l] * u.conjugate();
    }
  }
  return g;
}

}  // namespace

bool containment_oracle(const ConjClass& c1, const ConjClass& c2, int samples, double tol,
                        std::uint64_t seed) {
  if (c1.ambient != c2.ambient) throw domain_error("containment_oracle: ambient rank mismatch");
  const int n = c1.ambient;
  const int k = c1.rank();
  CanonicalSubgroup h2 = canonical_subgroup(c2);
  std::mt19937_64 rng(seed);

  // representative 0 is the canonical one (all twists 1); the rest are random
  // conjugates Q(u^1,...,u^k) in general position
  for (int rep = 0; rep <= samples; ++rep) {
    std::vector<std::vector<Quaternion>> twists;
    twists.reserve(k);
    for (int l = 0; l < k; ++l) {
      std::vector<Quaternion> row(popcount(c1.sets[l]), Quaternion::one());
      if (rep > 0)
        for (auto& u : row) u = random_unit_quaternion(rng);
      twists.push_back(std::move(row));
    }
    bool all_inside = true;
    for (int s = 0; s < std::max(4, samples) && all_inside; ++s) {
      std::vector<Quaternion> t;
      t.reserve(k);
      for (int l = 0; l < k; ++l) {
        switch (s) {
          case 0: t.push_back(Quaternion::i()); break;
          case 1: t.push_back(Quaternion::j()); break;
          default: t.push_back(random_unit_quaternion(rng));
        }
      }
      if (!member(h2, rep_element(n, c1.sets, twists, t), tol)) all_inside = false;
    }
    if (all_inside) return true;
  }
  return false;
}

std::string to_string(const ConjClass& c) {
  if (c.sets.empty()) return "Q_{}";
  std::string s = "Q_";
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    if (i) s += ",";
    s += mask_to_string(c.sets[i]);
  }
  return s;
}

}  // namespace quoric
