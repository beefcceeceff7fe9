#pragma once

#include <optional>
#include <vector>

#include "quoric/quaternion.hpp"

namespace quoric {

// Conjugacy class of the rank-k subgroups Q(u^1,...,u^k) <= Q^n.  A class is
// determined by its characteristic sets: k pairwise disjoint nonempty subsets
// of {1,...,n}, kept sorted lexicographically by index list.
struct ConjClass {
  int ambient = 0;             // n
  std::vector<Mask> sets;      // canonical order, pairwise disjoint, nonempty

  int rank() const { return static_cast<int>(sets.size()); }

  static ConjClass trivial(int n) { return ConjClass{n, {}}; }

  Mask support() const {
    Mask u = 0;
    for (Mask s : sets) u |= s;
    return u;
  }

  bool operator==(const ConjClass& o) const { return ambient == o.ambient && sets == o.sets; }
  bool operator!=(const ConjClass& o) const { return !(*this == o); }
};

// Enumeration / report order: by rank, then lexicographically on set lists.
bool class_less(const ConjClass& a, const ConjClass& b);

bool is_valid_class(int n, const std::vector<Mask>& sets);

// Validates and canonicalizes; throws domain_error on invalid data.
ConjClass make_class(int n, std::vector<Mask> sets);
ConjClass make_class_indices(int n, const std::vector<std::vector<int>>& sets);

// Subclass order on conjugacy classes: C1 <= C2 iff every characteristic set
// of C1 is a union of characteristic sets of C2.  The trivial class is the
// bottom element, the all-singletons class (Q^n itself) the top.
bool subclass(const ConjClass& c1, const ConjClass& c2);

// All classes of rank k in Q^n, in canonical order; k > n yields the empty
// list.  Refuses (size_guard_error) when the count would exceed the budget.
std::vector<ConjClass> enumerate_classes(int n, int k);

// Union over k = 0..n; total count is the Bell number B(n+1).
std::vector<ConjClass> enumerate_all_classes(int n);

// The representative Q(u^1,...,u^k) with (u^i)_j = 1 if j is in the i-th
// characteristic set and 0 otherwise.
struct CanonicalSubgroup {
  int ambient = 0;
  std::vector<Mask> supports;

  int rank() const { return static_cast<int>(supports.size()); }
  // 0/1 pattern of u^i as a length-n vector.
  std::vector<int> pattern(int i) const;
};

CanonicalSubgroup canonical_subgroup(const ConjClass& c);

// Membership of s in the canonical representative: s must be constant on each
// support and 1 off their union, within tol.
bool member(const CanonicalSubgroup& h, const GroupElement& s, double tol = default_tol);

// Numeric ground truth for the subclass order: searches sampled
// representatives of c1 (the canonical one plus random conjugate ones) for one
// whose sampled elements all lie in the canonical representative of c2.
bool containment_oracle(const ConjClass& c1, const ConjClass& c2, int samples = 12,
                        double tol = default_tol, std::uint64_t seed = 0);

std::string to_string(const ConjClass& c);

}  // namespace quoric
