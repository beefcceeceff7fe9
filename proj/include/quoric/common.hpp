#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quoric {

// Preconditions violated by a caller (bad index, non-unit quaternion, ...).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external data (schema or parse problems).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search or enumeration exceeded its configured candidate budget.
struct size_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric kernel failed its residual check.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double default_tol = 1e-9;

// Subsets of {1,...,n} (n <= 64) as bitmasks; bit i-1 stands for index i.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

// Smallest 1-based index in a nonempty mask.
inline int min_index(Mask m) { return std::countr_zero(m) + 1; }

inline Mask mask_of(const std::vector<int>& indices) {
  Mask m = 0;
  for (int i : indices) m |= Mask{1} << (i - 1);
  return m;
}

inline std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(min_index(m));
    m &= m - 1;
  }
  return out;
}

// Lexicographic order on the sorted index lists of two masks.
inline bool mask_list_less(Mask a, Mask b) {
  while (a && b) {
    int la = min_index(a), lb = min_index(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

inline std::string mask_to_string(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int i : indices_of(m)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

}  // namespace quoric
