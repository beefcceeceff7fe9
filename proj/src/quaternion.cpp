#include "quoric/quaternion.hpp"

#include <cstdio>

namespace quoric {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  // normalize the two textual zeros so reports are byte-stable
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string to_string(const Quaternion& q) {
  return "(" + format_real(q.a) + "," + format_real(q.b) + "," + format_real(q.c) + "," +
         format_real(q.d) + ")";
}

std::string to_string(const GroupElement& g) {
  std::string s = "[";
  for (int i = 0; i < g.rank(); ++i) {
    if (i) s += " ";
    s += to_string(g.coords[i]);
  }
  return s + "]";
}

}  // namespace quoric
