#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "quoric/common.hpp"

namespace quoric {

// Element of the quaternion algebra H; the unit sphere is the group Q = S^3.
struct Quaternion {
  double a = 1, b = 0, c = 0, d = 0;

  Quaternion() = default;
  Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  static Quaternion one() { return {1, 0, 0, 0}; }
  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }

  double norm2() const { return a * a + b * b + c * c + d * d; }
  double norm() const { return std::sqrt(norm2()); }

  Quaternion conjugate() const { return {a, -b, -c, -d}; }

  Quaternion operator-() const { return {-a, -b, -c, -d}; }

  Quaternion operator+(const Quaternion& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Quaternion operator-(const Quaternion& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

  Quaternion operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

  // Hamilton product.
  Quaternion operator*(const Quaternion& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d,
            a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b,
            a * o.d + b * o.c - c * o.b + d * o.a};
  }

  Quaternion inverse() const {
    double n2 = norm2();
    if (n2 <= 0) throw domain_error("quaternion inverse: zero quaternion");
    return conjugate() * (1.0 / n2);
  }

  Quaternion normalized() const {
    double n = norm();
    if (n <= 0) throw domain_error("quaternion normalize: zero quaternion");
    return *this * (1.0 / n);
  }
};

inline double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

inline bool approx_equal(const Quaternion& p, const Quaternion& q, double tol = default_tol) {
  return distance(p, q) <= tol;
}

// Equality in Q/{+-1}; both lifts are compared.
inline bool equal_mod_center(const Quaternion& p, const Quaternion& q, double tol = default_tol) {
  return approx_equal(p, q, tol) || approx_equal(p, -q, tol);
}

inline bool is_unit(const Quaternion& q, double tol = default_tol) {
  return std::abs(q.norm() - 1.0) <= tol;
}

inline void require_unit(const Quaternion& q, double tol, const char* what) {
  if (!is_unit(q, tol)) throw domain_error(std::string(what) + ": non-unit quaternion");
}

// psi_u(t) = u t u^{-1}; both arguments must be units.  psi_u depends on u only
// through its class mod center, and psi_1 is the identity automorphism.
inline Quaternion conj_auto(const Quaternion& u, const Quaternion& t, double tol = 1e-6) {
  require_unit(u, tol, "conj_auto");
  require_unit(t, tol, "conj_auto");
  return u * t * u.conjugate();
}

// a+bi+cj+dk  ->  [[a+ib, c+id], [-c+id, a-ib]].  Unit quaternions land in SU(2);
// 1 -> Id, i -> diag(i,-i), j -> [[0,1],[-1,0]].
inline Eigen::Matrix2cd quat_to_su2(const Quaternion& q, double tol = 1e-6) {
  require_unit(q, tol, "quat_to_su2");
  std::complex<double> z1(q.a, q.b), z2(q.c, q.d);
  Eigen::Matrix2cd m;
  m << z1, z2, -std::conj(z2), std::conj(z1);
  return m;
}

template <class Rng>
Quaternion random_unit_quaternion(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Quaternion q{g(rng), g(rng), g(rng), g(rng)};
  while (q.norm() < 1e-6) q = {g(rng), g(rng), g(rng), g(rng)};
  return q.normalized();
}

// Element of Q^n = (S^3)^n, componentwise operations.
struct GroupElement {
  std::vector<Quaternion> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<Quaternion> c) : coords(std::move(c)) {}

  static GroupElement identity(int n) {
    return GroupElement(std::vector<Quaternion>(n, Quaternion::one()));
  }

  int rank() const { return static_cast<int>(coords.size()); }

  GroupElement operator*(const GroupElement& o) const {
    if (coords.size() != o.coords.size())
      throw domain_error("group element product: rank mismatch");
    GroupElement r;
    r.coords.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords.push_back(coords[i] * o.coords[i]);
    return r;
  }

  GroupElement inverse() const {
    GroupElement r;
    r.coords.reserve(coords.size());
    for (const auto& q : coords) r.coords.push_back(q.inverse());
    return r;
  }
};

inline double distance(const GroupElement& p, const GroupElement& q) {
  if (p.coords.size() != q.coords.size())
    throw domain_error("group element distance: rank mismatch");
  double m = 0;
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    m = std::max(m, distance(p.coords[i], q.coords[i]));
  return m;
}

inline bool approx_equal(const GroupElement& p, const GroupElement& q, double tol = default_tol) {
  return distance(p, q) <= tol;
}

inline bool is_identity(const GroupElement& g, double tol = default_tol) {
  return approx_equal(g, GroupElement::identity(g.rank()), tol);
}

template <class Rng>
GroupElement random_group_element(int n, Rng& rng) {
  GroupElement g;
  g.coords.reserve(n);
  for (int i = 0; i < n; ++i) g.coords.push_back(random_unit_quaternion(rng));
  return g;
}

// 12-significant-digit text, stable across runs.
std::string format_real(double x);
std::string to_string(const Quaternion& q);
std::string to_string(const GroupElement& g);

}  // namespace quoric
