#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>

#include "quoric/quaternion.hpp"

namespace quoric::reps {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// One coordinate factor of a term: an internal tensor product of irreducibles
// V_m of a single SU(2) coordinate.  An empty list (or {0}) is the trivial
// factor.  V_m acts on degree-m forms in z1, z2 with (rho(A) f)(z) = f(A^{-1} z);
// the basis is z1^m, z1^{m-1} z2, ..., z2^m.
struct Factor {
  std::vector<int> weights;

  long dim() const {
    long d = 1;
    for (int m : weights) d *= m + 1;
    return d;
  }
};

// External product over the n coordinates of Q^n.
struct Term {
  std::vector<Factor> factors;

  long dim() const {
    long d = 1;
    for (const auto& f : factors) d *= f.dim();
    return d;
  }
  int nontrivial_count() const;
};

// Formal sum of terms: a finite-dimensional complex representation of Q^n.
struct RepExpr {
  int n = 1;
  std::vector<Term> terms;

  long dim() const {
    long d = 0;
    for (const auto& t : terms) d += t.dim();
    return d;
  }

  // plain irreducible term (m_1, ..., m_n)
  static RepExpr irreducible(const std::vector<int>& ms);
  // sum of plain terms
  static RepExpr sum(int n, const std::vector<std::vector<int>>& termlist);
};

// Element of the Lie algebra su(2)^n: per coordinate the coefficients of
// (i, j, k) directions.
struct AlgebraElement {
  std::vector<std::array<double, 3>> coords;

  static AlgebraElement zero(int n) { return {std::vector<std::array<double, 3>>(n)}; }
  static AlgebraElement basis(int n, int which);  // which in [0, 3n)
  int rank() const { return static_cast<int>(coords.size()); }
  double norm() const;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

// exp(t X) as a group element; closed form per coordinate.
GroupElement exp_algebra(const AlgebraElement& x, double t = 1.0);

CMatrix irr_matrix(int m, const Quaternion& g);
CMatrix irr_algebra_matrix(int m, const std::array<double, 3>& x);

CMatrix rep_matrix(const RepExpr& rho, const GroupElement& g, double tol = 1e-6);
CMatrix algebra_matrix(const RepExpr& rho, const AlgebraElement& x);
CVector algebra_action(const RepExpr& rho, const AlgebraElement& x, const CVector& v);

// Stabilizer analysis at a vector.  algebra_dim/basis describe the strict
// stabilizer algebra, the kernel of X -> d rho(X) v (the Lie algebra of the
// isotropy group of v).  line_dim describes the larger family stabilizing the
// complex line through v (the eigenvector family; for a highest weight vector
// z1^m this is the diagonal torus line even though the strict isotropy is the
// finite Z_m).  Structure flags refer to the strict algebra.
struct StabilizerReport {
  int algebra_dim = 0;
  std::vector<AlgebraElement> algebra_basis;
  int line_dim = 0;
  bool closed_under_bracket = true;
  bool abelian = true;
  bool is_standard = false;
  std::optional<int> standard_m;
  std::optional<int> torus_component_count;  // filled by callers that scan a circle
};

StabilizerReport stabilizer_algebra(const RepExpr& rho, const CVector& v,
                                    double tol = default_tol);

// Standardness verdict alone: the strict stabilizer algebra is su(2)^m with
// 1 <= m <= n-1 (bracket closure, perfect derived algebra, negative definite
// Killing form, rank m, dimension 3m).
std::pair<bool, std::optional<int>> is_standard(const RepExpr& rho, const CVector& v,
                                                double tol = default_tol);

// Number of connected components of the fixed set of v inside the diagonal
// circle of one coordinate, by grid scan and cluster refinement.  For z1^m in
// V_m this is m (the isotropy Z_m inside the torus); a coordinate acting
// trivially gives 1 (the whole circle).
int torus_components(const RepExpr& rho, const CVector& v, int coordinate = 0,
                     int m_max = 16, double tol = default_tol);

// Frobenius-Schur indicator of an irreducible single-coordinate factor, by
// quadrature of (2/pi) Int_0^pi chi(2 theta) sin^2 theta d theta; +1 real
// type, -1 quaternionic type, 0 complex type (never hit for SU(2)).
int fs_indicator(const RepExpr& rho, int quadrature_nodes = 10'000);
int fs_indicator_irr(int m, int quadrature_nodes = 10'000);

// Multiset of irreducible labels (m_1, ..., m_n) with multiplicities,
// recovered exactly by per-factor weight peeling.
std::map<std::vector<int>, int> decompose(const RepExpr& rho);

// Real representations: formal sums of summands that are either the
// realification R(V) of a term V or the real form W of a real-type term.
struct RealSummand {
  Term term;
  enum class Kind { realified, real_form } kind = Kind::realified;

  long real_dim() const {
    return kind == Kind::realified ? 2 * term.dim() : term.dim();
  }
};

struct RealRep {
  int n = 1;
  std::vector<RealSummand> summands;

  long real_dim() const {
    long d = 0;
    for (const auto& s : summands) d += s.real_dim();
    return d;
  }
};

RealRep realify(const RepExpr& rho);
// V + conj V for realified summands, V for real forms.
RepExpr complexify(const RealRep& rho);

// Frobenius-Schur type of an irreducible term: +1 real, -1 quaternionic.
int term_type(const Term& t);

// Antilinear structure map J on an irreducible term (J v = J_mat conj(v)),
// with J^2 = +1 on real type and -1 on quaternionic type.
CMatrix structure_matrix(const Term& t);
// Orthonormal real-form basis of a real-type irreducible term (columns).
CMatrix real_form_basis(const Term& t);

// Decomposition of a real representation into real-irreducible summands:
// quaternionic-type content stays realified, real-type content splits into
// real forms (two copies per realified real-type irreducible).
std::vector<RealSummand> real_decompose(const RealRep& rho);

// Samples vectors in the real form of each irreducible piece and compares the
// stabilizer dimension spectra computed in the real picture and the complex
// picture.
struct SpectrumComparison {
  std::vector<int> real_dims;
  std::vector<int> complex_dims;
  bool equal = false;
};

SpectrumComparison iso_spectrum_compare(const RepExpr& rho, int samples = 20,
                                        double tol = default_tol, std::uint64_t seed = 0);

// The regular two-sided action of Q^2 on H, (p, q) . h = p h q^{-1}, in the
// basis (1, i, j, k); the real form of the outer product V_1 x V_1.
struct PairActionH {
  static RMatrix group_matrix(const GroupElement& g);
  static RVector algebra_apply(const AlgebraElement& x, const RVector& v);
};

StabilizerReport stabilizer_algebra_pair_action(const RVector& v, double tol = default_tol);

// Verdict of the structure theorem for a real representation of real
// dimension 4n: conclusion checks the decomposition shape (n summands of real
// dimension 4, each with at most two nontrivial factors, all of complex
// dimension 2); hypothesis sampling probes summand vectors for standard
// isotropy and for the coordinate patterns Q^{n-1}_i, flagging discrete
// isotropy (torus components > 1) as non-standard.
struct ThmCheckReport {
  bool dims_ok = false;
  bool conclusion_ok = false;
  bool all_sampled_standard = true;
  bool coordinate_patterns_ok = false;
  std::vector<int> pattern_slots;  // i of Q^{n-1}_i found per summand; -1 if none
  std::vector<std::string> notes;
  std::string status;
};

ThmCheckReport thm_decomposition_check(const RealRep& rho, double tol = default_tol,
                                       std::uint64_t seed = 0);

}  // namespace quoric::reps
