#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plectic/deligne.hpp"
#include "plectic/nplectic.hpp"

namespace plectic {

// Element of the semidirect dg-Lie algebra of global vector fields acting by
// Lie derivative on the shifted truncated total complex over a cover nerve.
// Degree j in [0, level-1] carries a cochain of total degree level-1-j; the
// vector field part lives in degree 0 only.  b is stored at the full ambient
// level; its form degrees stay below the truncation by degree arithmetic.
struct SemidirectElement {
  int degree = 0;
  MultiVector v;     // degree-1 field on the base chart; zero above degree 0
  DeligneCochain b;  // total degree level-1-degree

  bool is_zero() const { return v.is_zero() && b.is_zero(); }
  SemidirectElement operator-() const;
  SemidirectElement& operator+=(const SemidirectElement& o);
  SemidirectElement& operator-=(const SemidirectElement& o);
  friend SemidirectElement operator+(SemidirectElement a, const SemidirectElement& b) {
    a += b;
    return a;
  }
  friend SemidirectElement operator-(SemidirectElement a, const SemidirectElement& b) {
    a -= b;
    return a;
  }
  friend SemidirectElement operator*(const Scalar& s, SemidirectElement e);
  bool operator==(const SemidirectElement& o) const;
};

// Zero element of the given degree; level is the ambient truncation.
SemidirectElement semidirect_zero(const NervePtr& nerve, int level, int degree);

// Degree-0 element from a global field and its cochain of total degree
// level-1.
SemidirectElement semidirect_pair(MultiVector v, DeligneCochain b);

// Pure-cochain element in degree >= 1.
SemidirectElement semidirect_cochain(int degree, DeligneCochain b);

// Simplex-wise Lie derivative along a global field, each slot seeing the
// field restricted through the simplex inclusion.
DeligneCochain lie_derive_cochain(const MultiVector& v, const DeligneCochain& c);

// [(v1,b1),(v2,b2)] = ([v1,v2], L_{v1} b2 - (-1)^{|e1||e2|} L_{v2} b1).
// A term survives only when its acting element has degree 0, so the Koszul
// factor is +1 on every surviving term; the graded Jacobi suite pins it.
SemidirectElement dg_lie_bracket(const SemidirectElement& a, const SemidirectElement& c);

// (0, d_tot b) one degree down; zero on degree 0, where the complex stops.
SemidirectElement dg_lie_differential(const SemidirectElement& a);

struct MembershipReport {
  bool member = false;
  DeligneCochain residual;  // L_v A - d_tot b
};
// Degree-0 membership condition L_v A = d_tot b against a top-degree cocycle.
MembershipReport dglie_membership(const DeligneCochain& A, const SemidirectElement& e);

struct ComparedPair {
  int i = 0, j = 0;
  bool exact = false;
  Form defect;     // difference of the two bracket images, degree level-1
  Form primitive;  // d(primitive) = defect when exact
};
struct CompareReport {
  int level = 1;
  bool members_ok = true;
  bool images_hamiltonian = true;
  bool defects_exact = true;
  std::vector<ComparedPair> pairs;
  bool passed() const { return members_ok && images_hamiltonian && defects_exact; }
};
// Comparison map (v, b) -> (v, iota_v A - b) from degree-0 elements over a
// trivial cover into Hamiltonian pairs of curvature(A), with the pairwise
// bracket-compatibility defects and their primitives.
CompareReport compare_models(const DeligneCochain& A,
                             const std::vector<SemidirectElement>& members);

Json semidirect_to_json(const SemidirectElement& e);
Json membership_to_json(const MembershipReport& rep);
Json compare_report_to_json(const CompareReport& rep);

}  // namespace plectic
