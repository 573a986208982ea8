#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/nerve.hpp"
#include "plectic/serialize.hpp"

namespace plectic {

// Cochain of the truncated total Cech-de Rham complex Omega^{0..level} over a
// nerve.  The slot on a q-simplex holds a form of degree (degree - q); slots
// exist exactly when that lands in [0, level] and the nerve has q-simplices.
// Form-degree-0 data is U(1)-valued, written additively as functions read
// modulo locally constant integers; `discrepancy` stores the integer Cech
// cocycle delta(bottom) one level up, the underlying integral class.
struct DeligneCochain {
  NervePtr nerve;
  int level = 1;   // truncation: top form degree kept in the complex
  int degree = 0;  // total degree m
  std::map<int, std::vector<Form>> comp;  // q -> one form per q-simplex
  std::vector<Scalar> discrepancy;        // level degree+1; empty when untracked

  bool has_level(int q) const { return comp.count(q) != 0; }
  const Form& at(int q, int i) const { return comp.at(q)[i]; }
  Form& at(int q, int i) { return comp.at(q)[i]; }

  DeligneCochain operator-() const;
  DeligneCochain& operator+=(const DeligneCochain& o);
  DeligneCochain& operator-=(const DeligneCochain& o);
  friend DeligneCochain operator+(DeligneCochain a, const DeligneCochain& b) {
    a += b;
    return a;
  }
  friend DeligneCochain operator-(DeligneCochain a, const DeligneCochain& b) {
    a -= b;
    return a;
  }
  friend DeligneCochain operator*(const Scalar& s, DeligneCochain c);
  bool is_zero() const;
  bool operator==(const DeligneCochain& o) const;
};

// Zero cochain with every valid slot materialized.
DeligneCochain make_cochain(NervePtr nerve, int level, int degree);

// delta + (-1)^q d, with the de Rham part above the truncation dropped (that
// part is the curvature, extracted separately).  The output carries no
// discrepancy table.
DeligneCochain total_differential(const DeligneCochain& c);

struct DeligneResidual {
  int level = 0;    // simplex level of the offending slot of d_tot c
  int simplex = 0;  // index within that level
  std::string value;
};
struct DeligneReport {
  bool passed = false;
  std::vector<DeligneResidual> residuals;
  std::vector<Scalar> discrepancy;  // computed delta(bottom) when it exists
};
// d_tot c = 0 with the bottom slot read modulo locally constant integers; a
// stored discrepancy table must match the computed one.
DeligneReport is_cocycle(const DeligneCochain& c);

// Global closed form of degree level+1 glued from the per-patch d of the top
// slots of a top-degree cocycle (degree == level; the class has conventional
// Deligne degree level+1).
Form curvature(const DeligneCochain& c);

struct IntegralityReport {
  bool integral = false;
  std::vector<std::pair<std::vector<int>, Scalar>> periods;  // per axis subset
};
// Periods of a closed form over the coordinate subtorus basis.
IntegralityReport is_integral(const Form& omega);

// Degree-1 cocycle on the product cover of T^2 with curvature k dx^dy: patch
// potentials k x dy in branch coordinates, winding-shift transitions, and the
// integer discrepancy representing k.
DeligneCochain prequantize_torus(const Rational& k);

// Circle integral of a degree-1 cocycle on an S^1 nerve, reduced mod Z:
// segment integrals of the patch potentials between overlap midpoints plus
// oriented transition jumps at the cuts.
Scalar holonomy(const DeligneCochain& c);

// Restriction of a cochain on a product torus cover (or trivial torus cover)
// to the coordinate circle through 0 along `axis`, as a cochain on the
// matching S^1 nerve.
DeligneCochain restrict_to_circle(const DeligneCochain& c, int axis, const NervePtr& s1);

enum class GaugeStatus { Witness, Obstructed, NoWitnessInBand };
struct GaugeResult {
  GaugeStatus status = GaugeStatus::NoWitnessInBand;
  std::optional<DeligneCochain> witness;  // degree-(m-1) cochain b
  std::string note;
};
// Exact solve of c1 - c2 = d_tot b (bottom slots read mod locally constant
// integers).  Gauge-invariant screens (curvature, holonomy) separate genuine
// obstructions from a band that is too small.
GaugeResult gauge_reduce(const DeligneCochain& c1, const DeligneCochain& c2, int band);

// Flat degree-1 cocycle with constant patch potentials sum_k theta_k dx_k and
// zero transitions.
DeligneCochain flat_cocycle(const NervePtr& nerve, const std::vector<Scalar>& theta);

struct FlatSample {
  std::vector<Scalar> holonomy;  // one value per coordinate circle
  std::string realization;
};
struct FlatModuliReport {
  std::string nerve;
  int level = 1;
  int band = 1;
  unsigned long long seed = 0;
  std::vector<FlatSample> table;
  int pairs_checked = 0;
  int pairs_equivalent = 0;
  bool equivalence_matches_holonomy = false;
  bool automorphisms_are_constants = false;
  bool passed() const { return equivalence_matches_holonomy && automorphisms_are_constants; }
};
// Seeded flat cocycles (12 samples) classified by gauge_reduce against their
// per-cycle holonomies, plus the automorphisms of the trivial flat cocycle.
FlatModuliReport flat_moduli(const NervePtr& nerve, int level, int band,
                             unsigned long long seed);

Json nerve_to_json(const CoverNerve& nerve);
NervePtr nerve_from_json(const Json& j);
Json deligne_to_json(const DeligneCochain& c);
DeligneCochain deligne_from_json(const Json& j, const NervePtr& nerve);
Json deligne_report_to_json(const DeligneReport& rep);
Json integrality_to_json(const IntegralityReport& rep);
Json flat_report_to_json(const FlatModuliReport& rep);

}  // namespace plectic
