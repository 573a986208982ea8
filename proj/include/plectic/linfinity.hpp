#pragma once
#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "plectic/koszul.hpp"
#include "plectic/linear.hpp"

namespace plectic {

// Sparse coefficient vector over a graded generator basis.
using BasisVec = std::map<int, Scalar>;

struct Generator {
  std::string name;
  int degree = 0;
};

// Finite-dimensional L-infinity algebra by structure constants.  Brackets
// are stored only on normal-ordered (non-decreasing) generator tuples; every
// other value is derived through the graded Koszul sign, so skewness holds
// by construction.  l_k raises total degree by k-2.
class LInfinityData {
public:
  LInfinityData(std::vector<Generator> gens, int max_arity);

  int dim() const { return static_cast<int>(gens_.size()); }
  int max_arity() const { return max_arity_; }
  const std::vector<Generator>& generators() const { return gens_; }
  int degree(int i) const { return gens_[i].degree; }

  // Normal-orders `tuple`; the sign is the Koszul factor relating the given
  // order to the stored one, or 0 when a repeated even generator forces the
  // value to vanish.
  std::pair<std::vector<int>, int> normal_order(std::vector<int> tuple) const;

  // Declares l_k on a tuple (any order); values on other orders follow by
  // sign.  Output degrees are validated.
  void set_bracket(int k, const std::vector<int>& tuple, const BasisVec& value);

  // Graded-skew lookup on an arbitrary tuple.
  BasisVec bracket(int k, const std::vector<int>& tuple) const;

  // Multilinear extension to sparse vectors.
  BasisVec apply(int k, const std::vector<BasisVec>& args) const;

  const std::map<std::vector<int>, BasisVec>& stored(int k) const;

private:
  std::vector<Generator> gens_;
  int max_arity_;
  std::vector<std::map<std::vector<int>, BasisVec>> brackets_;  // index = arity
};

std::string basis_vec_str(const LInfinityData& L, const BasisVec& v);

// Generalized Jacobi verification by brute force over all basis tuples.
struct RelationInstance {
  int arity;
  std::vector<int> tuple;
  bool passed;
  std::string residual;
};
struct RelationReport {
  JacobiSign rule;
  int max_arity = 0;
  int checked = 0;
  int failed = 0;
  std::vector<RelationInstance> instances;
  bool passed() const { return failed == 0; }
};
RelationReport verify_l_infinity(const LInfinityData& L, int max_arity);
RelationReport verify_l_infinity(const LInfinityData& L, int max_arity, JacobiSign rule);

// Fully skew m-linear cocycle on a plain Lie algebra, Scalar-valued.
class LieCocycle {
public:
  LieCocycle(int arity) : arity_(arity) {}
  int arity() const { return arity_; }
  void set(std::vector<int> tuple, Scalar c);
  Scalar value(std::vector<int> tuple) const;
  const std::map<std::vector<int>, Scalar>& stored() const { return values_; }

private:
  int arity_;
  std::map<std::vector<int>, Scalar> values_;  // strictly increasing tuples
};

// Chevalley-Eilenberg coboundary test on every strictly increasing basis
// tuple of length arity+1.  Requires a plain Lie algebra: all generators in
// degree 0 and only l2 stored.
struct CocycleReport {
  bool passed = true;
  std::vector<std::pair<std::vector<int>, Scalar>> residuals;  // nonzero only
};
CocycleReport is_cocycle(const LInfinityData& g, const LieCocycle& mu);

// Central extension by a shifted line: generators of g in their degrees plus
// one new generator `c` in degree m-2; l2 extended by zero on c, and mu
// added as the m-ary bracket valued in c.  For m = 2 the cocycle lands in
// the binary bracket itself (Heisenberg-type extensions).
LInfinityData string_extension(const LInfinityData& g, const LieCocycle& mu,
                               const std::string& central_name = "c");

// Strict morphism data: only the arity-1 component is supported; declaring
// any higher component raises UnsupportedComponents.
struct MorphismData {
  std::map<int, Matrix<Scalar>> components;  // arity -> (dst.dim x src.dim)
};
RelationReport verify_morphism(const MorphismData& F, const LInfinityData& src,
                               const LInfinityData& dst, int max_arity);

// Rational homology of a finite cochain complex: maps[i] sends space i to
// space i+1; d*d = 0 is checked exactly (NotAComplex otherwise).
struct ChainComplex {
  std::vector<int> dims;
  std::vector<Matrix<Scalar>> maps;
};
std::vector<int> homology(const ChainComplex& c);

nlohmann::json linfinity_to_json(const LInfinityData& L);
LInfinityData linfinity_from_json(const nlohmann::json& j);
nlohmann::json relation_report_to_json(const RelationReport& r);

}  // namespace plectic
