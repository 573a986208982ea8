#pragma once
#include <optional>
#include <string>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/koszul.hpp"
#include "plectic/linear.hpp"

namespace plectic {

// A chart with a closed (n+1)-form.  Construction validates closedness.
struct PreNPlectic {
  ChartPtr chart;
  int n = 1;
  Form omega;
};

PreNPlectic check_pre_nplectic(const Form& omega, int n);

// Degree-0 observable: a vector field with a Hamiltonian form,
// iota_v omega + dh = 0.  Only the factories below build one.
struct HamiltonianPair {
  MultiVector v;
  Form h;  // degree n-1
};

// iota_v omega + dh, the membership defect.
Form hamiltonian_residual(const PreNPlectic& p, const MultiVector& v, const Form& h);

HamiltonianPair make_hamiltonian_pair(const PreNPlectic& p, MultiVector v, Form h);

// Element of the higher observable complex: degree 0 carries a Hamiltonian
// pair, degree i in 1..n-1 carries a form of degree n-1-i.  The zero element
// is degree-agnostic, it absorbs sums in any degree.
class Observable {
public:
  Observable() = default;  // zero
  static Observable pair(HamiltonianPair p);
  static Observable form(int degree, Form w);

  bool is_zero() const;
  int degree() const { return degree_; }  // -1 on the absorbing zero
  const HamiltonianPair& as_pair() const;
  const Form& as_form() const;

  Observable operator-() const;
  Observable& operator+=(const Observable& o);
  friend Observable operator+(Observable a, const Observable& b) { a += b; return a; }
  friend Observable operator-(Observable a, const Observable& b) { a += -b; return a; }
  friend Observable operator*(const Scalar& s, Observable o);
  bool operator==(const Observable& o) const;
  std::string str() const;

private:
  int degree_ = -1;
  std::optional<HamiltonianPair> pair_;
  Form form_;
};

// Pointwise kernel of v -> iota_v omega(x) as constant-coefficient fields.
std::vector<MultiVector> kernel_at_point(const PreNPlectic& p, const std::vector<Rational>& x);
bool nondegenerate_at(const PreNPlectic& p, const std::vector<Rational>& x);

// Exact linear solve of iota_v omega = -dh for constant-coefficient omega.
// Returns one pair plus a basis of the pointwise kernel.
struct HamiltonianSolution {
  HamiltonianPair pair;
  std::vector<MultiVector> kernel;
};
HamiltonianSolution solve_hamiltonian(const PreNPlectic& p, const Form& h);

// None when v is Hamiltonian for some h, else a human-readable obstruction.
std::optional<std::string> hamiltonian_obstruction(const PreNPlectic& p, const MultiVector& v);

// The higher Poisson brackets.  Arity 1 is the complex differential; arity
// k >= 2 vanishes unless every argument has degree 0, where it produces
//   k = 2: ([v1,v2], iota_{v1^v2} omega)
//   k >= 3: the degree-(k-2) form (-1)^{floor((k-1)/2)} iota_{v1^...^vk} omega.
Observable l_infty_bracket(const PreNPlectic& p, const std::vector<Observable>& args);
Observable l_infty_bracket(const PreNPlectic& p, const std::vector<Observable>& args,
                           SlotOrder order);

// Contraction component of the classifying cocycle; every field must be
// Hamiltonian.
Form ks_cocycle(const PreNPlectic& p, const std::vector<MultiVector>& fields);

// Generalized Jacobi identities up to max_arity on every sorted tuple drawn
// from `elements` (repetition allowed), under the given sign convention.
struct JacobiInstance {
  int arity;
  std::vector<int> tuple;  // indices into elements
  bool passed;
  std::string residual;  // canonical text of the defect, "0" when passed
};
struct JacobiReport {
  JacobiSign rule;
  SlotOrder slot_order;
  int max_arity;
  int checked = 0;
  int failed = 0;
  std::vector<JacobiInstance> instances;
  bool passed() const { return failed == 0; }
};
JacobiReport jacobi_report(const PreNPlectic& p, const std::vector<Observable>& elements,
                           int max_arity);
JacobiReport jacobi_report(const PreNPlectic& p, const std::vector<Observable>& elements,
                           int max_arity, JacobiSign rule, SlotOrder order);

// Evaluates one Jacobi identity instance, returning the residual observable.
Observable jacobi_residual(const PreNPlectic& p, const std::vector<Observable>& args,
                           JacobiSign rule, SlotOrder order);

// Band-limited realization of 0 -> Omega^0 -> ... -> Omega^{n-2} -> Omega^{n-1}_closed,
// the kernel of the projection (v,h) -> v, on a fully periodic chart.
struct KernelComplexReport {
  int band;
  std::vector<int> dims;   // materialized space dimensions, form degrees 0..n-1
  std::vector<int> betti;  // homology dimensions in the same grading
};
KernelComplexReport kernel_complex(const PreNPlectic& p, int band);

// Field equation check: dH against the n-ary bracket form datum of the
// given fields, i.e. (-1)^{floor((n-1)/2)} iota_{v1^...^vn} omega (the sign
// is trivial for n <= 2).
struct DwReport {
  bool passed;
  Form residual;
  std::string note;
};
DwReport dw_check(const PreNPlectic& p, const Form& H, const std::vector<MultiVector>& fields);

}  // namespace plectic
