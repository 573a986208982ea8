#pragma once
#include "plectic/conventions.hpp"
#include "plectic/form.hpp"

namespace plectic {

// Exterior derivative.
Form d(const Form& w);

// Interior product by a homogeneous multivector.  Decomposables hit the form
// factor by factor in the order given by `order`.
Form contract(const MultiVector& p, const Form& w, SlotOrder order);
Form contract(const MultiVector& p, const Form& w);

// Derivation of a function along a degree-1 field.
CoefFn apply_field(const MultiVector& v, const CoefFn& f);

// Lie bracket of two degree-1 fields.
MultiVector field_bracket(const MultiVector& v, const MultiVector& w);

// Lie derivative of a form along a degree-1 field (Leibniz expansion).
Form lie_derivative(const MultiVector& v, const Form& w);

// Restriction of forms and fields along an axis-aligned affine map.
Form pullback(const AffineMap& m, const Form& w);
MultiVector restrict_field(const AffineMap& m, const MultiVector& p);

// Period of a degree-k form over the coordinate subtorus spanned by `axes`
// through the basepoint 0.  Axes must be periodic.
Scalar integrate_torus(const Form& w, std::vector<int> axes);

// Homotopy inverse to d on a star-shaped chart: d(primitive(w)) + primitive(d(w)) = w
// for degrees >= 1.  Exact on polynomial data; periodic axes are rejected.
Form primitive_on_star(const Form& w);

}  // namespace plectic
