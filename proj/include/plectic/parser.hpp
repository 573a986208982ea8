#pragma once
#include <string>
#include <variant>

#include "plectic/form.hpp"

namespace plectic {

// Result of evaluating a coordinate expression.  The engaged alternative is
// the least structured one that can hold the value: scalars stay scalars
// until a coordinate or mode atom appears, and only wedges of basis covectors
// or fields produce tensors.
struct ExprValue {
  std::variant<Scalar, CoefFn, Form, MultiVector> v;

  Scalar as_scalar() const;
  CoefFn as_function(const ChartPtr& chart) const;
  Form as_form(const ChartPtr& chart) const;          // degree 0 allowed
  MultiVector as_field(const ChartPtr& chart) const;  // degree 1 required
  MultiVector as_multivector(const ChartPtr& chart) const;
};

// Grammar, tightest first:
//   atom  := integer | 'tau' | 'i' | 'x'N | 'dx'N | 'e'N | 'E' '[' ints ']' | '(' expr ')'
//   power := atom ('^' (signed-integer | atom))*     integer exponents are powers,
//                                                    everything else is the graded product
//   term  := ('+'|'-')* power (('*'|'/') power)*     '*' is the graded product too
//   expr  := term (('+'|'-') term)*
// Division is by invertible values only.  E[...] takes exactly chart-dimension
// many wave numbers; x/dx atoms must fit the chart and its axis kinds.
ExprValue parse_expression(const std::string& text, const ChartPtr& chart);

Scalar parse_scalar(const std::string& text);
CoefFn parse_function(const std::string& text, const ChartPtr& chart);
Form parse_form(const std::string& text, const ChartPtr& chart);
MultiVector parse_field(const std::string& text, const ChartPtr& chart);

}  // namespace plectic
