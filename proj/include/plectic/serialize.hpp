#pragma once
#include <json.hpp>

#include <string>

#include "plectic/nplectic.hpp"
#include "plectic/parser.hpp"

namespace plectic {

using Json = nlohmann::json;

// Inverse of rational_str: "a" or "a/b".
Rational rational_from_str(const std::string& s);

Json chart_to_json(const ChartPtr& c);
ChartPtr chart_from_json(const Json& j);

Json affine_map_to_json(const AffineMap& m);
AffineMap affine_map_from_json(const Json& j, const ChartPtr& src, const ChartPtr& dst);

// Scalars serialize to their canonical text; the expression parser reads
// that text back, so round-trips are exact.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json coeffn_to_json(const CoefFn& f);
CoefFn coeffn_from_json(const Json& j, const ChartPtr& chart);

Json form_to_json(const Form& w);
Form form_from_json(const Json& j, const ChartPtr& chart);
Json multivector_to_json(const MultiVector& v);
MultiVector multivector_from_json(const Json& j, const ChartPtr& chart);

Json observable_to_json(const Observable& o);

Json jacobi_report_to_json(const JacobiReport& r);
Json kernel_report_to_json(const KernelComplexReport& r);
Json dw_report_to_json(const DwReport& r);

// Report envelope: schema version, kind, and sorted-key canonical bytes.
Json report_envelope(const std::string& kind);
std::string canonical_bytes(const Json& j);

}  // namespace plectic
