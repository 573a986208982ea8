#include "plectic/serialize.hpp"

namespace plectic {

Rational rational_from_str(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

Json chart_to_json(const ChartPtr& c) {
  Json j;
  j["name"] = c->name;
  j["dim"] = c->dim;
  j["periodic"] = c->periodic;
  j["patch"] = c->patch;
  if (c->patch) {
    Json lo = Json::array(), hi = Json::array();
    for (int a = 0; a < c->dim; ++a) {
      lo.push_back(rational_str(c->lo[a]));
      hi.push_back(rational_str(c->hi[a]));
    }
    j["lo"] = lo;
    j["hi"] = hi;
  }
  return j;
}

ChartPtr chart_from_json(const Json& j) {
  std::string name = j.at("name").get<std::string>();
  int dim = j.at("dim").get<int>();
  std::vector<bool> periodic = j.at("periodic").get<std::vector<bool>>();
  if (j.at("patch").get<bool>()) {
    std::vector<Rational> lo, hi;
    for (int a = 0; a < dim; ++a) {
      lo.push_back(rational_from_str(j.at("lo")[a].get<std::string>()));
      hi.push_back(rational_from_str(j.at("hi")[a].get<std::string>()));
    }
    return patch_chart(std::move(lo), std::move(hi), name);
  }
  bool any = false, all = true;
  for (bool p : periodic) {
    any = any || p;
    all = all && p;
  }
  if (all) return torus_chart(dim, name);
  if (!any) return affine_chart(dim, name);
  return mixed_chart(periodic, name);
}

Json affine_map_to_json(const AffineMap& m) {
  Json axes = Json::array();
  for (auto& a : m.axes) {
    Json ja;
    ja["from"] = a.from;
    ja["shift"] = rational_str(a.shift);
    axes.push_back(ja);
  }
  return Json{{"axes", axes}};
}

AffineMap affine_map_from_json(const Json& j, const ChartPtr& src, const ChartPtr& dst) {
  AffineMap m;
  m.src = src;
  m.dst = dst;
  for (auto& ja : j.at("axes")) {
    AffineMap::Axis a;
    a.from = ja.at("from").get<int>();
    a.shift = rational_from_str(ja.at("shift").get<std::string>());
    m.axes.push_back(a);
  }
  require(static_cast<int>(m.axes.size()) == dst->dim, Errc::InvalidArgument,
          "affine map axis count does not match the destination chart");
  return m;
}

Json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j) { return parse_scalar(j.get<std::string>()); }

Json coeffn_to_json(const CoefFn& f) {
  Json terms = Json::array();
  for (auto& [m, c] : f.terms()) {
    Json t;
    t["alpha"] = m.alpha;
    t["wave"] = m.wave;
    t["coef"] = c.str();
    terms.push_back(t);
  }
  return Json{{"terms", terms}};
}

CoefFn coeffn_from_json(const Json& j, const ChartPtr& chart) {
  CoefFn f(chart);
  for (auto& t : j.at("terms")) {
    Monomial m{t.at("alpha").get<std::vector<int>>(), t.at("wave").get<std::vector<int>>()};
    require(static_cast<int>(m.alpha.size()) == chart->dim &&
                static_cast<int>(m.wave.size()) == chart->dim,
            Errc::InvalidArgument, "monomial exponent length does not match the chart");
    f.add_term(std::move(m), scalar_from_json(t.at("coef")));
  }
  return f;
}

namespace {

template <Variance V>
Json alternating_to_json(const Alternating<V>& w) {
  Json comps = Json::array();
  for (auto& [axes, f] : w.components())
    comps.push_back(Json{{"axes", axes}, {"fn", coeffn_to_json(f)}});
  return Json{{"degree", w.degree()}, {"components", comps}};
}

template <Variance V>
Alternating<V> alternating_from_json(const Json& j, const ChartPtr& chart) {
  Alternating<V> w(chart, j.at("degree").get<int>());
  for (auto& c : j.at("components"))
    w.add_component(c.at("axes").get<std::vector<int>>(),
                    coeffn_from_json(c.at("fn"), chart));
  return w;
}

}  // namespace

Json form_to_json(const Form& w) { return alternating_to_json(w); }
Form form_from_json(const Json& j, const ChartPtr& chart) {
  return alternating_from_json<Variance::Co>(j, chart);
}
Json multivector_to_json(const MultiVector& v) { return alternating_to_json(v); }
MultiVector multivector_from_json(const Json& j, const ChartPtr& chart) {
  return alternating_from_json<Variance::Contra>(j, chart);
}

Json observable_to_json(const Observable& o) {
  if (o.is_zero()) return Json{{"zero", true}};
  Json j;
  j["zero"] = false;
  j["degree"] = o.degree();
  if (o.degree() == 0) {
    j["field"] = multivector_to_json(o.as_pair().v);
    j["hamiltonian"] = form_to_json(o.as_pair().h);
  } else {
    j["payload"] = form_to_json(o.as_form());
  }
  return j;
}

Json jacobi_report_to_json(const JacobiReport& r) {
  Json instances = Json::array();
  for (auto& i : r.instances)
    instances.push_back(Json{{"arity", i.arity},
                             {"tuple", i.tuple},
                             {"passed", i.passed},
                             {"residual", i.residual}});
  return Json{{"rule", to_string(r.rule)},
              {"slot_order", to_string(r.slot_order)},
              {"max_arity", r.max_arity},
              {"checked", r.checked},
              {"failed", r.failed},
              {"passed", r.passed()},
              {"instances", instances}};
}

Json kernel_report_to_json(const KernelComplexReport& r) {
  return Json{{"band", r.band}, {"dims", r.dims}, {"betti", r.betti}};
}

Json dw_report_to_json(const DwReport& r) {
  return Json{{"passed", r.passed}, {"residual", form_to_json(r.residual)}, {"note", r.note}};
}

Json report_envelope(const std::string& kind) {
  return Json{{"schema", "plectic-report/1"}, {"kind", kind}};
}

std::string canonical_bytes(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace plectic
