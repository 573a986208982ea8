#include "plectic/dglie.hpp"

#include <map>
#include <utility>

namespace plectic {

namespace {

void validate(const SemidirectElement& e, const char* who) {
  require(e.b.nerve != nullptr, Errc::InvalidArgument,
          std::string(who) + ": element has no nerve");
  require(e.degree >= 0 && e.degree <= e.b.level - 1, Errc::DegreeMismatch,
          std::string(who) + ": degree outside [0, level-1]");
  require(e.b.degree == e.b.level - 1 - e.degree, Errc::DegreeMismatch,
          std::string(who) + ": cochain degree does not match the grading");
  if (e.degree > 0)
    require(e.v.is_zero(), Errc::DegreeMismatch,
            std::string(who) + ": the vector field part lives in degree 0");
  if (!e.v.is_zero()) {
    require(e.v.degree() == 1, Errc::DegreeMismatch,
            std::string(who) + ": the field part must have degree 1");
    require_compatible(e.v.chart(), e.b.nerve->manifold, who);
  }
}

// Exact primitive of a closed form on a star-shaped or torus chart; nullopt
// when a harmonic (zero-wave) part obstructs, NotAPrimitive when not closed.
std::optional<Form> exact_primitive(const Form& w) {
  const ChartPtr& ch = w.chart();
  bool affine = true, torus = true;
  for (int j = 0; j < ch->dim; ++j) {
    if (ch->periodic[j]) affine = false;
    if (!ch->periodic[j] || ch->patch) torus = false;
  }
  require(affine || torus, Errc::UnsupportedComponents,
          "primitives need a star-shaped or torus chart");
  if (w.is_zero()) return Form(ch, w.degree() >= 1 ? w.degree() - 1 : 0);
  if (affine) {
    Form beta = primitive_on_star(w);
    require(d(beta) == w, Errc::NotAPrimitive, "form has no primitive: not closed");
    return beta;
  }

  // torus: invert the differential mode by mode via the Cartan formula
  const std::vector<int> zero_wave(ch->dim, 0);
  std::map<std::vector<int>, Form> modes;
  for (const auto& [t, f] : w.components())
    for (const auto& [mo, cf] : f.terms()) {
      if (mo.wave == zero_wave) return std::nullopt;
      auto it = modes.try_emplace(mo.wave, Form(ch, w.degree())).first;
      CoefFn g(ch);
      g.add_term(mo, cf);
      it->second.add_component(t, g);
    }
  Form beta(ch, w.degree() - 1);
  for (const auto& [wave, part] : modes) {
    long n2 = 0;
    MultiVector k(ch, 1);
    for (int j = 0; j < ch->dim; ++j) {
      n2 += static_cast<long>(wave[j]) * wave[j];
      if (wave[j] != 0) k.add_component({j}, CoefFn::constant(ch, Scalar(wave[j])));
    }
    Scalar inv = *(Scalar::i() * Scalar::tau() * Scalar(n2)).inverse();
    beta += inv * contract(k, part);
  }
  require(d(beta) == w, Errc::NotAPrimitive, "form has no primitive: not closed");
  return beta;
}

}  // namespace

SemidirectElement SemidirectElement::operator-() const {
  SemidirectElement r = *this;
  r.v = -r.v;
  r.b = -r.b;
  return r;
}

SemidirectElement& SemidirectElement::operator+=(const SemidirectElement& o) {
  require(degree == o.degree, Errc::DegreeMismatch, "semidirect sum degree mismatch");
  v += o.v;
  b += o.b;
  return *this;
}

SemidirectElement& SemidirectElement::operator-=(const SemidirectElement& o) {
  return *this += -o;
}

SemidirectElement operator*(const Scalar& s, SemidirectElement e) {
  e.v = s * e.v;
  e.b = s * e.b;
  return e;
}

bool SemidirectElement::operator==(const SemidirectElement& o) const {
  return degree == o.degree && v == o.v && b == o.b;
}

SemidirectElement semidirect_zero(const NervePtr& nerve, int level, int degree) {
  require(nerve != nullptr, Errc::InvalidArgument, "semidirect_zero: null nerve");
  require(degree >= 0 && degree <= level - 1, Errc::DegreeMismatch,
          "semidirect degree outside [0, level-1]");
  SemidirectElement e;
  e.degree = degree;
  e.v = MultiVector(nerve->manifold, 1);
  e.b = make_cochain(nerve, level, level - 1 - degree);
  return e;
}

SemidirectElement semidirect_pair(MultiVector v, DeligneCochain b) {
  SemidirectElement e;
  e.degree = 0;
  e.v = std::move(v);
  e.b = std::move(b);
  validate(e, "semidirect_pair");
  return e;
}

SemidirectElement semidirect_cochain(int degree, DeligneCochain b) {
  require(degree >= 1, Errc::DegreeMismatch, "pure-cochain elements start in degree 1");
  require(b.nerve != nullptr, Errc::InvalidArgument, "semidirect_cochain: cochain has no nerve");
  SemidirectElement e;
  e.degree = degree;
  e.v = MultiVector(b.nerve->manifold, 1);
  e.b = std::move(b);
  validate(e, "semidirect_cochain");
  return e;
}

DeligneCochain lie_derive_cochain(const MultiVector& v, const DeligneCochain& c) {
  require(c.nerve != nullptr, Errc::InvalidArgument, "lie_derive_cochain: null nerve");
  DeligneCochain r = make_cochain(c.nerve, c.level, c.degree);
  if (v.is_zero()) return r;
  require(v.degree() == 1, Errc::DegreeMismatch, "Lie derivative needs a vector field");
  require_compatible(v.chart(), c.nerve->manifold, "lie_derive_cochain");
  for (auto& [q, forms] : r.comp)
    for (int i = 0; i < static_cast<int>(forms.size()); ++i) {
      MultiVector vr = restrict_field(c.nerve->inclusion(q, i), v);
      forms[i] = lie_derivative(vr, c.at(q, i));
    }
  return r;
}

SemidirectElement dg_lie_bracket(const SemidirectElement& a, const SemidirectElement& c) {
  validate(a, "dg_lie_bracket");
  validate(c, "dg_lie_bracket");
  require(a.b.level == c.b.level && same_nerve(*a.b.nerve, *c.b.nerve), Errc::WrongNerve,
          "dg_lie_bracket: elements live over different nerves");
  int jd = a.degree + c.degree;
  require(jd <= a.b.level - 1, Errc::DegreeMismatch,
          "bracket degree exceeds the truncation");
  SemidirectElement r = semidirect_zero(a.b.nerve, a.b.level, jd);
  if (a.degree == 0 && c.degree == 0) r.v = field_bracket(a.v, c.v);
  // L_{v1} b2 - (-1)^{|e1||e2|} L_{v2} b1: a term survives only when its
  // acting element has degree 0, where the Koszul factor is +1
  if (a.degree == 0 && !a.v.is_zero()) r.b += lie_derive_cochain(a.v, c.b);
  if (c.degree == 0 && !c.v.is_zero()) r.b -= lie_derive_cochain(c.v, a.b);
  return r;
}

SemidirectElement dg_lie_differential(const SemidirectElement& a) {
  validate(a, "dg_lie_differential");
  if (a.degree == 0) return semidirect_zero(a.b.nerve, a.b.level, 0);
  SemidirectElement r = semidirect_zero(a.b.nerve, a.b.level, a.degree - 1);
  r.b = total_differential(a.b);
  return r;
}

MembershipReport dglie_membership(const DeligneCochain& A, const SemidirectElement& e) {
  validate(e, "dglie_membership");
  require(A.nerve != nullptr, Errc::InvalidArgument, "dglie_membership: null nerve");
  require(same_nerve(*A.nerve, *e.b.nerve), Errc::WrongNerve,
          "dglie_membership: nerve mismatch");
  require(A.degree == A.level && A.level == e.b.level, Errc::DegreeMismatch,
          "the connection datum must be top-degree at the element's level");
  require(e.degree == 0, Errc::DegreeMismatch, "membership is a degree-0 condition");
  require(is_cocycle(A).passed, Errc::NotACocycle,
          "dglie_membership: the connection datum is not a cocycle");
  MembershipReport rep;
  rep.residual = lie_derive_cochain(e.v, A) - total_differential(e.b);
  rep.member = rep.residual.is_zero();
  return rep;
}

CompareReport compare_models(const DeligneCochain& A,
                             const std::vector<SemidirectElement>& members) {
  require(A.nerve != nullptr, Errc::InvalidArgument, "compare_models: null nerve");
  require(A.nerve->trivial, Errc::WrongNerve,
          "comparison needs a globally defined potential (trivial cover)");
  require(A.degree == A.level && A.level >= 1, Errc::DegreeMismatch,
          "the potential must be a top-degree cochain");
  const ChartPtr& ch = A.nerve->manifold;
  Form pot = A.at(0, 0);
  Form omega = curvature(A);
  PreNPlectic p = check_pre_nplectic(omega, A.level);

  CompareReport rep;
  rep.level = A.level;
  std::vector<Form> hs;
  for (const auto& e : members) {
    if (!dglie_membership(A, e).member) rep.members_ok = false;
    Form h = contract(e.v, pot) - e.b.at(0, 0);
    if (!hamiltonian_residual(p, e.v, h).is_zero()) rep.images_hamiltonian = false;
    hs.push_back(std::move(h));
  }

  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      SemidirectElement br = dg_lie_bracket(members[i], members[j]);
      Form hdg = contract(br.v, pot) - br.b.at(0, 0);
      Form hl2 = contract(members[i].v ^ members[j].v, omega);
      ComparedPair row;
      row.i = static_cast<int>(i);
      row.j = static_cast<int>(j);
      row.defect = hdg - hl2;
      if (A.level == 1) {
        // degree-0 defects are exact only when they vanish
        row.exact = row.defect.is_zero();
        row.primitive = Form(ch, 0);
      } else {
        auto prim = exact_primitive(row.defect);
        row.exact = prim.has_value();
        row.primitive = prim ? *prim : Form(ch, A.level - 2);
      }
      if (!row.exact) rep.defects_exact = false;
      rep.pairs.push_back(std::move(row));
    }
  return rep;
}

Json semidirect_to_json(const SemidirectElement& e) {
  Json j;
  j["degree"] = e.degree;
  j["v"] = multivector_to_json(e.v);
  j["b"] = deligne_to_json(e.b);
  return j;
}

Json membership_to_json(const MembershipReport& rep) {
  Json j;
  j["member"] = rep.member;
  j["residual"] = deligne_to_json(rep.residual);
  return j;
}

Json compare_report_to_json(const CompareReport& rep) {
  Json j;
  j["level"] = rep.level;
  j["members_ok"] = rep.members_ok;
  j["images_hamiltonian"] = rep.images_hamiltonian;
  j["defects_exact"] = rep.defects_exact;
  j["passed"] = rep.passed();
  Json rows = Json::array();
  for (const auto& pr : rep.pairs) {
    Json r;
    r["i"] = pr.i;
    r["j"] = pr.j;
    r["exact"] = pr.exact;
    r["defect"] = form_to_json(pr.defect);
    r["primitive"] = form_to_json(pr.primitive);
    rows.push_back(std::move(r));
  }
  j["pairs"] = std::move(rows);
  return j;
}

}  // namespace plectic
