#include "plectic/exterior.hpp"

#include <algorithm>

namespace plectic {

Form d(const Form& w) {
  Form r(w.chart(), w.degree() + 1);
  for (auto& [t, f] : w.components())
    for (int j = 0; j < w.chart()->dim; ++j) {
      if (std::binary_search(t.begin(), t.end(), j)) continue;
      CoefFn df = f.derivative(j);
      if (df.is_zero()) continue;
      std::vector<int> u;
      u.reserve(t.size() + 1);
      u.push_back(j);
      u.insert(u.end(), t.begin(), t.end());
      r.add_component(std::move(u), df);
    }
  return r;
}

namespace {

// Interior product by the coordinate field along one axis.
Form contract_axis(int s, const Form& w) {
  Form r(w.chart(), w.degree() - 1);
  for (auto& [t, f] : w.components()) {
    auto it = std::find(t.begin(), t.end(), s);
    if (it == t.end()) continue;
    int pos = static_cast<int>(it - t.begin());
    std::vector<int> u(t.begin(), it);
    u.insert(u.end(), it + 1, t.end());
    r.add_component(std::move(u), (pos % 2 == 0) ? f : -f);
  }
  return r;
}

}  // namespace

Form contract(const MultiVector& p, const Form& w, SlotOrder order) {
  require_compatible(p.chart(), w.chart(), "contract");
  if (p.degree() > w.degree()) return Form(w.chart(), 0);  // lands below degree 0
  Form r(w.chart(), w.degree() - p.degree());
  for (auto& [u, g] : p.components()) {
    Form acc = w;
    if (order == SlotOrder::FirstSlotInnermost) {
      for (size_t a = 0; a < u.size(); ++a) acc = contract_axis(u[a], acc);
    } else {
      for (size_t a = u.size(); a-- > 0;) acc = contract_axis(u[a], acc);
    }
    r += g * acc;
  }
  return r;
}

Form contract(const MultiVector& p, const Form& w) {
  return contract(p, w, conventions().slot_order);
}

CoefFn apply_field(const MultiVector& v, const CoefFn& f) {
  require(v.degree() == 1, Errc::DegreeMismatch, "apply_field needs a degree-1 field");
  require_compatible(v.chart(), f.chart(), "apply_field");
  CoefFn r(f.chart());
  for (auto& [t, g] : v.components()) r += g * f.derivative(t[0]);
  return r;
}

MultiVector field_bracket(const MultiVector& v, const MultiVector& w) {
  require(v.degree() == 1 && w.degree() == 1, Errc::DegreeMismatch,
          "field bracket needs degree-1 fields");
  require_compatible(v.chart(), w.chart(), "field_bracket");
  MultiVector r(v.chart(), 1);
  for (int j = 0; j < v.chart()->dim; ++j) {
    CoefFn c = apply_field(v, w.component({j})) - apply_field(w, v.component({j}));
    r.add_component({j}, c);
  }
  return r;
}

Form lie_derivative(const MultiVector& v, const Form& w) {
  require(v.degree() == 1, Errc::DegreeMismatch, "lie_derivative needs a degree-1 field");
  require_compatible(v.chart(), w.chart(), "lie_derivative");
  Form r(w.chart(), w.degree());
  for (auto& [t, f] : w.components()) {
    r.add_component(t, apply_field(v, f));
    for (size_t pos = 0; pos < t.size(); ++pos) {
      CoefFn comp = v.component({t[pos]});
      if (comp.is_zero()) continue;
      for (int j = 0; j < w.chart()->dim; ++j) {
        CoefFn der = comp.derivative(j);
        if (der.is_zero()) continue;
        std::vector<int> u = t;
        u[pos] = j;
        r.add_component(std::move(u), f * der);
      }
    }
  }
  return r;
}

Form pullback(const AffineMap& m, const Form& w) {
  require_compatible(w.chart(), m.dst, "pullback: form does not live on the map target");
  Form r(m.src, w.degree());
  for (auto& [t, f] : w.components()) {
    std::vector<int> u;
    u.reserve(t.size());
    bool dead = false;
    for (int j : t) {
      if (m.axes[j].from < 0) {
        dead = true;  // constant axis, the covector pulls back to zero
        break;
      }
      u.push_back(m.axes[j].from);
    }
    if (dead) continue;
    r.add_component(std::move(u), f.pullback(m));
  }
  return r;
}

MultiVector restrict_field(const AffineMap& m, const MultiVector& p) {
  require_compatible(p.chart(), m.dst, "restrict_field: field does not live on the map target");
  require(m.src->dim == m.dst->dim, Errc::NotRepresentable,
          "field restriction needs a chart map of full dimension");
  MultiVector r(m.src, p.degree());
  for (auto& [t, g] : p.components()) {
    std::vector<int> u;
    u.reserve(t.size());
    for (int j : t) {
      require(m.axes[j].from >= 0, Errc::NotRepresentable,
              "field restriction along a map with pinned axes");
      u.push_back(m.axes[j].from);
    }
    r.add_component(std::move(u), g.pullback(m));
  }
  return r;
}

Scalar integrate_torus(const Form& w, std::vector<int> axes) {
  std::sort(axes.begin(), axes.end());
  require(std::adjacent_find(axes.begin(), axes.end()) == axes.end(), Errc::InvalidArgument,
          "repeated integration axis");
  require(static_cast<int>(axes.size()) == w.degree(), Errc::DegreeMismatch,
          "integration axes do not match the form degree");
  for (int j : axes)
    require(w.chart()->allows_fourier(j), Errc::NonPeriodicAxis,
            "axis " + std::to_string(j) + " of " + w.chart()->name + " is not periodic");
  const CoefFn f = w.component(axes);
  Scalar acc;
  for (auto& [m, c] : f.terms()) {
    bool drop = false;
    for (int j : axes)
      if (m.wave[j] != 0) drop = true;  // full-period integral of a nonzero mode
    for (int j = 0; j < w.chart()->dim && !drop; ++j)
      if (m.alpha[j] != 0) drop = true;  // transverse coordinates sit at the basepoint 0
    if (!drop) acc += c;
  }
  return acc;
}

Form primitive_on_star(const Form& w) {
  int p = w.degree();
  require(p >= 1, Errc::DegreeMismatch, "primitive of a degree-0 form");
  for (int j = 0; j < w.chart()->dim; ++j)
    require(!w.chart()->allows_fourier(j), Errc::NonPeriodicAxis,
            "homotopy primitive needs a star-shaped chart, axis " + std::to_string(j) +
                " of " + w.chart()->name + " is periodic");
  Form r(w.chart(), p - 1);
  for (auto& [t, f] : w.components())
    for (auto& [mono, c] : f.terms()) {
      int total = 0;
      for (int a : mono.alpha) total += a;
      Scalar weight(Rational(1, p + total));
      for (int a = 0; a < p; ++a) {
        Monomial m2 = mono;
        m2.alpha[t[a]] += 1;
        CoefFn g(w.chart());
        g.add_term(std::move(m2), (a % 2 == 0) ? weight * c : -(weight * c));
        std::vector<int> u(t.begin(), t.begin() + a);
        u.insert(u.end(), t.begin() + a + 1, t.end());
        r.add_component(std::move(u), g);
      }
    }
  return r;
}

}  // namespace plectic
