#include "plectic/deligne.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "plectic/linear.hpp"

namespace plectic {

namespace {

Integer floor_int(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

// Representative of a U(1)-valued constant: shifts the rational part of the
// tau^0 coefficient into [0,1); transcendental and imaginary parts pass
// through untouched.
Scalar reduce_mod_1(const Scalar& s) {
  auto it = s.terms().find(0);
  if (it == s.terms().end()) return s;
  return s - Scalar(Rational(floor_int(it->second.re)));
}

// Levels q whose slot carries forms of degree in [0, level].
std::vector<int> slot_levels(const CoverNerve& nerve, int level, int degree) {
  std::vector<int> qs;
  for (int q = 0; q <= nerve.max_level(); ++q) {
    int p = degree - q;
    if (p >= 0 && p <= level) qs.push_back(q);
  }
  return qs;
}

void require_same_shape(const DeligneCochain& a, const DeligneCochain& b,
                        const char* where) {
  require(a.nerve != nullptr && b.nerve != nullptr && same_nerve(*a.nerve, *b.nerve),
          Errc::ChartMismatch, std::string(where) + ": cochains live on different nerves");
  require(a.level == b.level && a.degree == b.degree, Errc::DegreeMismatch,
          std::string(where) + ": level or degree mismatch");
}

// Increasing k-tuples of {0..n-1} in lex order.
std::vector<std::vector<int>> tuples_of(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> t(k);
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

bool zero_monomial(const Monomial& m) {
  auto all0 = [](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
  };
  return all0(m.alpha) && all0(m.wave);
}

// Monomial basis of the coefficient band: polynomial axes carry powers 0..K,
// Fourier axes carry waves -K..K.
std::vector<Monomial> band_monomials(const ChartPtr& ch, int K) {
  std::vector<Monomial> out;
  Monomial cur{std::vector<int>(ch->dim, 0), std::vector<int>(ch->dim, 0)};
  std::function<void(int)> rec = [&](int axis) {
    if (axis == ch->dim) {
      out.push_back(cur);
      return;
    }
    if (ch->allows_poly(axis)) {
      for (int a = 0; a <= K; ++a) {
        cur.alpha[axis] = a;
        rec(axis + 1);
      }
      cur.alpha[axis] = 0;
    } else {
      for (int w = -K; w <= K; ++w) {
        cur.wave[axis] = w;
        rec(axis + 1);
      }
      cur.wave[axis] = 0;
    }
  };
  rec(0);
  return out;
}

using SlotKey = std::tuple<int, int, std::vector<int>, Monomial>;  // q, simplex, tuple, monomial

struct SlotBasis {
  std::vector<SlotKey> keys;
  std::map<SlotKey, int> index;
};

SlotBasis cochain_basis(const CoverNerve& N, int level, int degree, int band) {
  SlotBasis B;
  for (int q : slot_levels(N, level, degree)) {
    int p = degree - q;
    for (int i = 0; i < N.count(q); ++i) {
      const ChartPtr& ch = N.simplex(q, i).chart;
      for (auto& t : tuples_of(ch->dim, p))
        for (auto& mo : band_monomials(ch, band)) {
          B.index.emplace(SlotKey{q, i, t, mo}, static_cast<int>(B.keys.size()));
          B.keys.push_back({q, i, t, mo});
        }
    }
  }
  return B;
}

DeligneCochain cochain_from_coeffs(const NervePtr& nerve, int level, int degree,
                                   const SlotBasis& B, const std::vector<Scalar>& x) {
  DeligneCochain c = make_cochain(nerve, level, degree);
  for (size_t u = 0; u < B.keys.size(); ++u) {
    if (x[u].is_zero()) continue;
    const auto& [q, i, t, mo] = B.keys[u];
    CoefFn f(nerve->simplex(q, i).chart);
    f.add_term(mo, x[u]);
    c.at(q, i).add_component(t, f);
  }
  return c;
}

// Matrix of d_tot on the band basis of degree-`degree` cochains.  Arc-cover
// slots are polynomial, so every entry is rational.  Rows are indexed lazily
// by the output monomials that receive coefficients; keys come back in `row`.
Matrix<Rational> dtot_matrix(const NervePtr& nerve, int level, int degree,
                             const SlotBasis& src, std::map<SlotKey, int>& row) {
  std::vector<std::tuple<int, int, Rational>> trip;
  for (size_t u = 0; u < src.keys.size(); ++u) {
    const auto& [q, i, t, mo] = src.keys[u];
    DeligneCochain e = make_cochain(nerve, level, degree);
    CoefFn f(nerve->simplex(q, i).chart);
    f.add_term(mo, Scalar(1));
    e.at(q, i).add_component(t, f);
    DeligneCochain img = total_differential(e);
    for (auto& [oq, ov] : img.comp)
      for (int oi = 0; oi < static_cast<int>(ov.size()); ++oi)
        for (auto& [ot, of] : ov[oi].components())
          for (auto& [omo, os] : of.terms()) {
            auto it = row.emplace(SlotKey{oq, oi, ot, omo}, static_cast<int>(row.size())).first;
            trip.emplace_back(it->second, static_cast<int>(u), os.as_rational());
          }
  }
  Matrix<Rational> M(static_cast<int>(row.size()), static_cast<int>(src.keys.size()));
  for (auto& [r, c, v] : trip) M.at(r, c) += v;
  return M;
}

// --- gauge_reduce solvers ---------------------------------------------------

// Trivial cover: one global slot, solve d b = D.  Affine charts use the
// star-shaped primitive; torus charts split into Fourier modes, where the
// wave covector is invertible on closed modes and the zero mode obstructs.
GaugeResult gauge_trivial(const DeligneCochain& delta, int m) {
  GaugeResult res;
  const CoverNerve& N = *delta.nerve;
  const ChartPtr& M = N.manifold;
  const Form& D = delta.at(0, 0);
  DeligneCochain wit = make_cochain(delta.nerve, delta.level, m - 1);

  bool all_per = true, none_per = true;
  for (int j = 0; j < M->dim; ++j) (M->periodic[j] ? none_per : all_per) = false;

  if (none_per) {
    if (!d(D).is_zero()) {
      res.status = GaugeStatus::Obstructed;
      res.note = "difference is not closed";
      return res;
    }
    wit.at(0, 0) = primitive_on_star(D);
    res.status = GaugeStatus::Witness;
    res.witness = std::move(wit);
    res.note = "primitive on a star-shaped chart";
    return res;
  }
  require(all_per, Errc::UnsupportedComponents,
          "gauge solve on mixed charts is not supported");

  // wave -> component tuple -> coefficient
  std::map<std::vector<int>, std::map<std::vector<int>, Scalar>> modes;
  for (auto& [t, f] : D.components())
    for (auto& [mono, s] : f.terms()) {
      auto& slot = modes[mono.wave][t];
      slot = slot + s;
    }

  Form cand(M, m - 1);
  for (auto& [w, comps] : modes) {
    bool zero_wave = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
    if (zero_wave) {
      res.status = GaugeStatus::Obstructed;
      res.note = "harmonic part of the difference is nonzero";
      return res;
    }
    MultiVector k(M, 1);
    Rational n2 = 0;
    for (int j = 0; j < M->dim; ++j) {
      if (w[j] == 0) continue;
      k.add_component({j}, CoefFn::constant(M, Scalar(Rational(w[j]))));
      n2 += Rational(w[j]) * w[j];
    }
    Form alpha(M, m);
    for (auto& [t, s] : comps) alpha.add_component(t, CoefFn::constant(M, s));
    // d(E_w beta) = i tau E_w (w^flat ^ beta); on closed modes beta is the
    // wave contraction over i tau |w|^2
    Scalar inv = *(Scalar::i() * Scalar::tau() * Scalar(n2)).inverse();
    Form iota = contract(k, alpha);
    for (auto& [t, f] : iota.components()) {
      auto cv = f.constant_value();
      cand.add_component(t, (inv * *cv) * CoefFn::fourier(M, w));
    }
  }
  wit.at(0, 0) = std::move(cand);
  DeligneCochain img = total_differential(wit);
  if (img.at(0, 0) == D) {
    res.status = GaugeStatus::Witness;
    res.witness = std::move(wit);
    res.note = "mode-by-mode Fourier primitive";
  } else {
    res.status = GaugeStatus::Obstructed;
    res.note = "difference is not closed";
  }
  return res;
}

// Arc covers, degree 1: patch primitives determine the witness up to one
// constant per patch; a spanning tree of the patch graph fixes the constants
// and every remaining cycle has to close up to an integer, because the
// transition slots are read modulo locally constant integers.
GaugeResult gauge_degree1(const DeligneCochain& delta) {
  GaugeResult res;
  const CoverNerve& N = *delta.nerve;
  int n0 = N.count(0), n1 = N.count(1);

  std::vector<Form> h;
  for (int i = 0; i < n0; ++i) {
    const Form& Ai = delta.at(0, i);
    if (!d(Ai).is_zero()) {
      res.status = GaugeStatus::Obstructed;
      res.note = "curvature differs on patch " + N.simplex(0, i).chart->name;
      return res;
    }
    h.push_back(Ai.is_zero() ? Form(N.simplex(0, i).chart, 0) : primitive_on_star(Ai));
  }

  std::vector<Scalar> w(n1);
  for (int i = 0; i < n1; ++i) {
    const auto& sig = N.simplex(1, i).patches;
    CoefFn ha = h[sig[0]].component({}).pullback(N.restriction(sig, {sig[0]}));
    CoefFn hb = h[sig[1]].component({}).pullback(N.restriction(sig, {sig[1]}));
    CoefFn resid = delta.at(1, i).component({}) - (hb - ha);
    auto cv = resid.constant_value();
    if (!cv) {
      res.status = GaugeStatus::Obstructed;
      res.note = "difference is not a cocycle on " + N.simplex(1, i).chart->name;
      return res;
    }
    w[i] = *cv;
  }

  std::vector<std::vector<std::pair<int, int>>> adj(n0);  // (other patch, edge)
  for (int i = 0; i < n1; ++i) {
    const auto& sig = N.simplex(1, i).patches;
    adj[sig[0]].push_back({sig[1], i});
    adj[sig[1]].push_back({sig[0], i});
  }
  std::vector<std::optional<Scalar>> cpot(n0);
  for (int root = 0; root < n0; ++root) {
    if (cpot[root]) continue;
    cpot[root] = Scalar();
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (auto [b, e] : adj[a]) {
        if (cpot[b]) continue;
        // c_hi - c_lo = w_e on the stored pair {lo, hi}
        cpot[b] = (b == N.simplex(1, e).patches[1]) ? *cpot[a] + w[e] : *cpot[a] - w[e];
        stack.push_back(b);
      }
    }
  }
  for (int i = 0; i < n1; ++i) {
    const auto& sig = N.simplex(1, i).patches;
    Scalar slack = *cpot[sig[1]] - *cpot[sig[0]] - w[i];
    if (!slack.is_integer()) {
      res.status = GaugeStatus::Obstructed;
      res.note = "holonomy obstruction: transition cycle closes up to " + slack.str();
      return res;
    }
  }

  DeligneCochain wit = make_cochain(delta.nerve, delta.level, 0);
  for (int i = 0; i < n0; ++i) {
    Form f = h[i];
    f += form_from_function(CoefFn::constant(N.simplex(0, i).chart, *cpot[i]));
    wit.at(0, i) = std::move(f);
  }
  // invariant: d of the patch primitives restores the 1-form slots exactly
  // and transitions match up to the integer slack established above
  DeligneCochain img = total_differential(wit);
  for (int i = 0; i < n0; ++i)
    require(img.at(0, i) == delta.at(0, i), Errc::NotAPrimitive,
            "patch primitive failed to reproduce the difference");
  for (int i = 0; i < n1; ++i) {
    auto cv = (img.at(1, i) - delta.at(1, i)).component({}).constant_value();
    require(cv.has_value() && cv->is_integer(), Errc::NotAPrimitive,
            "transition slack left the integers");
  }
  res.status = GaugeStatus::Witness;
  res.witness = std::move(wit);
  res.note = "transition constants fixed along a spanning tree";
  return res;
}

// Arc covers, degree >= 2: exact rational solve of d_tot b = delta on the
// band basis.  Bottom slots are matched strictly here (no integer slack), so
// this path under-approximates equivalence at most by that slack.
GaugeResult gauge_banded(const DeligneCochain& delta, int band) {
  GaugeResult res;
  const CoverNerve& N = *delta.nerve;
  int m = delta.degree;
  SlotBasis src = cochain_basis(N, delta.level, m - 1, band);
  std::map<SlotKey, int> row;
  Matrix<Rational> M = dtot_matrix(delta.nerve, delta.level, m - 1, src, row);

  std::vector<Scalar> b(row.size());
  for (auto& [q, v] : delta.comp)
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      for (auto& [t, f] : v[i].components())
        for (auto& [mo, s] : f.terms()) {
          auto it = row.find(SlotKey{q, i, t, mo});
          if (it == row.end()) {
            res.status = GaugeStatus::NoWitnessInBand;
            res.note = "difference leaves the band K=" + std::to_string(band);
            return res;
          }
          b[it->second] = b[it->second] + s;
        }

  auto sol = solve_field(M, b);
  if (!sol) {
    res.status = GaugeStatus::NoWitnessInBand;
    res.note = "no witness within band K=" + std::to_string(band);
    return res;
  }
  DeligneCochain wit = cochain_from_coeffs(delta.nerve, delta.level, m - 1, src, *sol);
  DeligneCochain img = total_differential(wit);
  require(img == delta, Errc::NotAPrimitive, "band solve failed verification");
  res.status = GaugeStatus::Witness;
  res.witness = std::move(wit);
  res.note = "band solve, K=" + std::to_string(band);
  return res;
}

}  // namespace

// --- cochain arithmetic ------------------------------------------------------

DeligneCochain DeligneCochain::operator-() const {
  DeligneCochain r = *this;
  for (auto& [q, v] : r.comp)
    for (auto& f : v) f = -f;
  for (auto& s : r.discrepancy) s = -s;
  return r;
}

DeligneCochain& DeligneCochain::operator+=(const DeligneCochain& o) {
  require_same_shape(*this, o, "DeligneCochain::operator+=");
  for (auto& [q, v] : comp) {
    auto it = o.comp.find(q);
    require(it != o.comp.end() && it->second.size() == v.size(), Errc::DegreeMismatch,
            "DeligneCochain::operator+=: slot layout mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] += it->second[i];
  }
  if (!discrepancy.empty() || !o.discrepancy.empty()) {
    size_t n = std::max(discrepancy.size(), o.discrepancy.size());
    discrepancy.resize(n);
    for (size_t i = 0; i < o.discrepancy.size(); ++i)
      discrepancy[i] += o.discrepancy[i];
  }
  return *this;
}

DeligneCochain& DeligneCochain::operator-=(const DeligneCochain& o) { return *this += -o; }

DeligneCochain operator*(const Scalar& s, DeligneCochain c) {
  for (auto& [q, v] : c.comp)
    for (auto& f : v) f = s * f;
  for (auto& x : c.discrepancy) x = s * x;
  return c;
}

bool DeligneCochain::is_zero() const {
  for (auto& [q, v] : comp)
    for (auto& f : v)
      if (!f.is_zero()) return false;
  for (auto& s : discrepancy)
    if (!s.is_zero()) return false;
  return true;
}

bool DeligneCochain::operator==(const DeligneCochain& o) const {
  if (!nerve || !o.nerve || !same_nerve(*nerve, *o.nerve)) return false;
  if (level != o.level || degree != o.degree) return false;
  if (comp.size() != o.comp.size()) return false;
  for (auto& [q, v] : comp) {
    auto it = o.comp.find(q);
    if (it == o.comp.end() || it->second.size() != v.size()) return false;
    for (size_t i = 0; i < v.size(); ++i)
      if (!(v[i] == it->second[i])) return false;
  }
  size_t n = std::max(discrepancy.size(), o.discrepancy.size());
  for (size_t i = 0; i < n; ++i) {
    Scalar a = i < discrepancy.size() ? discrepancy[i] : Scalar();
    Scalar b = i < o.discrepancy.size() ? o.discrepancy[i] : Scalar();
    if (!(a == b)) return false;
  }
  return true;
}

DeligneCochain make_cochain(NervePtr nerve, int level, int degree) {
  require(nerve != nullptr, Errc::InvalidArgument, "make_cochain: null nerve");
  require(level >= 0 && degree >= 0, Errc::InvalidArgument,
          "make_cochain: level and degree must be nonnegative");
  DeligneCochain c;
  c.nerve = std::move(nerve);
  c.level = level;
  c.degree = degree;
  for (int q : slot_levels(*c.nerve, level, degree)) {
    std::vector<Form> v;
    v.reserve(c.nerve->count(q));
    for (int i = 0; i < c.nerve->count(q); ++i)
      v.emplace_back(c.nerve->simplex(q, i).chart, degree - q);
    c.comp.emplace(q, std::move(v));
  }
  return c;
}

DeligneCochain total_differential(const DeligneCochain& c) {
  require(c.nerve != nullptr, Errc::InvalidArgument, "total_differential: null nerve");
  const CoverNerve& N = *c.nerve;
  DeligneCochain r = make_cochain(c.nerve, c.level, c.degree + 1);
  for (auto& [q, out] : r.comp) {
    for (int i = 0; i < static_cast<int>(out.size()); ++i) {
      Form acc(N.simplex(q, i).chart, r.degree - q);
      if (c.has_level(q - 1)) {
        const auto& sig = N.simplex(q, i).patches;
        for (int k = 0; k <= q; ++k) {
          std::vector<int> face = sig;
          face.erase(face.begin() + k);
          auto f = N.find(face);
          require(f.has_value(), Errc::InvalidArgument, "nerve is not closed under faces");
          Form pulled = pullback(N.restriction(sig, face), c.at(q - 1, f->second));
          if (k % 2 == 0)
            acc += pulled;
          else
            acc -= pulled;
        }
      }
      // the de Rham part (-1)^q d; output slots above the truncation are
      // never materialized, which silently drops the curvature direction
      if (c.has_level(q)) {
        Form dd = d(c.at(q, i));
        if (q % 2 == 0)
          acc += dd;
        else
          acc -= dd;
      }
      out[i] = std::move(acc);
    }
  }
  return r;
}

DeligneReport is_cocycle(const DeligneCochain& c) {
  DeligneReport rep;
  rep.passed = true;
  DeligneCochain r = total_differential(c);
  int bottom_q = c.degree + 1;
  for (auto& [q, v] : r.comp) {
    int p = r.degree - q;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (p >= 1) {
        if (!v[i].is_zero()) {
          rep.passed = false;
          rep.residuals.push_back({q, i, v[i].str()});
        }
      } else {
        // bottom slots are U(1)-valued: the residual must be a locally
        // constant integer, recorded as the discrepancy of the cochain
        auto cv = v[i].component({}).constant_value();
        if (cv.has_value() && cv->is_integer()) {
          rep.discrepancy.push_back(*cv);
        } else {
          rep.passed = false;
          rep.residuals.push_back({q, i, v[i].component({}).str()});
          rep.discrepancy.push_back(Scalar());
        }
      }
    }
  }
  if (!c.discrepancy.empty()) {
    if (c.discrepancy.size() != rep.discrepancy.size()) {
      rep.passed = false;
      rep.residuals.push_back({bottom_q, -1, "stored discrepancy has wrong length"});
    } else {
      for (size_t i = 0; i < rep.discrepancy.size(); ++i)
        if (!(c.discrepancy[i] == rep.discrepancy[i])) {
          rep.passed = false;
          rep.residuals.push_back({bottom_q, static_cast<int>(i),
                                   "stored discrepancy " + c.discrepancy[i].str() +
                                       " != computed " + rep.discrepancy[i].str()});
        }
    }
  }
  return rep;
}

Form curvature(const DeligneCochain& c) {
  require(c.nerve != nullptr, Errc::InvalidArgument, "curvature: null nerve");
  require(c.degree == c.level, Errc::DegreeMismatch,
          "curvature needs degree == level, got degree " + std::to_string(c.degree) +
              " at level " + std::to_string(c.level));
  auto rep = is_cocycle(c);
  require(rep.passed, Errc::NotACocycle, "curvature of a non-cocycle");
  const CoverNerve& N = *c.nerve;

  std::vector<Form> F;
  for (int i = 0; i < N.count(0); ++i) F.push_back(d(c.at(0, i)));
  for (int i = 0; i < N.count(1); ++i) {
    const auto& sig = N.simplex(1, i).patches;
    Form a = pullback(N.restriction(sig, {sig[0]}), F[sig[0]]);
    Form b = pullback(N.restriction(sig, {sig[1]}), F[sig[1]]);
    require(a == b, Errc::GluingFailure,
            "patch curvatures disagree on " + N.simplex(1, i).chart->name);
  }
  if (N.trivial) return F[0];

  // arc covers: constants are the only coefficients both branch charts and
  // the torus chart can represent, so only constant curvatures glue
  Form glued(N.manifold, c.level + 1);
  std::map<std::vector<int>, Scalar> vals;
  for (int i = 0; i < N.count(0); ++i)
    for (auto& [t, f] : F[i].components()) {
      auto cv = f.constant_value();
      require(cv.has_value(), Errc::GluingFailure,
              "curvature is not constant on patch " + N.simplex(0, i).chart->name);
      auto [it, fresh] = vals.emplace(t, *cv);
      require(fresh || it->second == *cv, Errc::GluingFailure,
              "patch curvatures disagree across patches");
    }
  for (auto& [t, s] : vals) glued.add_component(t, CoefFn::constant(N.manifold, s));
  return glued;
}

IntegralityReport is_integral(const Form& omega) {
  const ChartPtr& ch = omega.chart();
  require(ch != nullptr, Errc::InvalidArgument, "is_integral: form without a chart");
  for (int j = 0; j < ch->dim; ++j)
    require(ch->allows_fourier(j), Errc::NonPeriodicAxis,
            "periods need a torus; axis " + std::to_string(j) + " of " + ch->name +
                " is not periodic");
  require(d(omega).is_zero(), Errc::NotClosed, "periods of a non-closed form");
  IntegralityReport rep;
  rep.integral = true;
  if (omega.degree() > ch->dim) return rep;
  for (auto& axes : tuples_of(ch->dim, omega.degree())) {
    Scalar per = integrate_torus(omega, axes);
    rep.integral = rep.integral && per.is_integer();
    rep.periods.emplace_back(axes, per);
  }
  return rep;
}

DeligneCochain prequantize_torus(const Rational& k) {
  NervePtr N = torus_cover(2);
  DeligneCochain c = make_cochain(N, 1, 1);
  for (int i = 0; i < N->count(0); ++i) {
    const ChartPtr& ch = N->simplex(0, i).chart;
    Form A(ch, 1);
    A.add_component({1}, Scalar(k) * CoefFn::coordinate(ch, 0));  // k x dy per branch
    c.at(0, i) = std::move(A);
  }
  for (int i = 0; i < N->count(1); ++i) {
    const auto& sig = N->simplex(1, i).patches;
    const ChartPtr& ch = N->simplex(1, i).chart;
    // delta(A) = k (u_b - u_a) dy from the x-axis windings of the two branch
    // inclusions, so the transition is the matching multiple of y
    Rational du = N->restriction(sig, {sig[1]}).axes[0].shift -
                  N->restriction(sig, {sig[0]}).axes[0].shift;
    if (du != 0) {
      Form g(ch, 0);
      g.add_component({}, Scalar(k * du) * CoefFn::coordinate(ch, 1));
      c.at(1, i) = std::move(g);
    }
  }
  auto rep = is_cocycle(c);
  if (rep.passed) c.discrepancy = rep.discrepancy;  // non-integer k: left untracked
  return c;
}

Scalar holonomy(const DeligneCochain& c) {
  require(c.nerve != nullptr, Errc::InvalidArgument, "holonomy: null nerve");
  const CoverNerve& N = *c.nerve;
  require(N.manifold->dim == 1 && N.manifold->periodic[0], Errc::WrongNerve,
          "holonomy needs a circle nerve, got " + N.manifold->name);
  require(c.degree == 1 && c.level >= 1, Errc::DegreeMismatch,
          "holonomy needs a degree-1 cochain at level >= 1");
  if (N.trivial) return reduce_mod_1(integrate_torus(c.at(0, 0), {0}));

  int n = N.count(0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ca = *N.simplex(0, a).chart;
    const auto& cb = *N.simplex(0, b).chart;
    return ca.lo[0] + ca.hi[0] < cb.lo[0] + cb.hi[0];
  });

  // cut the circle at the midpoint of each consecutive overlap; crossing the
  // cut from patch `a` into patch `b` applies the transition with the sign of
  // the stored orientation {lo, hi}
  Scalar acc;
  std::vector<Rational> seg_start(n), seg_end(n);
  for (int j = 0; j < n; ++j) {
    int a = order[j], b = order[(j + 1) % n];
    std::vector<int> sig{std::min(a, b), std::max(a, b)};
    auto f = N.find(sig);
    require(f.has_value(), Errc::WrongNerve, "consecutive arcs do not overlap");
    const ChartPtr& oc = N.simplex(f->first, f->second).chart;
    Rational cut = (oc->lo[0] + oc->hi[0]) / 2;
    Scalar jump = c.at(1, f->second).component({}).evaluate_exact({cut});
    acc = (a < b) ? acc + jump : acc - jump;
    seg_end[a] = cut + N.restriction(sig, {a}).axes[0].shift;
    seg_start[b] = cut + N.restriction(sig, {b}).axes[0].shift;
  }
  for (int i = 0; i < n; ++i) {
    const Form& A = c.at(0, i);
    if (A.is_zero()) continue;
    CoefFn P = primitive_on_star(A).component({});
    acc += P.evaluate_exact({seg_end[i]}) - P.evaluate_exact({seg_start[i]});
  }
  return reduce_mod_1(acc);
}

DeligneCochain restrict_to_circle(const DeligneCochain& c, int axis, const NervePtr& s1) {
  require(c.nerve != nullptr && s1 != nullptr, Errc::InvalidArgument,
          "restrict_to_circle: null nerve");
  const CoverNerve& N = *c.nerve;
  const CoverNerve& S = *s1;
  const ChartPtr& M = N.manifold;
  require(axis >= 0 && axis < M->dim, Errc::InvalidArgument,
          "restrict_to_circle: axis out of range");
  for (int j = 0; j < M->dim; ++j)
    require(M->periodic[j], Errc::WrongNerve, "circle restriction needs a torus base");
  require(S.manifold->dim == 1 && S.manifold->periodic[0], Errc::WrongNerve,
          "restriction target is not a circle nerve");
  require(S.trivial == N.trivial, Errc::WrongNerve,
          "restriction target kind does not match the source cover");

  DeligneCochain r = make_cochain(s1, c.level, c.degree);
  if (N.trivial) {
    if (c.has_level(0)) {
      AffineMap m;
      m.src = S.manifold;
      m.dst = M;
      m.axes.resize(M->dim);
      for (int k = 0; k < M->dim; ++k)
        m.axes[k] = (k == axis) ? AffineMap::Axis{0, Rational(0)}
                                : AffineMap::Axis{-1, Rational(0)};
      r.at(0, 0) = pullback(m, c.at(0, 0));
    }
    return r;
  }

  // circle patch j sits over the product patch with digit j on `axis` and
  // arc 0 (the window through the basepoint) on every other axis
  int dd = M->dim;
  int narcs = S.count(0);
  {
    int check = 1;
    for (int k = 0; k < dd; ++k) check *= narcs;
    require(check == N.count(0), Errc::WrongNerve,
            "source cover is not a product of the target arc cover");
  }
  auto patch_of = [&](int j) {
    int id = 0;
    for (int k = 0; k < dd; ++k) id = id * narcs + (k == axis ? j : 0);
    return id;
  };

  for (auto& [q, v] : r.comp) {
    if (!c.has_level(q)) continue;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      std::vector<int> tp;
      for (int j : S.simplex(q, i).patches) tp.push_back(patch_of(j));
      std::sort(tp.begin(), tp.end());
      auto f = N.find(tp);
      require(f.has_value() && f->first == q, Errc::WrongNerve,
              "coordinate circle misses a simplex of the product nerve");
      const ChartPtr& sc = S.simplex(q, i).chart;
      const ChartPtr& tc = N.simplex(q, f->second).chart;
      AffineMap m;
      m.src = sc;
      m.dst = tc;
      m.axes.resize(dd);
      for (int k = 0; k < dd; ++k) {
        if (k == axis) {
          bool ok = false;
          for (int u = -1; u <= 1 && !ok; ++u)
            if (tc->lo[k] <= sc->lo[0] + u && sc->hi[0] + u <= tc->hi[k]) {
              m.axes[k] = {0, Rational(u)};
              ok = true;
            }
          require(ok, Errc::WrongNerve, "circle window does not align with the product window");
        } else {
          // pin at the integer point of the window: the circle passes there
          Rational t(floor_int(tc->hi[k]));
          require(tc->lo[k] < t && t < tc->hi[k], Errc::WrongNerve,
                  "coordinate circle misses the window of " + tc->name);
          m.axes[k] = {-1, t};
        }
      }
      v[i] = pullback(m, c.at(q, f->second));
    }
  }
  return r;
}

GaugeResult gauge_reduce(const DeligneCochain& c1, const DeligneCochain& c2, int band) {
  require_same_shape(c1, c2, "gauge_reduce");
  int m = c1.degree;
  require(m >= 1, Errc::DegreeMismatch, "gauge classes need degree >= 1");
  require(band >= 0, Errc::InvalidArgument, "band must be nonnegative");
  const CoverNerve& N = *c1.nerve;

  DeligneCochain delta = c1 - c2;
  delta.discrepancy.clear();  // derived data; slots are what gets solved

  GaugeResult res;
  if (delta.is_zero()) {
    res.status = GaugeStatus::Witness;
    res.witness = make_cochain(c1.nerve, c1.level, m - 1);
    res.note = "cochains are equal";
    return res;
  }

  // screens that no witness can pass: d_tot b never changes the patch
  // curvature at top degree, nor degree-1 circle holonomies
  if (m == c1.level && delta.has_level(0)) {
    for (int i = 0; i < N.count(0); ++i)
      if (!d(delta.at(0, i)).is_zero()) {
        res.status = GaugeStatus::Obstructed;
        res.note = "curvature differs on patch " + N.simplex(0, i).chart->name;
        return res;
      }
  }
  if (m == 1 && c1.level >= 1) {
    bool torus = true;
    for (int j = 0; j < N.manifold->dim; ++j) torus = torus && N.manifold->periodic[j];
    if (torus) {
      NervePtr s1 = N.manifold->dim == 1
                        ? c1.nerve
                        : (N.trivial ? trivial_cover(torus_chart(1)) : circle_cover());
      for (int ax = 0; ax < N.manifold->dim; ++ax) {
        Scalar h1 = N.manifold->dim == 1 ? holonomy(c1)
                                         : holonomy(restrict_to_circle(c1, ax, s1));
        Scalar h2 = N.manifold->dim == 1 ? holonomy(c2)
                                         : holonomy(restrict_to_circle(c2, ax, s1));
        if (!(h1 == h2)) {
          res.status = GaugeStatus::Obstructed;
          res.note = "holonomy differs along axis " + std::to_string(ax) + ": " +
                     h1.str() + " vs " + h2.str();
          return res;
        }
      }
    }
  }

  if (N.trivial) return gauge_trivial(delta, m);
  if (m == 1) return gauge_degree1(delta);
  return gauge_banded(delta, band);
}

DeligneCochain flat_cocycle(const NervePtr& nerve, const std::vector<Scalar>& theta) {
  require(nerve != nullptr, Errc::InvalidArgument, "flat_cocycle: null nerve");
  const CoverNerve& N = *nerve;
  require(static_cast<int>(theta.size()) == N.manifold->dim, Errc::InvalidArgument,
          "flat_cocycle: one coefficient per axis required");
  DeligneCochain c = make_cochain(nerve, 1, 1);
  for (int i = 0; i < N.count(0); ++i) {
    const ChartPtr& ch = N.simplex(0, i).chart;
    Form A(ch, 1);
    for (int j = 0; j < N.manifold->dim; ++j)
      A.add_component({j}, CoefFn::constant(ch, theta[j]));
    c.at(0, i) = std::move(A);
  }
  return c;
}

FlatModuliReport flat_moduli(const NervePtr& nerve, int level, int band,
                             unsigned long long seed) {
  require(nerve != nullptr, Errc::InvalidArgument, "flat_moduli: null nerve");
  const CoverNerve& N = *nerve;
  const ChartPtr& M = N.manifold;
  require(level == 1, Errc::InvalidArgument,
          "flat moduli are implemented at level 1 (circle holonomies)");
  for (int j = 0; j < M->dim; ++j)
    require(M->periodic[j], Errc::WrongNerve, "flat moduli need a torus base");

  FlatModuliReport rep;
  rep.nerve = N.name;
  rep.level = level;
  rep.band = band;
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  auto rnd = [&](unsigned long long k) { return static_cast<long>(rng() % k); };

  // six distinct rational holonomy tuples with denominator 12, two
  // realizations each
  std::set<std::vector<Rational>> seen;
  std::vector<std::vector<Rational>> thetas;
  while (thetas.size() < 6) {
    std::vector<Rational> th;
    for (int j = 0; j < M->dim; ++j) th.push_back(Rational(rnd(12)) / 12);
    if (seen.insert(th).second) thetas.push_back(std::move(th));
  }

  auto random_gauge = [&]() {
    DeligneCochain b = make_cochain(nerve, level, 0);
    for (int i = 0; i < N.count(0); ++i) {
      const ChartPtr& ch = N.simplex(0, i).chart;
      CoefFn f(ch);
      for (auto& mo : band_monomials(ch, std::min(band, 2))) {
        if (zero_monomial(mo)) continue;
        if (rnd(3) == 0) {
          Rational num = Rational(rnd(5)) - 2;
          if (num != 0) f.add_term(mo, Scalar(num / 3));
        }
      }
      Form h(ch, 0);
      h.add_component({}, f);
      b.at(0, i) = std::move(h);
    }
    return b;
  };

  NervePtr s1 = M->dim == 1 ? nerve
                            : (N.trivial ? trivial_cover(torus_chart(1)) : circle_cover());
  auto hol_vector = [&](const DeligneCochain& c) {
    std::vector<Scalar> hs;
    if (M->dim == 1) {
      hs.push_back(holonomy(c));
    } else {
      for (int ax = 0; ax < M->dim; ++ax)
        hs.push_back(holonomy(restrict_to_circle(c, ax, s1)));
    }
    return hs;
  };

  std::vector<DeligneCochain> samples;
  for (auto& th : thetas) {
    std::vector<Scalar> sth;
    for (auto& r : th) sth.push_back(Scalar(r));
    DeligneCochain a = flat_cocycle(nerve, sth);
    rep.table.push_back({hol_vector(a), "potential"});
    samples.push_back(std::move(a));

    DeligneCochain b = flat_cocycle(nerve, sth);
    std::string label = "potential";
    if (!N.trivial) {
      // shift the whole potential into the transition constants: the linear
      // gauge -sum theta_j x_j kills every patch potential exactly
      DeligneCochain lin = make_cochain(nerve, level, 0);
      for (int i = 0; i < N.count(0); ++i) {
        const ChartPtr& ch = N.simplex(0, i).chart;
        CoefFn f(ch);
        for (int j = 0; j < M->dim; ++j)
          f = f - Scalar(th[j]) * CoefFn::coordinate(ch, j);
        Form hf(ch, 0);
        hf.add_component({}, f);
        lin.at(0, i) = std::move(hf);
      }
      b += total_differential(lin);
      label = "transition";
    }
    b += total_differential(random_gauge());
    label += "+gauged";
    rep.table.push_back({hol_vector(b), label});
    samples.push_back(std::move(b));
  }

  rep.equivalence_matches_holonomy = true;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j) {
      ++rep.pairs_checked;
      GaugeResult g = gauge_reduce(samples[i], samples[j], band);
      if (g.status == GaugeStatus::Witness) ++rep.pairs_equivalent;
      bool equal_h = rep.table[i].holonomy == rep.table[j].holonomy;
      bool consistent = equal_h ? g.status == GaugeStatus::Witness
                                : g.status == GaugeStatus::Obstructed;
      rep.equivalence_matches_holonomy = rep.equivalence_matches_holonomy && consistent;
    }

  // automorphisms of the trivial class: the strict kernel of d_tot on
  // degree-0 band data must be exactly the global constants
  if (N.trivial) {
    bool ok = true;
    for (auto& mo : band_monomials(M, band)) {
      if (zero_monomial(mo)) continue;
      CoefFn f(M);
      f.add_term(mo, Scalar(1));
      Form h(M, 0);
      h.add_component({}, f);
      ok = ok && !d(h).is_zero();
    }
    rep.automorphisms_are_constants = ok;
  } else {
    SlotBasis B = cochain_basis(N, level, 0, band);
    std::map<SlotKey, int> row;
    Matrix<Rational> Mx = dtot_matrix(nerve, level, 0, B, row);
    auto ker = kernel_field(Mx);
    bool ok = ker.size() == 1;
    if (ok) {
      Monomial zero{std::vector<int>(N.simplex(0, 0).chart->dim, 0),
                    std::vector<int>(N.simplex(0, 0).chart->dim, 0)};
      auto ref = B.index.find(SlotKey{0, 0, {}, zero});
      ok = ref != B.index.end() && ker[0][ref->second] != 0;
      for (size_t u = 0; ok && u < B.keys.size(); ++u) {
        const auto& [q, i, t, mo] = B.keys[u];
        (void)q;
        (void)i;
        (void)t;
        if (zero_monomial(mo))
          ok = ker[0][u] == ker[0][ref->second];
        else
          ok = ker[0][u] == 0;
      }
    }
    rep.automorphisms_are_constants = ok;
  }
  return rep;
}

// --- serialization -----------------------------------------------------------

Json nerve_to_json(const CoverNerve& nerve) {
  Json j;
  j["name"] = nerve.name;
  j["trivial"] = nerve.trivial;
  j["manifold"] = chart_to_json(nerve.manifold);
  Json counts = Json::array();
  for (auto& lvl : nerve.levels) counts.push_back(lvl.size());
  j["counts"] = counts;
  return j;
}

NervePtr nerve_from_json(const Json& j) {
  std::string name = j.at("name").get<std::string>();
  NervePtr n;
  if (name == "s1-arcs")
    n = circle_cover();
  else if (name == "t2-arcs")
    n = torus_cover(2);
  else if (name == "t3-arcs")
    n = torus_cover(3);
  else if (j.value("trivial", false))
    n = trivial_cover(chart_from_json(j.at("manifold")));
  else
    fail(Errc::ParseError, "unknown nerve " + name);
  if (j.count("counts")) {
    const Json& counts = j.at("counts");
    require(counts.size() == n->levels.size(), Errc::ParseError,
            "nerve level count mismatch for " + name);
    for (size_t q = 0; q < counts.size(); ++q)
      require(counts[q].get<size_t>() == n->levels[q].size(), Errc::ParseError,
              "nerve simplex count mismatch for " + name);
  }
  return n;
}

Json deligne_to_json(const DeligneCochain& c) {
  require(c.nerve != nullptr, Errc::InvalidArgument, "deligne_to_json: null nerve");
  Json j;
  j["nerve"] = c.nerve->name;
  j["level"] = c.level;
  j["degree"] = c.degree;
  Json slots = Json::array();
  for (auto& [q, v] : c.comp) {
    Json g;
    g["q"] = q;
    Json forms = Json::array();
    for (auto& f : v) forms.push_back(form_to_json(f));
    g["forms"] = std::move(forms);
    slots.push_back(std::move(g));
  }
  j["slots"] = std::move(slots);
  if (!c.discrepancy.empty()) {
    Json ds = Json::array();
    for (auto& s : c.discrepancy) ds.push_back(scalar_to_json(s));
    j["discrepancy"] = std::move(ds);
  }
  return j;
}

DeligneCochain deligne_from_json(const Json& j, const NervePtr& nerve) {
  require(nerve != nullptr, Errc::InvalidArgument, "deligne_from_json: null nerve");
  require(j.at("nerve").get<std::string>() == nerve->name, Errc::ParseError,
          "cochain was stored on nerve " + j.at("nerve").get<std::string>() +
              ", not " + nerve->name);
  DeligneCochain c =
      make_cochain(nerve, j.at("level").get<int>(), j.at("degree").get<int>());
  for (auto& g : j.at("slots")) {
    int q = g.at("q").get<int>();
    require(c.has_level(q), Errc::ParseError,
            "slot level " + std::to_string(q) + " outside the cochain layout");
    const Json& forms = g.at("forms");
    require(static_cast<int>(forms.size()) == nerve->count(q), Errc::ParseError,
            "slot count mismatch at level " + std::to_string(q));
    for (int i = 0; i < static_cast<int>(forms.size()); ++i) {
      Form f = form_from_json(forms[i], nerve->simplex(q, i).chart);
      require(f.is_zero() || f.degree() == c.degree - q, Errc::ParseError,
              "form degree mismatch at level " + std::to_string(q));
      c.at(q, i) = std::move(f);
    }
  }
  if (j.count("discrepancy")) {
    for (auto& s : j.at("discrepancy")) c.discrepancy.push_back(scalar_from_json(s));
    require(static_cast<int>(c.discrepancy.size()) == nerve->count(c.degree + 1),
            Errc::ParseError, "discrepancy length mismatch");
  }
  return c;
}

Json deligne_report_to_json(const DeligneReport& rep) {
  Json j;
  j["passed"] = rep.passed;
  Json rs = Json::array();
  for (auto& r : rep.residuals)
    rs.push_back({{"level", r.level}, {"simplex", r.simplex}, {"value", r.value}});
  j["residuals"] = std::move(rs);
  Json ds = Json::array();
  for (auto& s : rep.discrepancy) ds.push_back(scalar_to_json(s));
  j["discrepancy"] = std::move(ds);
  return j;
}

Json integrality_to_json(const IntegralityReport& rep) {
  Json j;
  j["integral"] = rep.integral;
  Json ps = Json::array();
  for (auto& [axes, val] : rep.periods)
    ps.push_back({{"axes", axes}, {"value", scalar_to_json(val)}});
  j["periods"] = std::move(ps);
  return j;
}

Json flat_report_to_json(const FlatModuliReport& rep) {
  Json j;
  j["nerve"] = rep.nerve;
  j["level"] = rep.level;
  j["band"] = rep.band;
  j["seed"] = rep.seed;
  Json tbl = Json::array();
  for (auto& s : rep.table) {
    Json hs = Json::array();
    for (auto& h : s.holonomy) hs.push_back(scalar_to_json(h));
    tbl.push_back({{"holonomy", std::move(hs)}, {"realization", s.realization}});
  }
  j["samples"] = std::move(tbl);
  j["pairs_checked"] = rep.pairs_checked;
  j["pairs_equivalent"] = rep.pairs_equivalent;
  j["equivalence_matches_holonomy"] = rep.equivalence_matches_holonomy;
  j["automorphisms_are_constants"] = rep.automorphisms_are_constants;
  j["passed"] = rep.passed();
  return j;
}

}  // namespace plectic
