#include "plectic/nerve.hpp"

#include <algorithm>

namespace plectic {

namespace {

Integer floor_int(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

struct Window {
  Rational lo, hi;
  bool operator==(const Window& o) const { return lo == o.lo && hi == o.hi; }
};

// Translate so the midpoint lies in [0,1); every simplex window is stored in
// this canonical branch.
Window normalized(Window w) {
  Rational g(floor_int((w.lo + w.hi) / 2));
  return {w.lo - g, w.hi - g};
}

// Intersection of circle arcs given as branch windows.  Relative windings in
// {-1,0,1} are enumerated; a good cover admits at most one nonempty result.
std::optional<Window> circle_intersect(const std::vector<Window>& ws) {
  std::vector<Window> found;
  std::vector<int> digit(ws.size(), 0);  // winding of window i is digit[i]-1
  while (true) {
    Window cur = ws[0];
    bool ok = true;
    for (size_t i = 1; i < ws.size() && ok; ++i) {
      Rational lo = ws[i].lo + (digit[i] - 1);
      Rational hi = ws[i].hi + (digit[i] - 1);
      if (lo > cur.lo) cur.lo = lo;
      if (hi < cur.hi) cur.hi = hi;
      ok = cur.lo < cur.hi;
    }
    if (ok) {
      Window n = normalized(cur);
      if (std::find(found.begin(), found.end(), n) == found.end()) found.push_back(n);
    }
    size_t i = 1;
    while (i < ws.size() && digit[i] == 2) digit[i++] = 0;
    if (i >= ws.size()) break;
    ++digit[i];
  }
  if (found.empty()) return std::nullopt;
  require(found.size() == 1, Errc::InvalidArgument,
          "arc intersection is not a single interval; the cover is not good");
  return found[0];
}

// Product-of-arc-covers nerve on T^d built level by level: a patch set is a
// simplex iff on every axis its distinct arcs intersect.
NervePtr arc_product_cover(int d, const std::vector<Window>& arcs, std::string name) {
  auto nerve = std::make_shared<CoverNerve>();
  nerve->name = std::move(name);
  nerve->manifold = torus_chart(d);
  int narcs = static_cast<int>(arcs.size());
  int npatch = 1;
  for (int k = 0; k < d; ++k) npatch *= narcs;

  auto digit = [&](int p, int k) {  // most-significant axis first
    for (int t = d - 1; t > k; --t) p /= narcs;
    return p % narcs;
  };
  auto patch_name = [&](int p) {
    std::string s = "U";
    for (int k = 0; k < d; ++k) s += static_cast<char>('0' + digit(p, k));
    return s;
  };

  auto window_of = [&](const std::vector<int>& patches) {
    std::vector<Window> out(d);
    for (int k = 0; k < d; ++k) {
      std::vector<Window> ws;
      std::vector<int> seen;
      for (int p : patches) {
        int a = digit(p, k);
        if (std::find(seen.begin(), seen.end(), a) == seen.end()) {
          seen.push_back(a);
          ws.push_back(normalized(arcs[a]));
        }
      }
      auto w = circle_intersect(ws);
      if (!w) return std::optional<std::vector<Window>>();
      out[k] = *w;
    }
    return std::optional(out);
  };

  auto add_simplex = [&](std::vector<int> patches, const std::vector<Window>& win) {
    std::string sname;
    for (int p : patches) sname += (sname.empty() ? "" : "&") + patch_name(p);
    std::vector<Rational> lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
      lo[k] = win[k].lo;
      hi[k] = win[k].hi;
    }
    int q = static_cast<int>(patches.size()) - 1;
    if (q >= static_cast<int>(nerve->levels.size())) nerve->levels.emplace_back();
    nerve->index[patches] = {q, static_cast<int>(nerve->levels[q].size())};
    nerve->levels[q].push_back({std::move(patches), patch_chart(lo, hi, sname)});
  };

  for (int p = 0; p < npatch; ++p) add_simplex({p}, *window_of({p}));
  for (int q = 1; q - 1 <= nerve->max_level(); ++q) {
    std::vector<CoverNerve::Simplex> base = nerve->levels[q - 1];
    for (const auto& s : base)
      for (int p = s.patches.back() + 1; p < npatch; ++p) {
        std::vector<int> t = s.patches;
        t.push_back(p);
        auto win = window_of(t);
        if (win) add_simplex(std::move(t), *win);
      }
    if (q > nerve->max_level()) break;  // no extension survived
  }
  return nerve;
}

}  // namespace

std::optional<std::pair<int, int>> CoverNerve::find(const std::vector<int>& patches) const {
  auto it = index.find(patches);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

AffineMap CoverNerve::restriction(const std::vector<int>& sigma,
                                  const std::vector<int>& tau) const {
  auto s = find(sigma), t = find(tau);
  require(s.has_value() && t.has_value(), Errc::InvalidArgument,
          "restriction between tuples that are not simplices");
  require(std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end()),
          Errc::InvalidArgument, "restriction target is not a sub-tuple");
  const ChartPtr& cs = simplex(s->first, s->second).chart;
  const ChartPtr& ct = simplex(t->first, t->second).chart;
  if (trivial) return AffineMap::identity(manifold);
  AffineMap m;
  m.src = cs;
  m.dst = ct;
  m.axes.resize(ct->dim);
  for (int j = 0; j < ct->dim; ++j) {
    bool ok = false;
    for (int u = -1; u <= 1 && !ok; ++u)
      if (ct->lo[j] <= cs->lo[j] + u && cs->hi[j] + u <= ct->hi[j]) {
        m.axes[j] = {j, Rational(u)};
        ok = true;
      }
    require(ok, Errc::InvalidArgument,
            "branch windows of " + cs->name + " and " + ct->name + " are misaligned");
  }
  return m;
}

AffineMap CoverNerve::face_map(int q, int i, int k) const {
  const auto& sig = simplex(q, i).patches;
  require(k >= 0 && k <= q, Errc::InvalidArgument, "face index out of range");
  std::vector<int> tau = sig;
  tau.erase(tau.begin() + k);
  return restriction(sig, tau);
}

AffineMap CoverNerve::inclusion(int q, int i) const {
  const ChartPtr& c = simplex(q, i).chart;
  if (trivial) return AffineMap::identity(manifold);
  AffineMap m;
  m.src = c;
  m.dst = manifold;
  m.axes.resize(manifold->dim);
  for (int j = 0; j < manifold->dim; ++j) m.axes[j] = {j, Rational(0)};
  return m;
}

NervePtr trivial_cover(ChartPtr manifold) {
  require(manifold != nullptr, Errc::InvalidArgument, "trivial cover of a null chart");
  require(!manifold->patch, Errc::InvalidArgument, "trivial cover needs a manifold chart");
  auto nerve = std::make_shared<CoverNerve>();
  nerve->name = "trivial(" + manifold->name + ")";
  nerve->manifold = manifold;
  nerve->trivial = true;
  nerve->levels.push_back({CoverNerve::Simplex{{0}, manifold}});
  nerve->index[{0}] = {0, 0};
  return nerve;
}

NervePtr circle_cover() { return torus_cover(1); }

NervePtr torus_cover(int d) {
  require(d >= 1 && d <= 3, Errc::InvalidArgument, "product arc covers stop at T^3");
  std::vector<Window> arcs;
  for (int j = 0; j < 3; ++j)
    arcs.push_back({Rational(4 * j - 3, 12), Rational(4 * j + 3, 12)});
  std::string name = d == 1 ? "s1-arcs" : "t" + std::to_string(d) + "-arcs";
  return arc_product_cover(d, arcs, std::move(name));
}

bool same_nerve(const CoverNerve& a, const CoverNerve& b) {
  if (&a == &b) return true;
  if (a.name != b.name || a.trivial != b.trivial) return false;
  if (!compatible(a.manifold, b.manifold)) return false;
  if (a.levels.size() != b.levels.size()) return false;
  for (size_t q = 0; q < a.levels.size(); ++q)
    if (a.levels[q].size() != b.levels[q].size()) return false;
  return true;
}

}  // namespace plectic
