#pragma once
#include <memory>
#include <string>
#include <vector>

#include "plectic/error.hpp"
#include "plectic/scalar.hpp"

namespace plectic {

// A coordinate chart.  Manifold charts describe R^d, T^d, or a mixed cylinder
// (periodic axes have unit period).  Patch charts are contractible pieces of a
// covered manifold: every axis carries a branch window [lo, hi] cut out of the
// universal cover, and coefficient data on them is polynomial in the branch
// coordinates.
struct Chart {
  std::string name;
  int dim = 0;
  std::vector<bool> periodic;
  bool patch = false;
  std::vector<Rational> lo, hi;  // branch windows, patch charts only

  bool allows_poly(int axis) const { return patch || !periodic[axis]; }
  bool allows_fourier(int axis) const { return !patch && periodic[axis]; }

  bool same_structure(const Chart& o) const {
    return dim == o.dim && periodic == o.periodic && patch == o.patch && lo == o.lo &&
           hi == o.hi;
  }
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr affine_chart(int dim, std::string name = "") {
  auto c = std::make_shared<Chart>();
  c->dim = dim;
  c->periodic.assign(dim, false);
  c->name = name.empty() ? "R" + std::to_string(dim) : std::move(name);
  return c;
}

inline ChartPtr torus_chart(int dim, std::string name = "") {
  auto c = std::make_shared<Chart>();
  c->dim = dim;
  c->periodic.assign(dim, true);
  c->name = name.empty() ? (dim == 1 ? "S1" : "T" + std::to_string(dim)) : std::move(name);
  return c;
}

inline ChartPtr mixed_chart(std::vector<bool> periodic, std::string name) {
  auto c = std::make_shared<Chart>();
  c->dim = static_cast<int>(periodic.size());
  c->periodic = std::move(periodic);
  c->name = std::move(name);
  return c;
}

inline ChartPtr patch_chart(std::vector<Rational> lo, std::vector<Rational> hi,
                            std::string name) {
  auto c = std::make_shared<Chart>();
  c->dim = static_cast<int>(lo.size());
  c->periodic.assign(c->dim, false);
  c->patch = true;
  c->lo = std::move(lo);
  c->hi = std::move(hi);
  c->name = std::move(name);
  for (int j = 0; j < c->dim; ++j)
    require(c->lo[j] < c->hi[j], Errc::InvalidArgument, "empty branch window in " + c->name);
  return c;
}

inline bool compatible(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && a->same_structure(*b));
}

inline void require_compatible(const ChartPtr& a, const ChartPtr& b, const char* where) {
  require(compatible(a, b), Errc::ChartMismatch, std::string(where) + ": charts differ");
}

// Axis-aligned affine map phi: src -> dst.  Each dst axis either copies one
// src axis shifted by a rational constant (winding offsets on torus covers are
// the integer case) or is pinned to a constant.  Pullback along such maps is
// what restriction to overlaps and to cycles uses.
struct AffineMap {
  struct Axis {
    int from = -1;  // src axis index, -1 for a constant axis
    Rational shift;
  };
  ChartPtr src, dst;
  std::vector<Axis> axes;  // indexed by dst axis

  static AffineMap identity(ChartPtr chart) {
    AffineMap m;
    m.src = chart;
    m.dst = chart;
    m.axes.resize(chart->dim);
    for (int j = 0; j < chart->dim; ++j) m.axes[j] = {j, Rational(0)};
    return m;
  }

  // Composition (outer after inner): inner: src -> mid, outer: mid -> dst.
  static AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    require(compatible(outer.src, inner.dst), Errc::ChartMismatch, "AffineMap::compose");
    AffineMap m;
    m.src = inner.src;
    m.dst = outer.dst;
    m.axes.resize(outer.axes.size());
    for (size_t j = 0; j < outer.axes.size(); ++j) {
      const auto& oa = outer.axes[j];
      if (oa.from < 0) {
        m.axes[j] = {-1, oa.shift};
      } else {
        const auto& ia = inner.axes[oa.from];
        m.axes[j] = {ia.from, ia.shift + oa.shift};
      }
    }
    return m;
  }

  bool operator==(const AffineMap& o) const {
    if (!compatible(src, o.src) || !compatible(dst, o.dst)) return false;
    if (axes.size() != o.axes.size()) return false;
    for (size_t j = 0; j < axes.size(); ++j)
      if (axes[j].from != o.axes[j].from || axes[j].shift != o.axes[j].shift) return false;
    return true;
  }
};

}  // namespace plectic
