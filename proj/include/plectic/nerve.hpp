#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/chart.hpp"

namespace plectic {

// Finite nerve of a built-in good cover.  Covers are either trivial (one
// patch, the manifold chart itself) or d-fold products of a fixed arc cover
// of the circle.  A q-simplex is a set of q+1 patches with nonempty common
// intersection; its chart is that intersection, a contractible branch box in
// the universal cover with per-axis windows normalized so each midpoint lies
// in [0,1).  Winding offsets between overlapping branches are recovered from
// the windows, so face maps need no stored data beyond the charts.
struct CoverNerve {
  std::string name;
  ChartPtr manifold;
  bool trivial = false;

  struct Simplex {
    std::vector<int> patches;  // strictly increasing patch ids
    ChartPtr chart;
  };
  std::vector<std::vector<Simplex>> levels;               // levels[q], lex order
  std::map<std::vector<int>, std::pair<int, int>> index;  // patches -> (q, i)

  int max_level() const { return static_cast<int>(levels.size()) - 1; }
  int count(int q) const {
    return (q >= 0 && q <= max_level()) ? static_cast<int>(levels[q].size()) : 0;
  }
  const Simplex& simplex(int q, int i) const { return levels[q][i]; }
  std::optional<std::pair<int, int>> find(const std::vector<int>& patches) const;

  // Affine inclusion chart(sigma) -> chart(tau) for tau a subset of sigma:
  // the deeper intersection sits inside the shallower one up to a unique
  // integer winding per periodic axis.
  AffineMap restriction(const std::vector<int>& sigma, const std::vector<int>& tau) const;
  // Inclusion into the face that drops the k-th patch of the i-th q-simplex.
  AffineMap face_map(int q, int i, int k) const;
  // chart(simplex) -> manifold chart; branch coordinates already represent
  // points of the universal cover, so every axis keeps shift 0.
  AffineMap inclusion(int q, int i) const;
};

using NervePtr = std::shared_ptr<const CoverNerve>;

NervePtr trivial_cover(ChartPtr manifold);
// The three arcs (j/3 - 1/4, j/3 + 1/4) covering the circle; pairwise
// overlaps are single arcs and the triple intersection is empty.
NervePtr circle_cover();
// d-fold product of the arc cover on T^d, d <= 3.
NervePtr torus_cover(int d);

bool same_nerve(const CoverNerve& a, const CoverNerve& b);

}  // namespace plectic
