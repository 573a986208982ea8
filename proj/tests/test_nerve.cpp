#include <doctest.h>

#include "plectic/nerve.hpp"
#include "test_support.hpp"

using namespace plectic;

namespace {

int euler(const CoverNerve& n) {
  int chi = 0;
  for (int q = 0; q <= n.max_level(); ++q) chi += (q % 2 == 0 ? 1 : -1) * n.count(q);
  return chi;
}

}  // namespace

TEST_CASE("circle cover combinatorics") {
  auto s1 = circle_cover();
  CHECK(s1->name == "s1-arcs");
  CHECK(!s1->trivial);
  CHECK(s1->manifold->dim == 1);
  CHECK(s1->manifold->periodic[0]);
  REQUIRE(s1->max_level() == 1);
  CHECK(s1->count(0) == 3);
  CHECK(s1->count(1) == 3);
  CHECK(euler(*s1) == 0);

  // patch windows (j/3 - 1/4, j/3 + 1/4)
  CHECK(s1->simplex(0, 0).chart->lo[0] == Rational(-1, 4));
  CHECK(s1->simplex(0, 0).chart->hi[0] == Rational(1, 4));
  CHECK(s1->simplex(0, 1).chart->lo[0] == Rational(1, 12));
  CHECK(s1->simplex(0, 1).chart->hi[0] == Rational(7, 12));
  CHECK(s1->simplex(0, 2).chart->lo[0] == Rational(5, 12));
  CHECK(s1->simplex(0, 2).chart->hi[0] == Rational(11, 12));

  // canonical overlap windows, midpoints in [0,1)
  auto window = [&](std::vector<int> sig) {
    auto f = s1->find(sig);
    REQUIRE(f.has_value());
    const auto& c = *s1->simplex(f->first, f->second).chart;
    return std::pair(c.lo[0], c.hi[0]);
  };
  CHECK(window({0, 1}) == std::pair(Rational(1, 12), Rational(1, 4)));
  CHECK(window({1, 2}) == std::pair(Rational(5, 12), Rational(7, 12)));
  CHECK(window({0, 2}) == std::pair(Rational(3, 4), Rational(11, 12)));

  // the triple intersection is empty: a good cover of the circle
  CHECK(!s1->find({0, 1, 2}).has_value());
  CHECK(!s1->find({7}).has_value());
  CHECK(s1->simplex(1, 0).chart->name == "U0&U1");
}

TEST_CASE("circle winding offsets") {
  auto s1 = circle_cover();
  // the wrap-around overlap sits in the branch of U2 and one winding below U0
  CHECK(s1->restriction({0, 2}, {0}).axes[0].shift == Rational(-1));
  CHECK(s1->restriction({0, 2}, {2}).axes[0].shift == Rational(0));
  CHECK(s1->restriction({0, 1}, {0}).axes[0].shift == Rational(0));
  CHECK(s1->restriction({0, 1}, {1}).axes[0].shift == Rational(0));
  CHECK(s1->restriction({1, 2}, {1}).axes[0].shift == Rational(0));
  CHECK(s1->restriction({1, 2}, {2}).axes[0].shift == Rational(0));
  // restriction to itself is the identity on the branch chart
  CHECK(s1->restriction({0, 2}, {0, 2}) ==
        AffineMap::identity(s1->simplex(1, 1).chart));
  CHECK_THROWS_AS((void)s1->restriction({0, 1}, {2}), Error);
}

TEST_CASE("torus product covers") {
  auto t2 = torus_cover(2);
  REQUIRE(t2->max_level() == 3);
  CHECK(t2->count(0) == 9);
  CHECK(t2->count(1) == 36);  // every pair of arcs meets on each axis
  CHECK(t2->count(2) == 36);  // triples spanning a 2x2 block of arcs
  CHECK(t2->count(3) == 9);   // one per 2x2 block
  CHECK(euler(*t2) == 0);

  // patches are numbered most-significant axis first: {U00, U22} = {0, 8}
  auto f = t2->find({0, 8});
  REQUIRE(f.has_value());
  const auto& c = *t2->simplex(f->first, f->second).chart;
  CHECK(c.lo == std::vector<Rational>{Rational(3, 4), Rational(3, 4)});
  CHECK(c.hi == std::vector<Rational>{Rational(11, 12), Rational(11, 12)});
  CHECK(t2->restriction({0, 8}, {0}).axes[0].shift == Rational(-1));
  CHECK(t2->restriction({0, 8}, {0}).axes[1].shift == Rational(-1));
  CHECK(t2->restriction({0, 8}, {8}).axes[0].shift == Rational(0));

  auto t3 = torus_cover(3);
  REQUIRE(t3->max_level() == 7);
  CHECK(t3->count(0) == 27);
  CHECK(t3->count(1) == 351);  // all pairs of the 27 patches overlap
  CHECK(t3->count(7) == 27);   // one top simplex per 2x2x2 block of arcs
  CHECK(euler(*t3) == 0);
}

TEST_CASE("restrictions compose along faces") {
  auto t2 = torus_cover(2);
  for (int i = 0; i < t2->count(2); ++i) {
    const auto& sig = t2->simplex(2, i).patches;
    for (int k = 0; k <= 2; ++k) {
      std::vector<int> rho = sig;
      rho.erase(rho.begin() + k);
      CHECK(t2->face_map(2, i, k) == t2->restriction(sig, rho));
      for (int l = 0; l < 2; ++l) {
        std::vector<int> tau = rho;
        tau.erase(tau.begin() + l);
        CHECK(AffineMap::compose(t2->restriction(rho, tau), t2->restriction(sig, rho)) ==
              t2->restriction(sig, tau));
      }
    }
  }
  auto s1 = circle_cover();
  for (int i = 0; i < s1->count(1); ++i) {
    const auto& sig = s1->simplex(1, i).patches;
    CHECK(s1->face_map(1, i, 0) == s1->restriction(sig, {sig[1]}));
    CHECK(s1->face_map(1, i, 1) == s1->restriction(sig, {sig[0]}));
  }
}

TEST_CASE("every simplex chart is a contractible branch box") {
  for (auto nerve : {circle_cover(), torus_cover(2)}) {
    for (int q = 0; q <= nerve->max_level(); ++q)
      for (int i = 0; i < nerve->count(q); ++i) {
        const auto& c = *nerve->simplex(q, i).chart;
        REQUIRE(c.patch);
        REQUIRE(c.dim == nerve->manifold->dim);
        for (int j = 0; j < c.dim; ++j) {
          CHECK(c.lo[j] < c.hi[j]);
          // canonical branch: the midpoint lies in [0,1)
          Rational mid = (c.lo[j] + c.hi[j]) / 2;
          CHECK(mid >= 0);
          CHECK(mid < 1);
        }
      }
  }
}

TEST_CASE("trivial cover") {
  auto t2 = torus_chart(2);
  auto triv = trivial_cover(t2);
  CHECK(triv->trivial);
  CHECK(triv->max_level() == 0);
  CHECK(triv->count(0) == 1);
  CHECK(triv->simplex(0, 0).chart == t2);
  CHECK(triv->restriction({0}, {0}) == AffineMap::identity(t2));
  CHECK(triv->inclusion(0, 0) == AffineMap::identity(t2));
  CHECK(same_nerve(*triv, *trivial_cover(torus_chart(2))));
  CHECK(!same_nerve(*triv, *trivial_cover(affine_chart(2))));
  CHECK(!same_nerve(*triv, *torus_cover(2)));
  CHECK_THROWS_AS((void)trivial_cover(nullptr), Error);
}
