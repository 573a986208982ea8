#include <doctest.h>

#include "plectic/exterior.hpp"
#include "test_support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

Form omega_area(const ChartPtr& r2) {
  Form w(r2, 2);
  w.add_component({0, 1}, CoefFn::constant(r2, Scalar(1)));
  return w;
}

}  // namespace

TEST_CASE("hand-checked exterior derivative") {
  auto r3 = affine_chart(3);
  CoefFn x = CoefFn::coordinate(r3, 0);
  CoefFn y = CoefFn::coordinate(r3, 1);

  Form xdy(r3, 1);
  xdy.add_component({1}, x);
  CHECK(d(xdy) == wedge(dx(r3, 0), dx(r3, 1)));

  Form w(r3, 1);
  w.add_component({2}, x * x * y);  // x^2 y dz
  Form dw(r3, 2);
  dw.add_component({0, 2}, Scalar(2) * (x * y));
  dw.add_component({1, 2}, x * x);
  CHECK(d(w) == dw);

  // top-degree forms are closed for dimension reasons
  Form top(r3, 3);
  top.add_component({0, 1, 2}, x * y);
  CHECK(d(top).is_zero());
}

TEST_CASE("hand-checked contraction and slot order") {
  auto r2 = affine_chart(2);
  Form w = omega_area(r2);

  // i_{e_y}(dx^dy) = -dx
  Form got = contract(basis_field(r2, 1), w);
  Form expect(r2, 1);
  expect.add_component({0}, -CoefFn::constant(r2, Scalar(1)));
  CHECK(got == expect);

  // first slot innermost: i_{e0^e1}(dx0^dx1) = i_{e1} i_{e0} (dx0^dx1) = i_{e1} dx1 = 1
  MultiVector e01 = wedge(basis_field(r2, 0), basis_field(r2, 1));
  Form one = contract(e01, w, SlotOrder::FirstSlotInnermost);
  CHECK(one.component({}).constant_value().value() == Scalar(1));
  Form minus = contract(e01, w, SlotOrder::LastSlotInnermost);
  CHECK(minus.component({}).constant_value().value() == Scalar(-1));

  // the two orders differ by (-1)^{k(k-1)/2} on decomposables
  auto r4 = affine_chart(4);
  Rng rng(7);
  for (int k = 1; k <= 4; ++k) {
    Form a = rand_form(r4, 4, rng);
    MultiVector p(r4, k);
    std::vector<int> t;
    for (int j = 0; j < k; ++j) t.push_back(j);
    p.add_component(t, rand_coeffn(r4, rng));
    int s = (k * (k - 1) / 2) % 2 == 0 ? 1 : -1;
    Form lhs = contract(p, a, SlotOrder::FirstSlotInnermost);
    Form rhs = contract(p, a, SlotOrder::LastSlotInnermost);
    CHECK(lhs == Scalar(s) * rhs);
  }
}

TEST_CASE("wedge algebra") {
  Rng rng(11);
  auto r4 = affine_chart(4);
  for (int it = 0; it < 25; ++it) {
    int p = static_cast<int>(rng.below(3));
    int q = static_cast<int>(rng.below(3));
    Form a = rand_form(r4, p, rng);
    Form b = rand_form(r4, q, rng);
    int s = (p * q) % 2 == 0 ? 1 : -1;
    CHECK(wedge(a, b) == Scalar(s) * wedge(b, a));
  }
  // associativity
  for (int it = 0; it < 10; ++it) {
    Form a = rand_form(r4, 1, rng);
    Form b = rand_form(r4, 1, rng);
    Form c = rand_form(r4, 2, rng);
    CHECK(wedge(a, wedge(b, c)) == wedge(wedge(a, b), c));
  }
}

TEST_CASE("exterior identity battery on affine and torus charts") {
  std::vector<ChartPtr> charts = {affine_chart(2), affine_chart(3), affine_chart(4),
                                  torus_chart(2), torus_chart(3),
                                  mixed_chart({false, true, false}, "cyl3")};
  Rng rng(20260818);
  for (auto& chart : charts) {
    for (int deg = 0; deg <= chart->dim; ++deg) {
      for (int rep = 0; rep < 8; ++rep) {
        Form a = rand_form(chart, deg, rng);
        Form b = rand_form(chart, static_cast<int>(rng.below(chart->dim + 1)), rng);
        MultiVector v = rand_field(chart, rng);
        MultiVector w = rand_field(chart, rng);

        CHECK(d(d(a)).is_zero());
        int s = (deg % 2 == 0) ? 1 : -1;
        CHECK(d(wedge(a, b)) == wedge(d(a), b) + Scalar(s) * wedge(a, d(b)));
        CHECK(lie_derivative(v, a) == contract(v, d(a)) + d(contract(v, a)));
        if (deg >= 1) CHECK(contract(v, contract(v, a)).is_zero());
        CHECK(lie_derivative(v, lie_derivative(w, a)) - lie_derivative(w, lie_derivative(v, a)) ==
              lie_derivative(field_bracket(v, w), a));
      }
    }
  }
}

TEST_CASE("field bracket oracle") {
  auto r3 = affine_chart(3);
  CoefFn x = CoefFn::coordinate(r3, 0);
  MultiVector v = basis_field(r3, 0);           // d/dx
  MultiVector w(r3, 1);
  w.add_component({2}, x);                      // x d/dz
  MultiVector expect = basis_field(r3, 2);      // [d/dx, x d/dz] = d/dz
  CHECK(field_bracket(v, w) == expect);
  CHECK(field_bracket(w, v) == -expect);
  CHECK(field_bracket(v, v).is_zero());
}

TEST_CASE("form pullback commutes with d") {
  auto t2 = torus_chart(2);
  auto p2 = patch_chart({Rational(0), Rational(-1, 4)}, {Rational(1, 2), Rational(1, 4)}, "p");
  AffineMap incl;
  incl.src = p2;
  incl.dst = t2;
  incl.axes = {{0, Rational(0)}, {1, Rational(1)}};  // one winding on the second axis

  Rng rng(99);
  for (int it = 0; it < 15; ++it) {
    // constants only: nonzero modes do not restrict to polynomial patches
    Form a(t2, 1);
    a.add_component({0}, CoefFn::constant(t2, Scalar(rand_rational(rng))));
    a.add_component({1}, CoefFn::constant(t2, Scalar(rand_rational(rng))));
    CHECK(d(pullback(incl, a)) == pullback(incl, d(a)));
  }

  // and on a torus self-map with quarter shifts, full fourier data
  AffineMap shift = AffineMap::identity(t2);
  shift.axes[0].shift = Rational(1, 4);
  shift.axes[1].shift = Rational(-3, 4);
  for (int it = 0; it < 15; ++it) {
    Form a = rand_form(t2, 1, rng, 0, 2);
    CHECK(d(pullback(shift, a)) == pullback(shift, d(a)));
    MultiVector v = rand_field(t2, rng, 0, 1);
    CHECK(pullback(shift, contract(v, a)) ==
          contract(restrict_field(shift, v), pullback(shift, a)));
  }
}

TEST_CASE("torus periods") {
  auto t2 = torus_chart(2);
  Form w(t2, 2);
  w.add_component({0, 1}, CoefFn::constant(t2, Scalar(1)) + CoefFn::fourier(t2, {1, 0}));
  CHECK(integrate_torus(w, {0, 1}) == Scalar(1));

  Form z(t2, 2);
  z.add_component({0, 1}, CoefFn::fourier(t2, {2, -1}));
  CHECK(integrate_torus(z, {0, 1}).is_zero());

  auto t1 = torus_chart(1);
  Form a(t1, 1);
  a.add_component({0}, CoefFn::constant(t1, Scalar(Rational(5, 3))));
  CHECK(integrate_torus(a, {0}) == Scalar(Rational(5, 3)));

  auto r2 = affine_chart(2);
  Form bad = omega_area(r2);
  CHECK_THROWS_AS(integrate_torus(bad, {0, 1}), Error);
}

TEST_CASE("star-shaped homotopy splits the identity") {
  Rng rng(404);
  for (int dim = 2; dim <= 4; ++dim) {
    auto chart = affine_chart(dim);
    for (int deg = 1; deg <= dim; ++deg) {
      for (int rep = 0; rep < 10; ++rep) {
        Form a = rand_form(chart, deg, rng, 3, 0);
        CHECK(d(primitive_on_star(a)) + primitive_on_star(d(a)) == a);
      }
    }
  }
  // closed forms get genuine primitives
  auto r3 = affine_chart(3);
  Form w(r3, 2);
  w.add_component({0, 1}, CoefFn::coordinate(r3, 0));
  Form dw = d(w);
  CHECK(d(primitive_on_star(dw)) == dw);
  CHECK_THROWS_AS(primitive_on_star(rand_form(torus_chart(2), 1, rng, 0, 1)), Error);
}
