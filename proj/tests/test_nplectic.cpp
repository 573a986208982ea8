#include <doctest.h>

#include "plectic/nplectic.hpp"
#include "test_support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

Form volume(const ChartPtr& c) {
  Form w = dx(c, 0);
  for (int j = 1; j < c->dim; ++j) w = wedge(w, dx(c, j));
  return w;
}

Form fn(const ChartPtr&, const CoefFn& f) { return form_from_function(f); }

// Hamiltonian field of f on (R^2, dx^dy): iota_v omega = -df.
MultiVector symplectic_gradient(const ChartPtr& c, const CoefFn& f) {
  MultiVector v(c, 1);
  v.add_component({0}, Scalar(-1) * f.derivative(1));
  v.add_component({1}, f.derivative(0));
  return v;
}

// Pair built from a field on a star-shaped chart with constant omega.
HamiltonianPair pair_of_field(const PreNPlectic& p, const MultiVector& v) {
  Form u = contract(v, p.omega);
  return make_hamiltonian_pair(p, v, Scalar(-1) * primitive_on_star(u));
}

}  // namespace

TEST_CASE("pre-n-plectic validation") {
  auto r2 = affine_chart(2, "R2");
  auto r3 = affine_chart(3, "R3");
  CHECK_NOTHROW(check_pre_nplectic(volume(r2), 1));
  CHECK_NOTHROW(check_pre_nplectic(volume(r3), 2));

  // wrong degree for the requested n
  CHECK_THROWS_AS(check_pre_nplectic(volume(r3), 1), Error);
  try {
    check_pre_nplectic(wedge(dx(r3, 0), dx(r3, 1)), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeMismatch);
  }

  // x2 dx0^dx1 is not closed on R^3
  Form w(r3, 2);
  w.add_component({0, 1}, CoefFn::coordinate(r3, 2));
  try {
    check_pre_nplectic(w, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotClosed);
  }

  // the zero form is closed in any degree, even past the chart dimension
  CHECK_NOTHROW(check_pre_nplectic(Form(torus_chart(2, "T2"), 3), 2));
}

TEST_CASE("pointwise kernel and nondegeneracy") {
  auto r2 = affine_chart(2, "R2");
  auto r3 = affine_chart(3, "R3");

  auto p2 = check_pre_nplectic(volume(r2), 1);
  CHECK(nondegenerate_at(p2, {Rational(0), Rational(0)}));
  CHECK(nondegenerate_at(p2, {Rational(3, 2), Rational(-7)}));

  // dx^dy on R^3 has pointwise kernel spanned by the third coordinate field
  Form w = wedge(dx(r3, 0), dx(r3, 1));
  auto pdeg = check_pre_nplectic(w, 1);
  CHECK_FALSE(nondegenerate_at(pdeg, {Rational(0), Rational(0), Rational(0)}));
  auto ker = kernel_at_point(pdeg, {Rational(0), Rational(0), Rational(0)});
  REQUIRE(ker.size() == 1);
  CHECK(contract(ker[0], w).is_zero());
  CHECK_FALSE(ker[0].component({2}).is_zero());

  // x0 dx0^dx1 degenerates exactly on the axis x0 = 0
  Form xw(r2, 2);
  xw.add_component({0, 1}, CoefFn::coordinate(r2, 0));
  auto px = check_pre_nplectic(xw, 1);
  CHECK(nondegenerate_at(px, {Rational(1), Rational(0)}));
  CHECK(kernel_at_point(px, {Rational(0), Rational(5)}).size() == 2);

  auto p3 = check_pre_nplectic(volume(r3), 2);
  CHECK(nondegenerate_at(p3, {Rational(1, 3), Rational(-2), Rational(7, 5)}));
}

TEST_CASE("hamiltonian pairs and the linear solve") {
  auto r2 = affine_chart(2, "R2");
  auto p = check_pre_nplectic(volume(r2), 1);
  CoefFn x = CoefFn::coordinate(r2, 0), y = CoefFn::coordinate(r2, 1);

  auto sx = solve_hamiltonian(p, fn(r2, x));
  CHECK(sx.pair.v == basis_field(r2, 1));
  CHECK(sx.kernel.empty());

  auto sy = solve_hamiltonian(p, fn(r2, y));
  CHECK(sy.pair.v == Scalar(-1) * basis_field(r2, 0));

  // constructed pairs satisfy the defining equation exactly
  CHECK(hamiltonian_residual(p, sx.pair.v, sx.pair.h).is_zero());
  CHECK_THROWS_AS((void)make_hamiltonian_pair(p, basis_field(r2, 0), fn(r2, x)), Error);

  auto r3 = affine_chart(3, "R3");
  auto p3 = check_pre_nplectic(volume(r3), 2);
  Form h(r3, 1);
  h.add_component({2}, Scalar(-1) * CoefFn::coordinate(r3, 1));  // -y dz
  auto s3 = solve_hamiltonian(p3, h);
  CHECK(s3.pair.v == basis_field(r3, 0));
  CHECK(s3.kernel.empty());

  // non-constant omega is rejected
  Form xw(r2, 2);
  xw.add_component({0, 1}, CoefFn::coordinate(r2, 0));
  auto px = check_pre_nplectic(xw, 1);
  try {
    solve_hamiltonian(px, fn(r2, x));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonConstantOmega);
  }

  // degenerate constant omega: dz is not in the image of iota
  Form wdeg = wedge(dx(r3, 0), dx(r3, 1));
  auto pd = check_pre_nplectic(wdeg, 1);
  try {
    solve_hamiltonian(pd, fn(r3, CoefFn::coordinate(r3, 2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHamiltonian);
  }
  // ...but x0 is Hamiltonian there, with the degenerate direction as kernel
  auto sdeg = solve_hamiltonian(pd, fn(r3, CoefFn::coordinate(r3, 0)));
  REQUIRE(sdeg.kernel.size() == 1);
  CHECK_FALSE(sdeg.kernel[0].component({2}).is_zero());

  // randomized: solve round-trips the defining equation for polynomial h
  Rng rng(31);
  for (int rep = 0; rep < 16; ++rep) {
    CoefFn f = rand_coeffn(r2, rng, 3, 0, 3);
    auto s = solve_hamiltonian(p, fn(r2, f));
    CHECK(hamiltonian_residual(p, s.pair.v, s.pair.h).is_zero());
  }
}

TEST_CASE("hamiltonian obstructions") {
  auto r2 = affine_chart(2, "R2");
  auto t2 = torus_chart(2, "T2");
  auto p = check_pre_nplectic(volume(r2), 1);
  auto pt = check_pre_nplectic(volume(t2), 1);

  // radial-type field: iota_v omega not closed
  MultiVector v(r2, 1);
  v.add_component({0}, CoefFn::coordinate(r2, 0));
  v.add_component({1}, CoefFn::coordinate(r2, 1));
  auto ob = hamiltonian_obstruction(p, v);
  REQUIRE(ob.has_value());
  CHECK(ob->find("not closed") != std::string::npos);

  // hyperbolic field: closed contraction on a star-shaped chart, no obstruction
  MultiVector u(r2, 1);
  u.add_component({0}, CoefFn::coordinate(r2, 0));
  u.add_component({1}, Scalar(-1) * CoefFn::coordinate(r2, 1));
  CHECK_FALSE(hamiltonian_obstruction(p, u).has_value());

  // on the torus a translation field has closed but non-exact contraction
  auto obt = hamiltonian_obstruction(pt, basis_field(t2, 0));
  REQUIRE(obt.has_value());
  CHECK(obt->find("period") != std::string::npos);

  // the Hamiltonian field of a Fourier mode passes on the torus:
  // h = E_{(1,0)} forces v = i tau E_{(1,0)} d/dy
  MultiVector ft(t2, 1);
  ft.add_component({1}, Scalar::i() * Scalar::tau() * CoefFn::fourier(t2, {1, 0}));
  CHECK_FALSE(hamiltonian_obstruction(pt, ft).has_value());
}

TEST_CASE("unary bracket is the complex differential") {
  auto r3 = affine_chart(3, "R3");
  auto p = check_pre_nplectic(volume(r3), 2);
  CoefFn f = CoefFn::coordinate(r3, 0) * CoefFn::coordinate(r3, 1);

  // degree 1 -> 0 edge sends f to the pair (0, df)
  Observable b = Observable::form(1, fn(r3, f));
  Observable db = l_infty_bracket(p, {b});
  REQUIRE(db.degree() == 0);
  CHECK(db.as_pair().v.is_zero());
  CHECK(db.as_pair().h == d(fn(r3, f)));

  // degree-0 elements are closed, and the differential squares to zero
  CHECK(l_infty_bracket(p, {db}).is_zero());

  auto r4 = affine_chart(4, "R4");
  auto p4 = check_pre_nplectic(volume(r4), 3);
  Observable top = Observable::form(2, fn(r4, CoefFn::coordinate(r4, 3)));
  Observable mid = l_infty_bracket(p4, {top});
  REQUIRE(mid.degree() == 1);
  CHECK(mid.as_form() == d(fn(r4, CoefFn::coordinate(r4, 3))));
  CHECK(l_infty_bracket(p4, {l_infty_bracket(p4, {mid})}).is_zero());

  CHECK_THROWS_AS((void)l_infty_bracket(p, {}), Error);
}

TEST_CASE("binary bracket is the classical Poisson bracket") {
  auto r2 = affine_chart(2, "R2");
  auto p = check_pre_nplectic(volume(r2), 1);
  CoefFn x = CoefFn::coordinate(r2, 0), y = CoefFn::coordinate(r2, 1);

  Observable ox = Observable::pair(solve_hamiltonian(p, fn(r2, x)).pair);
  Observable oy = Observable::pair(solve_hamiltonian(p, fn(r2, y)).pair);
  Observable br = l_infty_bracket(p, {ox, oy});
  REQUIRE(br.degree() == 0);
  CHECK(br.as_pair().v.is_zero());
  CHECK(br.as_pair().h == fn(r2, CoefFn::constant(r2, Scalar(1))));

  // randomized polynomial pairs against the partial-derivative formula,
  // symbolically and at rational sample points
  Rng rng(87);
  for (int rep = 0; rep < 12; ++rep) {
    CoefFn f = rand_coeffn(r2, rng, 3, 0, 3);
    CoefFn g = rand_coeffn(r2, rng, 3, 0, 3);
    auto pf = make_hamiltonian_pair(p, symplectic_gradient(r2, f), fn(r2, f));
    auto pg = make_hamiltonian_pair(p, symplectic_gradient(r2, g), fn(r2, g));
    Observable b = l_infty_bracket(p, {Observable::pair(pf), Observable::pair(pg)});
    CoefFn poisson =
        f.derivative(0) * g.derivative(1) - f.derivative(1) * g.derivative(0);
    REQUIRE(b.degree() == 0);
    CHECK(b.as_pair().h == fn(r2, poisson));
    CHECK(b.as_pair().v == field_bracket(pf.v, pg.v));
    // the bracket pair is again Hamiltonian for its own function
    CHECK(b.as_pair().v == symplectic_gradient(r2, poisson));
    CoefFn got = b.as_pair().h.component({});
    for (int s = 0; s < 10; ++s) {
      std::vector<Rational> pt{rand_rational(rng), rand_rational(rng)};
      CHECK(got.evaluate_exact(pt) == poisson.evaluate_exact(pt));
    }
  }
}

TEST_CASE("higher brackets") {
  auto r3 = affine_chart(3, "R3");
  auto p = check_pre_nplectic(volume(r3), 2);

  std::vector<Observable> coord;
  for (int j = 0; j < 3; ++j)
    coord.push_back(Observable::pair(pair_of_field(p, basis_field(r3, j))));

  // ternary bracket of the coordinate pairs: constant -1 in degree 1
  Observable t = l_infty_bracket(p, {coord[0], coord[1], coord[2]});
  REQUIRE(t.degree() == 1);
  CHECK(t.as_form() == fn(r3, CoefFn::constant(r3, Scalar(-1))));

  // quaternary on R^4: sign (-1)^{floor(3/2)} = -1 on the full contraction
  auto r4 = affine_chart(4, "R4");
  auto p4 = check_pre_nplectic(volume(r4), 3);
  std::vector<Observable> c4;
  for (int j = 0; j < 4; ++j)
    c4.push_back(Observable::pair(pair_of_field(p4, basis_field(r4, j))));
  Observable q = l_infty_bracket(p4, {c4[0], c4[1], c4[2], c4[3]});
  REQUIRE(q.degree() == 2);
  CHECK(q.as_form() == fn(r4, CoefFn::constant(r4, Scalar(-1))));

  // arity past n+1 vanishes
  CHECK(l_infty_bracket(p, {coord[0], coord[1], coord[2], coord[0]}).is_zero());

  // arity >= 2 vanishes on any argument of positive degree
  Observable f1 = Observable::form(1, fn(r3, CoefFn::coordinate(r3, 0)));
  CHECK(l_infty_bracket(p, {coord[0], f1}).is_zero());

  // arguments from a structurally different chart are rejected
  auto t3 = torus_chart(3, "T3");
  Observable alien = Observable::form(1, fn(t3, CoefFn::fourier(t3, {1, 0, 0})));
  CHECK_THROWS_AS((void)l_infty_bracket(p, {coord[0], alien}), Error);
}

TEST_CASE("bracket multilinearity and graded skewness") {
  auto r3 = affine_chart(3, "R3");
  auto p = check_pre_nplectic(volume(r3), 2);
  Rng rng(55);

  auto rand_pair = [&]() {
    MultiVector v(r3, 1);
    for (int j = 0; j < 3; ++j)
      v.add_component({j}, CoefFn::constant(r3, rand_rational(rng)));
    return Observable::pair(pair_of_field(p, v));
  };

  for (int rep = 0; rep < 10; ++rep) {
    int k = 2 + static_cast<int>(rng.below(2));
    std::vector<Observable> args;
    for (int t = 0; t < k; ++t) args.push_back(rand_pair());

    // swapping two degree-0 slots negates the value
    std::vector<Observable> swapped = args;
    size_t a = rng.below(k), b = rng.below(k);
    while (b == a) b = rng.below(k);
    std::swap(swapped[a], swapped[b]);
    CHECK(l_infty_bracket(p, swapped) == -l_infty_bracket(p, args));

    // additivity and scaling in one slot
    Observable extra = rand_pair();
    Scalar c = Scalar(rand_rational(rng));
    std::vector<Observable> plus = args, scaled = args;
    plus[a] = args[a] + extra;
    scaled[a] = c * args[a];
    std::vector<Observable> only = args;
    only[a] = extra;
    CHECK(l_infty_bracket(p, plus) == l_infty_bracket(p, args) + l_infty_bracket(p, only));
    CHECK(l_infty_bracket(p, scaled) == c * l_infty_bracket(p, args));
  }
}

TEST_CASE("generalized Jacobi identities") {
  auto r2 = affine_chart(2, "R2");
  auto p2 = check_pre_nplectic(volume(r2), 1);
  CoefFn x = CoefFn::coordinate(r2, 0), y = CoefFn::coordinate(r2, 1);

  // classical case: polynomial observables on the plane
  std::vector<Observable> els;
  for (const CoefFn& f : {x, y, x * y, x * x + y}) {
    els.push_back(Observable::pair(
        make_hamiltonian_pair(p2, symplectic_gradient(r2, f), fn(r2, f))));
  }
  auto rep2 = jacobi_report(p2, els, 3);
  CHECK(rep2.passed());
  CHECK(rep2.checked > 0);

  // three constant-field pairs on the volume form of R^3, arity up to 4
  auto r3 = affine_chart(3, "R3");
  auto p3 = check_pre_nplectic(volume(r3), 2);
  std::vector<Observable> c3;
  for (int j = 0; j < 3; ++j)
    c3.push_back(Observable::pair(pair_of_field(p3, basis_field(r3, j))));
  auto rep3 = jacobi_report(p3, c3, 4);
  CHECK(rep3.passed());

  // polynomial Hamiltonian pairs of degree <= 2 plus a degree-1 form
  MultiVector w1(r3, 1), w2(r3, 1);
  w1.add_component({0}, CoefFn::coordinate(r3, 1));
  w1.add_component({1}, Scalar(-1) * CoefFn::coordinate(r3, 0));
  w2.add_component({2}, CoefFn::coordinate(r3, 0) * CoefFn::coordinate(r3, 0));
  std::vector<Observable> mixed;
  REQUIRE_FALSE(hamiltonian_obstruction(p3, w1).has_value());
  REQUIRE_FALSE(hamiltonian_obstruction(p3, w2).has_value());
  mixed.push_back(Observable::pair(pair_of_field(p3, w1)));
  mixed.push_back(Observable::pair(pair_of_field(p3, w2)));
  mixed.push_back(Observable::pair(pair_of_field(p3, basis_field(r3, 2))));
  mixed.push_back(Observable::form(1, fn(r3, CoefFn::coordinate(r3, 1))));
  auto repm = jacobi_report(p3, mixed, 4);
  CHECK(repm.passed());
  for (auto& inst : repm.instances) CHECK(inst.residual == "0");

  // a corpus whose ternary bracket is non-constant separates the two split
  // sign rules: odd and even inner arities both contribute, so the primary
  // rule passes where the alternate one fails
  MultiVector xz(r3, 1);
  xz.add_component({2}, CoefFn::coordinate(r3, 0));
  std::vector<Observable> sep{
      Observable::pair(pair_of_field(p3, basis_field(r3, 0))),
      Observable::pair(pair_of_field(p3, basis_field(r3, 1))),
      Observable::pair(pair_of_field(p3, xz))};
  auto repsep = jacobi_report(p3, sep, 3);
  CHECK(repsep.passed());
  auto repalt =
      jacobi_report(p3, sep, 3, JacobiSign::Alternate, SlotOrder::FirstSlotInnermost);
  CHECK(repalt.failed > 0);
}

TEST_CASE("classifying cocycle components") {
  auto r2 = affine_chart(2, "R2");
  auto p2 = check_pre_nplectic(volume(r2), 1);
  CHECK(ks_cocycle(p2, {basis_field(r2, 1)}) == Scalar(-1) * dx(r2, 0));

  auto r3 = affine_chart(3, "R3");
  auto p3 = check_pre_nplectic(volume(r3), 2);
  CHECK(ks_cocycle(p3, {basis_field(r3, 0), basis_field(r3, 1)}) == dx(r3, 2));
  Form full = ks_cocycle(p3, {basis_field(r3, 0), basis_field(r3, 1), basis_field(r3, 2)});
  CHECK(full == fn(r3, CoefFn::constant(r3, Scalar(1))));

  // non-Hamiltonian input is rejected
  auto t2 = torus_chart(2, "T2");
  auto pt = check_pre_nplectic(volume(t2), 1);
  try {
    ks_cocycle(pt, {basis_field(t2, 0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHamiltonian);
  }

  // k = 2 component equals the binary bracket's form part
  Rng rng(99);
  for (int rep = 0; rep < 8; ++rep) {
    MultiVector v(r3, 1), w(r3, 1);
    for (int j = 0; j < 3; ++j) {
      v.add_component({j}, CoefFn::constant(r3, rand_rational(rng)));
      w.add_component({j}, CoefFn::constant(r3, rand_rational(rng)));
    }
    Observable b = l_infty_bracket(
        p3, {Observable::pair(pair_of_field(p3, v)), Observable::pair(pair_of_field(p3, w))});
    CHECK(ks_cocycle(p3, {v, w}) == b.as_pair().h);
  }
}

TEST_CASE("band-limited kernel complex") {
  auto t2 = torus_chart(2, "T2");
  auto t3 = torus_chart(3, "T3");

  auto p1 = check_pre_nplectic(volume(t2), 1);
  auto rep1 = kernel_complex(p1, 2);
  CHECK(rep1.dims == std::vector<int>{1});
  CHECK(rep1.betti == std::vector<int>{1});

  auto p2 = check_pre_nplectic(Form(t2, 3), 2);
  auto rep2 = kernel_complex(p2, 2);
  CHECK(rep2.betti == std::vector<int>{1, 2});
  CHECK(rep2.dims[0] == 25);

  auto p3 = check_pre_nplectic(volume(t3), 2);
  auto rep3 = kernel_complex(p3, 1);
  CHECK(rep3.betti == std::vector<int>{1, 3});

  // betti numbers are binomial across bands
  auto rep3b = kernel_complex(p3, 2);
  CHECK(rep3b.betti == rep3.betti);

  auto r2 = affine_chart(2, "R2");
  auto pr = check_pre_nplectic(volume(r2), 1);
  try {
    kernel_complex(pr, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPeriodicAxis);
  }
}

TEST_CASE("field equation check") {
  auto r3 = affine_chart(3, "R3");
  auto p = check_pre_nplectic(volume(r3), 2);
  Form H = fn(r3, CoefFn::coordinate(r3, 2));

  auto ok = dw_check(p, H, {basis_field(r3, 0), basis_field(r3, 1)});
  CHECK(ok.passed);
  CHECK(ok.residual.is_zero());
  CHECK_FALSE(ok.note.empty());

  auto bad = dw_check(p, Form(r3, 0), {basis_field(r3, 0), basis_field(r3, 1)});
  CHECK_FALSE(bad.passed);
  CHECK(bad.residual == dx(r3, 2));

  auto r2 = affine_chart(2, "R2");
  auto p2 = check_pre_nplectic(volume(r2), 1);
  Form Hx = fn(r2, Scalar(-1) * CoefFn::coordinate(r2, 0));
  CHECK(dw_check(p2, Hx, {basis_field(r2, 1)}).passed);

  CHECK_THROWS_AS((void)dw_check(p, H, {basis_field(r3, 0)}), Error);
}

TEST_CASE("observable arithmetic") {
  auto r3 = affine_chart(3, "R3");
  auto p = check_pre_nplectic(volume(r3), 2);
  Observable a = Observable::pair(pair_of_field(p, basis_field(r3, 0)));
  Observable b = Observable::form(1, fn(r3, CoefFn::coordinate(r3, 0)));

  CHECK(Observable().is_zero());
  CHECK((a + Observable()) == a);
  CHECK((Observable() + b) == b);
  CHECK((a - a).is_zero());
  CHECK((Scalar(0) * a).is_zero());
  CHECK_THROWS_AS((void)(a + b), Error);
  CHECK_FALSE(a == b);
  CHECK((Scalar(2) * a) + a == Scalar(3) * a);
}
