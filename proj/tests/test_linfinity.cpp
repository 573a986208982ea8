#include <doctest.h>

#include "plectic/linfinity.hpp"
#include "test_support.hpp"

using namespace plectic;
using namespace plectic::testing;

namespace {

// corrupt != 0 redirects [e1,e2] into e1, which genuinely breaks Jacobi
// (a mere sign flip would still satisfy it, giving so(2,1))
LInfinityData su2(int corrupt = 0) {
  LInfinityData g({{"e1", 0}, {"e2", 0}, {"e3", 0}}, 2);
  g.set_bracket(2, {0, 1}, {{corrupt ? 0 : 2, Scalar(1)}});
  g.set_bracket(2, {0, 2}, {{1, Scalar(-1)}});
  g.set_bracket(2, {1, 2}, {{0, Scalar(1)}});
  return g;
}

LInfinityData abelian(int dim, int degree = 0) {
  std::vector<Generator> gens;
  for (int i = 0; i < dim; ++i)
    gens.push_back(Generator{"a" + std::to_string(i + 1), degree});
  return LInfinityData(std::move(gens), 1);
}

// solvable algebra [a,b] = b, [a,c] = c; carries a non-closed 2-cochain
LInfinityData solvable3() {
  LInfinityData g({{"a", 0}, {"b", 0}, {"c", 0}}, 2);
  g.set_bracket(2, {0, 1}, {{1, Scalar(1)}});
  g.set_bracket(2, {0, 2}, {{2, Scalar(1)}});
  return g;
}

}  // namespace

TEST_CASE("skew normalization round-trips") {
  LInfinityData g = su2();

  // writing on a permuted tuple reads back identically; the sorted tuple
  // carries the Koszul sign
  LInfinityData h({{"e1", 0}, {"e2", 0}, {"e3", 0}}, 2);
  h.set_bracket(2, {1, 0}, {{2, Scalar(5)}});
  CHECK(h.bracket(2, {1, 0}) == BasisVec{{2, Scalar(5)}});
  CHECK(h.bracket(2, {0, 1}) == BasisVec{{2, Scalar(-5)}});

  // graded case: moving degree 1 past degree 2 gives -(-1)^2 = -1; a
  // repeated odd generator is symmetric and may carry a value
  LInfinityData k({{"u", 1}, {"w", 2}, {"z", 3}}, 2);
  k.set_bracket(2, {0, 0}, {{1, Scalar(1)}});
  CHECK(k.bracket(2, {0, 0}) == BasisVec{{1, Scalar(1)}});
  k.set_bracket(2, {1, 0}, {{2, Scalar(1)}});
  CHECK(k.bracket(2, {0, 1}) == BasisVec{{2, Scalar(-1)}});
  CHECK(k.bracket(2, {1, 0}) == BasisVec{{2, Scalar(1)}});

  // a repeated even generator forces zero
  LInfinityData e({{"x", 0}, {"y", 2}}, 2);
  CHECK(e.bracket(2, {0, 0}).empty());
  CHECK_THROWS_AS(e.set_bracket(2, {0, 0}, {{1, Scalar(1)}}), Error);

  // output indices and degrees are validated: l_2 raises degree by 0
  CHECK_THROWS_AS(g.set_bracket(2, {0, 1}, {{7, Scalar(1)}}), Error);
  LInfinityData m({{"x", 0}, {"c", 1}}, 2);
  CHECK_THROWS_AS(m.set_bracket(2, {0, 1}, {{0, Scalar(1)}}), Error);
}

TEST_CASE("generalized Jacobi verification on structure constants") {
  auto rep = verify_l_infinity(su2(), 3);
  CHECK(rep.passed());
  CHECK(rep.checked == 3 + 9 + 27);

  // single abelian generator in a shifted degree passes trivially
  CHECK(verify_l_infinity(abelian(1, 2), 3).passed());

  // flipping one structure-constant sign breaks exactly the ternary identity
  auto bad = verify_l_infinity(su2(1), 3);
  CHECK_FALSE(bad.passed());
  int bad_arity = 0;
  for (auto& inst : bad.instances)
    if (!inst.passed) bad_arity = inst.arity;
  CHECK(bad_arity == 3);

  // for a Lie algebra the arity-3 residual is the classical Jacobiator
  LInfinityData g = su2(1);
  for (auto& inst : bad.instances) {
    if (inst.arity != 3) continue;
    auto& t = inst.tuple;
    BasisVec jac = g.apply(2, {g.bracket(2, {t[0], t[1]}), {{t[2], Scalar(1)}}});
    BasisVec mid = g.apply(2, {g.bracket(2, {t[0], t[2]}), {{t[1], Scalar(1)}}});
    for (auto& [gen, c] : mid) {
      jac[gen] += Scalar(-1) * c;
      if (jac[gen].is_zero()) jac.erase(gen);
    }
    for (auto& [gen, c] : g.apply(2, {g.bracket(2, {t[1], t[2]}), {{t[0], Scalar(1)}}})) {
      jac[gen] += c;
      if (jac[gen].is_zero()) jac.erase(gen);
    }
    CHECK(basis_vec_str(g, jac) == inst.residual);
  }

  CHECK_THROWS_AS((void)verify_l_infinity(su2(), 5), Error);  // K+2 = 4 < 5
}

TEST_CASE("Chevalley-Eilenberg cocycle test") {
  LInfinityData g = su2();

  // Killing-type 3-cocycle <x,[y,z]> with the identity form
  LieCocycle mu3(3);
  mu3.set({0, 1, 2}, Scalar(1));
  CHECK(is_cocycle(g, mu3).passed);

  // any skew 2-cochain on an abelian algebra is closed
  LieCocycle mu2(2);
  mu2.set({0, 1}, Scalar(1));
  CHECK(is_cocycle(abelian(2), mu2).passed);

  // a 1-cochain dual to e3 is not closed on su(2)
  LieCocycle lam(1);
  lam.set({2}, Scalar(1));
  auto r1 = is_cocycle(g, lam);
  CHECK_FALSE(r1.passed);
  REQUIRE(r1.residuals.size() == 1);
  CHECK(r1.residuals[0].first == std::vector<int>{0, 1});
  CHECK(r1.residuals[0].second == Scalar(-1));

  // on the solvable algebra the 2-cochain b* ^ c* has nonzero coboundary
  auto r2 = is_cocycle(solvable3(), mu2);
  REQUIRE(r2.residuals.size() == 0);  // mu2 pairs (a,b) here: recheck below
  LieCocycle nu(2);
  nu.set({1, 2}, Scalar(1));
  auto r3 = is_cocycle(solvable3(), nu);
  CHECK_FALSE(r3.passed);
  REQUIRE(r3.residuals.size() == 1);
  CHECK(r3.residuals[0].second == Scalar(-2));

  // cocycle skew storage round-trips
  LieCocycle sw(2);
  sw.set({1, 0}, Scalar(3));
  CHECK(sw.value({1, 0}) == Scalar(3));
  CHECK(sw.value({0, 1}) == Scalar(-3));
  CHECK(sw.value({0, 0}).is_zero());

  // graded or higher-bracket input is rejected
  CHECK_THROWS_AS((void)is_cocycle(abelian(2, 1), mu2), Error);
}

TEST_CASE("string and Heisenberg extensions") {
  LInfinityData g = su2();
  LieCocycle mu3(3);
  mu3.set({0, 1, 2}, Scalar(1));

  LInfinityData str = string_extension(g, mu3);
  CHECK(str.dim() == 4);
  CHECK(str.degree(3) == 1);
  CHECK(str.max_arity() == 3);
  CHECK(str.bracket(3, {0, 1, 2}) == BasisVec{{3, Scalar(1)}});
  CHECK(str.bracket(2, {0, 1}) == BasisVec{{2, Scalar(1)}});
  // the extension satisfies every identity up to arity m+1 (and K+2)
  CHECK(verify_l_infinity(str, 4).passed());
  CHECK(verify_l_infinity(str, 5).passed());

  // Heisenberg: abelian R^2 with the symplectic 2-cocycle
  LieCocycle sym(2);
  sym.set({0, 1}, Scalar(1));
  LInfinityData heis = string_extension(abelian(2), sym);
  CHECK(heis.dim() == 3);
  CHECK(heis.degree(2) == 0);
  CHECK(heis.bracket(2, {0, 1}) == BasisVec{{2, Scalar(1)}});
  CHECK(heis.bracket(2, {1, 0}) == BasisVec{{2, Scalar(-1)}});
  CHECK(heis.bracket(2, {0, 2}).empty());  // central
  CHECK(verify_l_infinity(heis, 3).passed());

  // zero cocycle gives the trivial product extension
  LInfinityData triv = string_extension(g, LieCocycle(3));
  CHECK(triv.stored(3).empty());
  CHECK(verify_l_infinity(triv, 4).passed());

  // non-cocycles are rejected
  LieCocycle nu(2);
  nu.set({1, 2}, Scalar(1));
  try {
    string_extension(solvable3(), nu);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotACocycle);
  }
}

TEST_CASE("strict morphism verification") {
  LInfinityData g = su2();

  MorphismData id;
  id.components[1] = Matrix<Scalar>(3, 3);
  for (int i = 0; i < 3; ++i) id.components[1].at(i, i) = Scalar(1);
  CHECK(verify_morphism(id, g, g, 3).passed());

  // projection string(su(2)) -> su(2), killing the central generator
  LieCocycle mu3(3);
  mu3.set({0, 1, 2}, Scalar(1));
  LInfinityData str = string_extension(g, mu3);
  MorphismData proj;
  proj.components[1] = Matrix<Scalar>(3, 4);
  for (int i = 0; i < 3; ++i) proj.components[1].at(i, i) = Scalar(1);
  CHECK(verify_morphism(proj, str, g, 3).passed());

  // scaling one generator breaks the arity-2 relation
  MorphismData scale;
  scale.components[1] = Matrix<Scalar>(3, 3);
  scale.components[1].at(0, 0) = Scalar(2);
  scale.components[1].at(1, 1) = Scalar(1);
  scale.components[1].at(2, 2) = Scalar(1);
  auto rep = verify_morphism(scale, g, g, 2);
  CHECK_FALSE(rep.passed());
  bool saw_arity2 = false;
  for (auto& inst : rep.instances)
    if (!inst.passed && inst.arity == 2) saw_arity2 = true;
  CHECK(saw_arity2);

  // nonzero higher components are not supported
  MorphismData quad = id;
  quad.components[2] = Matrix<Scalar>(3, 3);
  quad.components[2].at(0, 0) = Scalar(1);
  try {
    verify_morphism(quad, g, g, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedComponents);
  }

  // an all-zero higher component is tolerated
  MorphismData padded = id;
  padded.components[2] = Matrix<Scalar>(3, 3);
  CHECK(verify_morphism(padded, g, g, 2).passed());

  // degree violations are rejected
  LInfinityData shifted = string_extension(g, mu3);
  MorphismData badmap;
  badmap.components[1] = Matrix<Scalar>(3, 4);
  badmap.components[1].at(0, 3) = Scalar(1);  // degree 1 -> degree 0
  CHECK_THROWS_AS((void)verify_morphism(badmap, shifted, g, 2), Error);
}

TEST_CASE("rational homology of finite complexes") {
  // 0 -> Q -> 0
  CHECK(homology({{1}, {}}) == std::vector<int>{1});

  // Q -> Q identity
  ChainComplex idc{{1, 1}, {Matrix<Scalar>(1, 1)}};
  idc.maps[0].at(0, 0) = Scalar(1);
  CHECK(homology(idc) == std::vector<int>{0, 0});

  // band-1 Fourier complex on the circle: d = diag(i tau k), k = -1,0,1
  ChainComplex s1{{3, 3}, {Matrix<Scalar>(3, 3)}};
  for (int t = 0; t < 3; ++t)
    s1.maps[0].at(t, t) = Scalar::i() * Scalar::tau() * Scalar(t - 1);
  CHECK(homology(s1) == std::vector<int>{1, 1});

  // d*d != 0 is rejected
  ChainComplex bad{{1, 1, 1}, {Matrix<Scalar>(1, 1), Matrix<Scalar>(1, 1)}};
  bad.maps[0].at(0, 0) = Scalar(1);
  bad.maps[1].at(0, 0) = Scalar(1);
  try {
    homology(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAComplex);
  }

  // invariance under basis permutation
  ChainComplex c{{2, 2}, {Matrix<Scalar>(2, 2)}};
  c.maps[0].at(0, 0) = Scalar(1);
  ChainComplex perm = c;
  perm.maps[0] = Matrix<Scalar>(2, 2);
  perm.maps[0].at(1, 0) = Scalar(1);  // swap rows of the target basis
  CHECK(homology(c) == homology(perm));
}

TEST_CASE("structure constants serialize to JSON") {
  LInfinityData g = su2();
  LieCocycle mu3(3);
  mu3.set({0, 1, 2}, Scalar(1));
  LInfinityData str = string_extension(g, mu3);

  LInfinityData back = linfinity_from_json(linfinity_to_json(str));
  CHECK(back.dim() == str.dim());
  CHECK(back.max_arity() == str.max_arity());
  for (int k = 1; k <= str.max_arity(); ++k) CHECK(back.stored(k) == str.stored(k));
  CHECK(verify_l_infinity(back, 4).passed());

  auto rep = relation_report_to_json(verify_l_infinity(str, 3));
  CHECK(rep["passed"] == true);
  CHECK(rep["rule"] == "lada-stasheff");
}
