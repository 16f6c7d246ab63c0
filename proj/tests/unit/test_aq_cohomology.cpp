#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"

using namespace aqtoda;
using namespace fixtures;

namespace {

AQClass random_cochain(const AQCochainComplex& cx, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(-3, 3);
  AQClass c = cx.zero(n);
  for (auto& [d, m] : c.values)
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < m.rows(); ++i) m.column(j).add(i, coin(rng));
  return c;
}

}  // namespace

TEST_CASE("the cochain complex of a free algebra vanishes above dimension 0") {
  PresentedLieAlgebra fr({{"x", 1}, {"y", 2}}, {}, 5);
  auto cx = build_aq_complex(resolve(fr, 3), ones(5));
  CHECK(cx.check_dd());
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 5; ++d) CHECK(cx.cochain_dim(n, d) == 0);
  for (int d = 1; d <= 5; ++d) CHECK(cx.cohomology_dim(2, d) == 0);
  CHECK_THROWS(cx.cohomology_dim(1, 2));
  CHECK_THROWS(cx.cohomology_dim(3, 2));
}

TEST_CASE("cochains of the resolution of L(x)/([x,x])") {
  auto cp = cp_algebra();
  auto X = resolve(cp, 3);
  auto cx = build_aq_complex(X, ones(6));
  CHECK(cx.check_dd());
  CHECK(cx.generators(1, 2) == 1);
  CHECK(cx.generators(2, 3) == 1);
  CHECK(cx.generators(3, 4) == 1);
  CHECK(cx.cohomology_dim(2, 3) == 1);
  // Omega Lambda is concentrated in degree 0, below every generator.
  auto om = build_aq_complex(X, loop_module(cp, 1));
  for (int d = 1; d <= 6; ++d) CHECK(om.cohomology_dim(2, d) == 0);
}

TEST_CASE("delta delta = 0 exactly when the attachments are cycles") {
  for (unsigned seed : {3u, 5u, 8u}) {
    auto X = random_object(seed, 5, 3);
    for (const auto& K : {ones(5), chain_coefficients(X, 1)}) CHECK(build_aq_complex(X, K).check_dd());
    auto lax = random_object(seed, 5, 3, 2);
    if (!k_invariant_cocycle(lax.truncate(2), 0).is_zero()) {
      CHECK_FALSE(AQCochainComplex(lax, ones(5)).check_dd());
      CHECK_THROWS(build_aq_complex(lax, ones(5)));
    }
  }
}

TEST_CASE("cohomology dims agree across independently pivoted resolutions") {
  std::vector<PresentedLieAlgebra> algebras;
  algebras.push_back(cp_algebra());
  algebras.emplace_back(std::vector<GradedGenerator>{{"x", 1}, {"y", 1}}, std::vector<std::string>{"[x,y]"}, 5);
  algebras.emplace_back(std::vector<GradedGenerator>{{"x", 1}, {"y", 2}},
                        std::vector<std::string>{"[x,[x,y]]", "[y,y]"}, 6);
  for (const auto& lambda : algebras) {
    int D = lambda.cutoff();
    auto A = build_aq_complex(resolve(lambda, 3), ones(D));
    for (ResolveOptions opt : {ResolveOptions{true, 0}, ResolveOptions{false, 29}}) {
      auto B = build_aq_complex(resolve(lambda, 3, opt), ones(D));
      for (int d = 1; d <= D; ++d) CHECK(A.cohomology_dim(2, d) == B.cohomology_dim(2, d));
    }
  }
}

TEST_CASE("a contractible pair of generators changes no cohomology") {
  auto X = resolve(cp_algebra(), 3);
  auto P = pad_resolution(X, 1, 3);
  CHECK(P.level(1).basis().size() == 2);
  CHECK(P.level(2).basis().size() == 2);
  auto A = build_aq_complex(X, ones(6));
  auto B = build_aq_complex(P, ones(6));
  CHECK(B.check_dd());
  for (int d = 1; d <= 6; ++d) CHECK(A.cohomology_dim(2, d) == B.cohomology_dim(2, d));
  CHECK(check_resolution(P, cp_algebra()).vanishing);
}

TEST_CASE("coboundaries round-trip and nonzero classes are refused") {
  auto X = resolve(cp_algebra(), 3);
  auto cx = build_aq_complex(X, ones(6));
  std::mt19937 rng(11);
  for (int n = 1; n <= 2; ++n) {
    AQClass psi = random_cochain(cx, n, rng);
    AQClass c = cx.apply(psi);
    auto r = cx.is_coboundary(c);
    REQUIRE(r.is_coboundary);
    CHECK(cx.apply(*r.witness) == c);
  }
  auto z = cx.is_coboundary(cx.zero(2));
  REQUIRE(z.is_coboundary);
  CHECK(z.witness->is_zero());

  // H^2 in degree 3 is one-dimensional: a cocycle outside the image.
  const Matrix& next = cx.coboundary(2, 3);
  auto cycles = kernel(next);
  const Matrix& prev = cx.coboundary(1, 3);
  auto fresh = independent_over(prev.columns(), cycles);
  REQUIRE(fresh.size() == 1);
  AQClass c = cx.zero(2);
  c.values[3] = cx.unvectorize(2, 3, cycles[fresh[0]]);
  CHECK(cx.is_cocycle(c).value());
  auto r = cx.is_coboundary(c);
  CHECK_FALSE(r.is_coboundary);
  CHECK(r.degree == 3);
  CHECK(r.rank_augmented == r.rank_delta + 1);
}

TEST_CASE("k-invariants of a resolution vanish") {
  auto X = resolve(cp_algebra(), 3);
  for (int n = 0; n <= 1; ++n) {
    AQClass k = k_invariant_cocycle(X, n);
    CHECK(k.is_zero());
    CHECK(k.n == n + 2);
  }
}

TEST_CASE("a lax attachment gives a nonzero k-invariant") {
  auto X = TruncatedCWObject::base({{"x", 1}, {"u", 2}}, 5)
               .extend_parsed({{"y", 2, "u"}})
               .extend_parsed({{"w", 2, "y"}})
               .extend({});
  AQClass k = k_invariant_cocycle(X, 0);
  CHECK_FALSE(k.is_zero());
  CHECK(k.values.at(2).at(0, 0) == 1);  // w |-> u
  // Not a simplicial object, so only the unchecked complex can be formed.
  AQCochainComplex cx(X, chain_coefficients(X, 0));
  CHECK_FALSE(cx.check_dd());
  CHECK(cx.is_cocycle(k).value());
}

TEST_CASE("k-invariants of lax objects are cocycles") {
  int nonzero = 0;
  for (unsigned seed : {1u, 2u, 6u, 9u, 12u}) {
    for (int n = 0; n <= 1; ++n) {
      auto X = random_object(seed, 5, n + 3, n + 2);
      AQClass k = k_invariant_cocycle(X, n);
      if (!k.is_zero()) ++nonzero;
      AQCochainComplex cx(X, chain_coefficients(X, n));
      CHECK(cx.is_cocycle(k).value());
    }
  }
  CHECK(nonzero > 0);
}


TEST_CASE("k-invariant classes survive boundary perturbation") {
  std::mt19937 rng(4);
  for (int n = 0; n <= 1; ++n) {
    auto X = padded_cp(n).extend({});
    AQClass k = k_invariant_cocycle(X, n);
    bool changed = false;
    auto gens = perturb_by_boundaries(X, n, rng, &changed);
    CHECK(changed);
    auto Y = X.truncate(n + 1).extend(gens).extend({});
    AQClass k2 = k_invariant_cocycle(Y, n);
    auto cy = build_aq_complex(Y, chain_coefficients(Y, n));
    CHECK(cy.is_cocycle(k2).value());
    CHECK(cy.same_class(k, k2));
  }
}

TEST_CASE("beta of a resolution's own attaching maps vanishes with a witness") {
  auto cp = cp_algebra();
  auto X = resolve(cp, 3);
  for (int n = 0; n <= 1; ++n) {
    auto b = beta_obstruction(cp, X, n);
    CHECK(b.refusal.empty());
    CHECK(b.gamma.is_zero());
    REQUIRE(b.cocycle);
    CHECK(b.vanishes);
    REQUIRE(b.witness);
    auto cx = build_aq_complex(X, loop_module(cp, n));
    CHECK(cx.apply(*b.witness) == *b.cocycle);
  }
}

TEST_CASE("beta detects an attachment that is not a cycle") {
  auto cp = cp_algebra();
  auto P = pad_resolution(resolve(cp, 2), 1, 3);
  // z at level 3 with d_0 z = pad', whose own d_0 is the level-1 generator pad.
  auto b = beta_obstruction(cp, P, 1, {{"z", 3, LiePolynomial::letter(P.level(2).algebra(), "pad'")}});
  CHECK_FALSE(b.gamma.is_zero());
  CHECK_FALSE(b.vanishes);
  CHECK_FALSE(b.refusal.empty());
}

TEST_CASE("beta requires a resolution band") {
  auto cp = cp_algebra();
  auto X = resolve(cp, 2);
  auto sk = X.truncate(1).extend({});  // pi_1 survives in degree 3
  CHECK_THROWS_AS(beta_obstruction(cp, sk, 1, {}), BandError);
}

TEST_CASE("difference of equal attaching maps") {
  auto X = resolve(cp_algebra(), 2);
  auto a = attachments(X, 2);
  auto r = delta_difference(X, 0, a, a);
  CHECK(r.zero);
  CHECK(r.cochain.is_zero());
  CHECK(r.equivalence_verified);
}

TEST_CASE("a boundary perturbation has zero difference class and equivalent extensions") {
  std::mt19937 rng(2);
  for (int n = 0; n <= 1; ++n) {
    auto X = padded_cp(n);
    auto sk = X.truncate(n + 1).extend({});
    auto a = attachments(X, n + 2);
    bool changed = false;
    auto b = perturb_by_boundaries(X, n, rng, &changed);
    CHECK(changed);
    auto r = delta_difference(X, n, a, b);
    CHECK_FALSE(r.cochain.n != n + 2);
    CHECK(r.zero);
    CHECK(r.equivalence_verified);
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(sk.level(n + 2).face(0, r.witnesses[i].coords()) == r.difference[i].coords());
  }
}

TEST_CASE("an injected homotopy class is read off exactly") {
  auto X = resolve(cp_algebra(), 2);
  auto W = X.truncate(1);
  auto a = attachments(X, 2);
  REQUIRE(a.size() == 1);
  CHECK(a[0].degree == 3);
  auto inject = parse_lie(W.level(1).algebra(), "[s0_x,e1_2_1]");
  for (int c : {1, 2, -3}) {
    auto b = a;
    b[0].attach = transfer(a[0].attach, W.level(1).algebra()) - inject * Rational(c);
    auto r = delta_difference(X, 0, a, b);
    CHECK_FALSE(r.zero);
    CHECK(r.coefficients.dim(3) == 1);
    // The class of [s0 x, e1] in the degenerate skeleton, scaled.
    auto h = homotopy_degree(W.extend({}), 1, 3);
    auto unit = h.coordinates(inject.coords());
    REQUIRE(unit);
    CHECK(r.cochain.values.at(3).column(0) == *unit * Rational(c));
  }
}

TEST_CASE("differences add up at cochain level") {
  auto X = resolve(cp_algebra(), 2);
  auto W = X.truncate(1);
  auto a = attachments(X, 2);
  auto inject = parse_lie(W.level(1).algebra(), "[s0_x,e1_2_1]");
  auto b = a, c = a;
  b[0].attach = transfer(a[0].attach, W.level(1).algebra()) + inject;
  c[0].attach = transfer(a[0].attach, W.level(1).algebra()) - inject * Rational(4);
  auto ab = delta_difference(X, 0, a, b);
  auto bc = delta_difference(X, 0, b, c);
  auto ac = delta_difference(X, 0, a, c);
  CHECK(ab.cochain + bc.cochain == ac.cochain);
}

TEST_CASE("differences reject maps that do not realize the same attaching map") {
  auto X = resolve(cp_algebra(), 2);
  auto W = X.truncate(1);
  auto a = attachments(X, 2);
  auto b = a;
  b[0].attach = LiePolynomial::letter(W.level(1).algebra(), "s0_x");  // wrong degree
  CHECK_THROWS_AS(delta_difference(X, 0, a, b), DifferenceError);
  auto renamed = a;
  renamed[0].name = "other";
  CHECK_THROWS_AS(delta_difference(X, 0, a, renamed), DifferenceError);
}
