#include <doctest.h>

#include <random>

#include "aqtoda/simplicial_cw.hpp"

using namespace aqtoda;

namespace {

LiePolynomial random_combination(const FreeLiePtr& alg, const std::vector<SparseVec>& basis, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(-2, 2);
  SparseVec v;
  for (const auto& b : basis) v.add_scaled(b, coin(rng));
  return LiePolynomial(alg, v);
}

// A random 3-truncated CW object whose attaching values are Moore cycles.
TruncatedCWObject random_cw_object(unsigned seed, int D) {
  std::mt19937 rng(seed);
  auto X = TruncatedCWObject::base({{"a", 1}, {"b", 1}, {"c", 2}}, D);
  for (int level = 1; level <= 3; ++level) {
    std::vector<TruncatedCWObject::NewGenerator> gens;
    for (int d = 2; d <= std::min(D, level + 2); ++d) {
      auto m = moore_degree(X, level - 1, d);
      auto attach = random_combination(X.level(level - 1).algebra(), m.cycles, rng);
      gens.push_back({"g" + std::to_string(level) + "_" + std::to_string(d), d, attach});
    }
    X = X.extend(gens);
  }
  return X;
}

}  // namespace

TEST_CASE("latching index sets count surjections") {
  auto l1 = latching_index_set(1);
  REQUIRE(l1.size() == 1);
  CHECK(l1[0].first == 0);
  CHECK(l1[0].second == std::vector<int>{0});
  auto l2 = latching_index_set(2);
  int to1 = 0, to0 = 0;
  for (const auto& [k, J] : l2) (k == 1 ? to1 : to0)++;
  CHECK(to1 == 2);
  CHECK(to0 == 1);
  CHECK(latching_index_set(4).size() == 15);  // 2^4 - 1 proper surjections
}

TEST_CASE("letters of a level: basis, latching copies and names") {
  auto X = TruncatedCWObject::base({{"x", 1}}, 5).extend_parsed({{"y", 2, "[x,x]"}}).extend({});
  const CWLevel& L2 = X.level(2);
  std::vector<std::string> names;
  for (const auto& g : L2.algebra()->letters()) names.push_back(g.name);
  CHECK(names == std::vector<std::string>{"s1s0_x", "s0_y", "s1_y"});
  // total letters = sum_k C(n,k) |G_k|
  CHECK(L2.letters().size() == 1 + 2 * 1 + 0);
}

TEST_CASE("faces on basis generators and degeneracies") {
  auto X = TruncatedCWObject::base({{"x", 1}}, 5).extend_parsed({{"y", 2, "[x,x]"}}).extend({});
  const auto& A1 = X.level(1).algebra();
  const auto& A0 = X.level(0).algebra();
  auto y = LiePolynomial::letter(A1, "y");
  CHECK(X.level(1).face(0, y.coords()) == parse_lie(A0, "[x,x]").coords());
  CHECK(X.level(1).face(1, y.coords()).empty());
  auto s0x = LiePolynomial::letter(A1, "s0_x");
  CHECK(X.level(1).face(0, s0x.coords()) == LiePolynomial::letter(A0, "x").coords());
  // d_0 s_0 = id on level 1
  const auto& A2 = X.level(2).algebra();
  SparseVec s0y = degeneracy(X, 1, 0, y.coords());
  CHECK(s0y == LiePolynomial::letter(A2, "s0_y").coords());
  CHECK(X.level(2).face(0, s0y) == y.coords());
  CHECK(X.level(2).face(1, s0y) == y.coords());
  // d_2 s_0 y = s_0 d_1 y = 0
  CHECK(X.level(2).face(2, s0y).empty());
}

TEST_CASE("simplicial identities hold on random 3-truncated CW objects") {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto X = random_cw_object(seed, 5);
    CHECK(X.attachments_are_cycles());
    auto r = check_simplicial_identities(X.extend({}));
    CHECK(r.ok);
    CHECK(r.checked > 100);
  }
}

TEST_CASE("a chain-valued top attachment breaks exactly d0 d0 = d0 d1") {
  auto X = TruncatedCWObject::base({{"x", 1}}, 5).extend({});
  // [s0 x, s0 x] is not a chain (d_1 is nonzero); y is a chain whose d_0 is not zero.
  CHECK_THROWS_AS(X.extend_parsed({{"z", 2, "[s0_x,s0_x]"}}), CWExtendError);
  auto Y = TruncatedCWObject::base({{"x", 1}}, 5).extend_parsed({{"y", 2, "[x,x]"}}).extend_parsed({{"w", 2, "y"}});
  CHECK_FALSE(Y.attachments_are_cycles());
  auto r = check_simplicial_identities(Y);
  CHECK_FALSE(r.ok);
  for (const auto& v : r.violations) CHECK(v.find("level 2 letter w: d0d1 != d0d0") != std::string::npos);
}

TEST_CASE("Moore data of the resolution of L(x)/([x,x])") {
  PresentedLieAlgebra cp({{"x", 1}}, {"[x,x]"}, 6);
  auto X = resolve(cp, 3);
  REQUIRE(X.level(1).basis().size() == 1);
  CHECK(X.level(1).basis()[0].degree == 2);
  CHECK(X.level(1).basis()[0].attach.to_string() == "[x,x]");
  auto m0 = moore_degree(X, 0, 2);
  CHECK(m0.chains.size() == 1);
  CHECK(m0.cycles.size() == 1);
  auto m1 = moore_degree(X, 1, 2);
  REQUIRE(m1.chains.size() == 1);
  CHECK(linearize(X, 1, m1.chains[0]).size() == 1);
  CHECK(m1.boundaries[0] == parse_lie(X.level(0).algebra(), "[x,x]").coords() * m1.chains[0].leading_value());
  // d d = 0 on chains
  for (int n = 2; n <= 3; ++n)
    for (int d = 1; d <= 6; ++d)
      for (const auto& b : moore_degree(X, n, d).boundaries) CHECK(X.level(n - 1).face(0, b).empty());
  auto check = check_resolution(X, cp);
  CHECK(check.pi0_matches);
  CHECK(check.vanishing);
  CHECK(check_simplicial_identities(X).ok);
}

TEST_CASE("free algebras resolve to themselves") {
  PresentedLieAlgebra fr({{"x", 1}, {"y", 2}}, {}, 5);
  auto X = resolve(fr, 3);
  for (int n = 1; n <= 3; ++n) CHECK(X.level(n).basis().empty());
  CHECK(check_resolution(X, fr).vanishing);
}

TEST_CASE("resolutions of other presentations are acyclic in the band") {
  std::vector<PresentedLieAlgebra> algebras;
  algebras.emplace_back(std::vector<GradedGenerator>{{"x", 1}, {"y", 1}}, std::vector<std::string>{"[x,y]"}, 5);
  algebras.emplace_back(std::vector<GradedGenerator>{{"x", 1}, {"y", 2}},
                        std::vector<std::string>{"[x,[x,y]]", "[y,y]"}, 6);
  algebras.emplace_back(std::vector<GradedGenerator>{{"a", 2}}, std::vector<std::string>{}, 6);
  for (const auto& lambda : algebras) {
    for (ResolveOptions opt : {ResolveOptions{}, ResolveOptions{true, 0}, ResolveOptions{false, 17}}) {
      auto X = resolve(lambda, 3, opt);
      auto check = check_resolution(X, lambda);
      CHECK(check.pi0_matches);
      CHECK(check.vanishing);
      CHECK(X.attachments_are_cycles());
    }
  }
}

TEST_CASE("degenerate-only extensions have homotopy that the next basis kills") {
  PresentedLieAlgebra cp({{"x", 1}}, {"[x,x]"}, 6);
  auto X = resolve(cp, 2);
  auto sk = X.truncate(1).extend({});
  // pi_1 of the degenerate-only level-2 object is nonzero in degree 3: [s0 x, y].
  auto h = homotopy_degree(sk, 1, 3);
  CHECK(h.dim() == 1);
  CHECK(homotopy_degree(X, 1, 3).dim() == 0);
}

TEST_CASE("linearization keeps only basis letters") {
  auto X = TruncatedCWObject::base({{"x", 1}}, 5).extend_parsed({{"y", 2, "[x,x]"}, {"z", 2, "0"}});
  auto A = X.level(1).algebra();
  CHECK(linearize(X, 1, parse_lie(A, "[s0_x,s0_x] + 3*z").coords()) == SparseVec::unit(1, 3));
  CHECK(linearize(X, 1, parse_lie(A, "s0_x + y").coords()) == SparseVec::unit(0));
  CHECK(linearize(X, 1, parse_lie(A, "y").coords()) == SparseVec::unit(0));
}
