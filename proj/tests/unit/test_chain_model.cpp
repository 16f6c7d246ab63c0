#include <doctest.h>

#include <string>
#include <vector>

#include "aqtoda/chain_model.hpp"

using namespace aqtoda;

namespace {

// A tower given by named basis vectors and edges between them.
struct Sketch {
  struct Vec {
    std::string name;
    int level, degree, index;
  };
  std::vector<Vec> vecs;
  std::vector<std::tuple<std::string, std::string, int>> internal, boundary;  // from, to, coefficient

  void vec(const std::string& name, int level, int degree) {
    int idx = 0;
    for (const auto& v : vecs)
      if (v.level == level && v.degree == degree) ++idx;
    vecs.push_back({name, level, degree, idx});
  }
  const Vec& find(const std::string& name) const {
    for (const auto& v : vecs)
      if (v.name == name) return v;
    throw std::logic_error("no vector " + name);
  }
  ChainComplexQ build(int top, int max_degree) const {
    ChainComplexQ T(top, max_degree);
    for (const auto& v : vecs) T.set_dim(v.level, v.degree, v.index + 1);
    std::map<std::pair<int, int>, Matrix> I, B;
    for (const auto& [from, to, c] : internal) {
      const Vec& a = find(from);
      const Vec& b = find(to);
      auto key = std::make_pair(a.level, a.degree);
      if (!I.count(key)) I[key] = Matrix(T.dim(a.level, a.degree - 1), T.dim(a.level, a.degree));
      I[key].column(a.index).add(b.index, c);
    }
    for (const auto& [from, to, c] : boundary) {
      const Vec& a = find(from);
      const Vec& b = find(to);
      auto key = std::make_pair(a.level, a.degree);
      if (!B.count(key)) B[key] = Matrix(T.dim(a.level - 1, a.degree), T.dim(a.level, a.degree));
      B[key].column(a.index).add(b.index, c);
    }
    for (auto& [k, m] : I) T.set_internal(k.first, k.second, m);
    for (auto& [k, m] : B) T.set_boundary(k.first, k.second, m);
    return T;
  }
  // x (source degree 1) |-> the named vector.
  GradedMap hit(const ChainComplexQ& T, const std::string& name, const GradedDims& X) const {
    const Vec& v = find(name);
    GradedMap g = zero_map(T, v.level, X, v.degree - 1);
    g.blocks[1].column(0).add(v.index, 1);
    return g;
  }
};

// a --delta-- b --boundary-- c: the smallest nontrivial bracket.
Sketch basic_staircase() {
  Sketch s;
  s.vec("a", 1, 1);
  s.vec("b", 1, 2);
  s.vec("c", 0, 2);
  s.internal.emplace_back("b", "a", 1);
  s.boundary.emplace_back("b", "c", 1);
  return s;
}

const GradedDims kX = {0, 1};

}  // namespace

TEST_CASE("nullhomotopy of the identity on a contractible target") {
  Complex A{0, {1}, {}};
  Complex B{0, {1, 1}, {{1, Matrix::identity(1)}}};
  ChainMap f{{{0, Matrix::identity(1)}}};
  auto r = solve_nullhomotopy(A, B, f);
  REQUIRE(r.solution);
  CHECK_FALSE(r.certificate);
  // d h_0 = f_0
  CHECK(B.diff(1) * r.solution->h.at(0) == Matrix::identity(1));
}

TEST_CASE("a map that is nonzero on homology yields a certificate") {
  Complex A{0, {1}, {}};
  Complex B{0, {1}, {}};
  ChainMap f{{{0, Matrix::identity(1)}}};
  auto r = solve_nullhomotopy(A, B, f);
  CHECK_FALSE(r.solution);
  REQUIRE(r.certificate);
  CHECK(r.certificate->dim == 0);
  CHECK_FALSE(r.certificate->image.empty());
}

TEST_CASE("nullhomotopies of zero maps carry their kernel") {
  Complex A{0, {1, 1}, {{1, Matrix::identity(1)}}};
  Complex B{0, {1, 1, 1}, {}};
  ChainMap f;
  auto r = solve_nullhomotopy(A, B, f);
  REQUIRE(r.solution);
  // h_0, h_1 free, h_{-1} absent: dh + hd = 0 gives d_B h + h d_A = h_0 d_A = 0 on A_1 -> B_1.
  CHECK(r.solution->kernel.size() == 1);
}

TEST_CASE("a tower sketch satisfies the commuting relations") {
  auto s = basic_staircase();
  auto T = s.build(1, 4);
  std::string why;
  CHECK(T.check(&why));
  s.vec("z", 0, 1);
  s.boundary.emplace_back("a", "z", 1);  // boundary(delta b) = z but delta(boundary b) = 0
  CHECK_FALSE(s.build(1, 4).check(&why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("a one-step ladder descends to the boundary of the nullhomotopy") {
  auto s = basic_staircase();
  auto T = s.build(1, 4);
  auto gamma = s.hit(T, "a", kX);
  auto rung = solve_rung(T, 1, kX, gamma);
  REQUIRE(rung.H);
  CHECK(rung.choices.empty());
  auto next = ladder_descend(T, 1, gamma, *rung.H);
  CHECK(next == s.hit(T, "c", kX));
  CHECK_THROWS_AS(ladder_descend(T, 1, gamma, zero_map(T, 1, kX, 1)), LadderError);

  auto v = toda_bracket(T, kX, gamma, 1);
  REQUIRE(v.defined);
  CHECK(v.space.size() == 1);
  CHECK(v.value == SparseVec::unit(0));
  CHECK(v.indeterminacy.empty());
  CHECK(v.contains(SparseVec::unit(0)));
  CHECK_FALSE(v.contains(SparseVec{}));
}

TEST_CASE("cycles above the nullhomotopy produce indeterminacy") {
  auto s = basic_staircase();
  s.vec("alpha", 1, 2);
  s.vec("c2", 0, 2);
  s.boundary.emplace_back("alpha", "c2", 1);
  auto T = s.build(1, 4);
  auto v = toda_bracket(T, kX, s.hit(T, "a", kX), 1);
  REQUIRE(v.defined);
  CHECK(v.space.size() == 2);
  REQUIRE(v.indeterminacy.size() == 1);
  // Both c and c + c2 are values.
  CHECK(v.contains(SparseVec::unit(0)));
  CHECK(v.contains(SparseVec::unit(0) + SparseVec::unit(1)));
  CHECK_FALSE(v.contains(SparseVec::unit(1)));
}

namespace {

// Two-step staircase a2 -> b2 -> c1 -> b1 -> c0 with a bad choice alpha at
// level 2 whose boundary e is a non-exact cycle of level 1.
Sketch two_step(bool bad_choice) {
  Sketch s;
  s.vec("a2", 2, 1);
  s.vec("b2", 2, 2);
  s.vec("c1", 1, 2);
  s.vec("b1", 1, 3);
  s.vec("c0", 0, 3);
  s.internal.emplace_back("b2", "a2", 1);
  s.boundary.emplace_back("b2", "c1", 1);
  s.internal.emplace_back("b1", "c1", 1);
  s.boundary.emplace_back("b1", "c0", 1);
  if (bad_choice) {
    s.vec("alpha", 2, 2);
    s.vec("e", 1, 2);
    s.boundary.emplace_back("alpha", "e", 1);
  }
  return s;
}

}  // namespace

TEST_CASE("a bad rung choice is corrected and the ladder goes through") {
  auto s = two_step(true);
  auto T = s.build(2, 5);
  REQUIRE(T.check());
  auto gamma = s.hit(T, "a2", kX);
  GradedMap H = add(s.hit(T, "b2", kX), s.hit(T, "alpha", kX));
  auto corr = ladder_correct(T, 2, H);
  REQUIRE(corr.ok);
  CHECK(corr.changed);
  CHECK(corr.H == s.hit(T, "b2", kX));
  // The uncorrected boundary is not delta-exact.
  CHECK_FALSE(solve_rung(T, 1, kX, ladder_descend(T, 2, gamma, H)).H);

  auto lr = build_ladder(T, kX, gamma, 2);
  REQUIRE(lr.ladder);
  CHECK(lr.ladder->rungs.size() == 2);
  CHECK(lr.ladder->bottom_gamma == s.hit(T, "c0", kX));

  auto v = toda_bracket(T, kX, gamma, 2);
  REQUIRE(v.defined);
  CHECK(v.value == SparseVec::unit(0));
  CHECK(v.indeterminacy.empty());
}

TEST_CASE("a ladder refuses when no correction exists") {
  Sketch s;
  s.vec("a2", 2, 1);
  s.vec("b2", 2, 2);
  s.vec("e", 1, 2);
  s.internal.emplace_back("b2", "a2", 1);
  s.boundary.emplace_back("b2", "e", 1);
  auto T = s.build(2, 5);
  REQUIRE(T.check());
  auto gamma = s.hit(T, "a2", kX);
  auto corr = ladder_correct(T, 2, s.hit(T, "b2", kX));
  CHECK_FALSE(corr.ok);
  CHECK(corr.refusal.find("level 2") != std::string::npos);
  auto lr = build_ladder(T, kX, gamma, 2);
  CHECK_FALSE(lr.ladder);
  CHECK_FALSE(lr.refusal.empty());
  auto v = toda_bracket(T, kX, gamma, 2);
  CHECK_FALSE(v.defined);
}

TEST_CASE("an undefined bracket names the first-stage obstruction") {
  Sketch s;
  s.vec("a", 1, 1);
  auto T = s.build(1, 4);
  auto v = toda_bracket(T, kX, s.hit(T, "a", kX), 1);
  CHECK_FALSE(v.defined);
  CHECK(v.reason.find("first-stage") != std::string::npos);
}

TEST_CASE("staircase and sequential ladder agree on the two-step example") {
  auto s = two_step(true);
  s.vec("alpha1", 1, 3);  // a level-1 cycle whose boundary is a new class
  s.vec("f0", 0, 3);
  s.boundary.emplace_back("alpha1", "f0", 1);
  auto T = s.build(2, 5);
  REQUIRE(T.check());
  auto gamma = s.hit(T, "a2", kX);
  auto space = class_space(T, 0, kX, 2);
  auto st = staircase_solve(T, kX, gamma, 2, 0, space);
  REQUIRE(st);
  CHECK(st->indeterminacy.size() == 1);
  auto v = toda_bracket(T, kX, gamma, 2);
  REQUIRE(v.defined);
  CHECK(v.contains(st->value));
  auto seq = class_coordinates(T, 0, kX, v.ladder->bottom_gamma, space);
  REQUIRE(seq);
  CHECK(v.contains(*seq));
  CHECK(class_coordinates(T, 0, kX, st->bottom, space) == st->value);
}
