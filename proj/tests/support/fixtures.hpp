#pragma once

// Objects shared by the unit and acceptance suites.

#include <random>

#include "aqtoda/aq_cohomology.hpp"

namespace fixtures {

using namespace aqtoda;

inline PresentedLieAlgebra cp_algebra(int D = 6) { return PresentedLieAlgebra({{"x", 1}}, {"[x,x]"}, D); }

inline CoefficientSpace ones(int D) {
  CoefficientSpace K;
  K.label = "Q in every degree";
  K.valid_through = D;
  for (int d = 1; d <= D; ++d) K.dims[d] = 1;
  return K;
}

inline SparseVec random_span(const std::vector<SparseVec>& basis, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(-2, 2);
  SparseVec v;
  for (const auto& b : basis) v.add_scaled(b, coin(rng));
  return v;
}

// Levels 0..top over {a1, b1, c2, u2}. Attaching values are random Moore
// cycles, except on level `lax` where they are random Moore chains.
inline TruncatedCWObject random_object(unsigned seed, int D, int top, int lax = -1) {
  std::mt19937 rng(seed);
  auto X = TruncatedCWObject::base({{"a", 1}, {"b", 1}, {"c", 2}, {"u", 2}}, D);
  for (int level = 1; level <= top; ++level) {
    std::vector<TruncatedCWObject::NewGenerator> gens;
    for (int d = 2; d <= std::min(D, level + 2); ++d) {
      auto m = moore_degree(X, level - 1, d);
      for (int copy = 0; copy < 2; ++copy)
        gens.push_back({"g" + std::to_string(level) + "_" + std::to_string(d) + "_" + std::to_string(copy), d,
                        LiePolynomial(X.level(level - 1).algebra(),
                                      random_span(level == lax ? m.chains : m.cycles, rng))});
    }
    X = X.extend(gens);
  }
  return X;
}

inline std::vector<TruncatedCWObject::NewGenerator> attachments(const TruncatedCWObject& X, int level) {
  std::vector<TruncatedCWObject::NewGenerator> out;
  for (const auto& g : X.level(level).basis()) out.push_back({g.name, g.degree, g.attach});
  return out;
}

// Adds d_0 of random Moore chains of the degenerate level n+2 to every
// attaching value of level n+2.
inline std::vector<TruncatedCWObject::NewGenerator> perturb_by_boundaries(const TruncatedCWObject& X, int n,
                                                                          std::mt19937& rng, bool* changed) {
  auto W = X.truncate(n + 1);
  auto sk = W.extend({});
  auto gens = attachments(X, n + 2);
  for (auto& g : gens) {
    SparseVec bd = sk.level(n + 2).face(0, random_span(moore_degree(sk, n + 2, g.degree).chains, rng));
    if (!bd.empty()) *changed = true;
    g.attach = transfer(g.attach, W.level(n + 1).algebra()) + LiePolynomial(W.level(n + 1).algebra(), bd);
  }
  return gens;
}

// A resolution of L(x)/([x,x]) through level n+2 with a contractible pair in
// degree 5 straddling levels n+1, n+2, so boundaries exist in that degree.
inline TruncatedCWObject padded_cp(int n) { return pad_resolution(resolve(cp_algebra(), n + 2), n + 1, 5); }

}  // namespace fixtures
