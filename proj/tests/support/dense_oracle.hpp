#pragma once

// Test-side brute force for long Toda brackets, written against dense
// rational matrices so it shares no elimination code with the library.
// Works in the construction basis of a seeded tower and compares cosets at
// chain level.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "aqtoda/ladder_toda.hpp"

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;  // row-major

inline Mat dense(const aqtoda::Matrix& m) {
  Mat out(m.rows(), Vec(m.cols(), 0));
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) out[i][j] = v;
  return out;
}

// Reduced row echelon form of [A | b...]; returns pivot columns.
inline std::vector<int> rref(Mat& A, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(A.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(A.size()); ++i)
      if (A[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(A[r], A[p]);
    Q inv = 1 / A[r][c];
    for (auto& x : A[r]) x *= inv;
    for (int i = 0; i < static_cast<int>(A.size()); ++i)
      if (i != r && A[i][c] != 0) {
        Q f = A[i][c];
        for (std::size_t k = 0; k < A[i].size(); ++k) A[i][k] -= f * A[r][k];
      }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank_of(std::vector<Vec> vectors) {
  if (vectors.empty()) return 0;
  std::size_t n = vectors.front().size();
  Mat A(n, Vec(vectors.size(), 0));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) A[i][j] = vectors[j][i];
  return static_cast<int>(rref(A, static_cast<int>(vectors.size())).size());
}

// Solution with free variables zero, and the nullspace with unit free variables.
struct Solve {
  std::optional<Vec> x;
  std::vector<Vec> kernel;
};

inline Solve solve(const Mat& A, int cols, const Vec& b) {
  Mat M = A;
  for (std::size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
  auto pivots = rref(M, cols);
  Solve out;
  for (std::size_t i = pivots.size(); i < M.size(); ++i)
    if (M[i][cols] != 0) return out;
  Vec x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M[r][cols];
  out.x = x;
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec k(cols, 0);
    k[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -M[r][f];
    out.kernel.push_back(k);
  }
  return out;
}

inline Vec mat_vec(const Mat& A, const Vec& x) {
  Vec y(A.size(), 0);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

// One column of the source: a vector per level, in the degree the ladder
// visits. Columns are independent, so choices enumerate per column and the
// bracket's value set is the product over columns.
struct ColumnRun {
  std::vector<Vec> bottoms;  // every bottom vector reached
  bool defined = false;
};

inline ColumnRun run_column(const aqtoda::ChainComplexQ& T, int top, int source_degree, const Vec& start) {
  ColumnRun out;
  std::vector<std::pair<int, Vec>> frontier{{top, start}};
  while (!frontier.empty()) {
    auto [level, g] = frontier.back();
    frontier.pop_back();
    int e = source_degree + (top - level);  // degree of gamma_level's values
    if (level == 0) {
      out.bottoms.push_back(g);
      continue;
    }
    Mat delta = dense(T.internal(level, e + 1));
    int cols = T.dim(level, e + 1);
    auto s = solve(delta, cols, g);
    if (!s.x) continue;
    Mat bd = dense(T.boundary(level, e + 1));
    std::vector<int> c(s.kernel.size(), -1);
    while (true) {
      Vec H = *s.x;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (int k = 0; k < cols; ++k) H[k] += c[i] * s.kernel[i][k];
      Vec next = bd.empty() ? Vec(T.dim(level - 1, e + 1), 0) : mat_vec(bd, H);
      frontier.emplace_back(level - 1, next);
      std::size_t i = 0;
      while (i < c.size() && c[i] == 1) c[i++] = -1;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  out.defined = !out.bottoms.empty();
  return out;
}

struct Verdict {
  bool defined = false;
  bool sound = false;
  bool complete = false;
  std::string detail;
};

// Compares the library's bracket on inst.T with the brute force on
// inst.native_T, at chain level in the construction basis.
inline Verdict compare(const aqtoda::TodaInstance& inst, const aqtoda::TodaBracketValue& v) {
  using namespace aqtoda;
  Verdict out;
  int e0 = inst.top;  // bottom degree offset for a source in degree d: d + top
  // Slots: (source degree d, column c), each a block of T_0 in degree d + top.
  struct Slot {
    int d, c, offset, dim;
  };
  std::vector<Slot> slots;
  int total = 0;
  for (int d = 0; d < static_cast<int>(inst.X.size()); ++d)
    for (int c = 0; c < inst.X[d]; ++c) {
      int dim = inst.native_T.dim(0, d + e0);
      slots.push_back({d, c, total, dim});
      total += dim;
    }

  // Per-slot value sets from the brute force.
  std::vector<std::vector<Vec>> per_slot;
  bool all_defined = true;
  for (const auto& s : slots) {
    Vec start(inst.native_T.dim(inst.top, s.d), 0);
    for (const auto& [i, val] : inst.native_gamma.blocks.at(s.d).column(s.c)) start[i] = val;
    ColumnRun run = run_column(inst.native_T, inst.top, s.d, start);
    all_defined = all_defined && run.defined;
    per_slot.push_back(run.bottoms);
  }
  out.defined = all_defined;
  if (!all_defined || !v.defined) {
    out.sound = out.complete = (all_defined == v.defined);
    out.detail = all_defined ? "solver undefined, brute force defined"
                             : (v.defined ? "solver defined, brute force undefined" : "both undefined");
    return out;
  }

  // Boundaries of delta in T_0 per slot, flattened.
  std::vector<Vec> exact;
  for (const auto& s : slots) {
    Mat in = dense(inst.native_T.internal(0, s.d + e0 + 1));
    int cols = inst.native_T.dim(0, s.d + e0 + 1);
    for (int j = 0; j < cols; ++j) {
      Vec col(total, 0);
      for (int i = 0; i < s.dim; ++i) col[s.offset + i] = in[i][j];
      exact.push_back(col);
    }
  }
  // Solver value and indeterminacy lifted to chains, then back to the
  // construction basis.
  auto lift = [&](const SparseVec& coords) {
    Vec chain(total, 0);
    for (const auto& [idx, val] : coords) {
      auto [d, c, m] = v.space.slots[idx];
      InternalHomology h(inst.T, 0, d + e0);
      SparseVec rep = inst.change.inverse.at({0, d + e0}).apply(h.representatives()[m]);
      for (const auto& s : slots)
        if (s.d == d && s.c == c)
          for (const auto& [i, x] : rep) chain[s.offset + i] += val * x;
    }
    return chain;
  };
  Vec v0 = lift(v.value);
  std::vector<Vec> ind;
  for (const auto& k : v.indeterminacy) ind.push_back(lift(k));

  // Values of the bracket: one bottom vector per slot, in every combination.
  // Soundness needs each slot's vectors, completeness their differences, and
  // both are checked slot by slot since the slots are independent.
  std::vector<Vec> allowed = exact;
  allowed.insert(allowed.end(), ind.begin(), ind.end());
  int base_rank = rank_of(allowed);
  std::vector<Vec> spread = exact;
  bool sound = true;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Slot& s = slots[k];
    for (const auto& w : per_slot[k]) {
      Vec diff(total, 0);
      for (int i = 0; i < s.dim; ++i) diff[s.offset + i] = w[i] - v0[s.offset + i];
      std::vector<Vec> test = allowed;
      test.push_back(diff);
      if (rank_of(test) != base_rank) sound = false;
      Vec spread_vec(total, 0);
      for (int i = 0; i < s.dim; ++i) spread_vec[s.offset + i] = w[i] - per_slot[k].front()[i];
      spread.push_back(spread_vec);
    }
  }
  out.sound = sound;
  out.complete = rank_of(spread) == base_rank;
  out.detail = "rank of exact + indeterminacy " + std::to_string(base_rank) + ", brute-force spread rank " +
               std::to_string(rank_of(spread));
  return out;
}

}  // namespace oracle
