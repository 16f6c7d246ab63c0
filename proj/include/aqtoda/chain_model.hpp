#pragma once

// Bigraded chain model for ladders.
//
// A tower T_0, ..., T_L of graded vector spaces. Each T_k carries an internal
// differential delta (lowering the internal degree by one) and a simplicial
// boundary T_k -> T_{k-1} that preserves the internal degree; the two commute.
// A ladder starts from a map gamma_n : X -> T_n out of a graded source X with
// zero differential, solves delta H_i = gamma_i, and descends along
// gamma_{i-1} = boundary o H_i. Each descent raises the internal degree by one,
// so gamma_i sends X in degree d to T_i in degree d + (n - i).

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "aqtoda/linalg.hpp"

namespace aqtoda {

class ChainComplexQ {
 public:
  ChainComplexQ() = default;
  ChainComplexQ(int top, int max_degree);

  int top() const { return top_; }
  int max_degree() const { return max_degree_; }
  // Zero outside 0 <= n <= top, 0 <= d <= max_degree.
  int dim(int n, int d) const;
  void set_dim(int n, int d, int k);

  // C_{n,d} -> C_{n-1,d}; zero matrix of the right shape if unset.
  Matrix boundary(int n, int d) const;
  // C_{n,d} -> C_{n,d-1}.
  Matrix internal(int n, int d) const;
  void set_boundary(int n, int d, Matrix m);
  void set_internal(int n, int d, Matrix m);
  bool has_internal() const { return !internal_.empty(); }

  // boundary^2 = 0, internal^2 = 0, the two commute, shapes agree.
  bool check(std::string* why = nullptr) const;
  // Ranks of H_n of the boundary differential in each degree.
  std::map<int, int> homology_dims(int n) const;
  int total_dim() const;

 private:
  int top_ = 0, max_degree_ = 0;
  std::vector<std::vector<int>> dims_;
  std::map<std::pair<int, int>, Matrix> boundary_, internal_;
};

// A single-graded complex of finite vector spaces, used by the nullhomotopy
// solver. diff(k) maps C_k -> C_{k-1}.
struct Complex {
  int low = 0;                 // index of dims[0]
  std::vector<int> dims;
  std::map<int, Matrix> diffs;

  int dim(int k) const;
  Matrix diff(int k) const;
};

// Degree-zero chain map A -> B given by components f_k : A_k -> B_k.
struct ChainMap {
  std::map<int, Matrix> components;
  Matrix at(int k, const Complex& A, const Complex& B) const;
};

struct Nullhomotopy {
  std::map<int, Matrix> h;                      // h_k : A_k -> B_{k+1}
  std::vector<std::map<int, Matrix>> kernel;    // solutions of dh + hd = 0
};

struct HomologyCertificate {
  int dim = 0;
  SparseVec cycle;  // a cycle of A_dim
  SparseVec image;  // f(cycle), not a boundary in B
};

struct NullhomotopyResult {
  std::optional<Nullhomotopy> solution;
  std::optional<HomologyCertificate> certificate;
};

// Solves d h + h d = f exactly, or certifies that f is nonzero on homology.
NullhomotopyResult solve_nullhomotopy(const Complex& A, const Complex& B, const ChainMap& f);

// Maps out of the graded source: block d sends X_d to degree d + shift.
struct GradedMap {
  int shift = 0;
  std::map<int, Matrix> blocks;

  bool is_zero() const;
  bool operator==(const GradedMap& o) const;
};

// Graded source X: dims[d] for d = 0..dims.size()-1.
using GradedDims = std::vector<int>;

GradedMap zero_map(const ChainComplexQ& T, int level, const GradedDims& X, int shift);
GradedMap apply_boundary(const ChainComplexQ& T, int level, const GradedMap& f);
GradedMap apply_internal(const ChainComplexQ& T, int level, const GradedMap& f);
GradedMap add(const GradedMap& a, const GradedMap& b, const Rational& c = 1);

struct LadderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LadderRung {
  int level = 0;
  GradedMap gamma;  // X -> T_level
  GradedMap H;      // delta H = gamma
};

struct LadderDiagram {
  int top = 0, bottom = 0;
  std::vector<LadderRung> rungs;  // levels top, top-1, ..., bottom+1
  GradedMap bottom_gamma;         // X -> T_bottom
  int corrections = 0;            // rungs whose H had to be corrected
};

// Some H with delta H = gamma, with the kernel of choices, or the source
// degree and homology class that obstruct it.
struct RungSolve {
  std::optional<GradedMap> H;
  std::vector<GradedMap> choices;  // basis of {alpha : delta alpha = 0}
  std::string obstruction;
};
RungSolve solve_rung(const ChainComplexQ& T, int level, const GradedDims& X, const GradedMap& gamma);

// gamma_{i-1} = boundary o H_i. Throws LadderError if delta H_i != gamma_i or
// gamma_i is not a boundary-cycle.
GradedMap ladder_descend(const ChainComplexQ& T, int level, const GradedMap& gamma, const GradedMap& H);

struct LadderCorrection {
  bool ok = false;
  GradedMap H;             // corrected H_i (equal to the input when no change was needed)
  bool changed = false;
  std::string refusal;     // names the obstructing source generator and class
};
// Finds alpha with delta alpha = 0 so that boundary o (H + alpha) is
// delta-exact, i.e. the next rung can be solved.
LadderCorrection ladder_correct(const ChainComplexQ& T, int level, const GradedMap& H);

struct LadderResult {
  std::optional<LadderDiagram> ladder;
  std::string refusal;
};
// Ladder from gamma_top down to level bottom, correcting rungs as needed.
LadderResult build_ladder(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top, int top,
                          int bottom = 0);

// Class coordinates of internal cycles of T_level in one degree.
class InternalHomology {
 public:
  InternalHomology(const ChainComplexQ& T, int level, int degree);
  int dim() const;
  std::optional<SparseVec> coordinates(const SparseVec& z) const;
  const std::vector<SparseVec>& representatives() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Flattened class space of maps X -> H(T_level) with a given shift:
// slot (source degree d, column c, class index m).
struct ClassSpace {
  std::vector<std::tuple<int, int, int>> slots;
  std::map<std::tuple<int, int, int>, int> index;
  int size() const { return static_cast<int>(slots.size()); }
};
ClassSpace class_space(const ChainComplexQ& T, int level, const GradedDims& X, int shift);
// Coordinates of a cycle-valued map in the class space; nothing if some
// column is not an internal cycle.
std::optional<SparseVec> class_coordinates(const ChainComplexQ& T, int level, const GradedDims& X,
                                           const GradedMap& f, const ClassSpace& space);

struct TodaBracketValue {
  bool defined = false;
  std::string reason;
  int top = 0, bottom = 0;
  ClassSpace space;                     // H(T_bottom)-valued maps on X
  SparseVec value;                      // one value, from the sequential ladder
  std::vector<SparseVec> indeterminacy; // basis of achievable differences
  std::optional<LadderDiagram> ladder;

  // Whether another value lies in the same coset.
  bool contains(const SparseVec& other) const;
};

// Global solve of the whole staircase delta H_top = gamma_top,
// delta H_{i-1} = boundary H_i at once. Returns the set of achievable
// bottom values as (particular value, indeterminacy basis), or nothing.
struct StaircaseSolution {
  GradedMap bottom;  // a chain-level gamma_bottom from one particular solution
  SparseVec value;
  std::vector<SparseVec> indeterminacy;
};
std::optional<StaircaseSolution> staircase_solve(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top,
                                                 int top, int bottom, const ClassSpace& space);

TodaBracketValue toda_bracket(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top, int top,
                              int bottom = 0);

}  // namespace aqtoda
