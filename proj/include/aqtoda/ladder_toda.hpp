#pragma once

// Minimal values, the correspondence homomorphism, and the two
// correspondence checks, plus seeded test towers and a brute-force oracle for
// long Toda brackets.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aqtoda/aq_cohomology.hpp"
#include "aqtoda/chain_model.hpp"
#include "aqtoda/flag_complex.hpp"

namespace aqtoda {

// gamma_0 : Sigma^n Gbar_{n+2} -> span Gbar_0 (block d lands in degree d+n),
// post-composed with the augmentation into Lambda_{d+n} = (Omega^n Lambda)_d.
AQClass correspondence(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n, const GradedMap& gamma0);
// Same, for a map whose columns are Hall coordinates of the free algebra on
// the presentation's generators.
AQClass correspondence_hall(const PresentedLieAlgebra& lambda, int n, const GradedMap& gamma0);

// A minimal value: only the basic atomic simplices tau_k and their faces
// d_0 tau_k carry data. tau_k carries H_k, d_0 tau_k carries gamma_{k-1};
// every other simplex of the flag complexes on (0 < ... < k-1) is zero.
struct MinimalValue {
  int top = 0, bottom = 0;
  std::map<FaceWord, GradedMap> data;
  long pinned = 0;  // simplices forced to zero

  const GradedMap& H(int k) const { return data.at(basic_atomic(k)); }
  const GradedMap& gamma(int k) const { return data.at(basic_atomic(k + 1).face(0)); }
};

MinimalValue minimal_value(const LadderDiagram& L);
// Recovers the ladder; inverse to minimal_value.
LadderDiagram ladder_from_minimal_value(const MinimalValue& v);
// The carriers exist with the right faces, and the ladder equations hold.
bool check_minimal_value(const ChainComplexQ& T, const MinimalValue& v, std::string* why = nullptr);

struct ExistenceReport {
  int n = 0;
  BetaResult beta;                      // obstruction from the global solve
  std::optional<LadderDiagram> ladder;  // sequential ladder
  std::optional<MinimalValue> minimal;
  std::optional<AQClass> image;         // correspondence of the minimal value
  std::optional<AQClass> witness_beta, witness_image;
  bool round_trip = false;              // ladder -> minimal value -> ladder
  bool classes_equal = false;
  bool pass = false;
  std::string detail;
};
// Needs X through level n+2; the candidate attaching values are X's own.
ExistenceReport verify_existence_correspondence(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n);

struct DifferenceReport {
  DifferenceResult direct;  // coordinates in pi_{n+1} of the skeleton
  AQClass shifted;          // the same difference solved inside the shifted object
  bool equal = false;
  bool pass = false;
  std::string detail;
};
DifferenceReport verify_difference_correspondence(const TruncatedCWObject& X, int n,
                                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_a,
                                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_b);

// Incremental construction of a tower from basis vectors and edges.
class TowerBuilder {
 public:
  TowerBuilder(int top, int max_degree) : top_(top), max_degree_(max_degree) {}
  int add(int level, int degree);
  void internal(int from, int to, const Rational& c = 1);  // delta from += c to
  void boundary(int from, int to, const Rational& c = 1);
  int level(int v) const { return vecs_[v].level; }
  int degree(int v) const { return vecs_[v].degree; }
  int local(int v) const { return vecs_[v].local; }
  int size() const { return static_cast<int>(vecs_.size()); }
  ChainComplexQ build() const;

 private:
  struct Vec {
    int level, degree, local;
  };
  int top_, max_degree_;
  std::vector<Vec> vecs_;
  std::vector<std::tuple<int, int, Rational>> internal_, boundary_;
};

// Invertible matrices per (level, degree) with their inverses.
struct BasisChange {
  std::map<std::pair<int, int>, Matrix> P, inverse;
};
BasisChange random_basis_change(const ChainComplexQ& T, std::mt19937& rng);
ChainComplexQ change_basis(const ChainComplexQ& T, const BasisChange& B);
GradedMap change_basis(const BasisChange& B, int level, const GradedMap& f);

struct TodaInstance {
  unsigned seed = 0;
  std::string shape;  // which pieces the generator used
  GradedDims X;
  int top = 0;
  // The tower in the basis it was built in, and in a random basis.
  ChainComplexQ native_T, T;
  GradedMap native_gamma, gamma;
  BasisChange change;  // native -> random
};
// Random zigzag towers of total dimension <= 12.
TodaInstance seeded_toda_instance(unsigned seed);

struct TodaEnumeration {
  std::vector<SparseVec> values;  // distinct class coordinates reached
  std::vector<GradedMap> bottoms; // a chain-level gamma_bottom for each value
  long long branches = 0;         // choice sequences that reached the bottom
  long long dead = 0;             // sequences stopped by an unsolvable rung
  bool truncated = false;         // hit the branch limit
};
// Tries every choice H + sum c_i k_i with c_i in {-1, 0, 1} on every rung.
TodaEnumeration enumerate_toda(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top, int top,
                               int bottom, const ClassSpace& space, long long limit = 2000000);

struct OracleComparison {
  bool sound = false;     // every enumerated value lies in the solver's coset
  bool complete = false;  // differences span the solver's indeterminacy
  std::string detail;
};
// `values` are enumerated values in the solver's class coordinates.
OracleComparison compare_with_enumeration(const TodaBracketValue& v, const std::vector<SparseVec>& values);

struct TodaCheck {
  TodaBracketValue solver;     // on the tower in the random basis
  TodaEnumeration enumeration; // on the tower in its construction basis
  OracleComparison comparison;
};
// Solves in the random basis, enumerates in the construction basis (where
// the choice directions are basis vectors, so the grid covers them), and
// compares after moving the enumerated values across.
TodaCheck check_toda_instance(const TodaInstance& inst);

}  // namespace aqtoda
