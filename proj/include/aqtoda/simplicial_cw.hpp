#pragma once

// Truncated simplicial graded Lie algebras given by CW bases.
//
// Level n is the free Lie algebra G_n on the letters (sigma, g), where g is a
// basis generator of some level k <= n and sigma : [n] -> [k] is a monotone
// surjection, stored as its value sequence. The letter with sigma = id is the
// basis generator itself; the others are its degeneracies, named s_J_g with
// J the repeated positions listed in decreasing order (e.g. s1s0_x).
//
// Faces are determined by d_0 g = attach(g) and d_i g = 0 (i >= 1) on basis
// generators; on a letter (sigma, g) the face d_i is sigma o delta_i, factored
// as an epimorphism followed by (at most) one coface.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "aqtoda/graded_lie.hpp"

namespace aqtoda {

struct CWGenerator {
  std::string name;
  int degree = 1;
  int level = 0;
  LiePolynomial attach;  // in the level-1 algebra; empty on level 0
};

struct LevelLetter {
  std::vector<int> op;  // surjection [n] -> [level], values
  int level = 0;        // level of the underlying basis generator
  int index = 0;        // position in that level's basis
};

struct CWExtendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string letter_name(const std::vector<int>& op, const std::string& generator);
// Surjections [n] -> [k] for 0 <= k <= n, as (k, repeated positions J decreasing).
std::vector<std::pair<int, std::vector<int>>> latching_index_set(int n);

class CWLevel {
 public:
  CWLevel(int n, int cutoff, std::shared_ptr<const CWLevel> below, std::vector<CWGenerator> basis);

  int n() const { return n_; }
  int cutoff() const { return cutoff_; }
  const std::shared_ptr<const CWLevel>& below() const { return below_; }
  const CWLevel& at(int k) const;  // this level or one below it
  const std::vector<CWGenerator>& basis() const { return basis_; }
  const FreeLiePtr& algebra() const { return alg_; }
  const std::vector<LevelLetter>& letters() const { return letters_; }
  const CWGenerator& generator_of(const LevelLetter& l) const { return at(l.level).basis()[l.index]; }

  // Matrix of d_i on degree d (columns: local basis indices of degree d,
  // rows: global Hall indices of level n-1).
  const Matrix& face_matrix(int i, int d) const;
  // d_i on arbitrary Hall coordinates of this level.
  SparseVec face(int i, const SparseVec& coords) const;
  // Image of Hall coordinates of level k under the degeneracy operator
  // sigma : [n] -> [k] (sigma given by values).
  SparseVec degenerate_from(int k, const std::vector<int>& sigma, const SparseVec& coords) const;
  // Letter index (in this level) of the letter (sigma, generator of level k, index).
  int letter_for(const std::vector<int>& sigma, int k, int index) const;

 private:
  int n_, cutoff_;
  std::shared_ptr<const CWLevel> below_;
  std::vector<CWGenerator> basis_;
  FreeLiePtr alg_;
  std::vector<LevelLetter> letters_;
  std::map<std::pair<int, std::vector<int>>, int> letter_lookup_;  // (k*65536+index, op) -> letter

  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<LieHomomorphism>> face_homs_;
  mutable std::map<std::pair<int, int>, Matrix> face_cache_;

  LieHomomorphism& face_hom(int i) const;
};

class TruncatedCWObject {
 public:
  struct NewGenerator {
    std::string name;
    int degree = 1;
    LiePolynomial attach;  // over the current top algebra
  };

  // Level 0 only: the free algebra on the given generators, degenerate levels above.
  static TruncatedCWObject base(std::vector<GradedGenerator> generators, int cutoff);
  // New top level with the given basis. Attaching values must be homogeneous
  // of the generator's degree and lie in the Moore chains of the current top.
  TruncatedCWObject extend(std::vector<NewGenerator> generators) const;
  // Same, with attaching values written in the Lie grammar.
  TruncatedCWObject extend_parsed(const std::vector<std::tuple<std::string, int, std::string>>& generators) const;
  // The object truncated to levels 0..n.
  TruncatedCWObject truncate(int n) const;

  int top() const { return top_->n(); }
  int cutoff() const { return top_->cutoff(); }
  const CWLevel& level(int n) const { return top_->at(n); }
  std::vector<const CWGenerator*> generators() const;

  // Attaching values lie in Moore cycles (not just chains) on every level.
  bool attachments_are_cycles() const;

 private:
  explicit TruncatedCWObject(std::shared_ptr<const CWLevel> top) : top_(std::move(top)) {}
  std::shared_ptr<const CWLevel> top_;
};

// Degeneracy s_j on Hall coordinates of level n (level n+1 must exist).
SparseVec degeneracy(const TruncatedCWObject& X, int n, int j, const SparseVec& coords);

struct IdentityReport {
  bool ok = true;
  long checked = 0;
  std::vector<std::string> violations;
};
IdentityReport check_simplicial_identities(const TruncatedCWObject& X);

struct MooreDegree {
  int dim = 0;                        // dim of (G_n)_d
  std::vector<SparseVec> chains;      // basis of (C_n)_d, Hall coordinates
  std::vector<SparseVec> cycles;      // basis of (Z_n)_d
  std::vector<SparseVec> boundaries;  // d_0 of each chain, Hall coordinates of level n-1
};
MooreDegree moore_degree(const TruncatedCWObject& X, int n, int d);

struct MooreData {
  int n = 0;
  std::map<int, MooreDegree> degrees;
};
MooreData moore_data(const TruncatedCWObject& X, int n);

// pi_n = Z_n / d_0(C_{n+1}) in one degree, with a representative basis.
class HomotopyDegree {
 public:
  HomotopyDegree(std::vector<SparseVec> cycles, std::vector<SparseVec> boundaries, bool reverse_pivots = false);
  int dim() const { return static_cast<int>(reps_.size()); }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  const std::vector<SparseVec>& boundaries() const { return boundaries_; }
  // Coordinates of the class of a cycle on the representatives, or nothing
  // when z is not a cycle.
  std::optional<SparseVec> coordinates(const SparseVec& z) const;
  // A chain-level witness: coefficients on the boundary list with
  // z - sum(coords*reps) = sum(w * boundaries).
  std::optional<SparseVec> boundary_witness(const SparseVec& z) const;

 private:
  std::vector<SparseVec> boundaries_;
  std::vector<SparseVec> reps_;
  Echelon echelon_;  // inputs: boundaries, then candidate cycles
  std::map<int, int> rep_inputs_;  // echelon input id -> representative index
  int independent_boundaries_ = 0;
};

// Homotopy in degree d of level n < top.
HomotopyDegree homotopy_degree(const TruncatedCWObject& X, int n, int d, bool reverse_pivots = false);

struct ResolveOptions {
  bool reverse_pivots = false;  // choose representatives from the end of each cycle basis
  unsigned mix_seed = 0;        // nonzero: perturb representatives by a seeded triangular mix
};

struct ResolveReport {
  std::vector<std::string> warnings;
};

TruncatedCWObject resolve(const PresentedLieAlgebra& lambda, int N, const ResolveOptions& options = {},
                          ResolveReport* report = nullptr);

// Coefficients of p on the basis generators of level n (the normalized,
// abelianized chain); brackets and degenerate letters are dropped.
SparseVec linearize(const TruncatedCWObject& X, int n, const SparseVec& coords);

struct ResolutionCheck {
  bool pi0_matches = true;               // coker d_0 = Lambda degreewise, image = ideal
  std::map<int, std::map<int, int>> pi;  // level -> degree -> dim pi
  bool vanishing = true;                 // pi_k = 0 for 1 <= k <= top-1
};
ResolutionCheck check_resolution(const TruncatedCWObject& X, const PresentedLieAlgebra& lambda);

}  // namespace aqtoda
