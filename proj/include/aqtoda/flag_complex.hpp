#pragma once

// Face-operator words, flags and flag complexes.
//
// A composite of face maps d_{a_1} d_{a_2} ... d_{a_r} is written as the index
// sequence (a_1, ..., a_r). Using d_i d_j = d_{j-1} d_i (i < j) every composite
// has a unique strictly increasing form.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace aqtoda {

std::vector<int> normalize_face_word(std::vector<int> word);

struct Flag {
  int ambient = 0;           // n: the flag indexes faces out of level n+2
  std::vector<int> indices;  // 0 <= i_1 < ... < i_k <= n+1

  int length() const { return static_cast<int>(indices.size()); }
  // Throws std::invalid_argument unless the invariants hold (k = 0 allowed).
  void validate() const;
  std::string to_string() const;
  bool operator==(const Flag&) const = default;
};

class FaceWord {
 public:
  FaceWord() = default;
  // Blocks are normalized on construction.
  explicit FaceWord(std::vector<std::vector<int>> blocks);
  static FaceWord parse(const std::string& text);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int bars() const { return static_cast<int>(blocks_.size()) - 1; }
  int dim() const { return bars() - 1; }
  bool is_degenerate() const;
  bool is_decomposable() const { return !blocks_.front().empty(); }
  // Normalized composite of all blocks with the bars erased.
  std::vector<int> composite() const;

  FaceWord face(int i) const;
  FaceWord degeneracy(int i) const;
  // d_{prefix} composed in front: the prefix joins block 0.
  FaceWord prefixed(const std::vector<int>& prefix) const;

  std::string to_string() const;
  bool operator==(const FaceWord& o) const { return blocks_ == o.blocks_; }
  bool operator<(const FaceWord& o) const { return blocks_ < o.blocks_; }

 private:
  std::vector<std::vector<int>> blocks_{{}, {}};
};

FaceWord cone_point(const Flag& phi);
FaceWord basic_atomic(int k);

class FlagComplex;

// A face-closed set of simplices of a flag complex, by simplex id.
struct SubComplex {
  const FlagComplex* owner = nullptr;
  std::vector<std::vector<int>> simplices;  // per dimension, sorted ids

  int top_dim() const;
  std::vector<int> f_vector() const;
  long euler() const;
  bool contains(int dim, int id) const;
};

class FlagComplex {
 public:
  explicit FlagComplex(const Flag& phi);

  const Flag& flag() const { return flag_; }
  int dim() const { return flag_.length(); }
  const std::vector<FaceWord>& simplices(int dim) const { return simplices_[dim]; }
  int count(int dim) const { return static_cast<int>(simplices_[dim].size()); }
  std::vector<int> f_vector() const;
  long euler() const;
  // id of the i-th face of simplex (dim, id) in dimension dim-1.
  int face(int dim, int id, int i) const { return faces_[dim][id][i]; }
  std::optional<int> find(const FaceWord& w) const;
  const FaceWord& simplex(int dim, int id) const { return simplices_[dim][id]; }

  // Face table identities d_i d_j = d_{j-1} d_i (i < j) on every simplex.
  bool check_simplicial_identities() const;

  SubComplex whole() const;
  SubComplex base_complex() const;
  SubComplex top_complex() const;
  SubComplex polytope_boundary() const;
  // Closure under faces of the given (dim, id) simplices.
  SubComplex closure(const std::vector<std::pair<int, int>>& generators) const;
  // Simplices of dimension top_dim-1 of `c` lying in exactly one top simplex of
  // `c`, closed under faces.
  SubComplex free_boundary(const SubComplex& c) const;

 private:
  Flag flag_;
  std::vector<std::vector<FaceWord>> simplices_;
  std::vector<std::unordered_map<std::string, int>> index_;
  std::vector<std::vector<std::vector<int>>> faces_;
};

struct SphereReport {
  std::vector<int> f_vector;
  long euler = 0;
  bool pseudomanifold = false;
  bool connected = false;
  bool verdict = false;
};

SphereReport check_sphere(const SubComplex& c, int dim);

// Ranks of H_*(c, rel; Q). rel must be a subcomplex of c (rel may be empty).
std::vector<int> relative_homology_ranks(const SubComplex& c, const SubComplex& rel);

struct BaseDecomposition {
  struct Piece {
    int j = 0;                     // 1-based position of the removed index
    std::vector<int> prefix;       // the prefix face word
    Flag residual;                 // phi with i_j removed
    SubComplex simplices;          // as a subcomplex of the base
  };
  struct Overlap {
    int j = 0, l = 0;
    std::vector<int> prefix;       // normalized (c_l, c_j) = (c_j, c_l + 1)
    Flag residual;
    bool matches = false;          // computed intersection equals prefix o K
  };
  std::vector<Piece> pieces;
  std::vector<Overlap> overlaps;
  bool cover_matches = false;          // union of pieces equals the base
  bool interior_two_sided = false;     // interior (k-2)-simplices lie in two facets
};

BaseDecomposition base_decomposition(const FlagComplex& K);

std::vector<Flag> mapping_space(int n, int k);

}  // namespace aqtoda
