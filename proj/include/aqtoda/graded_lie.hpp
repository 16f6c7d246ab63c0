#pragma once

// Connected graded Lie algebras over Q, truncated at a degree cutoff D.
//
// A free algebra is realized inside its tensor algebra. Commutators are graded,
// [a,b] = ab - (-1)^{|a||b|} ba, and the basis is the super-Lyndon basis:
// standard bracketings of Lyndon words in the letters ordered by (degree,
// name), together with the squares [u,u] of odd-degree Lyndon elements. Each
// basis element has a distinct lexicographically least word in its
// expansion, which makes reduction to basis coordinates triangular.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "aqtoda/linalg.hpp"

namespace aqtoda {

struct GradedGenerator {
  std::string name;
  int degree = 1;
  bool operator==(const GradedGenerator&) const = default;
};

struct CutoffError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Word = std::u16string;

class FreeLieAlgebra {
 public:
  enum class Kind { Letter, Bracket, Square };
  struct BasisElement {
    Kind kind = Kind::Letter;
    int degree = 0;
    int letter = -1;           // Letter
    int left = -1, right = -1; // Bracket: [left, right]; Square: [left, left]
    Word lead;                 // least word of the expansion
    Rational lead_coef;        // 1, or 2 for squares
    SparseVec expansion;       // over word ids
  };

  FreeLieAlgebra(std::vector<GradedGenerator> generators, int cutoff);

  int cutoff() const { return cutoff_; }
  // Letters sorted by (degree, name).
  const std::vector<GradedGenerator>& letters() const { return letters_; }
  int letter_index(const std::string& name) const;
  bool has_letter(const std::string& name) const { return letter_ids_.count(name) > 0; }

  int basis_size() const { return static_cast<int>(basis_.size()); }
  const BasisElement& basis(int b) const { return basis_[b]; }
  // Basis indices of degree d occupy [degree_begin(d), degree_end(d)).
  int degree_begin(int d) const;
  int degree_end(int d) const;
  int dim(int d) const { return degree_end(d) - degree_begin(d); }
  // Basis index of a single letter, or -1 when its degree exceeds the cutoff.
  int letter_basis(int letter) const { return letter_basis_[letter]; }
  std::string basis_string(int b) const;

  // Tensor algebra support.
  int word_id(const Word& w) const;
  const Word& word(int id) const { return words_[id]; }
  int word_count() const { return static_cast<int>(words_.size()); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  SparseVec commutator(const SparseVec& a, int deg_a, const SparseVec& b, int deg_b) const;
  // Hall coordinates -> tensor; tensor (must be a Lie element) -> Hall coordinates.
  SparseVec expand(const SparseVec& coords) const;
  SparseVec reduce(SparseVec tensor) const;

 private:
  int cutoff_;
  std::vector<GradedGenerator> letters_;
  std::unordered_map<std::string, int> letter_ids_;
  std::vector<int> letter_basis_;
  std::vector<Word> words_;  // sorted by (weight, lex)
  std::unordered_map<Word, int> word_ids_;
  std::vector<int> word_weight_;
  std::vector<BasisElement> basis_;
  std::vector<int> degree_offsets_;  // size cutoff + 2
  std::vector<int> lead_to_basis_;   // by word id, -1 if not a leading word

  int weight(const Word& w) const;
};

using FreeLiePtr = std::shared_ptr<const FreeLieAlgebra>;

// Per-degree basis dimensions of the free algebra on `gens` through degree D.
std::vector<int> hall_basis_dims(const std::vector<GradedGenerator>& gens, int D);
// Dimension of the span of left-normed graded commutators of generators in
// degree d, computed in a separate word model.
int lie_dim_oracle(const std::vector<GradedGenerator>& gens, int d);

class LiePolynomial {
 public:
  LiePolynomial() = default;
  LiePolynomial(FreeLiePtr alg, SparseVec coords = {}) : alg_(std::move(alg)), coords_(std::move(coords)) {}
  static LiePolynomial letter(FreeLiePtr alg, const std::string& name);

  const FreeLiePtr& algebra() const { return alg_; }
  const SparseVec& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  // Common degree of all terms; 0 for the zero polynomial, -1 if mixed.
  int degree() const;
  bool is_homogeneous() const { return degree() >= 0; }
  SparseVec tensor() const { return alg_->expand(coords_); }

  LiePolynomial operator+(const LiePolynomial& o) const;
  LiePolynomial operator-(const LiePolynomial& o) const;
  LiePolynomial operator*(const Rational& c) const;
  LiePolynomial operator-() const { return *this * Rational(-1); }
  bool operator==(const LiePolynomial& o) const { return coords_ == o.coords_; }
  bool operator!=(const LiePolynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FreeLiePtr alg_;
  SparseVec coords_;
};

LiePolynomial bracket(const LiePolynomial& p, const LiePolynomial& q);
// Hall-basis coordinates (the representation is already normal).
inline const SparseVec& normal_form(const LiePolynomial& p) { return p.coords(); }

// Parses the Lie expression grammar
//   expr := ["-"] term (("+"|"-") term)* | "0"
//   term := rational "*" atom | atom
//   atom := ident | "[" expr "," expr "]"
// Identifiers must be letters of `alg`.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int column)
      : std::runtime_error(msg + " at column " + std::to_string(column)), column(column) {}
  int column;
};
LiePolynomial parse_lie(const FreeLiePtr& alg, const std::string& text);

// Graded Lie homomorphism between free algebras, given on letters.
// Images of letters above the target cutoff are ignored.
class LieHomomorphism {
 public:
  LieHomomorphism(FreeLiePtr src, FreeLiePtr dst, std::vector<SparseVec> letter_images_tensor);
  // Hall coordinates (in dst) of the image of basis element b of src.
  const SparseVec& image_of_basis(int b);
  const SparseVec& tensor_image_of_basis(int b);
  Matrix matrix(int d);
  LiePolynomial apply(const LiePolynomial& p);

 private:
  FreeLiePtr src_, dst_;
  std::vector<SparseVec> letter_images_;
  std::vector<bool> have_tensor_, have_coords_;
  std::vector<SparseVec> tensor_, coords_;
};

class PresentedLieAlgebra {
 public:
  PresentedLieAlgebra(std::vector<GradedGenerator> generators, std::vector<std::string> relations, int cutoff);

  const FreeLiePtr& free_algebra() const { return free_; }
  const std::vector<GradedGenerator>& generators() const { return free_->letters(); }
  const std::vector<LiePolynomial>& relations() const { return relations_; }
  const std::vector<std::string>& relation_text() const { return relation_text_; }
  int cutoff() const { return free_->cutoff(); }

  int dim(int d) const;
  // Hall indices (global) of the basis elements spanning the complement.
  const std::vector<int>& quotient_basis(int d) const { return degrees_.at(d).complement; }
  const std::vector<SparseVec>& ideal_basis(int d) const { return degrees_.at(d).ideal; }
  // Coordinates in the quotient basis of degree d (local indices).
  SparseVec project(int d, const SparseVec& hall_coords) const;
  Matrix projection_matrix(int d) const;

 private:
  struct DegreeData {
    std::vector<SparseVec> ideal;
    Echelon echelon{false};
    std::vector<int> complement;
    std::unordered_map<int, int> local;  // global Hall index -> quotient coordinate
  };
  FreeLiePtr free_;
  std::vector<LiePolynomial> relations_;
  std::vector<std::string> relation_text_;
  std::map<int, DegreeData> degrees_;
};

// A graded vector space given by dimensions, used as a trivial coefficient module.
struct CoefficientSpace {
  std::string label;
  std::map<int, int> dims;  // degree -> dimension (missing = 0)
  int valid_through = 0;    // dimensions are exact up to this degree
  int dim(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
};

// (Omega^m Lambda)_d = Lambda_{d+m}, for 1 <= d <= D - m.
CoefficientSpace loop_module(const PresentedLieAlgebra& lambda, int m);

}  // namespace aqtoda
