#pragma once

// Andre-Quillen cochains of a CW resolution.
//
// With a CW basis the normalized abelianized chains in dimension n are spanned
// by the basis generators of level n, with differential linearize o d_0. The
// coefficient module is a graded vector space with trivial action, so
// C^n_d = Hom(span Gbar_{n,d}, K_d) and delta^{n-1} is precomposition with that
// differential. Only H^n for n >= 2 is exposed.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aqtoda/chain_model.hpp"
#include "aqtoda/graded_lie.hpp"
#include "aqtoda/simplicial_cw.hpp"

namespace aqtoda {

// Basis positions of level-n generators of internal degree d, in basis order.
std::vector<int> generators_in_degree(const TruncatedCWObject& X, int n, int d);
// linearize o d_0 on span Gbar_{n,d} -> span Gbar_{n-1,d}, in local (per-degree) indices.
Matrix normalized_boundary(const TruncatedCWObject& X, int n, int d);
// Local coordinates in degree d of linearize(coords) at level n.
SparseVec local_linearization(const TruncatedCWObject& X, int n, int d, const SparseVec& coords);

// A cochain in dimension n: values[d] has rows K_d and columns Gbar_{n,d}.
struct AQClass {
  int n = 0;
  std::string coefficients;
  std::map<int, Matrix> values;

  bool is_zero() const;
  AQClass operator+(const AQClass& o) const;
  AQClass operator-(const AQClass& o) const;
  bool operator==(const AQClass& o) const;
};

struct CoboundaryResult {
  bool is_coboundary = false;
  std::optional<AQClass> witness;  // psi with delta psi = c
  // On refusal: the first degree where rank [delta | c] exceeds rank delta.
  int degree = 0;
  int rank_delta = 0;
  int rank_augmented = 0;
};

class AQCochainComplex {
 public:
  AQCochainComplex(TruncatedCWObject X, CoefficientSpace K);

  const TruncatedCWObject& resolution() const { return X_; }
  const CoefficientSpace& coefficients() const { return K_; }
  int top() const { return X_.top(); }
  int cutoff() const { return X_.cutoff(); }

  int generators(int n, int d) const;
  int cochain_dim(int n, int d) const { return K_.dim(d) * generators(n, d); }
  // delta^n : C^n_d -> C^{n+1}_d on vectorized cochains (column-major:
  // generator-major, coefficient index fastest). 0 <= n < top.
  const Matrix& coboundary(int n, int d) const;
  bool check_dd() const;

  // dim ker delta^n - rank delta^{n-1}; needs 2 <= n <= top-1.
  int cohomology_dim(int n, int d) const;

  AQClass zero(int n) const;
  AQClass apply(const AQClass& c) const;  // delta c, needs c.n < top
  // Nothing if the cocycle condition cannot be tested (c.n == top).
  std::optional<bool> is_cocycle(const AQClass& c) const;
  CoboundaryResult is_coboundary(const AQClass& c) const;
  bool same_class(const AQClass& a, const AQClass& b) const { return is_coboundary(a - b).is_coboundary; }

  SparseVec vectorize(const AQClass& c, int d) const;
  Matrix unvectorize(int n, int d, const SparseVec& v) const;

 private:
  TruncatedCWObject X_;
  CoefficientSpace K_;
  std::map<std::pair<int, int>, Matrix> boundaries_;  // (n, d) -> normalized boundary
  std::map<std::pair<int, int>, Matrix> coboundaries_;
};

AQCochainComplex build_aq_complex(const TruncatedCWObject& res, const CoefficientSpace& K);

// The coefficient space span Gbar_n (dims per degree), used by the k-invariant.
CoefficientSpace chain_coefficients(const TruncatedCWObject& X, int n);

// x in Gbar_{n+2} |-> linearize(d_0 d_0 x) in span Gbar_n, a cochain in C^{n+2}.
// Zero exactly when the attaching values of level n+2 are cycles up to
// nonlinear terms. Throws if an attaching value is not a Moore chain.
AQClass k_invariant_cocycle(const TruncatedCWObject& X, int n);

struct BandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Homotopy of the truncation in the band 1..n, through the cutoff; throws
// BandError listing the nonzero pi_k otherwise.
void require_resolution_band(const TruncatedCWObject& trunc, int n);

// The abelianized Moore complex: span Gbar_k in dimension k, boundary
// linearize o d_0, zero internal differential.
ChainComplexQ abelianized_moore(const TruncatedCWObject& X);
// epsilon on span Gbar_0 in degree d: a generator goes to its class in Lambda_d.
Matrix augmentation(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int d);

struct BetaResult {
  int n = 0;
  GradedDims source;       // Gbar_{n+2} dims per degree
  GradedMap gamma;         // linearize(d_0 attach) : source -> Moore complex level n
  std::string refusal;     // why gamma does not descend to level 0
  // gamma_0 from a global solve of the whole staircase below gamma.
  std::optional<GradedMap> gamma0;
  std::optional<AQClass> cocycle;  // epsilon o gamma_0 in C^{n+2}(Lambda; Omega^n Lambda)
  std::optional<AQClass> witness;  // psi with delta psi = cocycle
  bool vanishes = false;
};

// Obstruction to extending trunc (levels 0..n+1, a resolution band) by the
// candidate attaching values for Gbar_{n+2}.
BetaResult beta_obstruction(const PresentedLieAlgebra& lambda, const TruncatedCWObject& trunc, int n,
                            const std::vector<TruncatedCWObject::NewGenerator>& attach);
// Same, with the attaching values that X already has on level n+2.
BetaResult beta_obstruction(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n);

struct DifferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DifferenceResult {
  int n = 0;
  CoefficientSpace coefficients;       // pi_{n+1} of the (n+1)-skeleton, per degree
  AQClass cochain;                     // class coordinates of attach_a - attach_b
  std::vector<LiePolynomial> difference;  // attach_a - attach_b per generator
  bool zero = false;
  // When zero: e_x in the Moore chains of the degenerate level n+2 with
  // d_0 e_x = attach_a(x) - attach_b(x), and the check that x |-> x + e_x is
  // a map of simplicial objects from the a-extension to the b-extension.
  std::vector<LiePolynomial> witnesses;
  bool equivalence_verified = false;
};

// Compare two cycle-valued attaching maps for the same generators of level
// n+2 over X truncated to levels 0..n+1.
DifferenceResult delta_difference(const TruncatedCWObject& X, int n,
                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_a,
                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_b);

// Re-express a Lie polynomial in another algebra by letter names.
LiePolynomial transfer(const LiePolynomial& p, const FreeLiePtr& target);

// Adds a contractible pair: g at level n (attach 0) and g' at level n+1
// (attach g), in internal degree d. Higher levels are carried over by name.
TruncatedCWObject pad_resolution(const TruncatedCWObject& X, int n, int d, const std::string& name = "pad");

}  // namespace aqtoda
