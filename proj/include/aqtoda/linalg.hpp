#pragma once

// Exact sparse linear algebra over Q.
//
// Vectors are sorted (index, value) lists with no stored zeros. Everything
// here is deterministic: pivots are always the smallest live index, and
// vectors are processed in the order they are supplied.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aqtoda {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

class SparseVec {
 public:
  using Entry = std::pair<int, Rational>;

  SparseVec() = default;
  static SparseVec unit(int i, const Rational& c = 1);
  static SparseVec from_dense(const std::vector<Rational>& dense);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational get(int i) const;
  int leading_index() const { return entries_.front().first; }
  const Rational& leading_value() const { return entries_.front().second; }

  // Appends an entry; the index must exceed every stored index.
  void push_back(int i, const Rational& c);
  // Adds c to entry i, keeping order.
  void add(int i, const Rational& c);
  // this += c * other
  void add_scaled(const SparseVec& other, const Rational& c);
  void scale(const Rational& c);

  SparseVec operator+(const SparseVec& o) const;
  SparseVec operator-(const SparseVec& o) const;
  SparseVec operator*(const Rational& c) const;
  SparseVec operator-() const { return *this * Rational(-1); }
  bool operator==(const SparseVec& o) const { return entries_ == o.entries_; }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }

  std::vector<Rational> to_dense(int dim) const;

 private:
  std::vector<Entry> entries_;
};

// A matrix stored by columns. Column j is the image of the j-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}
  static Matrix identity(int n);
  static Matrix from_dense(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec& column(int j) const { return columns_[j]; }
  SparseVec& column(int j) { return columns_[j]; }
  const std::vector<SparseVec>& columns() const { return columns_; }
  Rational at(int i, int j) const { return columns_[j].get(i); }
  void set_column(int j, SparseVec v) { columns_[j] = std::move(v); }
  // Appends a column; grows the column count.
  void append_column(SparseVec v);

  SparseVec apply(const SparseVec& x) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  // Restricts the domain to the span of the given vectors.
  Matrix restrict_to(const std::vector<SparseVec>& basis) const;

  std::vector<std::vector<Rational>> to_dense() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> columns_;
};

// Incremental echelon form. Each stored row remembers how it was assembled
// from the vectors handed to insert(), so reductions can report the
// combination of inputs that produced them.
class Echelon {
 public:
  struct Reduction {
    SparseVec residue;      // what is left after elimination
    SparseVec combination;  // input = residue + sum combination[k] * input_k
  };

  explicit Echelon(bool track = true) : track_(track) {}

  // Inserts v as input number inputs(); returns true if it increased the rank.
  // On a dependency, *relation (if given) receives coefficients c with
  // v = sum c[k] * input_k.
  bool insert(const SparseVec& v, SparseVec* relation = nullptr);

  Reduction reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).residue.empty(); }
  // Coefficients over the inputs expressing v, if v lies in their span.
  std::optional<SparseVec> express(const SparseVec& v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int inputs() const { return inputs_; }
  std::vector<int> pivots() const;
  bool is_pivot(int i) const;

 private:
  struct Row {
    SparseVec vec;    // leading entry 1
    SparseVec combo;  // vec = sum combo[k] * input_k
  };
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // indexed by coordinate, -1 if no pivot
  bool track_;
  int inputs_ = 0;

  int row_for(int pivot) const;
};

int rank(const Matrix& m);
int rank(const std::vector<SparseVec>& vectors);
// Basis of {x : m x = 0}, in the order produced by column elimination.
std::vector<SparseVec> kernel(const Matrix& m);
// Some x with m x = b, or nothing if b is outside the image.
std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b);
// Linearly independent subset selection: indices of vectors that are not in
// the span of `base` plus the earlier selected vectors.
std::vector<int> independent_over(const std::vector<SparseVec>& base,
                                  const std::vector<SparseVec>& candidates);
bool same_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b);

}  // namespace aqtoda
