#include "aqtoda/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqtoda {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

SparseVec SparseVec::unit(int i, const Rational& c) {
  SparseVec v;
  if (c != 0) v.entries_.emplace_back(i, c);
  return v;
}

SparseVec SparseVec::from_dense(const std::vector<Rational>& dense) {
  SparseVec v;
  for (int i = 0; i < static_cast<int>(dense.size()); ++i)
    if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
  return v;
}

Rational SparseVec::get(int i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, int k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0;
}

void SparseVec::push_back(int i, const Rational& c) {
  if (!entries_.empty() && entries_.back().first >= i)
    throw std::logic_error("SparseVec::push_back out of order");
  if (c != 0) entries_.emplace_back(i, c);
}

void SparseVec::add(int i, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, int k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) {
    it->second += c;
    if (it->second == 0) entries_.erase(it);
  } else {
    entries_.insert(it, Entry(i, c));
  }
}

void SparseVec::add_scaled(const SparseVec& other, const Rational& c) {
  if (c == 0 || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVec::scale(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
  SparseVec r = *this;
  r.add_scaled(o, 1);
  return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const {
  SparseVec r = *this;
  r.add_scaled(o, -1);
  return r;
}

SparseVec SparseVec::operator*(const Rational& c) const {
  SparseVec r = *this;
  r.scale(c);
  return r;
}

std::vector<Rational> SparseVec::to_dense(int dim) const {
  std::vector<Rational> d(dim);
  for (const auto& [i, c] : entries_) {
    if (i >= dim) throw std::out_of_range("SparseVec::to_dense");
    d[i] = c;
  }
  return d;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) m.columns_[j] = SparseVec::unit(j);
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.columns_[j].push_back(i, rows[i][j]);
  return m;
}

void Matrix::append_column(SparseVec v) {
  columns_.push_back(std::move(v));
  ++cols_;
}

SparseVec Matrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, c] : x) {
    if (j >= cols_) throw std::out_of_range("Matrix::apply");
    out.add_scaled(columns_[j], c);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int j = 0; j < o.cols_; ++j) r.columns_[j] = apply(o.columns_[j]);
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix sum shape mismatch");
  Matrix r = *this;
  for (int j = 0; j < cols_; ++j) r.columns_[j].add_scaled(o.columns_[j], 1);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix difference shape mismatch");
  Matrix r = *this;
  for (int j = 0; j < cols_; ++j) r.columns_[j].add_scaled(o.columns_[j], -1);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, c] : columns_[j]) t.columns_[i].push_back(j, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& v) { return v.empty(); });
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && columns_ == o.columns_;
}

Matrix Matrix::restrict_to(const std::vector<SparseVec>& basis) const {
  Matrix r(rows_, static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) r.columns_[j] = apply(basis[j]);
  return r;
}

std::vector<std::vector<Rational>> Matrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, c] : columns_[j]) d[i][j] = c;
  return d;
}

int Echelon::row_for(int pivot) const {
  if (pivot < 0 || pivot >= static_cast<int>(pivot_row_.size())) return -1;
  return pivot_row_[pivot];
}

Echelon::Reduction Echelon::reduce(const SparseVec& v) const {
  Reduction red{v, {}};
  SparseVec& w = red.residue;
  std::size_t pos = 0;
  while (pos < w.size()) {
    const auto& entry = w.entries()[pos];
    int r = row_for(entry.first);
    if (r < 0) {
      ++pos;
      continue;
    }
    Rational coef = entry.second;
    // Row entries all sit at or after the pivot, so earlier positions are final.
    w.add_scaled(rows_[r].vec, -coef);
    if (track_) red.combination.add_scaled(rows_[r].combo, coef);
  }
  return red;
}

bool Echelon::insert(const SparseVec& v, SparseVec* relation) {
  int id = inputs_++;
  Reduction red = reduce(v);
  if (red.residue.empty()) {
    if (relation) *relation = std::move(red.combination);
    return false;
  }
  Row row;
  Rational inv = 1 / red.residue.leading_value();
  row.vec = std::move(red.residue);
  row.vec.scale(inv);
  if (track_) {
    // residue = v - sum combination_k input_k
    row.combo = SparseVec::unit(id) - red.combination;
    row.combo.scale(inv);
  }
  int p = row.vec.leading_index();
  if (p >= static_cast<int>(pivot_row_.size())) pivot_row_.resize(p + 1, -1);
  pivot_row_[p] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

std::optional<SparseVec> Echelon::express(const SparseVec& v) const {
  Reduction red = reduce(v);
  if (!red.residue.empty()) return std::nullopt;
  return red.combination;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> p;
  for (const auto& r : rows_) p.push_back(r.vec.leading_index());
  std::sort(p.begin(), p.end());
  return p;
}

bool Echelon::is_pivot(int i) const { return row_for(i) >= 0; }

int rank(const Matrix& m) { return rank(m.columns()); }

int rank(const std::vector<SparseVec>& vectors) {
  Echelon e(false);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SparseVec> kernel(const Matrix& m) {
  Echelon e(true);
  std::vector<SparseVec> ker;
  for (int j = 0; j < m.cols(); ++j) {
    SparseVec rel;
    if (!e.insert(m.column(j), &rel)) {
      // column_j = sum rel_k column_k  =>  e_j - rel is in the kernel
      SparseVec k = SparseVec::unit(j) - rel;
      ker.push_back(std::move(k));
    }
  }
  return ker;
}

std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
  Echelon e(true);
  for (int j = 0; j < m.cols(); ++j) e.insert(m.column(j));
  return e.express(b);
}

std::vector<int> independent_over(const std::vector<SparseVec>& base,
                                  const std::vector<SparseVec>& candidates) {
  Echelon e(false);
  for (const auto& v : base) e.insert(v);
  std::vector<int> picked;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
    if (e.insert(candidates[i])) picked.push_back(i);
  return picked;
}

bool same_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
  Echelon ea(false);
  for (const auto& v : a) ea.insert(v);
  for (const auto& v : b)
    if (!ea.contains(v)) return false;
  return rank(b) == ea.rank();
}

}  // namespace aqtoda
