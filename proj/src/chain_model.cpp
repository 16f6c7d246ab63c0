#include "aqtoda/chain_model.hpp"

#include <memory>
#include <stdexcept>

#include "aqtoda/simplicial_cw.hpp"

namespace aqtoda {

ChainComplexQ::ChainComplexQ(int top, int max_degree)
    : top_(top), max_degree_(max_degree), dims_(top + 1, std::vector<int>(max_degree + 1, 0)) {
  if (top < 0 || max_degree < 0) throw std::invalid_argument("negative complex range");
}

int ChainComplexQ::dim(int n, int d) const {
  if (n < 0 || n > top_ || d < 0 || d > max_degree_) return 0;
  return dims_[n][d];
}

void ChainComplexQ::set_dim(int n, int d, int k) {
  if (n < 0 || n > top_ || d < 0 || d > max_degree_) throw std::out_of_range("complex slot out of range");
  dims_[n][d] = k;
}

Matrix ChainComplexQ::boundary(int n, int d) const {
  auto it = boundary_.find({n, d});
  if (it != boundary_.end()) return it->second;
  return Matrix(dim(n - 1, d), dim(n, d));
}

Matrix ChainComplexQ::internal(int n, int d) const {
  auto it = internal_.find({n, d});
  if (it != internal_.end()) return it->second;
  return Matrix(dim(n, d - 1), dim(n, d));
}

void ChainComplexQ::set_boundary(int n, int d, Matrix m) {
  if (m.rows() != dim(n - 1, d) || m.cols() != dim(n, d)) throw std::invalid_argument("boundary has the wrong shape");
  boundary_[{n, d}] = std::move(m);
}

void ChainComplexQ::set_internal(int n, int d, Matrix m) {
  if (m.rows() != dim(n, d - 1) || m.cols() != dim(n, d)) throw std::invalid_argument("internal map has the wrong shape");
  internal_[{n, d}] = std::move(m);
}

bool ChainComplexQ::check(std::string* why) const {
  auto fail = [why](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (int n = 0; n <= top_; ++n)
    for (int d = 0; d <= max_degree_; ++d) {
      std::string at = " at (" + std::to_string(n) + "," + std::to_string(d) + ")";
      if (n >= 2 && !(boundary(n - 1, d) * boundary(n, d)).is_zero()) return fail("boundary squared is nonzero" + at);
      if (d >= 2 && !(internal(n, d - 1) * internal(n, d)).is_zero()) return fail("internal squared is nonzero" + at);
      if (n >= 1 && d >= 1 && !(boundary(n, d - 1) * internal(n, d) == internal(n - 1, d) * boundary(n, d)))
        return fail("differentials do not commute" + at);
    }
  return true;
}

std::map<int, int> ChainComplexQ::homology_dims(int n) const {
  std::map<int, int> out;
  for (int d = 0; d <= max_degree_; ++d) {
    int h = dim(n, d) - rank(boundary(n, d)) - rank(boundary(n + 1, d));
    if (dim(n, d) > 0) out[d] = h;
  }
  return out;
}

int ChainComplexQ::total_dim() const {
  int s = 0;
  for (const auto& row : dims_)
    for (int k : row) s += k;
  return s;
}

int Complex::dim(int k) const {
  int i = k - low;
  return i >= 0 && i < static_cast<int>(dims.size()) ? dims[i] : 0;
}

Matrix Complex::diff(int k) const {
  auto it = diffs.find(k);
  if (it != diffs.end()) return it->second;
  return Matrix(dim(k - 1), dim(k));
}

Matrix ChainMap::at(int k, const Complex& A, const Complex& B) const {
  auto it = components.find(k);
  if (it != components.end()) return it->second;
  return Matrix(B.dim(k), A.dim(k));
}

NullhomotopyResult solve_nullhomotopy(const Complex& A, const Complex& B, const ChainMap& f) {
  int lo = A.low, hi = A.low + static_cast<int>(A.dims.size()) - 1;
  // Unknown h_k(t, c) sits at hoff[k] + c * dim B_{k+1} + t; equation (r, c) of
  // degree k at eoff[k] + c * dim B_k + r.
  std::map<int, int> hoff, eoff;
  int unknowns = 0, equations = 0;
  for (int k = lo; k <= hi; ++k) {
    hoff[k] = unknowns;
    unknowns += B.dim(k + 1) * A.dim(k);
    eoff[k] = equations;
    equations += B.dim(k) * A.dim(k);
  }
  Matrix M(equations, unknowns);
  for (int k = lo; k <= hi; ++k) {
    Matrix dB = B.diff(k + 1);
    Matrix dAt = A.diff(k + 1).transpose();  // column c: entries (c', dA(c, c'))
    int rB = B.dim(k + 1);
    for (int c = 0; c < A.dim(k); ++c)
      for (int t = 0; t < rB; ++t) {
        SparseVec v;
        for (const auto& [r, x] : dB.column(t)) v.add(eoff[k] + c * B.dim(k) + r, x);
        if (k + 1 <= hi)
          for (const auto& [c2, x] : dAt.column(c)) v.add(eoff[k + 1] + c2 * B.dim(k + 1) + t, x);
        M.set_column(hoff[k] + c * rB + t, std::move(v));
      }
  }
  SparseVec rhs;
  for (int k = lo; k <= hi; ++k) {
    Matrix F = f.at(k, A, B);
    for (int c = 0; c < A.dim(k); ++c)
      for (const auto& [r, x] : F.column(c)) rhs.add(eoff[k] + c * B.dim(k) + r, x);
  }
  auto unpack = [&](const SparseVec& x) {
    std::map<int, Matrix> h;
    for (int k = lo; k <= hi; ++k) h[k] = Matrix(B.dim(k + 1), A.dim(k));
    int k = lo;
    for (const auto& [i, v] : x) {
      while (k < hi && i >= hoff[k + 1]) ++k;
      int local = i - hoff[k], rB = B.dim(k + 1);
      h[k].column(local / rB).push_back(local % rB, v);
    }
    return h;
  };

  NullhomotopyResult result;
  if (auto x = solve(M, rhs)) {
    Nullhomotopy n;
    n.h = unpack(*x);
    for (const auto& k : kernel(M)) n.kernel.push_back(unpack(k));
    result.solution = std::move(n);
    return result;
  }
  for (int k = lo; k <= hi; ++k) {
    Matrix F = f.at(k, A, B), dB = B.diff(k + 1);
    for (const auto& z : kernel(A.diff(k))) {
      SparseVec fz = F.apply(z);
      if (!solve(dB, fz)) {
        result.certificate = HomologyCertificate{k, z, fz};
        return result;
      }
    }
  }
  throw std::logic_error("no nullhomotopy and no homology certificate");
}

bool GradedMap::is_zero() const {
  for (const auto& [d, m] : blocks)
    if (!m.is_zero()) return false;
  return true;
}

GradedMap add(const GradedMap& a, const GradedMap& b, const Rational& c) {
  if (a.shift != b.shift && !a.blocks.empty() && !b.blocks.empty())
    throw std::invalid_argument("adding graded maps of different shifts");
  GradedMap r = a;
  if (a.blocks.empty()) r.shift = b.shift;
  for (const auto& [d, m] : b.blocks) {
    Matrix scaled = m;
    for (int j = 0; j < scaled.cols(); ++j) scaled.column(j).scale(c);
    auto it = r.blocks.find(d);
    if (it == r.blocks.end()) r.blocks[d] = scaled;
    else it->second = it->second + scaled;
  }
  return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
  if (is_zero() && o.is_zero()) return true;
  return shift == o.shift && add(*this, o, -1).is_zero();
}

GradedMap zero_map(const ChainComplexQ& T, int level, const GradedDims& X, int shift) {
  GradedMap g;
  g.shift = shift;
  for (int d = 0; d < static_cast<int>(X.size()); ++d)
    if (X[d] > 0) g.blocks[d] = Matrix(T.dim(level, d + shift), X[d]);
  return g;
}

GradedMap apply_boundary(const ChainComplexQ& T, int level, const GradedMap& f) {
  GradedMap g;
  g.shift = f.shift;
  for (const auto& [d, m] : f.blocks) g.blocks[d] = T.boundary(level, d + f.shift) * m;
  return g;
}

GradedMap apply_internal(const ChainComplexQ& T, int level, const GradedMap& f) {
  GradedMap g;
  g.shift = f.shift - 1;
  for (const auto& [d, m] : f.blocks) g.blocks[d] = T.internal(level, d + f.shift) * m;
  return g;
}

namespace {

std::string coords_text(const SparseVec& v) {
  std::string s = "(";
  bool first = true;
  for (const auto& [i, c] : v) {
    s += (first ? "" : ", ") + std::to_string(i) + ":" + to_string(c);
    first = false;
  }
  return s + ")";
}

}  // namespace

RungSolve solve_rung(const ChainComplexQ& T, int level, const GradedDims& X, const GradedMap& gamma) {
  int s = gamma.shift;
  Complex A, B;
  A.low = s;
  A.dims = X;
  B.low = 0;
  for (int d = 0; d <= T.max_degree() + 1; ++d) {
    B.dims.push_back(T.dim(level, d));
    if (d >= 1) B.diffs[d] = T.internal(level, d);
  }
  ChainMap f;
  for (const auto& [d, m] : gamma.blocks)
    if (d < static_cast<int>(X.size()) && X[d] > 0) f.components[d + s] = m;
  NullhomotopyResult r = solve_nullhomotopy(A, B, f);
  RungSolve out;
  auto to_graded = [&](const std::map<int, Matrix>& h) {
    GradedMap H;
    H.shift = s + 1;
    for (int d = 0; d < static_cast<int>(X.size()); ++d)
      if (X[d] > 0) H.blocks[d] = h.at(d + s);
    return H;
  };
  if (r.solution) {
    out.H = to_graded(r.solution->h);
    for (const auto& k : r.solution->kernel) out.choices.push_back(to_graded(k));
  } else {
    const auto& c = *r.certificate;
    out.obstruction = "level " + std::to_string(level) + ": source degree " + std::to_string(c.dim - s) +
                      ", source vector " + coords_text(c.cycle) + " maps to the non-exact internal cycle " +
                      coords_text(c.image) + " in degree " + std::to_string(c.dim);
  }
  return out;
}

GradedMap ladder_descend(const ChainComplexQ& T, int level, const GradedMap& gamma, const GradedMap& H) {
  if (level < 1) throw LadderError("cannot descend below level 0");
  if (!(apply_internal(T, level, H) == gamma))
    throw LadderError("homotopy equation violated at level " + std::to_string(level));
  if (!apply_boundary(T, level, gamma).is_zero())
    throw LadderError("gamma at level " + std::to_string(level) + " is not boundary-closed");
  GradedMap next = apply_boundary(T, level, H);
  if (!apply_boundary(T, level - 1, next).is_zero()) throw std::logic_error("descended map is not boundary-closed");
  return next;
}

LadderCorrection ladder_correct(const ChainComplexQ& T, int level, const GradedMap& H) {
  LadderCorrection out;
  out.H = H;
  int s = H.shift;
  for (const auto& [d, block] : H.blocks) {
    int e = d + s;  // degree of H's values
    Matrix bd = T.boundary(level, e);
    Matrix next_internal = T.internal(level - 1, e + 1);
    std::vector<SparseVec> cycles = kernel(T.internal(level, e));
    // Columns: boundary of each internal cycle, then minus the internal
    // differential on T_{level-1} in degree e+1.
    Matrix sys(T.dim(level - 1, e), 0);
    for (const auto& z : cycles) sys.append_column(bd.apply(z));
    for (int j = 0; j < next_internal.cols(); ++j) sys.append_column(next_internal.column(j) * Rational(-1));
    for (int c = 0; c < block.cols(); ++c) {
      SparseVec g = bd.apply(block.column(c));
      if (solve(next_internal, g)) continue;
      auto x = solve(sys, -g);
      if (!x) {
        out.ok = false;
        out.refusal = "level " + std::to_string(level) + ": source degree " + std::to_string(d) + " column " +
                      std::to_string(c) + " descends to the internal cycle " + coords_text(g) +
                      " whose class is not hit by boundaries of internal cycles";
        return out;
      }
      SparseVec alpha;
      for (const auto& [i, v] : *x)
        if (i < static_cast<int>(cycles.size())) alpha.add_scaled(cycles[i], v);
      out.H.blocks[d].column(c).add_scaled(alpha, 1);
      out.changed = true;
    }
  }
  out.ok = true;
  return out;
}

LadderResult build_ladder(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top, int top,
                          int bottom) {
  LadderResult res;
  if (bottom < 0 || bottom > top || top > T.top()) throw std::invalid_argument("ladder range out of bounds");
  LadderDiagram L;
  L.top = top;
  L.bottom = bottom;
  if (!apply_boundary(T, top, gamma_top).is_zero() || !apply_internal(T, top, gamma_top).is_zero()) {
    res.refusal = "gamma at level " + std::to_string(top) + " is not a cycle";
    return res;
  }
  if (top == bottom) {
    L.bottom_gamma = gamma_top;
    res.ladder = std::move(L);
    return res;
  }
  RungSolve first = solve_rung(T, top, X, gamma_top);
  if (!first.H) {
    res.refusal = "first rung has no nullhomotopy: " + first.obstruction;
    return res;
  }
  GradedMap gamma = gamma_top, H = *first.H;
  for (int i = top; i > bottom; --i) {
    GradedMap next = ladder_descend(T, i, gamma, H);
    if (i - 1 == bottom) {
      L.rungs.push_back({i, gamma, H});
      L.bottom_gamma = next;
      break;
    }
    RungSolve r = solve_rung(T, i - 1, X, next);
    if (!r.H) {
      LadderCorrection c = ladder_correct(T, i, H);
      if (!c.ok) {
        res.refusal = c.refusal;
        return res;
      }
      H = c.H;
      ++L.corrections;
      next = ladder_descend(T, i, gamma, H);
      r = solve_rung(T, i - 1, X, next);
      if (!r.H) throw std::logic_error("corrected rung still has no nullhomotopy");
    }
    L.rungs.push_back({i, gamma, H});
    gamma = next;
    H = *r.H;
  }
  res.ladder = std::move(L);
  return res;
}

struct InternalHomology::Impl {
  HomotopyDegree h;
};

InternalHomology::InternalHomology(const ChainComplexQ& T, int level, int degree) {
  Matrix in = T.internal(level, degree + 1);
  impl_ = std::make_shared<Impl>(Impl{HomotopyDegree(kernel(T.internal(level, degree)), in.columns())});
}

int InternalHomology::dim() const { return impl_->h.dim(); }

std::optional<SparseVec> InternalHomology::coordinates(const SparseVec& z) const { return impl_->h.coordinates(z); }

const std::vector<SparseVec>& InternalHomology::representatives() const { return impl_->h.representatives(); }

ClassSpace class_space(const ChainComplexQ& T, int level, const GradedDims& X, int shift) {
  ClassSpace s;
  for (int d = 0; d < static_cast<int>(X.size()); ++d) {
    if (X[d] == 0) continue;
    int m = InternalHomology(T, level, d + shift).dim();
    for (int c = 0; c < X[d]; ++c)
      for (int k = 0; k < m; ++k) {
        s.index[{d, c, k}] = s.size();
        s.slots.emplace_back(d, c, k);
      }
  }
  return s;
}

std::optional<SparseVec> class_coordinates(const ChainComplexQ& T, int level, const GradedDims& X,
                                           const GradedMap& f, const ClassSpace& space) {
  SparseVec out;
  for (const auto& [d, m] : f.blocks) {
    if (d >= static_cast<int>(X.size()) || X[d] == 0) continue;
    InternalHomology h(T, level, d + f.shift);
    for (int c = 0; c < m.cols(); ++c) {
      auto coords = h.coordinates(m.column(c));
      if (!coords) return std::nullopt;
      for (const auto& [k, v] : *coords) out.add(space.index.at({d, c, k}), v);
    }
  }
  return out;
}

bool TodaBracketValue::contains(const SparseVec& other) const {
  Echelon e(false);
  for (const auto& v : indeterminacy) e.insert(v);
  return e.contains(other - value);
}

std::optional<StaircaseSolution> staircase_solve(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top,
                                                 int top, int bottom, const ClassSpace& space) {
  StaircaseSolution sol;
  int s0 = gamma_top.shift;
  int value_shift = s0 + (top - bottom);
  sol.bottom.shift = value_shift;
  std::vector<SparseVec> directions;
  for (const auto& [d, block] : gamma_top.blocks) {
    if (d >= static_cast<int>(X.size()) || X[d] == 0) continue;
    InternalHomology hom(T, bottom, d + value_shift);
    auto embed = [&](int c, const SparseVec& classes, SparseVec& into) {
      for (const auto& [k, v] : classes) into.add(space.index.at({d, c, k}), v);
    };
    sol.bottom.blocks[d] = Matrix(T.dim(bottom, d + value_shift), X[d]);
    if (top == bottom) {
      sol.bottom.blocks[d] = block;
      for (int c = 0; c < block.cols(); ++c) {
        auto cl = hom.coordinates(block.column(c));
        if (!cl) return std::nullopt;
        embed(c, *cl, sol.value);
      }
      continue;
    }
    // Unknowns: H_i for i = top..bottom+1, H_i in T_i of degree d + s0 + (top - i) + 1.
    std::vector<int> off;
    int unknowns = 0;
    for (int i = top; i > bottom; --i) {
      off.push_back(unknowns);
      unknowns += T.dim(i, d + s0 + (top - i) + 1);
    }
    // Equations: internal(H_top) = gamma, internal(H_{i-1}) - boundary(H_i) = 0.
    std::vector<int> eoff;
    int equations = 0;
    for (int i = top; i > bottom; --i) {
      eoff.push_back(equations);
      equations += T.dim(i, d + s0 + (top - i));
    }
    Matrix M(equations, unknowns);
    for (int i = top, r = 0; i > bottom; --i, ++r) {
      int deg = d + s0 + (top - i) + 1;
      Matrix in = T.internal(i, deg);
      Matrix bd = T.boundary(i, deg);
      for (int t = 0; t < T.dim(i, deg); ++t) {
        SparseVec col;
        for (const auto& [row, v] : in.column(t)) col.add(eoff[r] + row, v);
        if (i - 1 > bottom)
          for (const auto& [row, v] : bd.column(t)) col.add(eoff[r + 1] + row, -v);
        M.set_column(off[r] + t, std::move(col));
      }
    }
    Matrix last = T.boundary(bottom + 1, d + value_shift);
    int last_off = off.back();
    auto value_of = [&](const SparseVec& x) {
      SparseVec h;
      for (const auto& [i, v] : x)
        if (i >= last_off) h.push_back(i - last_off, v);
      return last.apply(h);
    };
    std::vector<SparseVec> ker = kernel(M);
    for (int c = 0; c < block.cols(); ++c) {
      SparseVec rhs;
      for (const auto& [row, v] : block.column(c)) rhs.add(eoff[0] + row, v);
      auto x = solve(M, rhs);
      if (!x) return std::nullopt;
      SparseVec v = value_of(*x);
      auto cl = hom.coordinates(v);
      if (!cl) throw std::logic_error("staircase value is not an internal cycle");
      sol.bottom.blocks[d].set_column(c, v);
      embed(c, *cl, sol.value);
      for (const auto& k : ker) {
        auto kc = hom.coordinates(value_of(k));
        if (!kc) throw std::logic_error("staircase direction is not an internal cycle");
        SparseVec dir;
        embed(c, *kc, dir);
        if (!dir.empty()) directions.push_back(std::move(dir));
      }
    }
  }
  for (int i : independent_over({}, directions)) sol.indeterminacy.push_back(directions[i]);
  return sol;
}

TodaBracketValue toda_bracket(const ChainComplexQ& T, const GradedDims& X, const GradedMap& gamma_top, int top,
                              int bottom) {
  TodaBracketValue out;
  out.top = top;
  out.bottom = bottom;
  out.space = class_space(T, bottom, X, gamma_top.shift + (top - bottom));
  if (!apply_boundary(T, top, gamma_top).is_zero() || !apply_internal(T, top, gamma_top).is_zero()) {
    out.reason = "the starting map is not a cycle";
    return out;
  }
  RungSolve first = solve_rung(T, top, X, gamma_top);
  if (top > bottom && !first.H) {
    out.reason = "first-stage nullhomotopy does not exist: " + first.obstruction;
    return out;
  }
  auto stair = staircase_solve(T, X, gamma_top, top, bottom, out.space);
  if (!stair) {
    out.reason = "no ladder reaches level " + std::to_string(bottom);
    return out;
  }
  out.defined = true;
  out.indeterminacy = stair->indeterminacy;
  LadderResult lr = build_ladder(T, X, gamma_top, top, bottom);
  if (lr.ladder) {
    auto v = class_coordinates(T, bottom, X, lr.ladder->bottom_gamma, out.space);
    if (!v) throw std::logic_error("ladder value is not an internal cycle");
    out.value = *v;
    out.ladder = std::move(lr.ladder);
  } else {
    out.value = stair->value;
    out.reason = "sequential ladder refused (" + lr.refusal + "); value taken from the global solve";
  }
  return out;
}

}  // namespace aqtoda
