#include "aqtoda/aq_cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqtoda {

std::vector<int> generators_in_degree(const TruncatedCWObject& X, int n, int d) {
  std::vector<int> out;
  const auto& basis = X.level(n).basis();
  for (int i = 0; i < static_cast<int>(basis.size()); ++i)
    if (basis[i].degree == d) out.push_back(i);
  return out;
}

SparseVec local_linearization(const TruncatedCWObject& X, int n, int d, const SparseVec& coords) {
  std::vector<int> gens = generators_in_degree(X, n, d);
  SparseVec out;
  for (const auto& [pos, c] : linearize(X, n, coords)) {
    auto it = std::lower_bound(gens.begin(), gens.end(), pos);
    if (it == gens.end() || *it != pos) throw std::invalid_argument("linear term of the wrong degree");
    out.push_back(static_cast<int>(it - gens.begin()), c);
  }
  return out;
}

Matrix normalized_boundary(const TruncatedCWObject& X, int n, int d) {
  std::vector<int> gens = generators_in_degree(X, n, d);
  if (n == 0) return Matrix(0, static_cast<int>(gens.size()));
  Matrix m(static_cast<int>(generators_in_degree(X, n - 1, d).size()), static_cast<int>(gens.size()));
  for (int j = 0; j < static_cast<int>(gens.size()); ++j)
    m.set_column(j, local_linearization(X, n - 1, d, X.level(n).basis()[gens[j]].attach.coords()));
  return m;
}

bool AQClass::is_zero() const {
  for (const auto& [d, m] : values)
    if (!m.is_zero()) return false;
  return true;
}

AQClass AQClass::operator+(const AQClass& o) const {
  if (n != o.n) throw std::invalid_argument("adding cochains of different dimensions");
  AQClass r = *this;
  for (const auto& [d, m] : o.values) {
    auto it = r.values.find(d);
    if (it == r.values.end()) r.values[d] = m;
    else it->second = it->second + m;
  }
  return r;
}

AQClass AQClass::operator-(const AQClass& o) const {
  AQClass neg = o;
  for (auto& [d, m] : neg.values)
    for (int j = 0; j < m.cols(); ++j) m.column(j).scale(-1);
  return *this + neg;
}

bool AQClass::operator==(const AQClass& o) const { return n == o.n && (*this - o).is_zero(); }

AQCochainComplex::AQCochainComplex(TruncatedCWObject X, CoefficientSpace K) : X_(std::move(X)), K_(std::move(K)) {
  int D = X_.cutoff();
  for (int n = 0; n <= top(); ++n)
    for (int d = 1; d <= D; ++d) boundaries_[{n, d}] = normalized_boundary(X_, n, d);
  for (int n = 0; n < top(); ++n)
    for (int d = 1; d <= D; ++d) {
      int k = K_.dim(d);
      const Matrix& bd = boundaries_.at({n + 1, d});  // Gbar_{n+1} -> Gbar_n
      Matrix t = bd.transpose();                      // column x: (y, bd(x, y))
      Matrix delta(k * generators(n + 1, d), k * generators(n, d));
      for (int x = 0; x < t.cols(); ++x)
        for (int r = 0; r < k; ++r) {
          SparseVec col;
          for (const auto& [y, v] : t.column(x)) col.push_back(y * k + r, v);
          delta.set_column(x * k + r, std::move(col));
        }
      coboundaries_[{n, d}] = std::move(delta);
    }
}

int AQCochainComplex::generators(int n, int d) const {
  if (n < 0 || n > top()) return 0;
  return static_cast<int>(generators_in_degree(X_, n, d).size());
}

const Matrix& AQCochainComplex::coboundary(int n, int d) const {
  auto it = coboundaries_.find({n, d});
  if (it == coboundaries_.end())
    throw std::out_of_range("no coboundary delta^" + std::to_string(n) + " in degree " + std::to_string(d));
  return it->second;
}

bool AQCochainComplex::check_dd() const {
  for (int n = 0; n + 1 < top(); ++n)
    for (int d = 1; d <= cutoff(); ++d)
      if (!(coboundary(n + 1, d) * coboundary(n, d)).is_zero()) return false;
  return true;
}

int AQCochainComplex::cohomology_dim(int n, int d) const {
  if (n < 2 || n > top() - 1)
    throw std::out_of_range("H^" + std::to_string(n) + " needs 2 <= n <= " + std::to_string(top() - 1));
  if (d < 1 || d > cutoff()) throw std::out_of_range("degree outside the cutoff");
  return cochain_dim(n, d) - rank(coboundary(n, d)) - rank(coboundary(n - 1, d));
}

AQClass AQCochainComplex::zero(int n) const {
  AQClass c;
  c.n = n;
  c.coefficients = K_.label;
  for (int d = 1; d <= cutoff(); ++d)
    if (generators(n, d) > 0) c.values[d] = Matrix(K_.dim(d), generators(n, d));
  return c;
}

SparseVec AQCochainComplex::vectorize(const AQClass& c, int d) const {
  SparseVec v;
  auto it = c.values.find(d);
  if (it == c.values.end()) return v;
  int k = K_.dim(d);
  if (it->second.rows() != k || it->second.cols() != generators(c.n, d))
    throw std::invalid_argument("cochain block has the wrong shape in degree " + std::to_string(d));
  for (int x = 0; x < it->second.cols(); ++x)
    for (const auto& [r, val] : it->second.column(x)) v.push_back(x * k + r, val);
  return v;
}

Matrix AQCochainComplex::unvectorize(int n, int d, const SparseVec& v) const {
  int k = K_.dim(d);
  Matrix m(k, generators(n, d));
  for (const auto& [i, val] : v) m.column(i / k).push_back(i % k, val);
  return m;
}

AQClass AQCochainComplex::apply(const AQClass& c) const {
  AQClass r = zero(c.n + 1);
  for (int d = 1; d <= cutoff(); ++d) {
    if (generators(c.n + 1, d) == 0) continue;
    r.values[d] = unvectorize(c.n + 1, d, coboundary(c.n, d).apply(vectorize(c, d)));
  }
  return r;
}

std::optional<bool> AQCochainComplex::is_cocycle(const AQClass& c) const {
  if (c.n >= top()) return std::nullopt;
  return apply(c).is_zero();
}

CoboundaryResult AQCochainComplex::is_coboundary(const AQClass& c) const {
  CoboundaryResult r;
  if (c.n == 0) {
    r.is_coboundary = c.is_zero();
    if (r.is_coboundary) r.witness = AQClass{-1, K_.label, {}};
    return r;
  }
  AQClass psi = zero(c.n - 1);
  for (int d = 1; d <= cutoff(); ++d) {
    SparseVec target = vectorize(c, d);
    const Matrix& delta = coboundary(c.n - 1, d);
    auto x = solve(delta, target);
    if (!x) {
      r.degree = d;
      r.rank_delta = rank(delta);
      std::vector<SparseVec> cols = delta.columns();
      cols.push_back(target);
      r.rank_augmented = rank(cols);
      return r;
    }
    if (generators(c.n - 1, d) > 0) psi.values[d] = unvectorize(c.n - 1, d, *x);
  }
  r.is_coboundary = true;
  r.witness = std::move(psi);
  return r;
}

AQCochainComplex build_aq_complex(const TruncatedCWObject& res, const CoefficientSpace& K) {
  AQCochainComplex cx(res, K);
  if (!cx.check_dd()) throw std::logic_error("delta squared is nonzero");
  return cx;
}

CoefficientSpace chain_coefficients(const TruncatedCWObject& X, int n) {
  CoefficientSpace K;
  K.label = "span Gbar_" + std::to_string(n);
  K.valid_through = X.cutoff();
  for (int d = 1; d <= X.cutoff(); ++d) {
    int g = static_cast<int>(generators_in_degree(X, n, d).size());
    if (g) K.dims[d] = g;
  }
  return K;
}

namespace {

bool is_moore_chain(const TruncatedCWObject& X, int level, const SparseVec& coords) {
  for (int i = 1; i <= level; ++i)
    if (!X.level(level).face(i, coords).empty()) return false;
  return true;
}

}  // namespace

AQClass k_invariant_cocycle(const TruncatedCWObject& X, int n) {
  if (n < 0 || n + 2 > X.top()) throw std::out_of_range("k-invariant needs levels through n+2");
  AQClass c;
  c.n = n + 2;
  c.coefficients = "span Gbar_" + std::to_string(n);
  for (int d = 1; d <= X.cutoff(); ++d) {
    std::vector<int> gens = generators_in_degree(X, n + 2, d);
    if (gens.empty()) continue;
    Matrix m(static_cast<int>(generators_in_degree(X, n, d).size()), static_cast<int>(gens.size()));
    for (int j = 0; j < static_cast<int>(gens.size()); ++j) {
      const CWGenerator& g = X.level(n + 2).basis()[gens[j]];
      if (!is_moore_chain(X, n + 1, g.attach.coords()))
        throw std::invalid_argument("attaching value of " + g.name + " is not a Moore chain");
      m.set_column(j, local_linearization(X, n, d, X.level(n + 1).face(0, g.attach.coords())));
    }
    c.values[d] = std::move(m);
  }
  return c;
}

void require_resolution_band(const TruncatedCWObject& trunc, int n) {
  if (trunc.top() < n + 1) throw BandError("the band check needs levels through n+1");
  std::string bad;
  for (int k = 1; k <= n; ++k)
    for (int d = 1; d <= trunc.cutoff(); ++d) {
      int h = homotopy_degree(trunc, k, d).dim();
      if (h) bad += " pi_" + std::to_string(k) + " degree " + std::to_string(d) + " dim " + std::to_string(h) + ";";
    }
  if (!bad.empty()) throw BandError("not a resolution band:" + bad);
}

ChainComplexQ abelianized_moore(const TruncatedCWObject& X) {
  int D = X.cutoff();
  ChainComplexQ T(X.top(), D);
  for (int n = 0; n <= X.top(); ++n)
    for (int d = 1; d <= D; ++d) T.set_dim(n, d, static_cast<int>(generators_in_degree(X, n, d).size()));
  for (int n = 1; n <= X.top(); ++n)
    for (int d = 1; d <= D; ++d) T.set_boundary(n, d, normalized_boundary(X, n, d));
  return T;
}

Matrix augmentation(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int d) {
  std::vector<int> gens = generators_in_degree(X, 0, d);
  Matrix m(d <= lambda.cutoff() ? lambda.dim(d) : 0, static_cast<int>(gens.size()));
  if (d > lambda.cutoff()) return m;
  const auto& F = *lambda.free_algebra();
  for (int j = 0; j < static_cast<int>(gens.size()); ++j) {
    const std::string& name = X.level(0).basis()[gens[j]].name;
    if (!F.has_letter(name)) throw std::invalid_argument("generator " + name + " is not in the presentation");
    m.set_column(j, lambda.project(d, SparseVec::unit(F.letter_basis(F.letter_index(name)))));
  }
  return m;
}

BetaResult beta_obstruction(const PresentedLieAlgebra& lambda, const TruncatedCWObject& trunc, int n,
                            const std::vector<TruncatedCWObject::NewGenerator>& attach) {
  if (n < 0 || trunc.top() < n + 1) throw std::out_of_range("beta_n needs levels through n+1");
  TruncatedCWObject base = trunc.truncate(n + 1);
  require_resolution_band(base, n);
  TruncatedCWObject Y = base.extend(attach);
  int D = Y.cutoff();

  BetaResult r;
  r.n = n;
  ChainComplexQ T = abelianized_moore(Y);
  r.source.assign(D + 1, 0);
  for (int d = 1; d <= D; ++d) r.source[d] = static_cast<int>(generators_in_degree(Y, n + 2, d).size());
  r.gamma.shift = 0;
  for (int d = 1; d <= D; ++d) {
    std::vector<int> gens = generators_in_degree(Y, n + 2, d);
    if (gens.empty()) continue;
    Matrix m(T.dim(n, d), static_cast<int>(gens.size()));
    for (int j = 0; j < static_cast<int>(gens.size()); ++j) {
      const auto& a = Y.level(n + 2).basis()[gens[j]].attach;
      m.set_column(j, local_linearization(Y, n, d, Y.level(n + 1).face(0, a.coords())));
    }
    r.gamma.blocks[d] = std::move(m);
  }

  auto stair = staircase_solve(T, r.source, r.gamma, n, 0, class_space(T, 0, r.source, n));
  if (!stair) {
    RungSolve first = solve_rung(T, n, r.source, r.gamma);
    r.refusal = first.H ? "gamma_" + std::to_string(n) + " has no descent to level 0"
                        : "gamma_" + std::to_string(n) + " is not nullhomotopic: " + first.obstruction;
    return r;
  }
  r.gamma0 = stair->bottom;

  AQCochainComplex cx = build_aq_complex(Y, loop_module(lambda, n));
  AQClass c = cx.zero(n + 2);
  c.coefficients = "Omega^" + std::to_string(n) + " Lambda";
  for (const auto& [d, block] : r.gamma0->blocks)
    if (r.source[d] > 0) c.values[d] = augmentation(lambda, Y, d + n) * block;
  r.cocycle = c;
  CoboundaryResult cb = cx.is_coboundary(c);
  if (cb.is_coboundary) r.witness = cb.witness;
  r.vanishes = cb.is_coboundary;
  return r;
}

BetaResult beta_obstruction(const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n) {
  if (X.top() < n + 2) throw std::out_of_range("beta_n of X needs levels through n+2");
  std::vector<TruncatedCWObject::NewGenerator> attach;
  for (const auto& g : X.level(n + 2).basis()) attach.push_back({g.name, g.degree, g.attach});
  return beta_obstruction(lambda, X, n, attach);
}

LiePolynomial transfer(const LiePolynomial& p, const FreeLiePtr& target) {
  if (p.algebra() == target) return p;
  if (!p.algebra() || p.is_zero()) return LiePolynomial(target);
  return parse_lie(target, p.to_string());
}

DifferenceResult delta_difference(const TruncatedCWObject& X, int n,
                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_a,
                                  const std::vector<TruncatedCWObject::NewGenerator>& attach_b) {
  if (n < 0 || X.top() < n + 1) throw std::out_of_range("delta_n needs levels through n+1");
  if (attach_a.size() != attach_b.size()) throw DifferenceError("attaching maps have different sources");
  TruncatedCWObject W = X.truncate(n + 1);
  TruncatedCWObject sk = W.extend({});
  const CWLevel& top = W.level(n + 1);
  int D = W.cutoff();

  DifferenceResult r;
  r.n = n;
  std::vector<LiePolynomial> a, b;
  for (std::size_t i = 0; i < attach_a.size(); ++i) {
    if (attach_a[i].name != attach_b[i].name || attach_a[i].degree != attach_b[i].degree)
      throw DifferenceError("generator " + std::to_string(i) + " differs between the attaching maps");
    a.push_back(transfer(attach_a[i].attach, top.algebra()));
    b.push_back(transfer(attach_b[i].attach, top.algebra()));
    for (const auto* p : {&a.back(), &b.back()}) {
      if (!p->is_zero() && p->degree() != attach_a[i].degree)
        throw DifferenceError("attaching value of " + attach_a[i].name + " has the wrong degree");
      if (!is_moore_chain(W, n + 1, p->coords()) || !top.face(0, p->coords()).empty())
        throw DifferenceError("attaching value of " + attach_a[i].name + " is not a Moore cycle");
    }
    if (linearize(W, n + 1, a.back().coords()) != linearize(W, n + 1, b.back().coords()))
      throw DifferenceError("linearizations of " + attach_a[i].name +
                            " differ: the maps do not realize the same algebraic attaching map");
    r.difference.push_back(a.back() - b.back());
  }

  r.coefficients.label = "pi_" + std::to_string(n + 1) + " of the " + std::to_string(n + 1) + "-skeleton";
  r.coefficients.valid_through = D;
  r.cochain.n = n + 2;
  r.cochain.coefficients = r.coefficients.label;
  r.witnesses.assign(a.size(), LiePolynomial(sk.level(n + 2).algebra()));
  bool zero = true;
  for (int d = 1; d <= D; ++d) {
    std::vector<int> cols;
    for (int i = 0; i < static_cast<int>(attach_a.size()); ++i)
      if (attach_a[i].degree == d) cols.push_back(i);
    MooreDegree top_chains = moore_degree(sk, n + 2, d);
    HomotopyDegree h(moore_degree(W, n + 1, d).cycles, top_chains.boundaries);
    if (h.dim()) r.coefficients.dims[d] = h.dim();
    if (cols.empty()) continue;
    Matrix m(h.dim(), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
      const SparseVec& z = r.difference[cols[j]].coords();
      auto coords = h.coordinates(z);
      if (!coords) throw std::logic_error("difference of cycles is not a cycle");
      m.set_column(j, *coords);
      if (!coords->empty()) {
        zero = false;
        continue;
      }
      SparseVec e;
      SparseVec w = h.boundary_witness(z).value();
      for (const auto& [k, v] : w) e.add_scaled(top_chains.chains[k], v);
      r.witnesses[cols[j]] = LiePolynomial(sk.level(n + 2).algebra(), e);
    }
    r.cochain.values[d] = std::move(m);
  }
  r.zero = zero;
  if (!zero) return r;

  // x |-> x + e_x from the a-extension to the b-extension.
  std::vector<TruncatedCWObject::NewGenerator> ga, gb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ga.push_back({attach_a[i].name, attach_a[i].degree, a[i]});
    gb.push_back({attach_b[i].name, attach_b[i].degree, b[i]});
  }
  TruncatedCWObject Wb = W.extend(gb);
  const CWLevel& Lb = Wb.level(n + 2);
  bool ok = true;
  for (std::size_t i = 0; i < a.size() && ok; ++i) {
    LiePolynomial e = transfer(r.witnesses[i], Lb.algebra());
    if (!linearize(Wb, n + 2, e.coords()).empty()) ok = false;
    LiePolynomial image = LiePolynomial::letter(Lb.algebra(), attach_b[i].name) + e;
    if (Lb.face(0, image.coords()) != a[i].coords()) ok = false;
    for (int j = 1; j <= n + 2; ++j)
      if (!Lb.face(j, image.coords()).empty()) ok = false;
  }
  r.equivalence_verified = ok;
  return r;
}

TruncatedCWObject pad_resolution(const TruncatedCWObject& X, int n, int d, const std::string& name) {
  if (n < 1 || n + 1 > X.top()) throw std::out_of_range("padding needs 1 <= n and level n+1");
  if (d < 1 || d > X.cutoff()) throw std::out_of_range("padding degree outside the cutoff");
  TruncatedCWObject P = X.truncate(n - 1);
  std::string partner = name + "'";
  for (int k = n; k <= X.top(); ++k) {
    std::vector<TruncatedCWObject::NewGenerator> gens;
    const FreeLiePtr& below = P.level(k - 1).algebra();
    for (const auto& g : X.level(k).basis()) gens.push_back({g.name, g.degree, transfer(g.attach, below)});
    if (k == n) gens.push_back({name, d, LiePolynomial(below)});
    if (k == n + 1) gens.push_back({partner, d, LiePolynomial::letter(below, name)});
    P = P.extend(std::move(gens));
  }
  return P;
}

}  // namespace aqtoda
