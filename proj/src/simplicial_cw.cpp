#include "aqtoda/simplicial_cw.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace aqtoda {

namespace {

// Monotone surjections [n] -> [k], as value sequences, in a fixed order.
std::vector<std::vector<int>> surjections(int n, int k) {
  std::vector<std::vector<int>> out;
  // choose which of the n steps are flat (n-k of them)
  int steps = n, flats = n - k;
  for (int mask = 0; mask < (1 << steps); ++mask) {
    if (__builtin_popcount(mask) != flats) continue;
    std::vector<int> seq{0};
    for (int t = 0; t < steps; ++t) seq.push_back(seq.back() + ((mask >> t) & 1 ? 0 : 1));
    out.push_back(std::move(seq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> flat_positions(const std::vector<int>& op) {
  std::vector<int> J;
  for (int t = static_cast<int>(op.size()) - 2; t >= 0; --t)
    if (op[t] == op[t + 1]) J.push_back(t);
  return J;
}

bool is_identity(const std::vector<int>& op) {
  for (int t = 0; t < static_cast<int>(op.size()); ++t)
    if (op[t] != t) return false;
  return true;
}

}  // namespace

std::string letter_name(const std::vector<int>& op, const std::string& generator) {
  std::vector<int> J = flat_positions(op);
  if (J.empty()) return generator;
  std::string s;
  for (int j : J) s += "s" + std::to_string(j);
  return s + "_" + generator;
}

std::vector<std::pair<int, std::vector<int>>> latching_index_set(int n) {
  if (n < 0) throw std::invalid_argument("latching index set needs n >= 0");
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int k = n - 1; k >= 0; --k)
    for (const auto& op : surjections(n, k)) out.emplace_back(k, flat_positions(op));
  return out;
}

CWLevel::CWLevel(int n, int cutoff, std::shared_ptr<const CWLevel> below, std::vector<CWGenerator> basis)
    : n_(n), cutoff_(cutoff), below_(std::move(below)), basis_(std::move(basis)) {
  if ((n_ == 0) != (below_ == nullptr)) throw std::logic_error("CW level chain is inconsistent");
  std::vector<GradedGenerator> gens;
  std::vector<LevelLetter> raw;
  for (int k = 0; k <= n_; ++k) {
    const std::vector<CWGenerator>& gk = k == n_ ? basis_ : at(k).basis();
    for (const auto& op : surjections(n_, k))
      for (int idx = 0; idx < static_cast<int>(gk.size()); ++idx) {
        gens.push_back({letter_name(op, gk[idx].name), gk[idx].degree});
        raw.push_back({op, k, idx});
      }
  }
  alg_ = std::make_shared<FreeLieAlgebra>(gens, cutoff_);
  letters_.resize(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    int li = alg_->letter_index(gens[r].name);
    letters_[li] = raw[r];
    letter_lookup_[{raw[r].level * 65536 + raw[r].index, raw[r].op}] = li;
  }
  face_homs_.resize(n_ + 1);
}

const CWLevel& CWLevel::at(int k) const {
  if (k == n_) return *this;
  if (k < 0 || k > n_) throw std::out_of_range("level " + std::to_string(k) + " not present");
  return below_->at(k);
}

int CWLevel::letter_for(const std::vector<int>& sigma, int k, int index) const {
  auto it = letter_lookup_.find({k * 65536 + index, sigma});
  if (it == letter_lookup_.end()) throw std::logic_error("no letter for operator at level " + std::to_string(n_));
  return it->second;
}

SparseVec CWLevel::degenerate_from(int k, const std::vector<int>& sigma, const SparseVec& coords) const {
  if (static_cast<int>(sigma.size()) != n_ + 1) throw std::invalid_argument("degeneracy operator has wrong length");
  if (k == n_ && is_identity(sigma)) return coords;
  const CWLevel& src = at(k);
  std::vector<SparseVec> images;
  for (const auto& l : src.letters()) {
    std::vector<int> op(n_ + 1);
    for (int t = 0; t <= n_; ++t) op[t] = l.op[sigma[t]];
    int li = letter_for(op, l.level, l.index);
    int b = alg_->letter_basis(li);
    images.push_back(b < 0 ? SparseVec() : alg_->basis(b).expansion);
  }
  LieHomomorphism h(src.algebra(), alg_, std::move(images));
  return h.apply(LiePolynomial(src.algebra(), coords)).coords();
}

LieHomomorphism& CWLevel::face_hom(int i) const {
  if (face_homs_[i]) return *face_homs_[i];
  const CWLevel& low = *below_;
  std::vector<SparseVec> images;
  for (const auto& l : letters_) {
    const CWGenerator& g = generator_of(l);
    if (g.degree > cutoff_) {
      images.emplace_back();
      continue;
    }
    std::vector<int> rest = l.op;
    rest.erase(rest.begin() + i);
    int k = l.level;
    std::set<int> values(rest.begin(), rest.end());
    if (static_cast<int>(values.size()) == k + 1) {
      int li = low.letter_for(rest, k, l.index);
      images.push_back(low.algebra()->basis(low.algebra()->letter_basis(li)).expansion);
      continue;
    }
    int m = l.op[i];
    if (m != 0 || g.attach.is_zero()) {
      images.emplace_back();
      continue;
    }
    for (int& v : rest)
      if (v > m) --v;
    SparseVec coords = low.degenerate_from(k - 1, rest, g.attach.coords());
    images.push_back(low.algebra()->expand(coords));
  }
  face_homs_[i] = std::make_unique<LieHomomorphism>(alg_, low.algebra(), std::move(images));
  return *face_homs_[i];
}

const Matrix& CWLevel::face_matrix(int i, int d) const {
  if (n_ == 0) throw std::logic_error("level 0 has no faces");
  if (i < 0 || i > n_) throw std::out_of_range("face index out of range");
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(i, d);
  auto it = face_cache_.find(key);
  if (it != face_cache_.end()) return it->second;
  Matrix m = face_hom(i).matrix(d);
  return face_cache_.emplace(key, std::move(m)).first->second;
}

SparseVec CWLevel::face(int i, const SparseVec& coords) const {
  SparseVec out;
  for (const auto& [b, c] : coords) {
    int d = alg_->basis(b).degree;
    out.add_scaled(face_matrix(i, d).column(b - alg_->degree_begin(d)), c);
  }
  return out;
}

TruncatedCWObject TruncatedCWObject::base(std::vector<GradedGenerator> generators, int cutoff) {
  std::vector<CWGenerator> basis;
  for (auto& g : generators) basis.push_back({g.name, g.degree, 0, {}});
  return TruncatedCWObject(std::make_shared<CWLevel>(0, cutoff, nullptr, std::move(basis)));
}

std::vector<const CWGenerator*> TruncatedCWObject::generators() const {
  std::vector<const CWGenerator*> out;
  for (int n = 0; n <= top(); ++n)
    for (const auto& g : level(n).basis()) out.push_back(&g);
  return out;
}

TruncatedCWObject TruncatedCWObject::extend(std::vector<NewGenerator> generators) const {
  std::set<std::string> names;
  for (const auto* g : this->generators()) names.insert(g->name);
  const CWLevel& t = *top_;
  std::vector<CWGenerator> basis;
  for (auto& g : generators) {
    if (!names.insert(g.name).second) throw CWExtendError("duplicate generator name: " + g.name);
    if (g.degree < 1) throw CWExtendError("generator degree must be >= 1: " + g.name);
    LiePolynomial a = g.attach.algebra() ? g.attach : LiePolynomial(t.algebra());
    if (a.algebra() != t.algebra()) throw CWExtendError("attaching value of " + g.name + " is not in the top level");
    if (!a.is_zero() && a.degree() != g.degree)
      throw CWExtendError("attaching value of " + g.name + " has degree " + std::to_string(a.degree()) +
                          ", expected " + std::to_string(g.degree));
    for (int i = 1; i <= t.n(); ++i)
      if (!t.face(i, a.coords()).empty())
        throw CWExtendError("attaching value of " + g.name + " is not a Moore chain: d_" + std::to_string(i) +
                            " of it is nonzero");
    basis.push_back({g.name, g.degree, t.n() + 1, std::move(a)});
  }
  return TruncatedCWObject(std::make_shared<CWLevel>(t.n() + 1, t.cutoff(), top_, std::move(basis)));
}

TruncatedCWObject TruncatedCWObject::extend_parsed(
    const std::vector<std::tuple<std::string, int, std::string>>& generators) const {
  std::vector<NewGenerator> gens;
  for (const auto& [name, degree, text] : generators)
    gens.push_back({name, degree, parse_lie(top_->algebra(), text)});
  return extend(std::move(gens));
}

TruncatedCWObject TruncatedCWObject::truncate(int n) const {
  if (n < 0 || n > top()) throw std::out_of_range("truncation level out of range");
  std::shared_ptr<const CWLevel> p = top_;
  while (p->n() > n) p = p->below();
  return TruncatedCWObject(p);
}

bool TruncatedCWObject::attachments_are_cycles() const {
  for (int n = 2; n <= top(); ++n)
    for (const auto& g : level(n).basis())
      if (!level(n - 1).face(0, g.attach.coords()).empty()) return false;
  return true;
}

SparseVec degeneracy(const TruncatedCWObject& X, int n, int j, const SparseVec& coords) {
  if (j < 0 || j > n) throw std::out_of_range("degeneracy index out of range");
  std::vector<int> sigma;
  for (int t = 0; t <= n + 1; ++t) sigma.push_back(t <= j ? t : t - 1);
  return X.level(n + 1).degenerate_from(n, sigma, coords);
}

IdentityReport check_simplicial_identities(const TruncatedCWObject& X) {
  IdentityReport r;
  auto fail = [&r](int n, const std::string& letter, const std::string& what) {
    r.ok = false;
    r.violations.push_back("level " + std::to_string(n) + " letter " + letter + ": " + what);
  };
  for (int n = 0; n <= X.top(); ++n) {
    const CWLevel& L = X.level(n);
    const auto& alg = *L.algebra();
    for (int li = 0; li < static_cast<int>(L.letters().size()); ++li) {
      int b = alg.letter_basis(li);
      if (b < 0) continue;
      const std::string& name = alg.letters()[li].name;
      SparseVec v = SparseVec::unit(b);
      for (int j = 1; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i) {
          ++r.checked;
          if (X.level(n - 1).face(i, L.face(j, v)) != X.level(n - 1).face(j - 1, L.face(i, v)))
            fail(n, name, "d" + std::to_string(i) + "d" + std::to_string(j) + " != d" + std::to_string(j - 1) + "d" +
                              std::to_string(i));
        }
      if (n + 1 > X.top()) continue;
      for (int j = 0; j <= n; ++j) {
        SparseVec w = degeneracy(X, n, j, v);
        for (int i = 0; i <= n + 1; ++i) {
          ++r.checked;
          SparseVec lhs = X.level(n + 1).face(i, w);
          SparseVec rhs;
          if (i == j || i == j + 1) rhs = v;
          else if (i < j) rhs = degeneracy(X, n - 1, j - 1, L.face(i, v));
          else rhs = degeneracy(X, n - 1, j, L.face(i - 1, v));
          if (lhs != rhs) fail(n, name, "d" + std::to_string(i) + "s" + std::to_string(j) + " mismatch");
        }
        if (n + 2 > X.top()) continue;
        for (int i = 0; i <= j; ++i) {
          ++r.checked;
          if (degeneracy(X, n + 1, i, w) != degeneracy(X, n + 1, j + 1, degeneracy(X, n, i, v)))
            fail(n, name, "s" + std::to_string(i) + "s" + std::to_string(j) + " != s" + std::to_string(j + 1) + "s" +
                              std::to_string(i));
        }
      }
    }
  }
  return r;
}

MooreDegree moore_degree(const TruncatedCWObject& X, int n, int d) {
  const CWLevel& L = X.level(n);
  const auto& alg = *L.algebra();
  int begin = alg.degree_begin(d), end = alg.degree_end(d);
  MooreDegree m;
  m.dim = end - begin;
  if (n == 0) {
    for (int b = begin; b < end; ++b) m.chains.push_back(SparseVec::unit(b));
    m.cycles = m.chains;
    return m;
  }
  int rows = X.level(n - 1).algebra()->basis_size();
  Matrix stacked(rows * n, m.dim);
  for (int i = 1; i <= n; ++i) {
    const Matrix& f = L.face_matrix(i, d);
    for (int c = 0; c < m.dim; ++c) {
      SparseVec col = stacked.column(c);
      for (const auto& [row, v] : f.column(c)) col.push_back((i - 1) * rows + row, v);
      stacked.set_column(c, std::move(col));
    }
  }
  for (const auto& k : kernel(stacked)) {
    SparseVec g;
    for (const auto& [c, v] : k) g.push_back(begin + c, v);
    m.chains.push_back(std::move(g));
  }
  Matrix bd(rows, static_cast<int>(m.chains.size()));
  for (std::size_t c = 0; c < m.chains.size(); ++c) {
    m.boundaries.push_back(L.face(0, m.chains[c]));
    bd.set_column(static_cast<int>(c), m.boundaries.back());
  }
  for (const auto& k : kernel(bd)) {
    SparseVec z;
    for (const auto& [c, v] : k) z.add_scaled(m.chains[c], v);
    m.cycles.push_back(std::move(z));
  }
  return m;
}

MooreData moore_data(const TruncatedCWObject& X, int n) {
  MooreData data;
  data.n = n;
  for (int d = 1; d <= X.cutoff(); ++d) data.degrees.emplace(d, moore_degree(X, n, d));
  return data;
}

HomotopyDegree::HomotopyDegree(std::vector<SparseVec> cycles, std::vector<SparseVec> boundaries, bool reverse_pivots)
    : boundaries_(std::move(boundaries)) {
  for (const auto& b : boundaries_) echelon_.insert(b);
  independent_boundaries_ = static_cast<int>(boundaries_.size());
  if (reverse_pivots) std::reverse(cycles.begin(), cycles.end());
  for (auto& z : cycles) {
    int id = echelon_.inputs();
    if (echelon_.insert(z)) {
      rep_inputs_.emplace(id, static_cast<int>(reps_.size()));
      reps_.push_back(std::move(z));
    }
  }
}

std::optional<SparseVec> HomotopyDegree::coordinates(const SparseVec& z) const {
  auto comb = echelon_.express(z);
  if (!comb) return std::nullopt;
  SparseVec out;
  for (const auto& [id, c] : *comb) {
    auto it = rep_inputs_.find(id);
    if (it != rep_inputs_.end()) out.add(it->second, c);
  }
  return out;
}

std::optional<SparseVec> HomotopyDegree::boundary_witness(const SparseVec& z) const {
  auto comb = echelon_.express(z);
  if (!comb) return std::nullopt;
  SparseVec out;
  for (const auto& [id, c] : *comb)
    if (id < independent_boundaries_) out.add(id, c);
  return out;
}

HomotopyDegree homotopy_degree(const TruncatedCWObject& X, int n, int d, bool reverse_pivots) {
  if (n + 1 > X.top()) throw std::out_of_range("homotopy of level n needs level n+1");
  return HomotopyDegree(moore_degree(X, n, d).cycles, moore_degree(X, n + 1, d).boundaries, reverse_pivots);
}

TruncatedCWObject resolve(const PresentedLieAlgebra& lambda, int N, const ResolveOptions& options,
                          ResolveReport* report) {
  if (N < 1) throw std::invalid_argument("resolve needs N >= 1");
  int D = lambda.cutoff();
  TruncatedCWObject X = TruncatedCWObject::base(lambda.generators(), D);
  if (X.level(0).algebra()->letters() != lambda.free_algebra()->letters())
    throw std::logic_error("level-0 alphabet differs from the presentation");
  std::set<std::string> used;
  for (const auto& g : lambda.generators()) used.insert(g.name);
  std::mt19937 rng(options.mix_seed);
  std::uniform_int_distribution<int> coin(-1, 1);

  for (int t = 1; t <= N; ++t) {
    std::vector<TruncatedCWObject::NewGenerator> gens;
    std::optional<TruncatedCWObject> Y;
    bool stale = true;
    for (int d = 1; d <= D; ++d) {
      std::vector<SparseVec> target =
          t == 1 ? lambda.ideal_basis(d) : moore_degree(X, t - 1, d).cycles;
      if (target.empty()) continue;
      if (stale) {
        Y = X.extend(gens);
        stale = false;
      }
      HomotopyDegree h(target, moore_degree(*Y, t, d).boundaries, options.reverse_pivots);
      std::vector<SparseVec> reps = h.representatives();
      if (options.mix_seed) {
        for (std::size_t i = 0; i < reps.size(); ++i) {
          for (std::size_t j = i + 1; j < reps.size(); ++j) reps[i].add_scaled(h.representatives()[j], coin(rng));
          for (const auto& b : h.boundaries()) reps[i].add_scaled(b, coin(rng));
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i) {
        std::string name = "e" + std::to_string(t) + "_" + std::to_string(d) + "_" + std::to_string(i + 1);
        while (!used.insert(name).second) name += "_";
        gens.push_back({name, d, LiePolynomial(X.level(t - 1).algebra(), std::move(reps[i]))});
        stale = true;
      }
    }
    X = X.extend(std::move(gens));
  }
  if (report)
    report->warnings.push_back("pi_" + std::to_string(N) +
                               " is not killed at the top level; vanishing holds for levels 1.." +
                               std::to_string(N - 1) + " through degree " + std::to_string(D));
  return X;
}

SparseVec linearize(const TruncatedCWObject& X, int n, const SparseVec& coords) {
  const CWLevel& L = X.level(n);
  const auto& alg = *L.algebra();
  SparseVec out;
  for (const auto& [b, c] : coords) {
    const auto& el = alg.basis(b);
    if (el.kind != FreeLieAlgebra::Kind::Letter) continue;
    const LevelLetter& l = L.letters()[el.letter];
    if (l.level == n) out.add(l.index, c);
  }
  return out;
}

ResolutionCheck check_resolution(const TruncatedCWObject& X, const PresentedLieAlgebra& lambda) {
  ResolutionCheck r;
  int D = X.cutoff();
  std::map<std::pair<int, int>, MooreDegree> cache;
  auto moore = [&](int n, int d) -> const MooreDegree& {
    auto key = std::make_pair(n, d);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, moore_degree(X, n, d)).first;
    return it->second;
  };
  for (int d = 1; d <= D; ++d) {
    if (X.top() < 1) break;
    if (!same_span(moore(1, d).boundaries, lambda.ideal_basis(d))) r.pi0_matches = false;
  }
  for (int k = 1; k + 1 <= X.top(); ++k)
    for (int d = 1; d <= D; ++d) {
      HomotopyDegree h(moore(k, d).cycles, moore(k + 1, d).boundaries);
      r.pi[k][d] = h.dim();
      if (h.dim() != 0) r.vanishing = false;
    }
  return r;
}

}  // namespace aqtoda
