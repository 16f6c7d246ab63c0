#include "aqtoda/flag_complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aqtoda/linalg.hpp"

namespace aqtoda {

std::vector<int> normalize_face_word(std::vector<int> word) {
  // Rightmost-innermost application of d_a d_b -> d_b d_{a+1} (a >= b).
  for (;;) {
    int p = static_cast<int>(word.size()) - 2;
    while (p >= 0 && word[p] < word[p + 1]) --p;
    if (p < 0) return word;
    int a = word[p], b = word[p + 1];
    word[p] = b;
    word[p + 1] = a + 1;
  }
}

void Flag::validate() const {
  if (ambient < 0) throw std::invalid_argument("flag ambient level must be >= 0");
  if (length() > ambient + 2) throw std::invalid_argument("flag longer than n+2");
  for (int t = 0; t < length(); ++t) {
    if (indices[t] < 0 || indices[t] > ambient + 1)
      throw std::invalid_argument("flag index out of range [0, n+1]");
    if (t > 0 && indices[t] <= indices[t - 1])
      throw std::invalid_argument("flag indices must be strictly increasing");
  }
}

std::string Flag::to_string() const {
  std::string s = "(";
  for (int t = 0; t < length(); ++t) s += (t ? "<" : "") + std::to_string(indices[t]);
  return s + ")";
}

FaceWord::FaceWord(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.size() < 2) throw std::invalid_argument("a face word needs at least one bar");
  for (auto& b : blocks_) {
    for (int x : b)
      if (x < 0) throw std::invalid_argument("negative face index");
    b = normalize_face_word(std::move(b));
  }
}

FaceWord FaceWord::parse(const std::string& text) {
  std::vector<std::vector<int>> blocks(1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '|') {
      blocks.emplace_back();
      ++pos;
    } else if (c == 'd') {
      std::size_t end = pos + 1;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == pos + 1) throw std::invalid_argument("expected digits after 'd' in " + text);
      blocks.back().push_back(std::stoi(text.substr(pos + 1, end - pos - 1)));
      pos = end;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      throw std::invalid_argument("unexpected character in face word: " + text);
    }
  }
  return FaceWord(std::move(blocks));
}

bool FaceWord::is_degenerate() const {
  for (std::size_t t = 1; t + 1 < blocks_.size(); ++t)
    if (blocks_[t].empty()) return true;
  return false;
}

std::vector<int> FaceWord::composite() const {
  std::vector<int> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.begin(), b.end());
  return normalize_face_word(std::move(all));
}

FaceWord FaceWord::face(int i) const {
  if (i < 0 || i > dim()) throw std::out_of_range("face index out of range");
  std::vector<std::vector<int>> out;
  out.reserve(blocks_.size() - 1);
  for (int t = 0; t < static_cast<int>(blocks_.size()); ++t) {
    if (t == i) {
      std::vector<int> merged = blocks_[t];
      merged.insert(merged.end(), blocks_[t + 1].begin(), blocks_[t + 1].end());
      out.push_back(std::move(merged));
      ++t;
    } else {
      out.push_back(blocks_[t]);
    }
  }
  return FaceWord(std::move(out));
}

FaceWord FaceWord::degeneracy(int i) const {
  if (i < 0 || i > dim()) throw std::out_of_range("degeneracy index out of range");
  std::vector<std::vector<int>> out = blocks_;
  out.insert(out.begin() + i + 1, std::vector<int>{});
  return FaceWord(std::move(out));
}

FaceWord FaceWord::prefixed(const std::vector<int>& prefix) const {
  std::vector<std::vector<int>> out = blocks_;
  std::vector<int> b0 = prefix;
  b0.insert(b0.end(), out[0].begin(), out[0].end());
  out[0] = std::move(b0);
  return FaceWord(std::move(out));
}

std::string FaceWord::to_string() const {
  std::string s;
  for (std::size_t t = 0; t < blocks_.size(); ++t) {
    if (t) s += '|';
    for (int x : blocks_[t]) s += 'd' + std::to_string(x);
  }
  return s;
}

FaceWord cone_point(const Flag& phi) {
  phi.validate();
  return FaceWord({{}, phi.indices});
}

FaceWord basic_atomic(int k) {
  if (k < 1) throw std::invalid_argument("basic atomic simplex needs k >= 1");
  std::vector<std::vector<int>> blocks(k + 2);
  for (int t = 1; t <= k; ++t) blocks[t] = {0};
  return FaceWord(std::move(blocks));
}

int SubComplex::top_dim() const {
  for (int d = static_cast<int>(simplices.size()) - 1; d >= 0; --d)
    if (!simplices[d].empty()) return d;
  return -1;
}

std::vector<int> SubComplex::f_vector() const {
  std::vector<int> f;
  int top = top_dim();
  for (int d = 0; d <= top; ++d) f.push_back(static_cast<int>(simplices[d].size()));
  return f;
}

long SubComplex::euler() const {
  long chi = 0;
  for (std::size_t d = 0; d < simplices.size(); ++d)
    chi += (d % 2 ? -1L : 1L) * static_cast<long>(simplices[d].size());
  return chi;
}

bool SubComplex::contains(int dim, int id) const {
  if (dim < 0 || dim >= static_cast<int>(simplices.size())) return false;
  return std::binary_search(simplices[dim].begin(), simplices[dim].end(), id);
}

namespace {

// All words of length k normalizing to phi, by inverse rewrites from phi.
std::vector<std::vector<int>> top_words(const std::vector<int>& phi) {
  std::set<std::vector<int>> seen{phi};
  std::deque<std::vector<int>> queue{phi};
  while (!queue.empty()) {
    std::vector<int> w = queue.front();
    queue.pop_front();
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      // (b, a+1) with a >= b came from (a, b)
      int b = w[p], c = w[p + 1];
      if (c - 1 < b) continue;
      std::vector<int> v = w;
      v[p] = c - 1;
      v[p + 1] = b;
      if (seen.insert(v).second) queue.push_back(std::move(v));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

FlagComplex::FlagComplex(const Flag& phi) : flag_(phi) {
  flag_.validate();
  int k = flag_.length();
  simplices_.resize(k + 1);
  index_.resize(k + 1);
  faces_.resize(k + 1);

  auto intern = [this](int d, FaceWord w) {
    std::string key = w.to_string();
    auto [it, inserted] = index_[d].emplace(key, static_cast<int>(simplices_[d].size()));
    if (inserted) simplices_[d].push_back(std::move(w));
    return it->second;
  };

  for (auto& word : top_words(flag_.indices)) {
    std::vector<std::vector<int>> blocks(k + 2);
    for (int t = 0; t < k; ++t) blocks[t + 1] = {word[t]};
    intern(k, FaceWord(std::move(blocks)));
  }
  for (int d = k; d >= 1; --d) {
    faces_[d].resize(simplices_[d].size());
    for (std::size_t s = 0; s < simplices_[d].size(); ++s) {
      for (int i = 0; i <= d; ++i) {
        FaceWord f = simplices_[d][s].face(i);
        faces_[d][s].push_back(intern(d - 1, std::move(f)));
      }
    }
  }
  faces_[0].resize(simplices_[0].size());
}

std::vector<int> FlagComplex::f_vector() const {
  std::vector<int> f;
  for (const auto& s : simplices_) f.push_back(static_cast<int>(s.size()));
  return f;
}

long FlagComplex::euler() const { return whole().euler(); }

std::optional<int> FlagComplex::find(const FaceWord& w) const {
  int d = w.dim();
  if (d < 0 || d >= static_cast<int>(index_.size())) return std::nullopt;
  auto it = index_[d].find(w.to_string());
  if (it == index_[d].end()) return std::nullopt;
  return it->second;
}

bool FlagComplex::check_simplicial_identities() const {
  for (int d = 2; d < static_cast<int>(simplices_.size()); ++d)
    for (int s = 0; s < count(d); ++s)
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i)
          if (face(d - 1, face(d, s, j), i) != face(d - 1, face(d, s, i), j - 1)) return false;
  return true;
}

SubComplex FlagComplex::whole() const {
  SubComplex c{this, {}};
  for (const auto& s : simplices_) {
    std::vector<int> ids(s.size());
    std::iota(ids.begin(), ids.end(), 0);
    c.simplices.push_back(std::move(ids));
  }
  return c;
}

SubComplex FlagComplex::closure(const std::vector<std::pair<int, int>>& generators) const {
  std::vector<std::set<int>> sets(simplices_.size());
  for (const auto& [d, id] : generators) sets[d].insert(id);
  for (int d = static_cast<int>(sets.size()) - 1; d >= 1; --d)
    for (int id : sets[d])
      for (int i = 0; i <= d; ++i) sets[d - 1].insert(face(d, id, i));
  SubComplex c{this, {}};
  for (auto& s : sets) c.simplices.emplace_back(s.begin(), s.end());
  return c;
}

SubComplex FlagComplex::base_complex() const {
  int k = dim();
  std::vector<std::pair<int, int>> gens;
  if (k >= 1)
    for (int s = 0; s < count(k); ++s) gens.emplace_back(k - 1, face(k, s, 0));
  return closure(gens);
}

SubComplex FlagComplex::top_complex() const {
  int k = dim();
  std::vector<std::pair<int, int>> gens;
  for (int s = 0; s < count(k); ++s)
    for (int i = 1; i <= k; ++i) gens.emplace_back(k - 1, face(k, s, i));
  return closure(gens);
}

SubComplex FlagComplex::free_boundary(const SubComplex& c) const {
  int top = c.top_dim();
  std::vector<std::pair<int, int>> gens;
  if (top >= 1) {
    std::map<int, int> incidences;
    for (int id : c.simplices[top])
      for (int i = 0; i <= top; ++i) ++incidences[face(top, id, i)];
    for (const auto& [id, n] : incidences)
      if (n == 1) gens.emplace_back(top - 1, id);
  }
  SubComplex out = closure(gens);
  return out;
}

SubComplex FlagComplex::polytope_boundary() const { return free_boundary(whole()); }

SphereReport check_sphere(const SubComplex& c, int dim) {
  SphereReport r;
  r.f_vector = c.f_vector();
  r.euler = c.euler();
  long expected = 1 + (dim % 2 ? -1 : 1);
  const FlagComplex& K = *c.owner;

  r.pseudomanifold = c.top_dim() == dim;
  if (r.pseudomanifold && dim >= 1) {
    std::map<int, int> incidences;
    for (int id : c.simplices[dim])
      for (int i = 0; i <= dim; ++i) ++incidences[K.face(dim, id, i)];
    for (int id : c.simplices[dim - 1]) {
      auto it = incidences.find(id);
      if (it == incidences.end() || it->second != 2) r.pseudomanifold = false;
    }
  }

  // Union-find over vertices along edges.
  const std::vector<int> empty;
  const auto& verts = c.simplices.empty() ? empty : c.simplices[0];
  std::map<int, int> parent;
  for (int v : verts) parent[v] = v;
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  if (c.simplices.size() > 1)
    for (int e : c.simplices[1]) parent[root(K.face(1, e, 0))] = root(K.face(1, e, 1));
  std::set<int> roots;
  for (int v : verts) roots.insert(root(v));
  r.connected = roots.size() == 1;

  if (dim == 0)
    r.verdict = r.euler == 2 && r.f_vector == std::vector<int>{2};
  else
    r.verdict = r.euler == expected && r.connected && r.pseudomanifold;
  return r;
}

std::vector<int> relative_homology_ranks(const SubComplex& c, const SubComplex& rel) {
  const FlagComplex& K = *c.owner;
  int top = c.top_dim();
  if (top < 0) return {};
  // Relative chains: simplices of c outside rel, renumbered per dimension.
  std::vector<std::map<int, int>> local(top + 1);
  for (int d = 0; d <= top; ++d)
    for (int id : c.simplices[d])
      if (!rel.contains(d, id)) local[d].emplace(id, static_cast<int>(local[d].size()));
  std::vector<int> ranks(top + 2, 0);
  for (int d = 1; d <= top; ++d) {
    Matrix m(static_cast<int>(local[d - 1].size()), static_cast<int>(local[d].size()));
    for (const auto& [id, col] : local[d]) {
      SparseVec v;
      for (int i = 0; i <= d; ++i) {
        auto it = local[d - 1].find(K.face(d, id, i));
        if (it != local[d - 1].end()) v.add(it->second, i % 2 ? -1 : 1);
      }
      m.set_column(col, std::move(v));
    }
    ranks[d] = rank(m);
  }
  std::vector<int> h(top + 1);
  for (int d = 0; d <= top; ++d)
    h[d] = static_cast<int>(local[d].size()) - ranks[d] - ranks[d + 1];
  return h;
}

namespace {

std::set<std::pair<int, int>> image_of(const FlagComplex& K, const Flag& residual,
                                       const std::vector<int>& prefix, bool& all_found) {
  FlagComplex R(residual);
  std::set<std::pair<int, int>> out;
  for (int d = 0; d <= R.dim(); ++d)
    for (const auto& w : R.simplices(d)) {
      auto id = K.find(w.prefixed(prefix));
      if (!id) {
        all_found = false;
        continue;
      }
      out.emplace(d, *id);
    }
  return out;
}

Flag without(const Flag& phi, std::vector<int> positions) {
  Flag r{phi.ambient, {}};
  for (int t = 0; t < phi.length(); ++t)
    if (std::find(positions.begin(), positions.end(), t) == positions.end())
      r.indices.push_back(phi.indices[t]);
  return r;
}

}  // namespace

BaseDecomposition base_decomposition(const FlagComplex& K) {
  BaseDecomposition out;
  const Flag& phi = K.flag();
  int k = phi.length();
  SubComplex base = K.base_complex();
  if (k < 2) {
    out.cover_matches = true;
    out.interior_two_sided = true;
    return out;
  }
  std::set<std::pair<int, int>> base_set;
  for (int d = 0; d < static_cast<int>(base.simplices.size()); ++d)
    for (int id : base.simplices[d]) base_set.emplace(d, id);

  bool found = true;
  std::vector<std::set<std::pair<int, int>>> piece_sets;
  std::set<std::pair<int, int>> cover;
  for (int j = 1; j <= k; ++j) {
    BaseDecomposition::Piece piece;
    piece.j = j;
    piece.prefix = {phi.indices[j - 1] - j + 1};
    piece.residual = without(phi, {j - 1});
    auto s = image_of(K, piece.residual, piece.prefix, found);
    piece.simplices.owner = &K;
    piece.simplices.simplices.assign(k, {});
    for (const auto& [d, id] : s) piece.simplices.simplices[d].push_back(id);
    cover.insert(s.begin(), s.end());
    piece_sets.push_back(std::move(s));
    out.pieces.push_back(std::move(piece));
  }
  out.cover_matches = found && cover == base_set;

  for (int j = 1; j <= k; ++j)
    for (int l = j + 1; l <= k; ++l) {
      BaseDecomposition::Overlap ov;
      ov.j = j;
      ov.l = l;
      int cj = phi.indices[j - 1] - j + 1;
      int cl = phi.indices[l - 1] - l + 1;
      ov.prefix = normalize_face_word({cl, cj});
      ov.residual = without(phi, {j - 1, l - 1});
      bool ok = true;
      auto expected = image_of(K, ov.residual, ov.prefix, ok);
      std::set<std::pair<int, int>> actual;
      std::set_intersection(piece_sets[j - 1].begin(), piece_sets[j - 1].end(),
                            piece_sets[l - 1].begin(), piece_sets[l - 1].end(),
                            std::inserter(actual, actual.begin()));
      ov.matches = ok && actual == expected;
      out.overlaps.push_back(std::move(ov));
    }

  // Interior ridges of the base are shared by exactly two facets.
  SubComplex rim = K.free_boundary(base);
  std::map<int, int> incidences;
  for (int id : base.simplices[k - 1])
    for (int i = 0; i < k; ++i) ++incidences[K.face(k - 1, id, i)];
  out.interior_two_sided = true;
  for (int id : base.simplices[k - 2])
    if (!rim.contains(k - 2, id) && incidences[id] != 2) out.interior_two_sided = false;
  return out;
}

std::vector<Flag> mapping_space(int n, int k) {
  if (n < 0 || k < 0 || k > n + 2) throw std::invalid_argument("mapping_space needs 0 <= k <= n+2");
  std::vector<Flag> out;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  int top = n + 1;
  for (;;) {
    out.push_back(Flag{n, pick});
    int t = k - 1;
    while (t >= 0 && pick[t] == top - (k - 1 - t)) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }
  return out;
}

}  // namespace aqtoda
