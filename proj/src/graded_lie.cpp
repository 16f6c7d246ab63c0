#include "aqtoda/graded_lie.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace aqtoda {

namespace {

bool is_lyndon(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!(w < w.substr(i))) return false;
  return !w.empty();
}

int sign_of(int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? -1 : 1; }

SparseVec from_accumulator(std::vector<std::pair<int, Rational>>& acc) {
  std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  std::size_t i = 0;
  while (i < acc.size()) {
    int key = acc[i].first;
    Rational sum = 0;
    while (i < acc.size() && acc[i].first == key) sum += acc[i++].second;
    out.push_back(key, sum);
  }
  return out;
}

}  // namespace

FreeLieAlgebra::FreeLieAlgebra(std::vector<GradedGenerator> generators, int cutoff)
    : cutoff_(cutoff), letters_(std::move(generators)) {
  if (cutoff_ < 1) throw std::invalid_argument("degree cutoff must be >= 1");
  std::sort(letters_.begin(), letters_.end(), [](const GradedGenerator& a, const GradedGenerator& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
  });
  if (letters_.size() >= 0xFFFF) throw std::invalid_argument("too many generators");
  for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
    if (letters_[i].degree < 1) throw std::invalid_argument("generator degree must be >= 1: " + letters_[i].name);
    if (letters_[i].name.empty()) throw std::invalid_argument("empty generator name");
    if (!letter_ids_.emplace(letters_[i].name, i).second)
      throw std::invalid_argument("duplicate generator name: " + letters_[i].name);
  }

  // Words by weight, each weight sorted lexicographically.
  std::vector<std::vector<Word>> by_weight(cutoff_ + 1);
  by_weight[0].push_back(Word());
  for (int w = 1; w <= cutoff_; ++w) {
    for (int l = 0; l < static_cast<int>(letters_.size()); ++l) {
      int e = letters_[l].degree;
      if (e > w) break;
      for (const Word& tail : by_weight[w - e]) by_weight[w].push_back(Word(1, static_cast<char16_t>(l)) + tail);
    }
    std::sort(by_weight[w].begin(), by_weight[w].end());
  }
  for (int w = 1; w <= cutoff_; ++w)
    for (Word& word : by_weight[w]) {
      word_ids_.emplace(word, static_cast<int>(words_.size()));
      word_weight_.push_back(w);
      words_.push_back(std::move(word));
    }
  lead_to_basis_.assign(words_.size(), -1);

  letter_basis_.assign(letters_.size(), -1);
  std::unordered_map<Word, int> lyndon_basis;
  degree_offsets_.assign(cutoff_ + 2, 0);
  for (int id = 0; id < static_cast<int>(words_.size()); ++id) {
    const Word& w = words_[id];
    int d = word_weight_[id];
    BasisElement el;
    el.degree = d;
    el.lead = w;
    bool make = false;
    if (is_lyndon(w)) {
      make = true;
      el.lead_coef = 1;
      if (w.size() == 1) {
        el.kind = Kind::Letter;
        el.letter = w[0];
        el.expansion = SparseVec::unit(id);
      } else {
        std::size_t split = 1;
        while (!is_lyndon(w.substr(split))) ++split;
        el.kind = Kind::Bracket;
        el.left = lyndon_basis.at(w.substr(0, split));
        el.right = lyndon_basis.at(w.substr(split));
        const auto& L = basis_[el.left];
        const auto& R = basis_[el.right];
        el.expansion = commutator(L.expansion, L.degree, R.expansion, R.degree);
      }
    } else if (w.size() % 2 == 0 && d % 2 == 0 && (d / 2) % 2 == 1) {
      Word half = w.substr(0, w.size() / 2);
      auto it = lyndon_basis.find(half);
      if (half + half == w && it != lyndon_basis.end()) {
        make = true;
        el.kind = Kind::Square;
        el.left = el.right = it->second;
        el.lead_coef = 2;
        const auto& U = basis_[it->second];
        el.expansion = commutator(U.expansion, U.degree, U.expansion, U.degree);
      }
    }
    if (!make) continue;
    if (el.expansion.empty() || el.expansion.leading_index() != id || el.expansion.leading_value() != el.lead_coef)
      throw std::logic_error("Hall basis leading-word invariant failed");
    int b = static_cast<int>(basis_.size());
    lead_to_basis_[id] = b;
    if (el.kind != Kind::Square) lyndon_basis.emplace(w, b);
    if (el.kind == Kind::Letter) letter_basis_[el.letter] = b;
    basis_.push_back(std::move(el));
  }
  // basis_ is sorted by (weight, lead word) since words_ is.
  for (int d = 1; d <= cutoff_ + 1; ++d) {
    int n = 0;
    while (n < static_cast<int>(basis_.size()) && basis_[n].degree < d) ++n;
    degree_offsets_[d] = n;
  }
}

int FreeLieAlgebra::letter_index(const std::string& name) const {
  auto it = letter_ids_.find(name);
  if (it == letter_ids_.end()) throw std::invalid_argument("unknown generator: " + name);
  return it->second;
}

int FreeLieAlgebra::degree_begin(int d) const {
  if (d < 1) return 0;
  if (d > cutoff_) return basis_size();
  return degree_offsets_[d];
}

int FreeLieAlgebra::degree_end(int d) const {
  if (d < 1) return 0;
  if (d > cutoff_) return basis_size();
  return degree_offsets_[d + 1];
}

std::string FreeLieAlgebra::basis_string(int b) const {
  const auto& el = basis_[b];
  switch (el.kind) {
    case Kind::Letter:
      return letters_[el.letter].name;
    case Kind::Bracket:
      return "[" + basis_string(el.left) + "," + basis_string(el.right) + "]";
    case Kind::Square:
      return "[" + basis_string(el.left) + "," + basis_string(el.left) + "]";
  }
  return {};
}

int FreeLieAlgebra::weight(const Word& w) const {
  int s = 0;
  for (char16_t c : w) s += letters_[c].degree;
  return s;
}

int FreeLieAlgebra::word_id(const Word& w) const {
  auto it = word_ids_.find(w);
  if (it == word_ids_.end()) throw CutoffError("word of weight " + std::to_string(weight(w)) + " exceeds cutoff");
  return it->second;
}

SparseVec FreeLieAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  std::vector<std::pair<int, Rational>> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) acc.emplace_back(word_id(words_[i] + words_[j]), x * y);
  return from_accumulator(acc);
}

SparseVec FreeLieAlgebra::commutator(const SparseVec& a, int deg_a, const SparseVec& b, int deg_b) const {
  SparseVec out = multiply(a, b);
  out.add_scaled(multiply(b, a), -sign_of(deg_a, deg_b));
  return out;
}

SparseVec FreeLieAlgebra::expand(const SparseVec& coords) const {
  SparseVec out;
  for (const auto& [b, c] : coords) out.add_scaled(basis_[b].expansion, c);
  return out;
}

SparseVec FreeLieAlgebra::reduce(SparseVec tensor) const {
  std::vector<std::pair<int, Rational>> acc;
  while (!tensor.empty()) {
    int id = tensor.leading_index();
    int b = lead_to_basis_[id];
    if (b < 0) throw std::logic_error("tensor is not a Lie element (word " + std::to_string(id) + ")");
    Rational c = tensor.leading_value() / basis_[b].lead_coef;
    tensor.add_scaled(basis_[b].expansion, -c);
    acc.emplace_back(b, c);
  }
  return from_accumulator(acc);
}

std::vector<int> hall_basis_dims(const std::vector<GradedGenerator>& gens, int D) {
  FreeLieAlgebra alg(gens, D);
  std::vector<int> dims;
  for (int d = 1; d <= D; ++d) dims.push_back(alg.dim(d));
  return dims;
}

int lie_dim_oracle(const std::vector<GradedGenerator>& gens, int d) {
  using Tensor = std::map<std::vector<int>, Rational>;
  auto mul = [](const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [u, x] : a)
      for (const auto& [v, y] : b) {
        std::vector<int> w = u;
        w.insert(w.end(), v.begin(), v.end());
        out[w] += x * y;
      }
    return out;
  };
  std::vector<Tensor> commutators;
  std::function<void(Tensor, int)> extend = [&](Tensor t, int deg) {
    if (deg == d) {
      commutators.push_back(std::move(t));
      return;
    }
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
      int e = gens[g].degree;
      if (deg + e > d) continue;
      Tensor letter{{{g}, Rational(1)}};
      Tensor next = mul(t, letter);
      int s = (deg % 2 && e % 2) ? -1 : 1;
      for (const auto& [w, c] : mul(letter, t)) next[w] -= s * c;
      extend(std::move(next), deg + e);
    }
  };
  for (int g = 0; g < static_cast<int>(gens.size()); ++g)
    if (gens[g].degree <= d) extend(Tensor{{{g}, Rational(1)}}, gens[g].degree);

  std::map<std::vector<int>, int> index;
  std::vector<SparseVec> vecs;
  for (const auto& t : commutators) {
    SparseVec v;
    for (const auto& [w, c] : t) {
      if (c == 0) continue;
      auto [it, _] = index.emplace(w, static_cast<int>(index.size()));
      v.add(it->second, c);
    }
    vecs.push_back(std::move(v));
  }
  return rank(vecs);
}

LiePolynomial LiePolynomial::letter(FreeLiePtr alg, const std::string& name) {
  int b = alg->letter_basis(alg->letter_index(name));
  if (b < 0) throw CutoffError("generator " + name + " lies above the degree cutoff");
  return LiePolynomial(std::move(alg), SparseVec::unit(b));
}

int LiePolynomial::degree() const {
  int d = 0;
  for (const auto& [b, c] : coords_) {
    int e = alg_->basis(b).degree;
    if (d == 0) d = e;
    else if (d != e) return -1;
  }
  return d;
}

LiePolynomial LiePolynomial::operator+(const LiePolynomial& o) const {
  if (!alg_) return o;
  return LiePolynomial(alg_, coords_ + o.coords_);
}

LiePolynomial LiePolynomial::operator-(const LiePolynomial& o) const {
  if (!alg_) return -o;
  return LiePolynomial(alg_, coords_ - o.coords_);
}

LiePolynomial LiePolynomial::operator*(const Rational& c) const { return LiePolynomial(alg_, coords_ * c); }

std::string LiePolynomial::to_string() const {
  if (coords_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [b, c] : coords_) {
    Rational a = abs(c);
    if (first) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    if (a != 1) s += aqtoda::to_string(a) + "*";
    s += alg_->basis_string(b);
    first = false;
  }
  return s;
}

LiePolynomial bracket(const LiePolynomial& p, const LiePolynomial& q) {
  if (p.is_zero() || q.is_zero()) return LiePolynomial(p.algebra() ? p.algebra() : q.algebra());
  if (p.algebra() != q.algebra()) throw std::invalid_argument("bracket of elements of different algebras");
  const auto& alg = *p.algebra();
  std::map<int, SparseVec> pp, qq;
  for (const auto& [b, c] : p.coords()) pp[alg.basis(b).degree].add(b, c);
  for (const auto& [b, c] : q.coords()) qq[alg.basis(b).degree].add(b, c);
  SparseVec tensor;
  for (const auto& [dp, vp] : pp)
    for (const auto& [dq, vq] : qq) {
      if (dp + dq > alg.cutoff())
        throw CutoffError("bracket of degree " + std::to_string(dp + dq) + " exceeds cutoff " +
                          std::to_string(alg.cutoff()));
      tensor.add_scaled(alg.commutator(alg.expand(vp), dp, alg.expand(vq), dq), 1);
    }
  return LiePolynomial(p.algebra(), alg.reduce(std::move(tensor)));
}

namespace {

class Parser {
 public:
  Parser(const FreeLiePtr& alg, const std::string& text) : alg_(alg), s_(text) {}

  LiePolynomial parse() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return LiePolynomial(alg_);
      pos_ = save;
    }
    LiePolynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  const FreeLiePtr& alg_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, static_cast<int>(pos_) + 1); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LiePolynomial expr() {
    LiePolynomial acc(alg_);
    bool negate = accept('-');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  LiePolynomial term() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      Rational c;
      try {
        c = parse_rational(s_.substr(start, pos_ - start));
      } catch (const std::invalid_argument&) {
        pos_ = start;
        fail("malformed rational");
      }
      if (!accept('*')) fail("expected '*' after coefficient");
      return atom() * c;
    }
    return atom();
  }

  LiePolynomial atom() {
    skip();
    if (accept('[')) {
      LiePolynomial a = expr();
      if (!accept(',')) fail("expected ','");
      LiePolynomial b = expr();
      if (!accept(']')) fail("expected ']'");
      return bracket(a, b);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '.' || s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected identifier or '['");
    std::string name = s_.substr(start, pos_ - start);
    if (!alg_->has_letter(name)) {
      pos_ = start;
      fail("unknown generator '" + name + "'");
    }
    return LiePolynomial::letter(alg_, name);
  }
};

}  // namespace

LiePolynomial parse_lie(const FreeLiePtr& alg, const std::string& text) { return Parser(alg, text).parse(); }

LieHomomorphism::LieHomomorphism(FreeLiePtr src, FreeLiePtr dst, std::vector<SparseVec> letter_images_tensor)
    : src_(std::move(src)), dst_(std::move(dst)), letter_images_(std::move(letter_images_tensor)) {
  if (letter_images_.size() != src_->letters().size())
    throw std::invalid_argument("homomorphism needs one image per letter");
  int n = src_->basis_size();
  have_tensor_.assign(n, false);
  have_coords_.assign(n, false);
  tensor_.resize(n);
  coords_.resize(n);
}

const SparseVec& LieHomomorphism::tensor_image_of_basis(int b) {
  if (have_tensor_[b]) return tensor_[b];
  const auto& el = src_->basis(b);
  SparseVec t;
  switch (el.kind) {
    case FreeLieAlgebra::Kind::Letter:
      t = letter_images_[el.letter];
      break;
    case FreeLieAlgebra::Kind::Bracket:
    case FreeLieAlgebra::Kind::Square: {
      SparseVec l = tensor_image_of_basis(el.left);
      const SparseVec& r = tensor_image_of_basis(el.right);
      t = dst_->commutator(l, src_->basis(el.left).degree, r, src_->basis(el.right).degree);
      break;
    }
  }
  tensor_[b] = std::move(t);
  have_tensor_[b] = true;
  return tensor_[b];
}

const SparseVec& LieHomomorphism::image_of_basis(int b) {
  if (!have_coords_[b]) {
    coords_[b] = dst_->reduce(tensor_image_of_basis(b));
    have_coords_[b] = true;
  }
  return coords_[b];
}

Matrix LieHomomorphism::matrix(int d) {
  int begin = src_->degree_begin(d), end = src_->degree_end(d);
  Matrix m(dst_->basis_size(), end - begin);
  for (int b = begin; b < end; ++b) m.set_column(b - begin, image_of_basis(b));
  return m;
}

LiePolynomial LieHomomorphism::apply(const LiePolynomial& p) {
  SparseVec out;
  for (const auto& [b, c] : p.coords()) out.add_scaled(image_of_basis(b), c);
  return LiePolynomial(dst_, std::move(out));
}

PresentedLieAlgebra::PresentedLieAlgebra(std::vector<GradedGenerator> generators, std::vector<std::string> relations,
                                         int cutoff)
    : free_(std::make_shared<FreeLieAlgebra>(std::move(generators), cutoff)), relation_text_(std::move(relations)) {
  for (const auto& text : relation_text_) {
    LiePolynomial r;
    try {
      r = parse_lie(free_, text);
    } catch (const CutoffError&) {
      continue;  // relations above the cutoff do not affect degrees <= D
    }
    if (!r.is_homogeneous()) throw std::invalid_argument("inhomogeneous relation: " + text);
    relations_.push_back(std::move(r));
  }
  for (int d = 1; d <= cutoff; ++d) {
    DegreeData& data = degrees_[d];
    auto offer = [&data](SparseVec v) {
      if (data.echelon.insert(v)) data.ideal.push_back(std::move(v));
    };
    for (const auto& r : relations_)
      if (!r.is_zero() && r.degree() == d) offer(r.coords());
    for (int l = 0; l < static_cast<int>(free_->letters().size()); ++l) {
      int e = free_->letters()[l].degree;
      if (e >= d) continue;
      int gb = free_->letter_basis(l);
      SparseVec g = free_->basis(gb).expansion;
      for (const SparseVec& v : degrees_[d - e].ideal)
        offer(free_->reduce(free_->commutator(g, e, free_->expand(v), d - e)));
    }
    for (int b = free_->degree_begin(d); b < free_->degree_end(d); ++b)
      if (!data.echelon.is_pivot(b)) {
        data.local.emplace(b, static_cast<int>(data.complement.size()));
        data.complement.push_back(b);
      }
  }
}

int PresentedLieAlgebra::dim(int d) const {
  auto it = degrees_.find(d);
  if (it == degrees_.end()) {
    if (d > cutoff()) throw CutoffError("degree " + std::to_string(d) + " exceeds cutoff");
    return 0;
  }
  return static_cast<int>(it->second.complement.size());
}

SparseVec PresentedLieAlgebra::project(int d, const SparseVec& hall_coords) const {
  const DegreeData& data = degrees_.at(d);
  SparseVec residue = data.echelon.reduce(hall_coords).residue;
  SparseVec out;
  for (const auto& [b, c] : residue) {
    auto it = data.local.find(b);
    if (it == data.local.end()) throw std::invalid_argument("projection input not of degree " + std::to_string(d));
    out.add(it->second, c);
  }
  return out;
}

Matrix PresentedLieAlgebra::projection_matrix(int d) const {
  int begin = free_->degree_begin(d), end = free_->degree_end(d);
  Matrix m(dim(d), end - begin);
  for (int b = begin; b < end; ++b) m.set_column(b - begin, project(d, SparseVec::unit(b)));
  return m;
}

CoefficientSpace loop_module(const PresentedLieAlgebra& lambda, int m) {
  if (m < 0) throw std::invalid_argument("loop shift must be >= 0");
  CoefficientSpace k;
  k.label = m == 0 ? "Lambda" : "Omega^" + std::to_string(m) + " Lambda";
  k.valid_through = lambda.cutoff() - m;
  for (int d = 1; d <= k.valid_through; ++d)
    if (int n = lambda.dim(d + m)) k.dims[d] = n;
  return k;
}

}  // namespace aqtoda
