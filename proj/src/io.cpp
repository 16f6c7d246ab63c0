#include "aqtoda/io.hpp"

#include <future>

namespace aqtoda {

InputError::InputError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : msg),
      line(line),
      column(column) {}

namespace {

// Line and column of a byte offset (1-based, as nlohmann reports it).
std::pair<int, int> locate(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = locate(text, e.byte);
    throw InputError("malformed JSON", line, column);
  }
}

template <class T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"", 0, 0);
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(where + ": \"" + key + "\" has the wrong type", 0, 0);
  }
}

// One result per degree 1..D, computed on a small pool of threads.
template <class F>
auto per_degree(int D, F fn) {
  using R = decltype(fn(1));
  std::vector<std::future<R>> jobs;
  for (int d = 1; d <= D; ++d) jobs.push_back(std::async(std::launch::async, fn, d));
  std::vector<R> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Json graded_map_json(const GradedMap& f) {
  Json blocks = Json::object();
  for (const auto& [d, m] : f.blocks) blocks[std::to_string(d)] = matrix_json(m);
  return {{"shift", f.shift}, {"blocks", blocks}};
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json sparse_json(const SparseVec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v) out[std::to_string(i)] = to_string(c);
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.to_dense()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    rows.push_back(r);
  }
  return rows;
}

PresentedLieAlgebra parse_presentation(const std::string& text, int cutoff_override) {
  Json j = parse_json(text);
  std::vector<GradedGenerator> gens;
  auto raw = field<std::vector<Json>>(j, "generators", "presentation");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string where = "generator " + std::to_string(i);
    GradedGenerator g{field<std::string>(raw[i], "name", where), field<int>(raw[i], "degree", where)};
    if (g.degree < 1) throw InputError(where + ": degree must be at least 1", 0, 0);
    gens.push_back(g);
  }
  std::vector<std::string> relations;
  if (j.contains("relations")) relations = field<std::vector<std::string>>(j, "relations", "presentation");
  int cutoff = cutoff_override > 0 ? cutoff_override : field<int>(j, "degree_cutoff", "presentation");
  if (cutoff < 1) throw InputError("degree cutoff must be at least 1", 0, 0);
  try {
    return PresentedLieAlgebra(gens, relations, cutoff);
  } catch (const ParseError& e) {
    throw InputError(std::string("relation: ") + e.what(), 0, e.column);
  }
}

Json presentation_json(const PresentedLieAlgebra& lambda) {
  Json gens = Json::array();
  for (const auto& g : lambda.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  return {{"generators", gens}, {"relations", lambda.relation_text()}, {"degree_cutoff", lambda.cutoff()}};
}

Json resolution_json(const TruncatedCWObject& X, const PresentedLieAlgebra* lambda) {
  int D = X.cutoff();
  Json out;
  out["cutoff"] = D;
  out["top"] = X.top();
  Json levels = Json::array();
  for (int n = 0; n <= X.top(); ++n) {
    Json gens = Json::array();
    for (const auto& g : X.level(n).basis()) {
      Json e = {{"name", g.name}, {"degree", g.degree}};
      if (n > 0) e["attach"] = g.attach.to_string();
      gens.push_back(e);
    }
    levels.push_back({{"level", n}, {"generators", gens}});
  }
  out["levels"] = levels;

  Json degrees = Json::array();
  for (int d = 1; d <= D; ++d) degrees.push_back(d);
  Json chains = Json::array(), cycles = Json::array();
  for (int n = 0; n <= X.top(); ++n) {
    auto per = per_degree(D, [&](int d) {
      auto m = moore_degree(X, n, d);
      return std::make_pair(static_cast<int>(m.chains.size()), static_cast<int>(m.cycles.size()));
    });
    Json c = Json::array(), z = Json::array();
    for (const auto& [a, b] : per) {
      c.push_back(a);
      z.push_back(b);
    }
    chains.push_back(c);
    cycles.push_back(z);
  }
  out["moore"] = {{"degrees", degrees}, {"chains", chains}, {"cycles", cycles}};

  if (lambda) {
    ResolutionCheck check = check_resolution(X, *lambda);
    Json pi = Json::array();
    for (const auto& [n, row] : check.pi) {
      Json r = Json::array();
      for (int d = 1; d <= D; ++d) r.push_back(row.count(d) ? row.at(d) : 0);
      pi.push_back({{"level", n}, {"dims", r}});
    }
    out["pi"] = pi;
    out["pi0_matches"] = check.pi0_matches;
    out["vanishing"] = check.vanishing;
  }
  return out;
}

TruncatedCWObject parse_resolution(const Json& dump) {
  int cutoff = field<int>(dump, "cutoff", "resolution");
  auto levels = field<std::vector<Json>>(dump, "levels", "resolution");
  if (levels.empty()) throw InputError("resolution: no levels", 0, 0);
  std::vector<GradedGenerator> base;
  for (const auto& g : field<std::vector<Json>>(levels[0], "generators", "level 0"))
    base.push_back({field<std::string>(g, "name", "level 0"), field<int>(g, "degree", "level 0")});
  TruncatedCWObject X = TruncatedCWObject::base(base, cutoff);
  for (std::size_t n = 1; n < levels.size(); ++n) {
    std::string where = "level " + std::to_string(n);
    std::vector<std::tuple<std::string, int, std::string>> gens;
    for (const auto& g : field<std::vector<Json>>(levels[n], "generators", where))
      gens.emplace_back(field<std::string>(g, "name", where), field<int>(g, "degree", where),
                        field<std::string>(g, "attach", where));
    try {
      X = X.extend_parsed(gens);
    } catch (const ParseError& e) {
      throw InputError(where + ": " + e.what(), 0, e.column);
    } catch (const CWExtendError& e) {
      throw InputError(where + ": " + e.what(), 0, 0);
    }
  }
  return X;
}

TruncatedCWObject parse_resolution(const std::string& text) { return parse_resolution(parse_json(text)); }

Json cochain_json(const TruncatedCWObject& X, const AQClass& c) {
  Json values = Json::object();
  for (const auto& [d, m] : c.values) {
    auto positions = generators_in_degree(X, c.n, d);
    Json per = Json::object();
    for (int j = 0; j < m.cols(); ++j) {
      Json coeffs = Json::array();
      for (int i = 0; i < m.rows(); ++i) coeffs.push_back(to_string(m.at(i, j)));
      per[X.level(c.n).basis()[positions[j]].name] = coeffs;
    }
    values[std::to_string(d)] = per;
  }
  return {{"n", c.n}, {"coefficients", c.coefficients}, {"values", values}};
}

Json flag_report_json(const FlagComplex& K) {
  const int k = K.dim();
  SphereReport sphere = check_sphere(K.polytope_boundary(), k - 1);
  SubComplex base = K.base_complex();
  Json out;
  out["flag"] = K.flag().indices;
  out["ambient"] = K.flag().ambient;
  out["f_vector"] = K.f_vector();
  out["euler"] = K.euler();
  out["sphere"] = sphere.verdict;
  out["top_count"] = K.count(k);
  out["identities"] = K.check_simplicial_identities();
  out["boundary"] = {{"f_vector", sphere.f_vector},
                     {"euler", sphere.euler},
                     {"pseudomanifold", sphere.pseudomanifold},
                     {"connected", sphere.connected}};
  out["base"] = {{"f_vector", base.f_vector()}, {"top_count", k >= 1 ? base.f_vector().back() : 0}};
  if (k >= 2) {
    BaseDecomposition dec = base_decomposition(K);
    Json pieces = Json::array();
    for (const auto& p : dec.pieces)
      pieces.push_back({{"j", p.j}, {"prefix", p.prefix}, {"residual", p.residual.indices}, {"f_vector", p.simplices.f_vector()}});
    Json overlaps = Json::array();
    for (const auto& o : dec.overlaps)
      overlaps.push_back({{"j", o.j}, {"l", o.l}, {"prefix", o.prefix}, {"matches", o.matches}});
    out["decomposition"] = {{"pieces", pieces},
                            {"overlaps", overlaps},
                            {"cover_matches", dec.cover_matches},
                            {"interior_two_sided", dec.interior_two_sided}};
  }
  return out;
}

Json ladder_trace_json(const ChainComplexQ& T, const LadderDiagram& L) {
  Json rungs = Json::array();
  for (std::size_t i = 0; i < L.rungs.size(); ++i) {
    const auto& r = L.rungs[i];
    GradedMap solve_residual = add(apply_internal(T, r.level, r.H), r.gamma, -1);
    const GradedMap& next = i + 1 < L.rungs.size() ? L.rungs[i + 1].gamma : L.bottom_gamma;
    GradedMap descent_residual = add(apply_boundary(T, r.level, r.H), next, -1);
    rungs.push_back({{"level", r.level},
                     {"gamma", graded_map_json(r.gamma)},
                     {"H", graded_map_json(r.H)},
                     {"solve_residual_zero", solve_residual.is_zero()},
                     {"descent_residual_zero", descent_residual.is_zero()}});
  }
  return {{"top", L.top},
          {"bottom", L.bottom},
          {"corrections", L.corrections},
          {"rungs", rungs},
          {"bottom_gamma", graded_map_json(L.bottom_gamma)}};
}

Json toda_report_json(const TodaBracketValue& v) {
  Json out;
  out["defined"] = v.defined;
  if (!v.defined) {
    out["reason"] = v.reason;
    return out;
  }
  out["top"] = v.top;
  out["bottom"] = v.bottom;
  Json slots = Json::array();
  for (const auto& [d, c, m] : v.space.slots) slots.push_back({{"degree", d}, {"column", c}, {"class", m}});
  out["slots"] = slots;
  out["value"] = sparse_json(v.value);
  Json ind = Json::array();
  for (const auto& k : v.indeterminacy) ind.push_back(sparse_json(k));
  out["indeterminacy"] = ind;
  return out;
}

}  // namespace aqtoda
