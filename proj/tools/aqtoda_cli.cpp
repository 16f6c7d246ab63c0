// Command-line front end. Every command builds a JSON report; --json prints it
// as is, otherwise a short table is derived from it.
//
// Exit codes: 0 success, 1 mathematical refusal, 2 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aqtoda/io.hpp"

using namespace aqtoda;

namespace {

constexpr int kOk = 0, kRefused = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Options {
  std::string in, resolution, other, inject, generator, indices, coefficients = "loop";
  int n = 1, degree = 0, N = 0, D = 0, ambient = 2, shift = -1;
  unsigned seed = 1;
  bool json = false, expect_zero = false, oracle = false;
};

PresentedLieAlgebra load_presentation(const Options& o) {
  if (o.in.empty()) throw UsageError("--in is required");
  return parse_presentation(read_file(o.in), o.D);
}

// The resolution a command works on: a dump when given, else resolve to N levels.
TruncatedCWObject load_resolution(const Options& o, const PresentedLieAlgebra& lambda, int N) {
  if (!o.resolution.empty()) return parse_resolution(read_file(o.resolution));
  return resolve(lambda, o.N > 0 ? std::max(o.N, N) : N);
}

std::string join(const Json& array) {
  std::string s;
  for (std::size_t i = 0; i < array.size(); ++i) s += (i ? "," : "") + array[i].dump();
  return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int cmd_flag(const Options& o, Json& out, std::ostream& table) {
  Flag phi{o.ambient, {}};
  std::stringstream s(o.indices);
  for (std::string part; std::getline(s, part, ',');) {
    try {
      std::size_t used = 0;
      phi.indices.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("malformed flag index '" + part + "'");
    }
  }
  if (phi.indices.empty()) throw UsageError("--indices needs at least one index");
  try {
    phi.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  FlagComplex K(phi);
  out = flag_report_json(K);
  table << "flag " << phi.to_string() << " in level " << phi.ambient + 2 << "\n"
        << "  f-vector       " << join(out["f_vector"]) << "\n"
        << "  top simplices  " << out["top_count"] << "\n"
        << "  base f-vector  " << join(out["base"]["f_vector"]) << "\n"
        << "  sphere         " << yes(out["sphere"]) << " (euler " << out["boundary"]["euler"] << ")\n";
  if (out.contains("decomposition"))
    table << "  cover " << yes(out["decomposition"]["cover_matches"]) << ", interior two-sided "
          << yes(out["decomposition"]["interior_two_sided"]) << "\n";
  return kOk;
}

int cmd_resolve(const Options& o, Json& out, std::ostream& table) {
  auto lambda = load_presentation(o);
  ResolveReport report;
  TruncatedCWObject X = o.resolution.empty() ? resolve(lambda, o.N > 0 ? o.N : 3, {}, &report)
                                             : parse_resolution(read_file(o.resolution));
  out = resolution_json(X, &lambda);
  out["identities"] = check_simplicial_identities(X).ok;
  for (const auto& level : out["levels"]) {
    table << "level " << level["level"] << ":";
    for (const auto& g : level["generators"]) {
      table << "  " << g["name"].get<std::string>() << " (" << g["degree"] << ")";
      if (g.contains("attach")) table << " -> " << g["attach"].get<std::string>();
    }
    table << "\n";
  }
  for (const auto& row : out["pi"]) table << "pi_" << row["level"] << " dims " << join(row["dims"]) << "\n";
  table << "pi_0 matches " << yes(out["pi0_matches"]) << ", higher pi vanish " << yes(out["vanishing"])
        << ", identities " << yes(out["identities"]) << "\n";
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

int cmd_cohomology(const Options& o, Json& out, std::ostream& table) {
  if (o.n < 2) throw UsageError("cohomology is exposed for n >= 2");
  auto lambda = load_presentation(o);
  TruncatedCWObject X = load_resolution(o, lambda, o.n + 1);
  int shift = o.shift >= 0 ? o.shift : o.n - 2;
  CoefficientSpace K;
  if (o.coefficients == "loop") {
    K = loop_module(lambda, shift);
  } else if (o.coefficients == "ones") {
    K.label = "Q";
    K.valid_through = X.cutoff();
    for (int d = 1; d <= X.cutoff(); ++d) K.dims[d] = 1;
  } else {
    throw UsageError("--coefficients must be loop or ones");
  }
  AQCochainComplex C = build_aq_complex(X, K);
  std::vector<int> degrees;
  if (o.degree > 0) degrees.push_back(o.degree);
  else
    for (int d = 1; d <= X.cutoff(); ++d) degrees.push_back(d);
  out = Json::array();
  table << "H^" << o.n << " with coefficients " << K.label << "\n";
  for (int d : degrees) {
    int dim = C.cohomology_dim(o.n, d);
    out.push_back({{"n", o.n}, {"degree", d}, {"dim", dim}});
    table << "  degree " << d << ": " << dim << "\n";
  }
  return kOk;
}

int cmd_obstruction(const Options& o, Json& out, std::ostream& table) {
  auto lambda = load_presentation(o);
  TruncatedCWObject X = load_resolution(o, lambda, o.n + 2);
  BetaResult beta = beta_obstruction(lambda, X, o.n);
  out = {{"n", o.n}, {"vanishes", beta.vanishes}};
  if (!beta.refusal.empty()) out["refusal"] = beta.refusal;
  if (beta.cocycle) out["cocycle"] = cochain_json(X, *beta.cocycle);
  if (beta.witness) out["witness"] = cochain_json(X, *beta.witness);
  table << "beta_" << o.n << ": " << (beta.vanishes ? "vanishes" : "does not vanish") << "\n";
  if (!beta.refusal.empty()) table << "  " << beta.refusal << "\n";
  return o.expect_zero && !beta.vanishes ? kRefused : kOk;
}

int cmd_difference(const Options& o, Json& out, std::ostream& table) {
  auto lambda = load_presentation(o);
  TruncatedCWObject X = load_resolution(o, lambda, o.n + 2);
  if (X.top() < o.n + 2) throw UsageError("the resolution needs level n+2");
  std::vector<TruncatedCWObject::NewGenerator> a, b;
  for (const auto& g : X.level(o.n + 2).basis()) a.push_back({g.name, g.degree, g.attach});
  if (!o.other.empty()) {
    TruncatedCWObject Y = parse_resolution(read_file(o.other));
    if (Y.top() < o.n + 2) throw UsageError("--other needs level n+2");
    for (const auto& g : Y.level(o.n + 2).basis()) b.push_back({g.name, g.degree, g.attach});
  } else {
    b = a;
    if (!o.inject.empty()) {
      auto target = X.truncate(o.n + 1).level(o.n + 1).algebra();
      auto it = b.begin();
      if (!o.generator.empty())
        it = std::find_if(b.begin(), b.end(), [&](const auto& g) { return g.name == o.generator; });
      if (it == b.end()) throw UsageError("no generator named " + o.generator + " on level n+2");
      try {
        it->attach = transfer(it->attach, target) + parse_lie(target, o.inject);
      } catch (const ParseError& e) {
        throw InputError(std::string("--inject: ") + e.what(), 0, e.column);
      }
    }
  }
  DifferenceReport r = verify_difference_correspondence(X, o.n, a, b);
  out = {{"n", o.n},
         {"zero", r.direct.zero},
         {"equivalence_verified", r.direct.equivalence_verified},
         {"cochain", cochain_json(X, r.direct.cochain)},
         {"pass", r.pass},
         {"detail", r.detail}};
  table << "difference class " << (r.direct.zero ? "zero" : "nonzero") << "; correspondence "
        << (r.pass ? "pass" : "FAIL") << " (" << r.detail << ")\n";
  return r.pass ? kOk : kRefused;
}

int cmd_toda(const Options& o, Json& out, std::ostream& table) {
  TodaInstance inst = seeded_toda_instance(o.seed);
  TodaBracketValue v = toda_bracket(inst.T, inst.X, inst.gamma, inst.top);
  out = {{"seed", inst.seed}, {"shape", inst.shape}, {"total_dim", inst.T.total_dim()}};
  out["report"] = toda_report_json(v);
  if (v.ladder) out["ladder"] = ladder_trace_json(inst.T, *v.ladder);
  table << "seed " << inst.seed << " [" << inst.shape << "], total dim " << inst.T.total_dim() << "\n";
  if (!v.defined) table << "  undefined: " << v.reason << "\n";
  else
    table << "  value " << out["report"]["value"].dump() << ", indeterminacy rank " << v.indeterminacy.size() << "\n";
  if (!o.oracle) return kOk;
  TodaCheck check = check_toda_instance(inst);
  out["oracle"] = {{"sound", check.comparison.sound},
                   {"complete", check.comparison.complete},
                   {"branches", check.enumeration.branches},
                   {"truncated", check.enumeration.truncated},
                   {"detail", check.comparison.detail}};
  bool ok = check.comparison.sound && check.comparison.complete;
  table << "  oracle: " << (ok ? "agrees" : "DISAGREES") << " (" << check.comparison.detail << ")\n";
  return ok ? kOk : kRefused;
}

int cmd_verify(const Options& o, Json& out, std::ostream& table) {
  auto lambda = load_presentation(o);
  TruncatedCWObject X = load_resolution(o, lambda, o.n + 2);
  ExistenceReport r = verify_existence_correspondence(lambda, X, o.n);
  out = {{"n", o.n},
         {"pass", r.pass},
         {"beta_vanishes", r.beta.vanishes},
         {"round_trip", r.round_trip},
         {"classes_equal", r.classes_equal},
         {"detail", r.detail}};
  if (r.image) out["image"] = cochain_json(X, *r.image);
  if (r.witness_beta) out["witness_beta"] = cochain_json(X, *r.witness_beta);
  if (r.witness_image) out["witness_image"] = cochain_json(X, *r.witness_image);
  if (r.minimal) out["minimal_value_pinned"] = r.minimal->pinned;
  table << "existence correspondence n=" << o.n << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.detail << ")\n";
  return r.pass ? kOk : kRefused;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Andre-Quillen obstructions and long Toda brackets"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print the JSON report");

  auto input = [&](CLI::App* c) {
    c->add_option("--in", o.in, "Presentation file");
    c->add_option("-N", o.N, "Level cutoff")->check(CLI::PositiveNumber);
    c->add_option("-D", o.D, "Degree cutoff")->check(CLI::PositiveNumber);
    c->add_option("--resolution", o.resolution, "Resolution dump to use instead of resolving");
  };
  auto level = [&](CLI::App* c) { c->add_option("-n,--n", o.n, "Dimension n")->check(CLI::NonNegativeNumber); };

  auto* flag = app.add_subcommand("flag", "Flag complex statistics");
  flag->add_option("--indices", o.indices, "Comma-separated flag indices")->required();
  flag->add_option("--n", o.ambient, "Ambient n (faces out of level n+2)")->check(CLI::NonNegativeNumber);

  auto* res = app.add_subcommand("resolve", "CW resolution with homotopy table");
  input(res);

  auto* coh = app.add_subcommand("cohomology", "Andre-Quillen cohomology dimensions");
  input(coh);
  level(coh);
  coh->add_option("-d,--degree", o.degree, "Internal degree (all when omitted)");
  coh->add_option("--coefficients", o.coefficients, "loop (Omega^m Lambda) or ones");
  coh->add_option("--shift", o.shift, "Loop shift m (default n-2)");

  auto* obs = app.add_subcommand("obstruction", "The obstruction class beta_n");
  input(obs);
  level(obs);
  obs->add_flag("--expect-zero", o.expect_zero, "Exit 1 unless the obstruction vanishes");

  auto* dif = app.add_subcommand("difference", "Difference class of two attaching maps");
  input(dif);
  level(dif);
  dif->add_option("--other", o.other, "Resolution dump with the second attaching map");
  dif->add_option("--inject", o.inject, "Lie element added to one attaching value");
  dif->add_option("--generator", o.generator, "Generator receiving --inject (default: first)");

  auto* toda = app.add_subcommand("toda", "Long Toda bracket of a seeded tower");
  toda->add_option("--seed", o.seed, "Instance seed");
  toda->add_flag("--oracle", o.oracle, "Compare with brute-force enumeration");

  auto* ver = app.add_subcommand("verify", "Existence correspondence check");
  input(ver);
  level(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Json out;
  std::ostringstream table;
  int code = kOk;
  try {
    if (*flag) code = cmd_flag(o, out, table);
    else if (*res) code = cmd_resolve(o, out, table);
    else if (*coh) code = cmd_cohomology(o, out, table);
    else if (*obs) code = cmd_obstruction(o, out, table);
    else if (*dif) code = cmd_difference(o, out, table);
    else if (*toda) code = cmd_toda(o, out, table);
    else if (*ver) code = cmd_verify(o, out, table);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CutoffError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    // Library refusals: band errors, non-cycle attachments and the like.
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  }
  if (o.json) std::cout << out.dump(2) << "\n";
  else std::cout << table.str();
  return code;
}
