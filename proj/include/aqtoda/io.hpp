#pragma once

// JSON formats: presentations, resolution dumps, and the reports the CLI
// prints. Rationals are written as strings ("-3/2") so no precision is lost.

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "aqtoda/aq_cohomology.hpp"
#include "aqtoda/chain_model.hpp"
#include "aqtoda/flag_complex.hpp"
#include "aqtoda/graded_lie.hpp"
#include "aqtoda/ladder_toda.hpp"
#include "aqtoda/simplicial_cw.hpp"

namespace aqtoda {

using Json = nlohmann::ordered_json;

// A malformed input file. line/column are 1-based, 0 when unknown.
struct InputError : std::runtime_error {
  InputError(const std::string& msg, int line, int column);
  int line, column;
};

// {"generators":[{"name":"x","degree":1}], "relations":["[x,x]"], "degree_cutoff":6}
// A cutoff given by the caller (> 0) overrides the file's.
PresentedLieAlgebra parse_presentation(const std::string& text, int cutoff_override = 0);
Json presentation_json(const PresentedLieAlgebra& lambda);

Json sparse_json(const SparseVec& v);
Json matrix_json(const Matrix& m);  // dense rows of rational strings
Json rational_json(const Rational& q);

// Generators per level with attaching values in the Lie grammar, plus Moore
// chain/cycle dimension tables. The pi table is added when lambda is given.
Json resolution_json(const TruncatedCWObject& X, const PresentedLieAlgebra* lambda = nullptr);
// Rebuilds the object from the "cutoff" and "levels" fields of a dump.
TruncatedCWObject parse_resolution(const Json& dump);
TruncatedCWObject parse_resolution(const std::string& text);

// generator name -> coefficient vector (length K_d), per internal degree.
Json cochain_json(const TruncatedCWObject& X, const AQClass& c);

Json flag_report_json(const FlagComplex& K);
Json ladder_trace_json(const ChainComplexQ& T, const LadderDiagram& L);
Json toda_report_json(const TodaBracketValue& v);

}  // namespace aqtoda
