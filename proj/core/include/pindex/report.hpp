#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "pindex/audits.hpp"
#include "pindex/finder.hpp"

namespace pindex {

using Json = nlohmann::json;

// Matrices serialize to row-major nested arrays.
Json matrix_to_json(const Mat& m);
Json matrix_to_json(const CMat& m);

// Grid times, row-major matrices, and defect metadata.
Json to_json(const SymplecticPath& path);
Json to_json(const Crossing& c);
Json to_json(const EkelandIndexReport& r);
Json to_json(const MaslovReport& r);
Json to_json(const SplittingReport& r);
Json to_json(const Theorem36Result& r);
Json to_json(const AuditLine& l);
Json to_json(const Theorem11Audit& a);
Json to_json(const Theorem12Audit& a);
Json to_json(const CharacteristicRecord& r);

// Crossing tables as CSV: sigma, nullity, residual, bracket_width.
std::string crossings_csv(const std::vector<Crossing>& crossings);
// Trajectory dump as CSV: t, x_1 .. x_2n.
std::string trajectory_csv(const std::vector<double>& times, const std::vector<Vec>& samples);

// Standard report envelope. Every integer output of a computation lives
// under "integers"; reproducibility checks compare that subtree bytewise.
Json make_report(const std::string& kind, unsigned long long seed, Json inputs, Json integers,
                 Json residuals, double wall_ms);

// Structural validation against the committed schema (docs/report-schema.json):
// required fields with expected JSON types per report kind. Returns the
// list of violations, empty when the report conforms.
std::vector<std::string> validate_report(const Json& report, const Json& schema);

}  // namespace pindex
