#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tdpair/generators.hpp"

namespace tdpair {

using Json = nlohmann::ordered_json;

// {"type": "rational"} or {"type": "gfp", "p": P}
Json field_to_json(const Field& f);
const Field& field_from_json(const Json& j);
// "rational", "gfp:P"
const Field& field_from_spec(const std::string& spec);

// MatrixDocument: {"field": ..., "rows": [["1", "-2/3"], ...]}
Json matrix_to_json(const Matrix& m);
// Throws ParseError naming the offending row/column or token.
Matrix matrix_from_json(const Json& j);
Matrix read_matrix_file(const std::string& path);

// Comma separated scalars, e.g. "1,2,-3/4".
std::vector<Scalar> parse_scalar_list(const Field& f, const std::string& text);

Json scalars_to_json(const std::vector<Scalar>& xs);
Json parameters_to_json(const ParameterSet& p);
Json level_to_json(const LevelValue& v);
Json recurrence_to_json(const RecurrenceClass& c);
Json fit_to_json(const ClosedFormFit& fit);
Json verification_to_json(const VerificationReport& rep);
Json relations_to_json(const RelationReport& rep);
Json conjectures_to_json(const ConjectureReport& rep);
// Per-ordering analysis; explicit subspace bases and other results that
// depend on the chosen basis sit under "basis_dependent".
Json analysis_to_json(const OrderingAnalysis& an);
std::string analysis_to_text(const VerificationReport& rep, const std::vector<OrderingAnalysis>& analyses);

Json scan_instance_to_json(const ScanInstance& inst, const Field& f);
Json generalized_to_json(const GeneralizedWitness& w);
Json scan_summary_to_json(const ScanResult& res);
// Newline-delimited records: accepted instances by trial, generalized
// witnesses, then the summary.
std::string scan_to_ndjson(const ScanResult& res);

}  // namespace tdpair
