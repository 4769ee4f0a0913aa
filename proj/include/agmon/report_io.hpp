#pragma once

// Serialization for solver and verification artifacts.  Formats are stable:
//   - eigenpairs JSON: {"pairs": [{"eigenvalue": E, "residual": r, "vector": [...]}]}
//   - bound report JSON: {"energy": E, "theorem_bound_ok": b,
//       "rows": [{"v": i, "abs_phi": x, "rho": r, "bound": b, "slack": s}, ...]}
//     with +inf serialized as the string "inf"
//   - bound report CSV: header v,abs_phi,rho,bound,slack; one row per vertex
// Optional extra columns (refined/walk variants) are appended after the base
// columns in both formats, never interleaved.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "agmon/bounds.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/tree_experiment.hpp"

namespace agmon {

// %.17g rendering; infinities become "inf"/"-inf".
std::string format_double(double x);

// JSON value for a possibly infinite quantity: a number, or the string "inf".
nlohmann::json json_number_or_inf(double x);

// Reads a possibly infinite quantity back ("inf" string or number).
double json_to_double_or_inf(const nlohmann::json& j, const std::string& context);

void save_eigenpairs(const std::string& path, const std::vector<EigenPair>& pairs);
std::vector<EigenPair> load_eigenpairs(const std::string& path);

using ExtraColumns = std::vector<std::pair<std::string, std::vector<double>>>;

// Pinned report shape; extra columns add one key per row after the base keys.
nlohmann::json bound_report_json(const BoundReport& rep, const ExtraColumns& extras = {});
std::string bound_report_csv(const BoundReport& rep, const ExtraColumns& extras = {});

// Distance-field emission: rows of v, node_cost, rho (+ optional fmt column).
nlohmann::json agmon_field_json(const AgmonField& field, const std::vector<double>* fmt);
std::string agmon_field_csv(const AgmonField& field, const std::vector<double>* fmt);

// Tree experiment record and its level-profile CSV
// (columns: level,mean_abs_phi,node_cost,rho_E; the final row is the hub).
nlohmann::json tree_record_json(const TreeExperiment& exp, const DecayComparison& cmp,
                                double recurrence_residual);
std::string tree_profile_csv(const TreeExperiment& exp, const AgmonField& field);

}  // namespace agmon
