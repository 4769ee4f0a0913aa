#include "agmon/report_io.hpp"

#include <cmath>
#include <limits>
#include <cstdio>

#include "agmon/errors.hpp"
#include "agmon/graph_io.hpp"

namespace agmon {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double json_to_double_or_inf(const nlohmann::json& j, const std::string& context) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(errc::schema_violation, context + ": expected a number or \"inf\"");
}

void save_eigenpairs(const std::string& path, const std::vector<EigenPair>& pairs) {
  nlohmann::json doc;
  doc["pairs"] = nlohmann::json::array();
  for (const EigenPair& p : pairs) {
    nlohmann::json jp;
    jp["eigenvalue"] = p.eigenvalue;
    jp["residual"] = p.residual;
    jp["vector"] = p.vector;
    doc["pairs"].push_back(std::move(jp));
  }
  atomic_write(path, doc.dump(2) + "\n");
}

std::vector<EigenPair> load_eigenpairs(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array())
    fail(errc::schema_violation, path + ": expected an object with a \"pairs\" array");
  if (doc["pairs"].empty())
    fail(errc::schema_violation, path + ": \"pairs\" must contain at least one eigenpair");
  std::vector<EigenPair> out;
  for (const auto& jp : doc["pairs"]) {
    if (!jp.is_object() || !jp.contains("eigenvalue") || !jp.contains("residual") ||
        !jp.contains("vector") || !jp["eigenvalue"].is_number() || !jp["residual"].is_number() ||
        !jp["vector"].is_array())
      fail(errc::schema_violation,
           path + ": each pair needs numeric \"eigenvalue\", \"residual\" and a \"vector\" array");
    EigenPair p;
    p.eigenvalue = jp["eigenvalue"].get<double>();
    p.residual = jp["residual"].get<double>();
    for (const auto& x : jp["vector"]) {
      if (!x.is_number()) fail(errc::schema_violation, path + ": vector entries must be numbers");
      p.vector.push_back(x.get<double>());
    }
    if (p.vector.empty()) fail(errc::schema_violation, path + ": empty eigenvector");
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json bound_report_json(const BoundReport& rep, const ExtraColumns& extras) {
  nlohmann::json doc;
  doc["energy"] = rep.energy;
  doc["theorem_bound_ok"] = rep.ok;
  doc["rows"] = nlohmann::json::array();
  for (const BoundRow& row : rep.rows) {
    nlohmann::json jr;
    jr["v"] = row.v;
    jr["abs_phi"] = row.abs_phi;
    jr["rho"] = json_number_or_inf(row.rho);
    jr["bound"] = row.bound;
    jr["slack"] = row.slack;
    for (const auto& [name, col] : extras) jr[name] = col[row.v];
    doc["rows"].push_back(std::move(jr));
  }
  return doc;
}

std::string bound_report_csv(const BoundReport& rep, const ExtraColumns& extras) {
  std::string out = "v,abs_phi,rho,bound,slack";
  for (const auto& [name, col] : extras) {
    (void)col;
    out += "," + name;
  }
  out += "\n";
  for (const BoundRow& row : rep.rows) {
    out += std::to_string(row.v) + "," + format_double(row.abs_phi) + "," +
           format_double(row.rho) + "," + format_double(row.bound) + "," +
           format_double(row.slack);
    for (const auto& [name, col] : extras) {
      (void)name;
      out += "," + format_double(col[row.v]);
    }
    out += "\n";
  }
  return out;
}

nlohmann::json agmon_field_json(const AgmonField& field, const std::vector<double>* fmt) {
  nlohmann::json doc;
  doc["energy"] = field.energy;
  doc["allowed_empty"] = field.allowed_empty;
  doc["rows"] = nlohmann::json::array();
  for (int v = 0; v < static_cast<int>(field.rho.size()); ++v) {
    nlohmann::json jr;
    jr["v"] = v;
    jr["node_cost"] = field.node_cost[v];
    jr["rho"] = json_number_or_inf(field.rho[v]);
    if (fmt) jr["fmt"] = json_number_or_inf((*fmt)[v]);
    doc["rows"].push_back(std::move(jr));
  }
  return doc;
}

std::string agmon_field_csv(const AgmonField& field, const std::vector<double>* fmt) {
  std::string out = fmt ? "v,node_cost,rho,fmt\n" : "v,node_cost,rho\n";
  for (int v = 0; v < static_cast<int>(field.rho.size()); ++v) {
    out += std::to_string(v) + "," + format_double(field.node_cost[v]) + "," +
           format_double(field.rho[v]);
    if (fmt) out += "," + format_double((*fmt)[v]);
    out += "\n";
  }
  return out;
}

nlohmann::json tree_record_json(const TreeExperiment& exp, const DecayComparison& cmp,
                                double recurrence_residual) {
  nlohmann::json doc;
  doc["q"] = exp.q;
  doc["k"] = exp.k;
  doc["w_mag"] = exp.w_mag;
  doc["hub"] = exp.instance.hub;
  doc["lambda1"] = exp.lambda1;
  doc["lambda1_dense"] = exp.lambda1_dense;
  doc["level_profile"] = exp.level_profile;
  doc["level_mean"] = exp.level_mean;
  doc["level_spread"] = exp.level_spread;
  doc["ratios"] = exp.ratios;
  doc["hub_amp"] = exp.hub_amp;
  doc["recurrence_residual"] = recurrence_residual;
  doc["decay"] = {{"level_cost", cmp.level_cost}, {"rate", cmp.rate}, {"ratio", cmp.ratio}};
  return doc;
}

std::string tree_profile_csv(const TreeExperiment& exp, const AgmonField& field) {
  const int m = exp.k + 2;
  std::vector<int> rep_vertex(m, -1);
  for (int v = 0; v < exp.instance.graph.n; ++v) {
    const int lev = exp.instance.level_of[v];
    if (rep_vertex[lev] < 0) rep_vertex[lev] = v;
  }
  std::string out = "level,mean_abs_phi,node_cost,rho_E\n";
  for (int lev = 0; lev < m; ++lev) {
    const int v = rep_vertex[lev];
    out += std::to_string(lev) + "," + format_double(exp.level_profile[lev]) + "," +
           format_double(field.node_cost[v]) + "," + format_double(field.rho[v]) + "\n";
  }
  return out;
}

}  // namespace agmon
