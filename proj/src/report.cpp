#include "qcsp/report.hpp"

#include <algorithm>

namespace qcsp {

using nlohmann::json;

json tuple_json(std::span<const Value> t) {
  return json(std::vector<Value>(t.begin(), t.end()));
}

json problem_json(const Qcsp& phi) {
  json vars = json::array();
  for (const auto& v : phi.variables()) {
    vars.push_back({{"name", v.name},
                    {"quantifier", std::string(to_string(v.quantifier))},
                    {"domain", v.domain}});
  }
  json constraints = json::array();
  for (const auto& c : phi.constraints()) {
    json scope = json::array();
    for (VarIndex x : c.scope()) scope.push_back(phi.name(x));
    constraints.push_back({{"scope", scope}, {"rows", c.size()}});
  }
  return {{"variables", vars}, {"constraints", constraints}};
}

json query_json(const PropertyQuery& q) {
  json j = {{"family", std::string(to_string(q.family))},
            {"kind", std::string(to_string(q.kind))},
            {"variable", q.variable},
            {"text", describe(q)}};
  if (q.a) j["a"] = *q.a;
  if (q.b) j["b"] = *q.b;
  if (q.depends_on) j["depends_on"] = *q.depends_on;
  return j;
}

json verdict_json(const Verdict& v) {
  json j = {{"holds", v.holds},
            {"method",
             {{"family", std::string(to_string(v.method.family))},
              {"engine", std::string(to_string(v.method.engine))},
              {"rhs", v.method.rhs == RhsSet::kOutcomes ? "out" : "sol"}}}};
  j["witness"] = v.witness ? tuple_json(*v.witness) : json(nullptr);
  j["partner"] = v.partner ? tuple_json(*v.partner) : json(nullptr);
  j["replacement"] = v.replacement ? json(*v.replacement) : json(nullptr);
  return j;
}

json outcomes_json(const OutcomeSet& out, std::optional<std::size_t> limit) {
  const std::size_t shown = std::min(out.size(), limit.value_or(out.size()));
  json tuples = json::array();
  for (std::size_t k = 0; k < shown; ++k) {
    tuples.push_back(tuple_json(out.tuples()[k]));
  }
  return {{"engine", std::string(to_string(out.provenance()))},
          {"count", out.size()},
          {"truncated", shown < out.size()},
          {"tuples", tuples}};
}

json step_json(const SimplificationStep& step) {
  json j = {{"variable", step.variable_name},
            {"index", step.variable + 1},
            {"action", std::string(to_string(step.action))},
            {"value", step.value},
            {"justification", query_json(step.justification)},
            {"verdict", verdict_json(step.verdict)},
            {"on_negation", step.on_negation}};
  if (step.truth_before) j["truth_before"] = *step.truth_before;
  if (step.truth_after) j["truth_after"] = *step.truth_after;
  return j;
}

json local_json(const LocalReport& r) {
  json per = json::array();
  for (std::size_t k = 0; k < r.per_constraint.size(); ++k) {
    per.push_back({{"constraint", k + 1},
                   {"verdict", verdict_json(r.per_constraint[k])}});
  }
  return {{"query", query_json(r.query)},
          {"mode", std::string(to_string(r.mode))},
          {"per_constraint", per},
          {"combined", r.combined}};
}

json proposition_json(const PropositionReport& r) {
  json tallies = json::array();
  for (const auto& t : r.tallies) {
    tallies.push_back({{"id", t.id},
                       {"title", t.title},
                       {"checks", t.checks},
                       {"violations", t.violations}});
  }
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"proposition", v.proposition},
                          {"instance_index", v.instance_index},
                          {"detail", v.detail},
                          {"instance", v.instance}});
  }
  json skipped = json::array();
  for (const auto& s : r.skipped) {
    skipped.push_back({{"instance_index", s.instance_index},
                       {"reason", s.reason}});
  }
  return {{"instances", r.instances},
          {"ok", r.ok()},
          {"tallies", tallies},
          {"violations", violations},
          {"skipped", skipped}};
}

}  // namespace qcsp
