#ifndef QCSP_REPORT_HPP
#define QCSP_REPORT_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "json.hpp"
#include "qcsp/game.hpp"
#include "qcsp/harness.hpp"
#include "qcsp/local.hpp"
#include "qcsp/model.hpp"
#include "qcsp/properties.hpp"
#include "qcsp/simplify.hpp"

namespace qcsp {

// JSON views of analysis results. The shapes are described by
// docs/report.schema.json.

nlohmann::json tuple_json(std::span<const Value> t);
nlohmann::json problem_json(const Qcsp& phi);
nlohmann::json query_json(const PropertyQuery& q);
nlohmann::json verdict_json(const Verdict& v);
/// At most `limit` tuples are listed; "count" is always the full size.
nlohmann::json outcomes_json(const OutcomeSet& out,
                             std::optional<std::size_t> limit = std::nullopt);
nlohmann::json step_json(const SimplificationStep& step);
nlohmann::json local_json(const LocalReport& r);
nlohmann::json proposition_json(const PropositionReport& r);

}  // namespace qcsp

#endif  // QCSP_REPORT_HPP
