#ifndef QCSP_LOCAL_HPP
#define QCSP_LOCAL_HPP

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsp/model.hpp"
#include "qcsp/properties.hpp"
#include "qcsp/simplify.hpp"

namespace qcsp {

/// How per-constraint verdicts combine into a certificate for the whole
/// problem: one constraint suffices, or every constraint must agree.
enum class Combination { kAnyConstraint, kEveryConstraint };

std::string_view to_string(Combination mode);

/// The sound combination mode for a deep kind. Throws InvalidQuery for
/// removable, which has no sound local rule.
Combination combination_for(Kind kind);

struct LocalReport {
  PropertyQuery query;
  /// verdicts[k] is the deep verdict on the problem restricted to constraint k.
  std::vector<Verdict> per_constraint;
  Combination mode = Combination::kAnyConstraint;
  /// true certifies the property on the whole problem; false is inconclusive.
  bool combined = false;
};

/// Same prefix and domains, constraint set {c_k}. `k` is 0-based; throws
/// InvalidArgument when out of range.
Qcsp project_single_constraint(const Qcsp& phi, std::size_t k);

/// Checks a deep query on each single-constraint projection and folds the
/// verdicts with combination_for(q.kind). Rejects shallow, dual and classical
/// families and the removable kind: local reasoning is unsound for them.
LocalReport local_detect(const Qcsp& phi, const PropertyQuery& q,
                         const CheckOptions& options = {});

/// Removes values certified inconsistent by local reasoning until none is
/// left: on existential variables from the constraints of phi, on universal
/// variables from the (single) constraint of negate(phi). Inconsistent values
/// are deep- and hence shallow-removable, so each removal preserves truth.
/// Never empties a domain.
std::pair<Qcsp, SimplificationLog> local_prune_fixpoint(
    const Qcsp& phi, const SimplifyOptions& options = {});

}  // namespace qcsp

#endif  // QCSP_LOCAL_HPP
