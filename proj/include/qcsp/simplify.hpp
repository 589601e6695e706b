#ifndef QCSP_SIMPLIFY_HPP
#define QCSP_SIMPLIFY_HPP

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsp/model.hpp"
#include "qcsp/properties.hpp"

namespace qcsp {

enum class Action { kRemove, kFix };

std::string_view to_string(Action action);

struct SimplificationStep {
  VarIndex variable = 0;
  std::string variable_name;
  Action action = Action::kRemove;
  Value value = 0;
  /// The property that licensed the edit, on the pre-step problem.
  PropertyQuery justification;
  Verdict verdict;
  /// The licensing verdict was computed on the negation of the problem (for
  /// local pruning of universal variables; dual-shallow queries say so
  /// through their family already).
  bool on_negation = false;
  /// Filled in verification mode.
  std::optional<bool> truth_before;
  std::optional<bool> truth_after;
};

struct SimplificationLog {
  std::vector<SimplificationStep> steps;
};

/// D_x minus {a}. Throws DomainError when a is not in D_x or is its last
/// value. Constraint rows are left alone.
Qcsp remove_value(const Qcsp& phi, VarIndex x, Value a);
/// D_x := {a}. Throws DomainError when a is not in D_x.
Qcsp fix_value(const Qcsp& phi, VarIndex x, Value a);

struct SimplifyOptions {
  CheckOptions check;
  /// Record evaluate_truth before and after every applied step.
  bool verify = false;
};

/// Applies the edit only when licensed: s-removable / s-fixable for an
/// existential variable, dual-shallow removable / fixable for a universal one.
/// Returns nothing when the licence does not hold or the edit is impossible
/// (value absent, or removing the last value).
std::optional<std::pair<Qcsp, SimplificationStep>> justified_step(
    const Qcsp& phi, VarIndex x, Value a, Action action,
    const SimplifyOptions& options = {});

struct Candidate {
  VarIndex variable = 0;
  Value value = 0;
  Action action = Action::kRemove;
};

/// Ordered candidate edits for the current problem.
using CandidatePolicy = std::function<std::vector<Candidate>(const Qcsp&)>;

/// Every removal (ascending variable, then ascending value), followed by every
/// fix on domains with at least two values, in the same order.
std::vector<Candidate> default_candidates(const Qcsp& phi);

/// Applies the first licensed candidate, then asks the policy again, until no
/// candidate applies. Each step strictly shrinks the sum of domain sizes, so
/// at most sum(|D_x|) steps are taken.
std::pair<Qcsp, SimplificationLog> simplify_fixpoint(
    const Qcsp& phi, const SimplifyOptions& options = {},
    const CandidatePolicy& policy = default_candidates);

}  // namespace qcsp

#endif  // QCSP_SIMPLIFY_HPP
