#include "qcsp/simplify.hpp"

#include <algorithm>

namespace qcsp {

std::string_view to_string(Action action) {
  return action == Action::kRemove ? "removed" : "fixed";
}

Qcsp remove_value(const Qcsp& phi, VarIndex x, Value a) {
  const auto& domain = phi.domain(x);
  if (!phi.variable(x).contains(a)) {
    throw DomainError("value " + std::to_string(a) + " is not in the domain of '" +
                      phi.name(x) + "'");
  }
  if (domain.size() < 2) {
    throw DomainError("removing " + std::to_string(a) + " would empty the domain of '" +
                      phi.name(x) + "'");
  }
  std::vector<Value> rest;
  rest.reserve(domain.size() - 1);
  std::copy_if(domain.begin(), domain.end(), std::back_inserter(rest),
               [a](Value v) { return v != a; });
  return phi.with_domain(x, std::move(rest));
}

Qcsp fix_value(const Qcsp& phi, VarIndex x, Value a) {
  if (!phi.variable(x).contains(a)) {
    throw DomainError("value " + std::to_string(a) + " is not in the domain of '" +
                      phi.name(x) + "'");
  }
  return phi.with_domain(x, {a});
}

namespace {

// Outcome sets of one problem and of its negation, computed on first use.
class OutcomeCache {
 public:
  OutcomeCache(const Qcsp& phi, const CheckOptions& options)
      : phi_(phi), options_(options) {}

  const OutcomeSet& direct() {
    if (!direct_) {
      direct_ = compute_outcomes(phi_, options_.engine, options_.limits);
    }
    return *direct_;
  }

  const OutcomeSet& dual() {
    if (!dual_) {
      dual_ = compute_outcomes(negate(phi_, options_.limits), options_.engine,
                               options_.limits);
    }
    return *dual_;
  }

 private:
  const Qcsp& phi_;
  const CheckOptions& options_;
  std::optional<OutcomeSet> direct_;
  std::optional<OutcomeSet> dual_;
};

std::optional<std::pair<Qcsp, SimplificationStep>> try_step(
    const Qcsp& phi, VarIndex x, Value a, Action action,
    const SimplifyOptions& options, OutcomeCache& cache) {
  if (x >= phi.size() || !phi.variable(x).contains(a)) return std::nullopt;
  if (phi.domain(x).size() < 2) return std::nullopt;

  const bool existential = phi.is_existential(x);
  PropertyQuery q;
  q.family = existential ? Family::kShallow : Family::kDualShallow;
  q.kind = action == Action::kRemove ? Kind::kRemovable : Kind::kFixable;
  q.variable = phi.name(x);
  q.a = a;

  CheckOptions check = options.check;
  check.precomputed = existential ? &cache.direct() : &cache.dual();
  Verdict verdict =
      existential ? check_shallow(phi, q, check) : check_dual(phi, q, check);
  if (!verdict.holds) return std::nullopt;

  Qcsp next = action == Action::kRemove ? remove_value(phi, x, a)
                                        : fix_value(phi, x, a);
  SimplificationStep step;
  step.variable = x;
  step.variable_name = phi.name(x);
  step.action = action;
  step.value = a;
  step.justification = std::move(q);
  step.verdict = std::move(verdict);
  if (options.verify) {
    step.truth_before = evaluate_truth(phi);
    step.truth_after = evaluate_truth(next);
  }
  return std::make_pair(std::move(next), std::move(step));
}

}  // namespace

std::optional<std::pair<Qcsp, SimplificationStep>> justified_step(
    const Qcsp& phi, VarIndex x, Value a, Action action,
    const SimplifyOptions& options) {
  OutcomeCache cache(phi, options.check);
  return try_step(phi, x, a, action, options, cache);
}

std::vector<Candidate> default_candidates(const Qcsp& phi) {
  std::vector<Candidate> out;
  for (VarIndex x = 0; x < phi.size(); ++x) {
    if (phi.domain(x).size() < 2) continue;
    for (Value a : phi.domain(x)) out.push_back({x, a, Action::kRemove});
  }
  for (VarIndex x = 0; x < phi.size(); ++x) {
    if (phi.domain(x).size() < 2) continue;
    for (Value a : phi.domain(x)) out.push_back({x, a, Action::kFix});
  }
  return out;
}

std::pair<Qcsp, SimplificationLog> simplify_fixpoint(
    const Qcsp& phi, const SimplifyOptions& options,
    const CandidatePolicy& policy) {
  Qcsp current = phi;
  SimplificationLog log;
  bool changed = true;
  while (changed) {
    changed = false;
    OutcomeCache cache(current, options.check);
    for (const Candidate& c : policy(current)) {
      auto step = try_step(current, c.variable, c.value, c.action, options,
                           cache);
      if (!step) continue;
      current = std::move(step->first);
      log.steps.push_back(std::move(step->second));
      changed = true;
      break;
    }
  }
  return {std::move(current), std::move(log)};
}

}  // namespace qcsp
