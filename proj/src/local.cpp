#include "qcsp/local.hpp"

namespace qcsp {

std::string_view to_string(Combination mode) {
  return mode == Combination::kAnyConstraint ? "any-constraint"
                                             : "every-constraint";
}

Combination combination_for(Kind kind) {
  switch (kind) {
    case Kind::kInconsistent:
    case Kind::kImplied:
    case Kind::kDetermined:
    case Kind::kDependent:
      return Combination::kAnyConstraint;
    case Kind::kFixable:
    case Kind::kSubstitutable:
    case Kind::kInterchangeable:
    case Kind::kIrrelevant:
      return Combination::kEveryConstraint;
    case Kind::kRemovable:
      break;
  }
  throw InvalidQuery(
      "removability cannot be detected constraint by constraint: a value can "
      "be removable for every constraint and still not for their conjunction");
}

Qcsp project_single_constraint(const Qcsp& phi, std::size_t k) {
  if (k >= phi.constraints().size()) {
    throw InvalidArgument("constraint index " + std::to_string(k + 1) +
                          " out of range 1.." +
                          std::to_string(phi.constraints().size()));
  }
  return phi.with_constraints({phi.constraints()[k]});
}

LocalReport local_detect(const Qcsp& phi, const PropertyQuery& q,
                         const CheckOptions& options) {
  if (q.family != Family::kDeep) {
    throw InvalidQuery(
        "local reasoning is only sound for deep properties; shallow "
        "properties can hold for every constraint and fail for the "
        "conjunction");
  }
  LocalReport report;
  report.query = q;
  report.mode = combination_for(q.kind);
  validate(phi, q);

  CheckOptions per = options;
  per.precomputed = nullptr;
  for (std::size_t k = 0; k < phi.constraints().size(); ++k) {
    report.per_constraint.push_back(
        check_deep(project_single_constraint(phi, k), q, per));
  }
  if (report.mode == Combination::kAnyConstraint) {
    report.combined = false;
    for (const auto& v : report.per_constraint) {
      report.combined = report.combined || v.holds;
    }
  } else {
    report.combined = true;
    for (const auto& v : report.per_constraint) {
      report.combined = report.combined && v.holds;
    }
  }
  return report;
}

namespace {

struct Certificate {
  VarIndex variable;
  Value value;
  bool on_negation;
  PropertyQuery query;
  Verdict verdict;
};

std::optional<Certificate> find_certificate(const Qcsp& phi,
                                            const SimplifyOptions& options) {
  std::optional<Qcsp> negation;
  for (VarIndex x = 0; x < phi.size(); ++x) {
    if (phi.domain(x).size() < 2) continue;
    const bool existential = phi.is_existential(x);
    if (!existential && !negation) negation = negate(phi, options.check.limits);
    const Qcsp& target = existential ? phi : *negation;
    for (Value a : phi.domain(x)) {
      PropertyQuery q;
      q.family = Family::kDeep;
      q.kind = Kind::kInconsistent;
      q.variable = phi.name(x);
      q.a = a;
      LocalReport report = local_detect(target, q, options.check);
      if (!report.combined) continue;
      for (auto& v : report.per_constraint) {
        if (v.holds) {
          return Certificate{x, a, !existential, q, std::move(v)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::pair<Qcsp, SimplificationLog> local_prune_fixpoint(
    const Qcsp& phi, const SimplifyOptions& options) {
  Qcsp current = phi;
  SimplificationLog log;
  while (auto cert = find_certificate(current, options)) {
    Qcsp next = remove_value(current, cert->variable, cert->value);
    SimplificationStep step;
    step.variable = cert->variable;
    step.variable_name = current.name(cert->variable);
    step.action = Action::kRemove;
    step.value = cert->value;
    step.justification = std::move(cert->query);
    step.verdict = std::move(cert->verdict);
    step.on_negation = cert->on_negation;
    if (options.verify) {
      step.truth_before = evaluate_truth(current);
      step.truth_after = evaluate_truth(next);
    }
    log.steps.push_back(std::move(step));
    current = std::move(next);
  }
  return {std::move(current), std::move(log)};
}

}  // namespace qcsp
