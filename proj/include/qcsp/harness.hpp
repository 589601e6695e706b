#ifndef QCSP_HARNESS_HPP
#define QCSP_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/game.hpp"
#include "qcsp/local.hpp"
#include "qcsp/model.hpp"
#include "qcsp/properties.hpp"

namespace qcsp {

enum class QuantifierPattern {
  kRandom,
  kAlternating,  // exists, forall, exists, ...
  kSigma,        // sigma_blocks alternating blocks, the first existential
  kAllExists,
  kAllForall,
};

std::string_view to_string(QuantifierPattern p);

struct GenConfig {
  std::size_t min_vars = 2;
  std::size_t max_vars = 4;
  std::size_t min_domain = 2;
  std::size_t max_domain = 3;
  /// Domains are drawn from [value_base, value_base + value_span).
  Value value_base = 0;
  std::size_t value_span = 5;
  QuantifierPattern pattern = QuantifierPattern::kRandom;
  std::size_t sigma_blocks = 2;
  std::size_t min_constraints = 1;
  std::size_t max_constraints = 4;
  std::size_t max_arity = 3;
  /// Probability that a scope tuple is accepted. 0 and 1 are exact.
  double density = 0.6;
  std::uint64_t seed = 1;
};

/// A deterministic instance for cfg: same config, same problem on every
/// platform. Variables are named x1..xn. Throws InvalidArgument on an
/// infeasible config (empty ranges, value_span smaller than max_domain,
/// density outside [0,1]).
Qcsp random_qcsp(const GenConfig& cfg);

/// `count` instances cycling through every quantifier pattern, seeded from
/// `seed`, with at most max_vars variables and max_domain values each.
std::vector<Qcsp> random_corpus(std::size_t count, std::uint64_t seed,
                                std::size_t max_vars = 4,
                                std::size_t max_domain = 3);

struct NamedInstance {
  std::string name;
  Qcsp problem;
};

/// The worked examples: PHI1 (x1 + x2 <= x3 under exists-forall-exists),
/// PHI2 (x1 + x2 = x3, forall-exists-exists), PHI3 (the Nim game over five
/// moves), PHI4 and PHI5 (the two local-reasoning counterexamples).
std::vector<NamedInstance> golden_instances();
/// Text of a golden instance by name ("PHI1".."PHI5"). Throws InvalidArgument.
std::string golden_text(std::string_view name);

/// Engines the validator goes through. Replacing one with a faulty version
/// is how the validator's own detection power is tested.
struct Hooks {
  std::function<bool(const Qcsp&)> truth;
  std::function<OutcomeSet(const Qcsp&, const Limits&)> outcomes;
  std::function<bool(const Qcsp&, std::span<const Value>)> is_outcome;
  std::function<Verdict(const Qcsp&, const PropertyQuery&,
                        const CheckOptions&)>
      check;
  std::function<Qcsp(const Qcsp&, VarIndex, Value)> remove;
  std::function<Qcsp(const Qcsp&, VarIndex, Value)> fix;
  std::function<LocalReport(const Qcsp&, const PropertyQuery&,
                            const CheckOptions&)>
      local;

  /// The library's own engines.
  static Hooks standard();
};

struct HarnessOptions {
  Limits limits;
  /// Strategy-based checks are skipped (and the skip reported) above this.
  std::uint64_t max_strategy_space = 100'000;
  /// Engine for the per-constraint subproblems of the local rules.
  OutcomeEngine local_engine = OutcomeEngine::kGameTree;
  /// Violations stored per proposition; further ones are only counted.
  std::size_t max_recorded = 20;
};

struct PropositionTally {
  std::string id;
  std::string title;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
};

struct Violation {
  std::string proposition;
  std::size_t instance_index = 0;
  std::string detail;
  /// The offending problem in the text format; parsing it and validating
  /// again reproduces the violation.
  std::string instance;
};

struct Skip {
  std::size_t instance_index = 0;
  std::string reason;
};

struct PropositionReport {
  std::size_t instances = 0;
  /// Fixed order: "1".."11", then "out" (basic facts about outcome sets).
  std::vector<PropositionTally> tallies;
  std::vector<Violation> violations;
  std::vector<Skip> skipped;

  PropositionReport();
  const PropositionTally& tally(std::string_view id) const;
  std::uint64_t total_violations() const;
  bool ok() const { return total_violations() == 0; }
  /// Adds the counts of `other`; instance indices of `other` are shifted by
  /// this->instances.
  void merge(const PropositionReport& other);
};

/// Runs every proposition check on every instance. Instances whose tuple
/// space exceeds options.limits are skipped and reported.
PropositionReport validate_propositions(std::span<const Qcsp> instances,
                                        const Hooks& hooks = Hooks::standard(),
                                        const HarnessOptions& options = {});

}  // namespace qcsp

#endif  // QCSP_HARNESS_HPP
