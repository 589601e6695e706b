#ifndef QCSP_GAME_HPP
#define QCSP_GAME_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qcsp/model.hpp"

namespace qcsp {

/// A strategy for the existential player: for each existential variable a
/// function table indexed by the values of the universal variables preceding
/// it. A strategy is equivalently a family of Skolem functions, one per
/// existential variable, given in tabulated form.
class Strategy {
 public:
  struct Table {
    VarIndex variable = 0;
    /// The universals before `variable`, in prefix order.
    std::vector<VarIndex> inputs;
    /// Row-major over the input domains (first input most significant):
    /// outputs[k] is the value chosen for the k-th input combination in
    /// lexicographic order.
    std::vector<Value> outputs;

    friend bool operator==(const Table&, const Table&) = default;
  };

  Strategy() = default;
  explicit Strategy(std::vector<Table> tables) : tables_(std::move(tables)) {}

  /// Builds the strategy whose table for existential x maps each assignment
  /// of A_{x} (values aligned with universals_before(x)) to choose(x, values).
  static Strategy tabulate(
      const Qcsp& phi,
      const std::function<Value(VarIndex, std::span<const Value>)>& choose);

  const std::vector<Table>& tables() const { return tables_; }

  /// Value picked for existential `x` given a prefix-aligned tuple in which at
  /// least the universals before `x` are set. Requires a validated strategy.
  Value choose(const Qcsp& phi, VarIndex x, std::span<const Value> t) const;

  /// Throws InvalidArgument unless the strategy has exactly one well-formed,
  /// total table per existential variable of phi with outputs in the domains.
  void validate(const Qcsp& phi) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  const Table& table_for(VarIndex x) const;

  std::vector<Table> tables_;
};

enum class OutcomeEngine { kStrategyEnumeration, kLexicographicScan, kGameTree };

std::string_view to_string(OutcomeEngine engine);

/// A set of total tuples kept in lexicographic order, tagged with the engine
/// that produced it. Construction does not check membership in sol, so fault
/// injection can build deliberately wrong sets.
class OutcomeSet {
 public:
  OutcomeSet() = default;
  OutcomeSet(std::vector<Tuple> tuples, OutcomeEngine provenance);

  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(std::span<const Value> t) const;
  OutcomeEngine provenance() const { return provenance_; }

  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  /// Equal tuples; provenance is ignored.
  friend bool operator==(const OutcomeSet& lhs, const OutcomeSet& rhs) {
    return lhs.tuples_ == rhs.tuples_;
  }

 private:
  std::vector<Tuple> tuples_;
  OutcomeEngine provenance_ = OutcomeEngine::kLexicographicScan;
};

/// Truth by depth-first and/or descent: disjunction over the domain at
/// existential positions, conjunction at universal ones, satisfies() at the
/// leaves. Short-circuits; no other pruning.
bool evaluate_truth(const Qcsp& phi);

/// Number of strategies of phi (saturating).
std::uint64_t strategy_space(const Qcsp& phi);

/// Calls `visit` once per strategy, in a fixed order. Returning false from
/// `visit` stops the walk. Throws LimitExceeded above limits.max_strategies.
void for_each_strategy(const Qcsp& phi,
                       const std::function<bool(const Strategy&)>& visit,
                       const Limits& limits = {});

std::vector<Strategy> enumerate_strategies(const Qcsp& phi,
                                           const Limits& limits = {});

/// sce(s), in lexicographic order. Validates `s` first.
std::vector<Tuple> scenarios(const Qcsp& phi, const Strategy& s);

/// Every scenario of `s` is a solution.
bool is_winning(const Qcsp& phi, const Strategy& s);

/// Union of the scenarios of all winning strategies: the brute-force oracle.
OutcomeSet outcomes_via_strategies(const Qcsp& phi, const Limits& limits = {});

/// phi plus, for every existential x, the implication "the universals before x
/// take their values in t => x takes t_x", each tabulated over its scope. The
/// result is true exactly when t is an outcome of phi. Throws InvalidArgument
/// unless t is a tuple of the product of the domains.
Qcsp outcome_augment(const Qcsp& phi, std::span<const Value> t);
Qcsp outcome_augment(const Qcsp& phi, const Assignment& t);

/// Membership in out, decided by solving outcome_augment(phi, t). Tuples
/// outside the domains are not outcomes.
bool is_outcome(const Qcsp& phi, std::span<const Value> t);

/// {t in the product of the domains : is_outcome(phi, t)}, scanned in
/// lexicographic order. Throws LimitExceeded above limits.max_tuples.
OutcomeSet outcomes_lex(const Qcsp& phi, const Limits& limits = {});

/// One pass over the and/or tree. A tuple is an outcome iff every node on its
/// path is true, so the true subtrees below a true root are collected
/// directly. Same set as the other two engines; far cheaper on large trees.
OutcomeSet outcomes_tree(const Qcsp& phi, const Limits& limits = {});

OutcomeSet compute_outcomes(const Qcsp& phi, OutcomeEngine engine,
                            const Limits& limits = {});

}  // namespace qcsp

#endif  // QCSP_GAME_HPP
