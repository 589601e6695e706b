#include "qcsp/game.hpp"

#include <algorithm>
#include <set>

namespace qcsp {

namespace {

std::size_t position_in(const std::vector<Value>& domain, Value v) {
  auto it = std::lower_bound(domain.begin(), domain.end(), v);
  if (it == domain.end() || *it != v) {
    throw InvalidArgument("value " + std::to_string(v) +
                          " outside the domain of a strategy input");
  }
  return static_cast<std::size_t>(it - domain.begin());
}

std::uint64_t table_size(const Qcsp& phi, const std::vector<VarIndex>& inputs) {
  std::uint64_t r = 1;
  for (VarIndex y : inputs) r = saturating_mul(r, phi.domain(y).size());
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Strategy

Strategy Strategy::tabulate(
    const Qcsp& phi,
    const std::function<Value(VarIndex, std::span<const Value>)>& choose) {
  std::vector<Table> tables;
  for (VarIndex x : phi.existentials()) {
    Table table;
    table.variable = x;
    table.inputs = phi.universals_before(x);
    std::vector<std::vector<Value>> domains;
    for (VarIndex y : table.inputs) domains.push_back(phi.domain(y));
    for_each_product(domains, [&](const Tuple& values) {
      table.outputs.push_back(choose(x, values));
    });
    tables.push_back(std::move(table));
  }
  return Strategy(std::move(tables));
}

const Strategy::Table& Strategy::table_for(VarIndex x) const {
  for (const auto& t : tables_) {
    if (t.variable == x) return t;
  }
  throw InvalidArgument("strategy has no table for variable position " +
                        std::to_string(x + 1));
}

Value Strategy::choose(const Qcsp& phi, VarIndex x,
                       std::span<const Value> t) const {
  const Table& table = table_for(x);
  std::size_t index = 0;
  for (VarIndex y : table.inputs) {
    index = index * phi.domain(y).size() + position_in(phi.domain(y), t[y]);
  }
  return table.outputs.at(index);
}

void Strategy::validate(const Qcsp& phi) const {
  const auto existentials = phi.existentials();
  if (tables_.size() != existentials.size()) {
    throw InvalidArgument("strategy has " + std::to_string(tables_.size()) +
                          " tables for " + std::to_string(existentials.size()) +
                          " existential variables");
  }
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    const Table& table = tables_[k];
    if (table.variable != existentials[k]) {
      throw InvalidArgument("strategy tables are not aligned with the "
                            "existential variables");
    }
    if (table.inputs != phi.universals_before(table.variable)) {
      throw InvalidArgument("strategy table for '" + phi.name(table.variable) +
                            "' has the wrong inputs");
    }
    if (table.outputs.size() != table_size(phi, table.inputs)) {
      throw InvalidArgument("strategy table for '" + phi.name(table.variable) +
                            "' is not total");
    }
    for (Value v : table.outputs) {
      if (!phi.variable(table.variable).contains(v)) {
        throw InvalidArgument("strategy picks " + std::to_string(v) +
                              " outside the domain of '" +
                              phi.name(table.variable) + "'");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// OutcomeSet

std::string_view to_string(OutcomeEngine engine) {
  switch (engine) {
    case OutcomeEngine::kStrategyEnumeration: return "strategy-enumeration";
    case OutcomeEngine::kLexicographicScan: return "lexicographic-scan";
    case OutcomeEngine::kGameTree: return "game-tree";
  }
  return "?";
}

OutcomeSet::OutcomeSet(std::vector<Tuple> tuples, OutcomeEngine provenance)
    : tuples_(std::move(tuples)), provenance_(provenance) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool OutcomeSet::contains(std::span<const Value> t) const {
  auto it = std::lower_bound(
      tuples_.begin(), tuples_.end(), t,
      [](const Tuple& a, std::span<const Value> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
      });
  return it != tuples_.end() && std::equal(it->begin(), it->end(), t.begin(),
                                           t.end());
}

// ---------------------------------------------------------------------------
// Truth

namespace {

// Constraints grouped by the depth at which their scope is fully assigned, so
// the searches below can cut a branch as soon as one is violated.
class Schedule {
 public:
  explicit Schedule(const Qcsp& phi) : due_(phi.size() + 1) {
    for (const auto& c : phi.constraints()) {
      std::size_t depth = 0;
      for (VarIndex v : c.scope()) depth = std::max(depth, std::size_t{v} + 1);
      due_[depth].push_back(&c);
    }
  }

  bool consistent(std::span<const Value> t, std::size_t depth) const {
    for (const Relation* c : due_[depth]) {
      if (!c->accepts(t)) return false;
    }
    return true;
  }

 private:
  std::vector<std::vector<const Relation*>> due_;
};

bool truth_at(const Qcsp& phi, const Schedule& s, Tuple& t, std::size_t depth) {
  if (!s.consistent(t, depth)) return false;
  if (depth == phi.size()) return true;
  const bool exists = phi.is_existential(depth);
  for (Value v : phi.domain(depth)) {
    t[depth] = v;
    const bool child = truth_at(phi, s, t, depth + 1);
    if (exists && child) return true;
    if (!exists && !child) return false;
  }
  return !exists;
}

// Appends the outcomes below a true node; appends nothing when false.
bool collect_true_paths(const Qcsp& phi, const Schedule& s, Tuple& t,
                        std::size_t depth, std::vector<Tuple>& out) {
  if (!s.consistent(t, depth)) return false;
  if (depth == phi.size()) {
    out.push_back(t);
    return true;
  }
  const bool exists = phi.is_existential(depth);
  const std::size_t mark = out.size();
  bool any = false;
  for (Value v : phi.domain(depth)) {
    t[depth] = v;
    const bool child = collect_true_paths(phi, s, t, depth + 1, out);
    if (exists) {
      any = any || child;
    } else if (!child) {
      out.resize(mark);
      return false;
    }
  }
  return exists ? any : true;
}

}  // namespace

bool evaluate_truth(const Qcsp& phi) {
  Tuple t(phi.size());
  return truth_at(phi, Schedule(phi), t, 0);
}

// ---------------------------------------------------------------------------
// Strategies

std::uint64_t strategy_space(const Qcsp& phi) {
  std::uint64_t r = 1;
  for (VarIndex x : phi.existentials()) {
    const auto entries = table_size(phi, phi.universals_before(x));
    r = saturating_mul(r, saturating_pow(phi.domain(x).size(), entries));
  }
  return r;
}

void for_each_strategy(const Qcsp& phi,
                       const std::function<bool(const Strategy&)>& visit,
                       const Limits& limits) {
  const auto space = strategy_space(phi);
  if (space > limits.max_strategies) {
    throw LimitExceeded("strategy space of " + std::to_string(space) +
                        " exceeds the limit of " +
                        std::to_string(limits.max_strategies));
  }

  // One odometer digit per table entry, ranging over the entry's domain.
  std::vector<Strategy::Table> tables;
  struct Digit {
    std::size_t table;
    std::size_t entry;
    const std::vector<Value>* domain;
    std::size_t pos;
  };
  std::vector<Digit> digits;
  for (VarIndex x : phi.existentials()) {
    Strategy::Table table;
    table.variable = x;
    table.inputs = phi.universals_before(x);
    const auto entries = table_size(phi, table.inputs);
    table.outputs.assign(entries, phi.domain(x).front());
    for (std::size_t e = 0; e < entries; ++e) {
      digits.push_back({tables.size(), e, &phi.domain(x), 0});
    }
    tables.push_back(std::move(table));
  }

  Strategy current(tables);
  while (true) {
    if (!visit(current)) return;
    std::size_t i = digits.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      Digit& d = digits[i];
      if (++d.pos < d.domain->size()) {
        tables[d.table].outputs[d.entry] = (*d.domain)[d.pos];
        advanced = true;
        break;
      }
      d.pos = 0;
      tables[d.table].outputs[d.entry] = d.domain->front();
    }
    if (!advanced) return;
    current = Strategy(tables);
  }
}

std::vector<Strategy> enumerate_strategies(const Qcsp& phi,
                                           const Limits& limits) {
  std::vector<Strategy> out;
  for_each_strategy(
      phi,
      [&](const Strategy& s) {
        out.push_back(s);
        return true;
      },
      limits);
  return out;
}

namespace {

// Visits sce(s) in order of the universal choices. `s` must be validated.
template <class Visit>
void for_each_scenario(const Qcsp& phi, const Strategy& s, Visit&& visit) {
  const auto universals = phi.universals();
  std::vector<std::vector<Value>> domains;
  for (VarIndex y : universals) domains.push_back(phi.domain(y));
  Tuple t(phi.size());
  for_each_product(domains, [&](const Tuple& choice) -> bool {
    std::size_t u = 0;
    for (VarIndex i = 0; i < phi.size(); ++i) {
      if (phi.is_existential(i)) {
        t[i] = s.choose(phi, i, t);
      } else {
        t[i] = choice[u++];
      }
    }
    return visit(static_cast<const Tuple&>(t));
  });
}

}  // namespace

std::vector<Tuple> scenarios(const Qcsp& phi, const Strategy& s) {
  s.validate(phi);
  std::vector<Tuple> out;
  for_each_scenario(phi, s, [&](const Tuple& t) {
    out.push_back(t);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_winning(const Qcsp& phi, const Strategy& s) {
  s.validate(phi);
  bool winning = true;
  for_each_scenario(phi, s, [&](const Tuple& t) {
    winning = satisfies(phi, t);
    return winning;
  });
  return winning;
}

OutcomeSet outcomes_via_strategies(const Qcsp& phi, const Limits& limits) {
  std::set<Tuple> out;
  std::vector<Tuple> scratch;
  for_each_strategy(
      phi,
      [&](const Strategy& s) {
        scratch.clear();
        bool winning = true;
        for_each_scenario(phi, s, [&](const Tuple& t) {
          winning = satisfies(phi, t);
          if (winning) scratch.push_back(t);
          return winning;
        });
        if (winning) out.insert(scratch.begin(), scratch.end());
        return true;
      },
      limits);
  return OutcomeSet(std::vector<Tuple>(out.begin(), out.end()),
                    OutcomeEngine::kStrategyEnumeration);
}

// ---------------------------------------------------------------------------
// Outcome membership

Qcsp outcome_augment(const Qcsp& phi, std::span<const Value> t) {
  if (!in_domains(phi, t)) {
    throw InvalidArgument(
        "outcome augmentation needs a tuple of the product of the domains");
  }
  std::vector<Relation> constraints = phi.constraints();
  for (VarIndex x : phi.existentials()) {
    std::vector<VarIndex> scope = phi.universals_before(x);
    scope.push_back(x);
    std::vector<std::vector<Value>> domains;
    for (VarIndex y : scope) domains.push_back(phi.domain(y));
    std::vector<Tuple> rows;
    for_each_product(domains, [&](const Tuple& row) {
      bool antecedent = true;
      for (std::size_t j = 0; j + 1 < scope.size(); ++j) {
        if (row[j] != t[scope[j]]) {
          antecedent = false;
          break;
        }
      }
      if (!antecedent || row.back() == t[x]) rows.push_back(row);
    });
    constraints.emplace_back(std::move(scope), std::move(rows));
  }
  return phi.with_constraints(std::move(constraints));
}

Qcsp outcome_augment(const Qcsp& phi, const Assignment& t) {
  if (t.width() != phi.size() || !t.is_total()) {
    throw InvalidArgument("outcome augmentation needs a total assignment");
  }
  const Tuple tuple = t.tuple();
  return outcome_augment(phi, std::span<const Value>(tuple));
}

bool is_outcome(const Qcsp& phi, std::span<const Value> t) {
  // Outcomes are solutions; the check is only a shortcut.
  if (!is_solution(phi, t)) return false;
  return evaluate_truth(outcome_augment(phi, t));
}

OutcomeSet outcomes_lex(const Qcsp& phi, const Limits& limits) {
  require_enumerable(phi, limits);
  std::vector<Tuple> out;
  // A false problem has no winning strategy and hence no outcome.
  if (!evaluate_truth(phi)) {
    return OutcomeSet(std::move(out), OutcomeEngine::kLexicographicScan);
  }
  const auto domains = domains_of(phi);
  for_each_product(domains, [&](const Tuple& t) {
    if (is_outcome(phi, t)) out.push_back(t);
  });
  return OutcomeSet(std::move(out), OutcomeEngine::kLexicographicScan);
}

OutcomeSet outcomes_tree(const Qcsp& phi, const Limits& limits) {
  require_enumerable(phi, limits);
  std::vector<Tuple> out;
  Tuple t(phi.size());
  collect_true_paths(phi, Schedule(phi), t, 0, out);
  return OutcomeSet(std::move(out), OutcomeEngine::kGameTree);
}

OutcomeSet compute_outcomes(const Qcsp& phi, OutcomeEngine engine,
                            const Limits& limits) {
  switch (engine) {
    case OutcomeEngine::kStrategyEnumeration:
      return outcomes_via_strategies(phi, limits);
    case OutcomeEngine::kLexicographicScan:
      return outcomes_lex(phi, limits);
    case OutcomeEngine::kGameTree:
      return outcomes_tree(phi, limits);
  }
  return outcomes_lex(phi, limits);
}

}  // namespace qcsp
