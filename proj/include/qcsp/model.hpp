#ifndef QCSP_MODEL_HPP
#define QCSP_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "qcsp/error.hpp"

namespace qcsp {

using Value = std::int64_t;

/// 0-based position of a variable in the quantifier prefix. Text formats and
/// reports print positions 1-based.
using VarIndex = std::size_t;

/// A total assignment, aligned with the prefix (or with a relation scope).
using Tuple = std::vector<Value>;

enum class Quantifier { kExists, kForall };

std::string_view to_string(Quantifier q);
Quantifier flip(Quantifier q);

/// Caps on exhaustive enumeration. Exceeding one raises LimitExceeded rather
/// than silently running for hours.
struct Limits {
  std::uint64_t max_tuples = 1'000'000;
  std::uint64_t max_strategies = 1'000'000;
};

/// Product of `factors`, saturating at UINT64_MAX.
std::uint64_t saturating_product(std::span<const std::uint64_t> factors);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent);

struct VariableDecl {
  std::string name;
  Quantifier quantifier = Quantifier::kExists;
  /// Strictly ascending, nonempty once inside a Qcsp.
  std::vector<Value> domain;

  bool contains(Value v) const;
  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

/// An extensional constraint: a scope and the set of accepted rows.
///
/// Rows are stored flat, sorted lexicographically and deduplicated. The row
/// storage is shared between copies, so copying a Relation (and therefore a
/// Qcsp) is cheap.
class Relation {
 public:
  Relation();
  /// Throws InvalidArgument on a repeated scope variable or a row whose length
  /// differs from the scope size.
  Relation(std::vector<VarIndex> scope, std::vector<Tuple> rows);

  const std::vector<VarIndex>& scope() const { return scope_; }
  std::size_t arity() const { return scope_.size(); }
  std::size_t size() const { return row_count_; }
  bool empty() const { return row_count_ == 0; }

  std::span<const Value> row(std::size_t k) const;
  std::vector<Tuple> rows() const;

  /// Membership of a scope-aligned row.
  bool contains_row(std::span<const Value> row) const;

  /// Membership of the projection of a prefix-aligned tuple onto the scope.
  bool accepts(std::span<const Value> total) const;

  /// Same rows, scope variables renumbered through `mapping`.
  Relation remapped(std::span<const VarIndex> mapping) const;

  friend bool operator==(const Relation& lhs, const Relation& rhs);

 private:
  std::vector<VarIndex> scope_;
  std::shared_ptr<const std::vector<Value>> cells_;
  std::size_t row_count_ = 0;
};

/// A quantified constraint satisfaction problem: prefix-ordered variables with
/// quantifiers and finite domains, plus extensional constraints.
///
/// Immutable once built. The constructor enforces unique names, nonempty
/// sorted domains, in-range scopes and rows inside the declared domains.
/// Domain edits made through with_domain() keep existing rows untouched;
/// rows mentioning a removed value simply become unreachable.
class Qcsp {
 public:
  Qcsp() = default;
  Qcsp(std::vector<VariableDecl> variables, std::vector<Relation> constraints);

  std::size_t size() const { return variables_.size(); }
  const std::vector<VariableDecl>& variables() const { return variables_; }
  const VariableDecl& variable(VarIndex i) const { return variables_.at(i); }
  const std::vector<Relation>& constraints() const { return constraints_; }

  const std::string& name(VarIndex i) const { return variable(i).name; }
  Quantifier quantifier(VarIndex i) const { return variable(i).quantifier; }
  const std::vector<Value>& domain(VarIndex i) const {
    return variable(i).domain;
  }
  bool is_existential(VarIndex i) const {
    return quantifier(i) == Quantifier::kExists;
  }

  std::optional<VarIndex> find(std::string_view name) const;
  /// Throws UnknownVariable.
  VarIndex index_of(std::string_view name) const;

  /// E and A.
  std::vector<VarIndex> existentials() const;
  std::vector<VarIndex> universals() const;
  /// X_j, E_j and A_j: the first j variables and their existential/universal
  /// members.
  std::vector<VarIndex> prefix(std::size_t j) const;
  std::vector<VarIndex> existentials_upto(std::size_t j) const;
  std::vector<VarIndex> universals_upto(std::size_t j) const;
  /// Universal variables strictly before position i (A_{i-1} in 1-based
  /// terms): the inputs of a strategy for the existential at i.
  std::vector<VarIndex> universals_before(VarIndex i) const;

  /// Number of total tuples over the domains (saturating).
  std::uint64_t tuple_space() const;

  /// Copy with the domain of `i` replaced. `domain` is sorted and deduplicated;
  /// throws DomainError when it is empty.
  Qcsp with_domain(VarIndex i, std::vector<Value> domain) const;
  /// Copy with the constraint list replaced. Scopes must be in range; rows
  /// are not checked against the (possibly narrowed) domains.
  Qcsp with_constraints(std::vector<Relation> constraints) const;
  Qcsp with_quantifiers(std::span<const Quantifier> quantifiers) const;

  friend bool operator==(const Qcsp&, const Qcsp&) = default;

 private:
  struct Unchecked {};
  Qcsp(Unchecked, std::vector<VariableDecl> variables,
       std::vector<Relation> constraints)
      : variables_(std::move(variables)), constraints_(std::move(constraints)) {}

  std::vector<VariableDecl> variables_;
  std::vector<Relation> constraints_;
};

/// A possibly partial assignment over the variables of a problem of known
/// width. The set of defined positions is explicit.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t width) : slots_(width) {}
  static Assignment from_tuple(std::span<const Value> values);

  std::size_t width() const { return slots_.size(); }
  bool defined(VarIndex i) const { return i < slots_.size() && slots_[i]; }
  /// Throws InvalidArgument when `i` is undefined.
  Value at(VarIndex i) const;
  std::vector<VarIndex> support() const;
  bool is_total() const;
  /// Throws InvalidArgument unless total.
  Tuple tuple() const;

  void set(VarIndex i, Value v);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::optional<Value>> slots_;
};

/// t[x := a]. Throws UnknownVariable when x is outside the assignment width.
Assignment instantiate(const Assignment& t, VarIndex x, Value a);
Assignment instantiate(const Qcsp& phi, const Assignment& t,
                       std::string_view x, Value a);
/// t|_U. Throws InvalidArgument unless U is a subset of t's support.
Assignment restrict(const Assignment& t, std::span<const VarIndex> u);

/// Every constraint accepts the projection of `t`. Domains are not consulted,
/// so tuples outside the domains are allowed (they match no row).
bool satisfies(const Qcsp& phi, std::span<const Value> t);
/// Throws InvalidArgument unless `t` is total over the variables of phi.
bool satisfies(const Qcsp& phi, const Assignment& t);

/// t lies in the Cartesian product of the domains.
bool in_domains(const Qcsp& phi, std::span<const Value> t);
/// Membership in sol: inside the domains and satisfying every constraint.
bool is_solution(const Qcsp& phi, std::span<const Value> t);

/// Throws LimitExceeded when the tuple space exceeds limits.max_tuples.
void require_enumerable(const Qcsp& phi, const Limits& limits);

/// sol, in lexicographic order.
std::vector<Tuple> enumerate_solutions(const Qcsp& phi,
                                       const Limits& limits = {});

/// Same variables, domains and constraints with every quantifier existential.
Qcsp relax_existential(const Qcsp& phi);

/// The dual problem: quantifiers flipped, and the constraints replaced by a
/// single relation over all variables holding the non-solutions.
Qcsp negate(const Qcsp& phi, const Limits& limits = {});

/// Visits every tuple of the product of `domains` in lexicographic order.
/// `visit` may return bool; returning false stops the walk.
template <class Visit>
void for_each_product(std::span<const std::vector<Value>> domains,
                      Visit&& visit) {
  for (const auto& d : domains) {
    if (d.empty()) return;
  }
  const std::size_t n = domains.size();
  std::vector<std::size_t> pos(n, 0);
  Tuple t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = domains[i][0];
  while (true) {
    if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const Tuple&>,
                                 bool>) {
      if (!visit(static_cast<const Tuple&>(t))) return;
    } else {
      visit(static_cast<const Tuple&>(t));
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < domains[i].size()) {
        t[i] = domains[i][pos[i]];
        break;
      }
      pos[i] = 0;
      t[i] = domains[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

/// The domains of phi, in prefix order.
std::vector<std::vector<Value>> domains_of(const Qcsp& phi);

}  // namespace qcsp

#endif  // QCSP_MODEL_HPP
