#include "qcsp/model.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace qcsp {

std::string_view to_string(Quantifier q) {
  return q == Quantifier::kExists ? "exists" : "forall";
}

Quantifier flip(Quantifier q) {
  return q == Quantifier::kExists ? Quantifier::kForall : Quantifier::kExists;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

std::uint64_t saturating_product(std::span<const std::uint64_t> factors) {
  std::uint64_t r = 1;
  for (auto f : factors) r = saturating_mul(r, f);
  return r;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t r = 1;
  for (std::uint64_t e = 0; e < exponent; ++e) {
    r = saturating_mul(r, base);
    if (r == std::numeric_limits<std::uint64_t>::max() || r == 0) break;
  }
  return r;
}

bool VariableDecl::contains(Value v) const {
  return std::binary_search(domain.begin(), domain.end(), v);
}

// ---------------------------------------------------------------------------
// Relation

namespace {

int compare_rows(std::span<const Value> a, std::span<const Value> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

Relation::Relation() : cells_(std::make_shared<const std::vector<Value>>()) {}

Relation::Relation(std::vector<VarIndex> scope, std::vector<Tuple> rows)
    : scope_(std::move(scope)) {
  {
    std::vector<VarIndex> sorted = scope_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("relation scope repeats a variable");
    }
  }
  for (const auto& r : rows) {
    if (r.size() != scope_.size()) {
      throw InvalidArgument("relation row has " + std::to_string(r.size()) +
                            " values for a scope of " +
                            std::to_string(scope_.size()));
    }
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  row_count_ = rows.size();
  std::vector<Value> cells;
  cells.reserve(row_count_ * scope_.size());
  for (const auto& r : rows) cells.insert(cells.end(), r.begin(), r.end());
  cells_ = std::make_shared<const std::vector<Value>>(std::move(cells));
}

std::span<const Value> Relation::row(std::size_t k) const {
  const std::size_t a = arity();
  return std::span<const Value>(cells_->data() + k * a, a);
}

std::vector<Tuple> Relation::rows() const {
  std::vector<Tuple> out;
  out.reserve(row_count_);
  for (std::size_t k = 0; k < row_count_; ++k) {
    auto r = row(k);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

bool Relation::contains_row(std::span<const Value> probe) const {
  if (probe.size() != arity()) return false;
  std::size_t lo = 0;
  std::size_t hi = row_count_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const int c = compare_rows(row(mid), probe);
    if (c == 0) return true;
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return false;
}

bool Relation::accepts(std::span<const Value> total) const {
  const std::size_t a = arity();
  std::size_t lo = 0;
  std::size_t hi = row_count_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Value* r = cells_->data() + mid * a;
    int c = 0;
    for (std::size_t j = 0; j < a; ++j) {
      const Value v = total[scope_[j]];
      if (r[j] != v) {
        c = r[j] < v ? -1 : 1;
        break;
      }
    }
    if (c == 0) return true;
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return false;
}

Relation Relation::remapped(std::span<const VarIndex> mapping) const {
  Relation r = *this;
  for (auto& v : r.scope_) v = mapping[v];
  return r;
}

bool operator==(const Relation& lhs, const Relation& rhs) {
  return lhs.scope_ == rhs.scope_ && lhs.row_count_ == rhs.row_count_ &&
         (lhs.cells_ == rhs.cells_ || *lhs.cells_ == *rhs.cells_);
}

// ---------------------------------------------------------------------------
// Qcsp

namespace {

void normalize_domain(std::vector<Value>& d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
}

}  // namespace

Qcsp::Qcsp(std::vector<VariableDecl> variables,
           std::vector<Relation> constraints)
    : variables_(std::move(variables)), constraints_(std::move(constraints)) {
  std::unordered_set<std::string> names;
  for (auto& v : variables_) {
    if (v.name.empty()) throw InvalidArgument("variable with empty name");
    if (!names.insert(v.name).second) {
      throw InvalidArgument("duplicate variable '" + v.name + "'");
    }
    normalize_domain(v.domain);
    if (v.domain.empty()) {
      throw DomainError("empty domain for variable '" + v.name + "'");
    }
  }
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    const Relation& c = constraints_[k];
    for (VarIndex x : c.scope()) {
      if (x >= variables_.size()) {
        throw InvalidArgument("constraint " + std::to_string(k + 1) +
                              " references variable position " +
                              std::to_string(x + 1) + " out of range");
      }
    }
    for (std::size_t r = 0; r < c.size(); ++r) {
      auto row = c.row(r);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!variables_[c.scope()[j]].contains(row[j])) {
          throw DomainError("constraint " + std::to_string(k + 1) +
                            " has value " + std::to_string(row[j]) +
                            " outside the domain of '" +
                            variables_[c.scope()[j]].name + "'");
        }
      }
    }
  }
}

std::optional<VarIndex> Qcsp::find(std::string_view name) const {
  for (VarIndex i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

VarIndex Qcsp::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable(std::string(name));
}

std::vector<VarIndex> Qcsp::existentials() const {
  return existentials_upto(size());
}

std::vector<VarIndex> Qcsp::universals() const {
  return universals_upto(size());
}

std::vector<VarIndex> Qcsp::prefix(std::size_t j) const {
  std::vector<VarIndex> out;
  for (VarIndex i = 0; i < std::min(j, size()); ++i) out.push_back(i);
  return out;
}

std::vector<VarIndex> Qcsp::existentials_upto(std::size_t j) const {
  std::vector<VarIndex> out;
  for (VarIndex i = 0; i < std::min(j, size()); ++i) {
    if (is_existential(i)) out.push_back(i);
  }
  return out;
}

std::vector<VarIndex> Qcsp::universals_upto(std::size_t j) const {
  std::vector<VarIndex> out;
  for (VarIndex i = 0; i < std::min(j, size()); ++i) {
    if (!is_existential(i)) out.push_back(i);
  }
  return out;
}

std::vector<VarIndex> Qcsp::universals_before(VarIndex i) const {
  return universals_upto(i);
}

std::uint64_t Qcsp::tuple_space() const {
  std::uint64_t r = 1;
  for (const auto& v : variables_) r = saturating_mul(r, v.domain.size());
  return r;
}

Qcsp Qcsp::with_domain(VarIndex i, std::vector<Value> domain) const {
  if (i >= size()) throw UnknownVariable("#" + std::to_string(i + 1));
  normalize_domain(domain);
  if (domain.empty()) {
    throw DomainError("empty domain for variable '" + name(i) + "'");
  }
  auto vars = variables_;
  vars[i].domain = std::move(domain);
  return Qcsp(Unchecked{}, std::move(vars), constraints_);
}

Qcsp Qcsp::with_constraints(std::vector<Relation> constraints) const {
  for (const auto& c : constraints) {
    for (VarIndex x : c.scope()) {
      if (x >= size()) {
        throw InvalidArgument("constraint scope references variable position " +
                              std::to_string(x + 1) + " out of range");
      }
    }
  }
  return Qcsp(Unchecked{}, variables_, std::move(constraints));
}

Qcsp Qcsp::with_quantifiers(std::span<const Quantifier> quantifiers) const {
  if (quantifiers.size() != size()) {
    throw InvalidArgument("quantifier list does not match the prefix length");
  }
  auto vars = variables_;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    vars[i].quantifier = quantifiers[i];
  }
  return Qcsp(Unchecked{}, std::move(vars), constraints_);
}

// ---------------------------------------------------------------------------
// Assignment

Assignment Assignment::from_tuple(std::span<const Value> values) {
  Assignment a(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) a.slots_[i] = values[i];
  return a;
}

Value Assignment::at(VarIndex i) const {
  if (!defined(i)) {
    throw InvalidArgument("assignment undefined at position " +
                          std::to_string(i + 1));
  }
  return *slots_[i];
}

std::vector<VarIndex> Assignment::support() const {
  std::vector<VarIndex> out;
  for (VarIndex i = 0; i < slots_.size(); ++i) {
    if (slots_[i]) out.push_back(i);
  }
  return out;
}

bool Assignment::is_total() const {
  return std::all_of(slots_.begin(), slots_.end(),
                     [](const auto& s) { return s.has_value(); });
}

Tuple Assignment::tuple() const {
  if (!is_total()) throw InvalidArgument("assignment is not total");
  Tuple t;
  t.reserve(slots_.size());
  for (const auto& s : slots_) t.push_back(*s);
  return t;
}

void Assignment::set(VarIndex i, Value v) {
  if (i >= slots_.size()) {
    throw UnknownVariable("#" + std::to_string(i + 1));
  }
  slots_[i] = v;
}

Assignment instantiate(const Assignment& t, VarIndex x, Value a) {
  Assignment r = t;
  r.set(x, a);
  return r;
}

Assignment instantiate(const Qcsp& phi, const Assignment& t,
                       std::string_view x, Value a) {
  if (t.width() != phi.size()) {
    throw InvalidArgument("assignment width does not match the problem");
  }
  return instantiate(t, phi.index_of(x), a);
}

Assignment restrict(const Assignment& t, std::span<const VarIndex> u) {
  Assignment r(t.width());
  for (VarIndex x : u) {
    if (!t.defined(x)) {
      throw InvalidArgument("restriction set is not a subset of the support");
    }
    r.set(x, t.at(x));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Solutions, relaxation, negation

bool satisfies(const Qcsp& phi, std::span<const Value> t) {
  if (t.size() != phi.size()) {
    throw InvalidArgument("tuple width does not match the problem");
  }
  for (const auto& c : phi.constraints()) {
    if (!c.accepts(t)) return false;
  }
  return true;
}

bool satisfies(const Qcsp& phi, const Assignment& t) {
  if (t.width() != phi.size() || !t.is_total()) {
    throw InvalidArgument("satisfaction needs a total assignment");
  }
  const Tuple tuple = t.tuple();
  return satisfies(phi, std::span<const Value>(tuple));
}

bool in_domains(const Qcsp& phi, std::span<const Value> t) {
  if (t.size() != phi.size()) return false;
  for (VarIndex i = 0; i < t.size(); ++i) {
    if (!phi.variable(i).contains(t[i])) return false;
  }
  return true;
}

bool is_solution(const Qcsp& phi, std::span<const Value> t) {
  return in_domains(phi, t) && satisfies(phi, t);
}

void require_enumerable(const Qcsp& phi, const Limits& limits) {
  const auto space = phi.tuple_space();
  if (space > limits.max_tuples) {
    throw LimitExceeded("tuple space of " + std::to_string(space) +
                        " exceeds the enumeration limit of " +
                        std::to_string(limits.max_tuples));
  }
}

std::vector<std::vector<Value>> domains_of(const Qcsp& phi) {
  std::vector<std::vector<Value>> d;
  d.reserve(phi.size());
  for (const auto& v : phi.variables()) d.push_back(v.domain);
  return d;
}

std::vector<Tuple> enumerate_solutions(const Qcsp& phi, const Limits& limits) {
  require_enumerable(phi, limits);
  std::vector<Tuple> out;
  const auto domains = domains_of(phi);
  for_each_product(domains, [&](const Tuple& t) {
    if (satisfies(phi, t)) out.push_back(t);
  });
  return out;
}

Qcsp relax_existential(const Qcsp& phi) {
  std::vector<Quantifier> q(phi.size(), Quantifier::kExists);
  return phi.with_quantifiers(q);
}

Qcsp negate(const Qcsp& phi, const Limits& limits) {
  require_enumerable(phi, limits);
  std::vector<Tuple> rejected;
  const auto domains = domains_of(phi);
  for_each_product(domains, [&](const Tuple& t) {
    if (!satisfies(phi, t)) rejected.push_back(t);
  });
  std::vector<VarIndex> scope(phi.size());
  for (VarIndex i = 0; i < scope.size(); ++i) scope[i] = i;
  std::vector<Quantifier> q;
  q.reserve(phi.size());
  for (const auto& v : phi.variables()) q.push_back(flip(v.quantifier));
  return phi.with_quantifiers(q).with_constraints(
      {Relation(std::move(scope), std::move(rejected))});
}

}  // namespace qcsp
