#include "qcsp/properties.hpp"

#include <algorithm>
#include <map>

namespace qcsp {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kDeep: return "deep";
    case Family::kShallow: return "shallow";
    case Family::kDualShallow: return "dual-shallow";
    case Family::kClassical: return "classical";
  }
  return "?";
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::kInconsistent: return "inconsistent";
    case Kind::kImplied: return "implied";
    case Kind::kFixable: return "fixable";
    case Kind::kSubstitutable: return "substitutable";
    case Kind::kRemovable: return "removable";
    case Kind::kInterchangeable: return "interchangeable";
    case Kind::kDetermined: return "determined";
    case Kind::kIrrelevant: return "irrelevant";
    case Kind::kDependent: return "dependent";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "deep") return Family::kDeep;
  if (text == "shallow") return Family::kShallow;
  if (text == "dual" || text == "dual-shallow") return Family::kDualShallow;
  if (text == "classical") return Family::kClassical;
  return std::nullopt;
}

std::optional<Kind> parse_kind(std::string_view text) {
  for (Kind k :
       {Kind::kInconsistent, Kind::kImplied, Kind::kFixable,
        Kind::kSubstitutable, Kind::kRemovable, Kind::kInterchangeable,
        Kind::kDetermined, Kind::kIrrelevant, Kind::kDependent}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string describe(const PropertyQuery& q) {
  std::string s(to_string(q.family));
  s += ' ';
  s += to_string(q.kind);
  s += '(';
  if (q.kind == Kind::kDependent) {
    s += '{';
    if (q.depends_on) {
      for (std::size_t i = 0; i < q.depends_on->size(); ++i) {
        if (i) s += ',';
        s += (*q.depends_on)[i];
      }
    }
    s += "}, ";
  }
  s += q.variable;
  if (q.a) s += ", " + std::to_string(*q.a);
  if (q.b) s += ", " + std::to_string(*q.b);
  s += ')';
  return s;
}

std::string describe(const Method& m) {
  std::string s(to_string(m.family));
  s += '/';
  s += to_string(m.engine);
  if (m.rhs == RhsSet::kSolutions) s += "/rhs=sol";
  return s;
}

namespace {

bool has_shallow_form(Kind k) {
  switch (k) {
    case Kind::kFixable:
    case Kind::kSubstitutable:
    case Kind::kRemovable:
    case Kind::kInterchangeable:
    case Kind::kIrrelevant:
      return true;
    default:
      return false;
  }
}

int value_arity(Kind k) {
  switch (k) {
    case Kind::kSubstitutable:
    case Kind::kInterchangeable:
      return 2;
    case Kind::kInconsistent:
    case Kind::kImplied:
    case Kind::kFixable:
    case Kind::kRemovable:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

void validate(const Qcsp& phi, const PropertyQuery& q) {
  const auto x = phi.find(q.variable);
  if (!x) throw InvalidQuery("unknown variable '" + q.variable + "'");
  const bool shallow_family =
      q.family == Family::kShallow || q.family == Family::kDualShallow;
  if (shallow_family && !has_shallow_form(q.kind)) {
    throw InvalidQuery(std::string(to_string(q.kind)) +
                       " has no shallow definition; use the deep or classical "
                       "family");
  }
  if (q.family == Family::kDualShallow && phi.is_existential(*x)) {
    throw InvalidQuery("dual properties apply to universal variables; '" +
                       q.variable + "' is existential");
  }
  const int arity = value_arity(q.kind);
  if ((arity >= 1) != q.a.has_value()) {
    throw InvalidQuery(arity >= 1 ? std::string(to_string(q.kind)) +
                                        " needs a value"
                                  : std::string(to_string(q.kind)) +
                                        " takes no value");
  }
  if ((arity == 2) != q.b.has_value()) {
    throw InvalidQuery(arity == 2 ? std::string(to_string(q.kind)) +
                                        " needs a second value"
                                  : std::string(to_string(q.kind)) +
                                        " takes no second value");
  }
  if (arity == 2 && *q.a == *q.b) {
    throw InvalidQuery(std::string(to_string(q.kind)) +
                       " needs two distinct values");
  }
  for (const auto& v : {q.a, q.b}) {
    if (v && !phi.variable(*x).contains(*v)) {
      throw InvalidQuery("value " + std::to_string(*v) +
                         " is not in the domain of '" + q.variable + "'");
    }
  }
  if ((q.kind == Kind::kDependent) != q.depends_on.has_value()) {
    throw InvalidQuery(q.kind == Kind::kDependent
                           ? "dependent needs a variable set"
                           : "only dependent takes a variable set");
  }
  if (q.depends_on) {
    for (const auto& name : *q.depends_on) {
      if (!phi.find(name)) {
        throw InvalidQuery("unknown variable '" + name + "' in dependency set");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// PropertyEvaluator

PropertyEvaluator::PropertyEvaluator(Qcsp phi, OutcomeSet out, Family family)
    : phi_(std::move(phi)), out_(std::move(out)), family_(family) {}

bool PropertyEvaluator::member(std::span<const Value> t, RhsSet rhs) const {
  return rhs == RhsSet::kOutcomes ? out_.contains(t) : is_solution(phi_, t);
}

Verdict PropertyEvaluator::make(bool holds, RhsSet rhs) const {
  Verdict v;
  v.holds = holds;
  v.method = Method{family_, out_.provenance(), rhs};
  return v;
}

Verdict PropertyEvaluator::inconsistent(VarIndex x, Value a) const {
  for (const auto& t : out_) {
    if (t[x] == a) {
      Verdict v = make(false);
      v.witness = t;
      return v;
    }
  }
  return make(true);
}

Verdict PropertyEvaluator::implied(VarIndex x, Value a) const {
  for (const auto& t : out_) {
    if (t[x] != a) {
      Verdict v = make(false);
      v.witness = t;
      return v;
    }
  }
  return make(true);
}

Verdict PropertyEvaluator::deep_fixable(VarIndex x, Value a,
                                        RhsSet rhs) const {
  Tuple probe;
  for (const auto& t : out_) {
    probe = t;
    probe[x] = a;
    if (!member(probe, rhs)) {
      Verdict v = make(false, rhs);
      v.witness = t;
      v.partner = probe;
      return v;
    }
  }
  return make(true, rhs);
}

Verdict PropertyEvaluator::deep_substitutable(VarIndex x, Value a, Value b,
                                              RhsSet rhs) const {
  Tuple probe;
  for (const auto& t : out_) {
    if (t[x] != a) continue;
    probe = t;
    probe[x] = b;
    if (!member(probe, rhs)) {
      Verdict v = make(false, rhs);
      v.witness = t;
      v.partner = probe;
      return v;
    }
  }
  return make(true, rhs);
}

Verdict PropertyEvaluator::deep_removable(VarIndex x, Value a,
                                          RhsSet rhs) const {
  std::optional<Value> first_replacement;
  Tuple probe;
  for (const auto& t : out_) {
    if (t[x] != a) continue;
    std::optional<Value> found;
    probe = t;
    for (Value b : phi_.domain(x)) {
      if (b == a) continue;
      probe[x] = b;
      if (member(probe, rhs)) {
        found = b;
        break;
      }
    }
    if (!found) {
      Verdict v = make(false, rhs);
      v.witness = t;
      return v;
    }
    if (!first_replacement) first_replacement = found;
  }
  Verdict v = make(true, rhs);
  v.replacement = first_replacement;
  return v;
}

Verdict PropertyEvaluator::deep_interchangeable(VarIndex x, Value a,
                                                Value b) const {
  Verdict forward = deep_substitutable(x, a, b);
  if (!forward.holds) return forward;
  return deep_substitutable(x, b, a);
}

Verdict PropertyEvaluator::determined(VarIndex x) const {
  Tuple probe;
  for (const auto& t : out_) {
    probe = t;
    for (Value b : phi_.domain(x)) {
      if (b == t[x]) continue;
      probe[x] = b;
      if (out_.contains(probe)) {
        Verdict v = make(false);
        v.witness = t;
        v.partner = probe;
        return v;
      }
    }
  }
  return make(true);
}

Verdict PropertyEvaluator::deep_irrelevant(VarIndex x, RhsSet rhs) const {
  Tuple probe;
  for (const auto& t : out_) {
    probe = t;
    for (Value b : phi_.domain(x)) {
      probe[x] = b;
      if (!member(probe, rhs)) {
        Verdict v = make(false, rhs);
        v.witness = t;
        v.partner = probe;
        return v;
      }
    }
  }
  return make(true, rhs);
}

Verdict PropertyEvaluator::dependent(std::span<const VarIndex> v,
                                     VarIndex x) const {
  std::map<Tuple, const Tuple*> seen;
  Tuple key;
  for (const auto& t : out_) {
    key.clear();
    for (VarIndex y : v) key.push_back(t[y]);
    auto [it, inserted] = seen.emplace(key, &t);
    if (!inserted && (*it->second)[x] != t[x]) {
      Verdict verdict = make(false);
      verdict.witness = *it->second;
      verdict.partner = t;
      return verdict;
    }
  }
  return make(true);
}

template <class Check>
Verdict PropertyEvaluator::shallow_scan(VarIndex x, Check&& check) const {
  const auto& tuples = out_.tuples();
  std::vector<Value> options;
  std::size_t begin = 0;
  while (begin < tuples.size()) {
    // Outcomes are sorted, so those agreeing on the first x positions are
    // contiguous.
    std::size_t end = begin + 1;
    while (end < tuples.size() &&
           std::equal(tuples[begin].begin(), tuples[begin].begin() + x,
                      tuples[end].begin())) {
      ++end;
    }
    options.clear();
    for (std::size_t k = begin; k < end; ++k) options.push_back(tuples[k][x]);
    options.erase(std::unique(options.begin(), options.end()), options.end());
    for (std::size_t k = begin; k < end; ++k) {
      if (!check(tuples[k], options)) {
        Verdict v = make(false);
        v.witness = tuples[k];
        return v;
      }
    }
    begin = end;
  }
  return make(true);
}

namespace {

bool offers(const std::vector<Value>& options, Value v) {
  return std::binary_search(options.begin(), options.end(), v);
}

}  // namespace

Verdict PropertyEvaluator::shallow_fixable(VarIndex x, Value a) const {
  return shallow_scan(x, [&](const Tuple&, const std::vector<Value>& options) {
    return offers(options, a);
  });
}

Verdict PropertyEvaluator::shallow_substitutable(VarIndex x, Value a,
                                                 Value b) const {
  return shallow_scan(x, [&](const Tuple& t, const std::vector<Value>& options) {
    return t[x] != a || offers(options, b);
  });
}

Verdict PropertyEvaluator::shallow_removable(VarIndex x, Value a) const {
  std::optional<Value> first_replacement;
  Verdict v = shallow_scan(
      x, [&](const Tuple& t, const std::vector<Value>& options) {
        if (t[x] != a) return true;
        for (Value b : options) {
          if (b != a) {
            if (!first_replacement) first_replacement = b;
            return true;
          }
        }
        return false;
      });
  if (v.holds) v.replacement = first_replacement;
  return v;
}

Verdict PropertyEvaluator::shallow_interchangeable(VarIndex x, Value a,
                                                   Value b) const {
  Verdict forward = shallow_substitutable(x, a, b);
  if (!forward.holds) return forward;
  return shallow_substitutable(x, b, a);
}

Verdict PropertyEvaluator::shallow_irrelevant(VarIndex x) const {
  const auto& domain = phi_.domain(x);
  return shallow_scan(x, [&](const Tuple&, const std::vector<Value>& options) {
    return std::includes(options.begin(), options.end(), domain.begin(),
                         domain.end());
  });
}

Verdict PropertyEvaluator::evaluate(const PropertyQuery& q, RhsSet rhs) const {
  const VarIndex x = phi_.index_of(q.variable);
  const bool shallow =
      q.family == Family::kShallow || q.family == Family::kDualShallow;
  if (shallow && !has_shallow_form(q.kind)) {
    throw InvalidQuery(std::string(to_string(q.kind)) +
                       " has no shallow definition");
  }
  if (rhs == RhsSet::kSolutions &&
      (q.kind == Kind::kDetermined || q.kind == Kind::kDependent)) {
    throw InvalidQuery(std::string(to_string(q.kind)) +
                       " is defined over outcomes only");
  }
  switch (q.kind) {
    case Kind::kInconsistent: return inconsistent(x, q.a.value());
    case Kind::kImplied: return implied(x, q.a.value());
    case Kind::kFixable:
      return shallow ? shallow_fixable(x, q.a.value())
                     : deep_fixable(x, q.a.value(), rhs);
    case Kind::kSubstitutable:
      return shallow ? shallow_substitutable(x, q.a.value(), q.b.value())
                     : deep_substitutable(x, q.a.value(), q.b.value(), rhs);
    case Kind::kRemovable:
      return shallow ? shallow_removable(x, q.a.value())
                     : deep_removable(x, q.a.value(), rhs);
    case Kind::kInterchangeable: {
      if (shallow) {
        return shallow_interchangeable(x, q.a.value(), q.b.value());
      }
      Verdict forward = deep_substitutable(x, q.a.value(), q.b.value(), rhs);
      if (!forward.holds) return forward;
      return deep_substitutable(x, q.b.value(), q.a.value(), rhs);
    }
    case Kind::kDetermined: return determined(x);
    case Kind::kIrrelevant:
      return shallow ? shallow_irrelevant(x) : deep_irrelevant(x, rhs);
    case Kind::kDependent: {
      std::vector<VarIndex> v;
      for (const auto& name : q.depends_on.value()) {
        v.push_back(phi_.index_of(name));
      }
      return dependent(v, x);
    }
  }
  throw InvalidQuery("unsupported property kind");
}

// ---------------------------------------------------------------------------
// Entry points

namespace {

void require_family(const PropertyQuery& q, Family expected) {
  if (q.family != expected) {
    throw InvalidQuery("query family is " + std::string(to_string(q.family)) +
                       ", expected " + std::string(to_string(expected)));
  }
}

Verdict run_on(const Qcsp& target, Family family, const PropertyQuery& q,
               const CheckOptions& options, RhsSet rhs) {
  OutcomeSet out = options.precomputed
                       ? *options.precomputed
                       : compute_outcomes(target, options.engine,
                                          options.limits);
  PropertyEvaluator evaluator(target, std::move(out), family);
  return evaluator.evaluate(q, rhs);
}

}  // namespace

Verdict check_deep(const Qcsp& phi, const PropertyQuery& q,
                   const CheckOptions& options) {
  require_family(q, Family::kDeep);
  validate(phi, q);
  return run_on(phi, Family::kDeep, q, options, options.rhs);
}

Verdict check_shallow(const Qcsp& phi, const PropertyQuery& q,
                      const CheckOptions& options) {
  require_family(q, Family::kShallow);
  validate(phi, q);
  return run_on(phi, Family::kShallow, q, options, RhsSet::kOutcomes);
}

Verdict check_dual(const Qcsp& phi, const PropertyQuery& q,
                   const CheckOptions& options) {
  require_family(q, Family::kDualShallow);
  validate(phi, q);
  const Qcsp negation = negate(phi, options.limits);
  return run_on(negation, Family::kDualShallow, q, options, RhsSet::kOutcomes);
}

Verdict check_classical(const Qcsp& phi, const PropertyQuery& q,
                        const CheckOptions& options) {
  require_family(q, Family::kClassical);
  validate(phi, q);
  return run_on(relax_existential(phi), Family::kClassical, q, options,
                options.rhs);
}

Verdict check(const Qcsp& phi, const PropertyQuery& q,
              const CheckOptions& options) {
  switch (q.family) {
    case Family::kDeep: return check_deep(phi, q, options);
    case Family::kShallow: return check_shallow(phi, q, options);
    case Family::kDualShallow: return check_dual(phi, q, options);
    case Family::kClassical: return check_classical(phi, q, options);
  }
  throw InvalidQuery("unsupported family");
}

}  // namespace qcsp
