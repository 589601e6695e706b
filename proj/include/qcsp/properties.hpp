#ifndef QCSP_PROPERTIES_HPP
#define QCSP_PROPERTIES_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcsp/game.hpp"
#include "qcsp/model.hpp"

namespace qcsp {

enum class Family { kDeep, kShallow, kDualShallow, kClassical };

enum class Kind {
  kInconsistent,
  kImplied,
  kFixable,
  kSubstitutable,
  kRemovable,
  kInterchangeable,
  kDetermined,
  kIrrelevant,
  kDependent,
};

std::string_view to_string(Family family);
std::string_view to_string(Kind kind);
/// Accepts the names printed by to_string plus "dual" for kDualShallow.
std::optional<Family> parse_family(std::string_view text);
std::optional<Kind> parse_kind(std::string_view text);

/// Which side of the deep definitions' implications is tested for membership.
/// Only fixable, substitutable, removable and irrelevant admit kSolutions.
enum class RhsSet { kOutcomes, kSolutions };

/// p(x, a), p(x, a, b), p(x) or dependent(V, x) for one family.
struct PropertyQuery {
  Family family = Family::kDeep;
  Kind kind = Kind::kInconsistent;
  std::string variable;
  std::optional<Value> a;
  std::optional<Value> b;
  /// V, for kDependent only (may be the empty set).
  std::optional<std::vector<std::string>> depends_on;

  friend bool operator==(const PropertyQuery&, const PropertyQuery&) = default;
};

std::string describe(const PropertyQuery& q);

/// Throws InvalidQuery when q does not fit phi: missing or extra values,
/// a == b, values outside the domain, a kind without a definition in the
/// family, or a dual query on an existential variable.
void validate(const Qcsp& phi, const PropertyQuery& q);

struct Method {
  Family family = Family::kDeep;
  OutcomeEngine engine = OutcomeEngine::kLexicographicScan;
  RhsSet rhs = RhsSet::kOutcomes;

  friend bool operator==(const Method&, const Method&) = default;
};

std::string describe(const Method& m);

struct Verdict {
  bool holds = true;
  /// When the property fails: an outcome falsifying the definition body.
  std::optional<Tuple> witness;
  /// The second tuple the failing body talks about, when there is one: t' for
  /// dependent, t[x:=b] for determined and for the deep membership tests.
  std::optional<Tuple> partner;
  /// Removability that holds: the smallest replacement value that works for
  /// the lexicographically first outcome taking the removed value.
  std::optional<Value> replacement;
  Method method;
};

/// Decides deep and shallow properties over a fixed outcome set. The set is
/// taken as given (it may come from any engine, or from a test harness).
class PropertyEvaluator {
 public:
  PropertyEvaluator(Qcsp phi, OutcomeSet out, Family family = Family::kDeep);

  const Qcsp& problem() const { return phi_; }
  const OutcomeSet& outcomes() const { return out_; }

  Verdict inconsistent(VarIndex x, Value a) const;
  Verdict implied(VarIndex x, Value a) const;
  Verdict deep_fixable(VarIndex x, Value a,
                       RhsSet rhs = RhsSet::kOutcomes) const;
  Verdict deep_substitutable(VarIndex x, Value a, Value b,
                             RhsSet rhs = RhsSet::kOutcomes) const;
  Verdict deep_removable(VarIndex x, Value a,
                         RhsSet rhs = RhsSet::kOutcomes) const;
  Verdict deep_interchangeable(VarIndex x, Value a, Value b) const;
  Verdict determined(VarIndex x) const;
  Verdict deep_irrelevant(VarIndex x, RhsSet rhs = RhsSet::kOutcomes) const;
  Verdict dependent(std::span<const VarIndex> v, VarIndex x) const;

  Verdict shallow_fixable(VarIndex x, Value a) const;
  Verdict shallow_substitutable(VarIndex x, Value a, Value b) const;
  Verdict shallow_removable(VarIndex x, Value a) const;
  Verdict shallow_interchangeable(VarIndex x, Value a, Value b) const;
  Verdict shallow_irrelevant(VarIndex x) const;

  /// Dispatches a validated query. Deep kinds for kDeep/kClassical families,
  /// shallow kinds otherwise.
  Verdict evaluate(const PropertyQuery& q,
                   RhsSet rhs = RhsSet::kOutcomes) const;

 private:
  bool member(std::span<const Value> t, RhsSet rhs) const;
  Verdict make(bool holds, RhsSet rhs = RhsSet::kOutcomes) const;

  // For each outcome, the sorted values of x among outcomes sharing its first
  // x positions (the options open at that point of play).
  template <class Check>
  Verdict shallow_scan(VarIndex x, Check&& check) const;

  Qcsp phi_;
  OutcomeSet out_;
  Family family_;
};

struct CheckOptions {
  Limits limits;
  OutcomeEngine engine = OutcomeEngine::kLexicographicScan;
  /// Deep checks only; see RhsSet.
  RhsSet rhs = RhsSet::kOutcomes;
  /// Outcome set of the problem actually being checked (phi for deep and
  /// shallow, its relaxation for classical, its negation for dual). Computed
  /// with `engine` when null.
  const OutcomeSet* precomputed = nullptr;
};

/// Deep definitions over out(phi).
Verdict check_deep(const Qcsp& phi, const PropertyQuery& q,
                   const CheckOptions& options = {});
/// Shallow definitions over out(phi).
Verdict check_shallow(const Qcsp& phi, const PropertyQuery& q,
                      const CheckOptions& options = {});
/// Shallow definitions over out(negate(phi)), for universal variables.
Verdict check_dual(const Qcsp& phi, const PropertyQuery& q,
                   const CheckOptions& options = {});
/// Deep definitions over the existential relaxation of phi.
Verdict check_classical(const Qcsp& phi, const PropertyQuery& q,
                        const CheckOptions& options = {});
/// Dispatches on q.family.
Verdict check(const Qcsp& phi, const PropertyQuery& q,
              const CheckOptions& options = {});

}  // namespace qcsp

#endif  // QCSP_PROPERTIES_HPP
