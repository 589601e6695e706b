#include <gtest/gtest.h>

#include "qcsp/simplify.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace qcsp;

namespace {

bool truth(const Qcsp& phi) { return oracle::truth(oracle::from_qcsp(phi)); }

std::size_t domain_total(const Qcsp& phi) {
  std::size_t total = 0;
  for (VarIndex x = 0; x < phi.size(); ++x) total += phi.domain(x).size();
  return total;
}

}  // namespace

TEST(Edits, RemoveAndFix) {
  const auto p1 = fixtures::phi(1);
  EXPECT_EQ(remove_value(p1, 2, 3).domain(2), (std::vector<Value>{4, 5, 6}));
  EXPECT_EQ(fix_value(p1, 2, 6).domain(2), (std::vector<Value>{6}));
  EXPECT_EQ(remove_value(p1, 2, 3).constraints(), p1.constraints());
  EXPECT_THROW(remove_value(p1, 2, 9), DomainError);
  EXPECT_THROW(fix_value(p1, 2, 9), DomainError);
  const auto single = fix_value(p1, 0, 2);
  EXPECT_THROW(remove_value(single, 0, 2), DomainError);
  EXPECT_EQ(fix_value(single, 0, 2), single);
  EXPECT_EQ(fix_value(fix_value(p1, 2, 5), 2, 5), fix_value(p1, 2, 5));
}

TEST(Edits, UnlicensedEditsCanChangeTruth) {
  const auto p4 = fixtures::phi(4);
  EXPECT_TRUE(truth(p4));
  EXPECT_FALSE(truth(remove_value(p4, 0, 2)));
  const auto p1 = fixtures::phi(1);
  EXPECT_FALSE(truth(fix_value(p1, 0, 3)));
}

TEST(JustifiedStep, InconsistentValueIsRemoved) {
  const auto step = justified_step(fixtures::phi(1), 2, 3, Action::kRemove,
                                   {.verify = true});
  ASSERT_TRUE(step);
  EXPECT_EQ(step->first.domain(2), (std::vector<Value>{4, 5, 6}));
  const auto& s = step->second;
  EXPECT_EQ(s.variable_name, "x3");
  EXPECT_EQ(s.justification.family, Family::kShallow);
  EXPECT_EQ(s.justification.kind, Kind::kRemovable);
  EXPECT_TRUE(s.verdict.holds);
  EXPECT_FALSE(s.on_negation);
  EXPECT_EQ(s.truth_before, true);
  EXPECT_EQ(s.truth_after, true);
}

TEST(JustifiedStep, RefusesUnlicensedRemoval) {
  EXPECT_FALSE(justified_step(fixtures::phi(4), 0, 2, Action::kRemove));
  EXPECT_FALSE(justified_step(fixtures::phi(1), 0, 2, Action::kRemove));
  EXPECT_FALSE(justified_step(fixtures::phi(1), 0, 3, Action::kFix));
  // Absent value, singleton domain.
  EXPECT_FALSE(justified_step(fixtures::phi(1), 2, 9, Action::kRemove));
  EXPECT_FALSE(justified_step(fix_value(fixtures::phi(1), 0, 2), 0, 2,
                              Action::kRemove));
}

TEST(JustifiedStep, UniversalUsesDualLicence) {
  const auto p2 = fixtures::phi(2);
  const auto step = justified_step(p2, 0, 1, Action::kRemove, {.verify = true});
  ASSERT_TRUE(step);
  EXPECT_EQ(step->second.justification.family, Family::kDualShallow);
  EXPECT_EQ(step->first.domain(0), (std::vector<Value>{2}));
  EXPECT_EQ(truth(step->first), truth(p2));
  EXPECT_EQ(step->second.truth_after, step->second.truth_before);
}

TEST(Fixpoint, Phi1) {
  const auto p1 = fixtures::phi(1);
  const auto [result, log] = simplify_fixpoint(p1, {.verify = true});
  EXPECT_EQ(result.domain(0), (std::vector<Value>{2}));
  for (Value a : {3, 4}) EXPECT_FALSE(result.variable(2).contains(a));
  EXPECT_TRUE(truth(result));
  for (const auto& s : log.steps) {
    EXPECT_TRUE(s.verdict.holds);
    EXPECT_EQ(s.truth_before, true);
    EXPECT_EQ(s.truth_after, true);
  }
}

TEST(Fixpoint, SmallProblems) {
  const auto phi = fixtures::parse(
      "qcsp\nvar x exists 0..1\nvar y forall 0..1\nconstraint expr x = y\n");
  // false: x cannot follow y.
  const auto [result, log] = simplify_fixpoint(phi);
  EXPECT_FALSE(truth(result));
  EXPECT_EQ(result.domain(0).size(), 1u);

  const auto fixed = fixtures::parse("qcsp\nvar x exists {4}\nvar y forall {1}\n");
  EXPECT_TRUE(simplify_fixpoint(fixed).second.steps.empty());
}

TEST(Fixpoint, FalseProblemLosesAllExistentialChoice) {
  const auto none = fixtures::phi(1).with_domain(0, {3});
  const auto [result, log] = simplify_fixpoint(none);
  for (VarIndex x : result.existentials()) EXPECT_EQ(result.domain(x).size(), 1u);
  EXPECT_FALSE(truth(result));
}

TEST(Fixpoint, CustomPolicy) {
  // Only removals from x3.
  const auto policy = [](const Qcsp& phi) {
    std::vector<Candidate> out;
    for (Value a : phi.domain(2)) out.push_back({2, a, Action::kRemove});
    return out;
  };
  const auto [result, log] = simplify_fixpoint(fixtures::phi(1), {}, policy);
  EXPECT_EQ(result.domain(0), fixtures::phi(1).domain(0));
  EXPECT_FALSE(log.steps.empty());
  for (const auto& s : log.steps) EXPECT_EQ(s.variable, 2u);
}

// Every licensed edit preserves truth, on existential and universal variables.
TEST(SimplifyProperties, LicensedEditsPreserveTruth) {
  std::size_t applied = 0;
  for (const auto& phi : fixtures::corpus()) {
    const bool before = truth(phi);
    for (VarIndex x = 0; x < phi.size(); ++x) {
      for (Value a : phi.domain(x)) {
        for (Action action : {Action::kRemove, Action::kFix}) {
          const auto step = justified_step(phi, x, a, action);
          if (!step) continue;
          ++applied;
          EXPECT_EQ(truth(step->first), before)
              << to_string(action) << " " << a << " at " << phi.name(x) << "\n"
              << print_qcsp(phi);
        }
      }
    }
  }
  EXPECT_GT(applied, 200u);
}

TEST(SimplifyProperties, FixpointPreservesTruthAndTerminates) {
  for (const auto& phi : fixtures::corpus()) {
    const auto [result, log] = simplify_fixpoint(phi);
    EXPECT_EQ(truth(result), truth(phi)) << print_qcsp(phi);
    EXPECT_LE(log.steps.size(), domain_total(phi));
    EXPECT_EQ(domain_total(result), domain_total(phi) - [&] {
      std::size_t lost = 0;
      Qcsp current = phi;
      for (const auto& s : log.steps) {
        const std::size_t size = current.domain(s.variable).size();
        current = s.action == Action::kRemove
                      ? remove_value(current, s.variable, s.value)
                      : fix_value(current, s.variable, s.value);
        lost += size - current.domain(s.variable).size();
      }
      return lost;
    }());
    for (const auto& c : default_candidates(result)) {
      EXPECT_FALSE(justified_step(result, c.variable, c.value, c.action));
    }
  }
}
