// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcsp/game.hpp"
#include "qcsp/harness.hpp"
#include "qcsp/local.hpp"
#include "qcsp/properties.hpp"
#include "qcsp/simplify.hpp"
#include "qcsp/text_format.hpp"

using namespace qcsp;

namespace {

// Pinned parameters.
constexpr double kMembershipSeconds = 5.0;
constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 200;
constexpr std::uint64_t kMaxStrategySpace = 100'000;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s  %d  %s", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!detail.empty()) std::printf("  [%s]", detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
  failures += !ok;
}

Qcsp golden(const std::string& name) { return parse_qcsp(golden_text(name)); }

std::string text(std::span<const Value> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

PropertyQuery query(Family f, Kind k, std::string var,
                    std::optional<Value> a = {}, std::optional<Value> b = {}) {
  PropertyQuery q;
  q.family = f;
  q.kind = k;
  q.variable = std::move(var);
  q.a = a;
  q.b = b;
  return q;
}

const std::vector<Qcsp>& corpus() {
  static const auto c = random_corpus(kCorpusSize, kCorpusSeed, 4, 3);
  return c;
}

void criterion1() {
  const auto p1 = golden("PHI1");
  const std::vector<Tuple> expected = {{2, 3, 5}, {2, 3, 6}, {2, 4, 6}};
  std::size_t total = 0, winning = 0;
  for_each_strategy(p1, [&](const Strategy& s) {
    ++total;
    winning += is_winning(p1, s);
    return true;
  });
  const auto lex = outcomes_lex(p1).tuples();
  const auto strat = outcomes_via_strategies(p1).tuples();
  const bool ok = evaluate_truth(p1) && total == 32 && winning == 2 &&
                  lex == expected && strat == expected;
  report(1, ok, "PHI1 true, 2 of 32 strategies winning, outcomes {(2,3,5),(2,3,6),(2,4,6)}",
         std::to_string(winning) + "/" + std::to_string(total) + " winning, " +
             std::to_string(lex.size()) + " lex outcomes, " +
             std::to_string(strat.size()) + " strategy outcomes");
}

void criterion2() {
  const auto p1 = golden("PHI1");
  std::ostringstream detail;
  bool ok = true;
  const std::vector<PropertyQuery> deep_hold = {
      query(Family::kDeep, Kind::kInconsistent, "x1", 3),
      query(Family::kDeep, Kind::kInconsistent, "x3", 3),
      query(Family::kDeep, Kind::kInconsistent, "x3", 4),
      query(Family::kDeep, Kind::kSubstitutable, "x3", 5, 6),
      query(Family::kDeep, Kind::kFixable, "x3", 6),
      query(Family::kDeep, Kind::kRemovable, "x3", 5),
      query(Family::kDeep, Kind::kImplied, "x1", 2),
      query(Family::kDeep, Kind::kDetermined, "x1"),
  };
  for (const auto& q : deep_hold) {
    if (!check(p1, q).holds) {
      ok = false;
      detail << describe(q) << " fails; ";
    }
  }
  const std::vector<PropertyQuery> classical_fail = {
      query(Family::kClassical, Kind::kInconsistent, "x1", 3),
      query(Family::kClassical, Kind::kImplied, "x1", 2),
      query(Family::kClassical, Kind::kFixable, "x1", 2),
      query(Family::kClassical, Kind::kRemovable, "x1", 3),
      query(Family::kClassical, Kind::kSubstitutable, "x1", 3, 2),
      query(Family::kClassical, Kind::kDetermined, "x1"),
  };
  const Tuple witness = {3, 3, 6};
  for (const auto& q : classical_fail) {
    const auto v = check(p1, q);
    if (v.holds) {
      ok = false;
      detail << describe(q) << " holds; ";
    } else if (v.witness != witness && v.partner != witness) {
      ok = false;
      detail << describe(q) << " fails without (3,3,6); ";
    }
  }
  report(2, ok, "PHI1 slate: 8 deep properties hold, 6 classical ones fail on (3,3,6)",
         detail.str());
}

void criterion3() {
  const auto p2 = golden("PHI2");
  const std::vector<Tuple> expected = {{1, 3, 4}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}};
  std::ostringstream detail;
  bool ok = outcomes_lex(p2).tuples() == expected;
  if (!ok) detail << "outcomes differ; ";
  for (const auto& q : {query(Family::kShallow, Kind::kInterchangeable, "x2", 3, 4),
                        query(Family::kShallow, Kind::kFixable, "x2", 3),
                        query(Family::kShallow, Kind::kFixable, "x2", 4),
                        query(Family::kShallow, Kind::kRemovable, "x2", 3),
                        query(Family::kShallow, Kind::kIrrelevant, "x2")}) {
    if (!check(p2, q).holds) {
      ok = false;
      detail << describe(q) << " fails; ";
    }
  }
  for (const auto& q : {query(Family::kDeep, Kind::kFixable, "x2", 3),
                        query(Family::kDeep, Kind::kFixable, "x2", 4),
                        query(Family::kDeep, Kind::kSubstitutable, "x2", 3, 4)}) {
    if (check(p2, q).holds) {
      ok = false;
      detail << describe(q) << " holds; ";
    }
  }
  report(3, ok, "PHI2 outcomes and shallow/deep slate", detail.str());
}

void criterion4() {
  const auto nim = golden("PHI3");
  std::ostringstream detail;
  bool ok = evaluate_truth(nim);
  if (!ok) detail << "PHI3 false; ";
  const std::vector<std::pair<Tuple, bool>> cases = {
      {{8, 4, 7, 1, 10}, true}, {{6, 6, 6, 6, 6}, false}, {{8, 4, 7, 1, 5}, false}};
  for (const auto& [t, expected] : cases) {
    const auto start = std::chrono::steady_clock::now();
    const bool got = is_outcome(nim, t);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && got == expected && seconds < kMembershipSeconds;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%s in %.3fs; ", text(t).c_str(),
                  got ? "true" : "false", seconds);
    detail << buf;
  }
  report(4, ok, "Nim membership without materializing outcomes, each < 5 s", detail.str());
}

void criterion5() {
  const auto p4 = golden("PHI4");
  const auto p5 = golden("PHI5");
  bool ok = true;
  const auto removable = query(Family::kDeep, Kind::kRemovable, "x", 2);
  for (std::size_t k = 0; k < p4.constraints().size(); ++k) {
    ok = ok && check_deep(project_single_constraint(p4, k), removable).holds;
  }
  ok = ok && p4.constraints().size() == 4 && !check_deep(p4, removable).holds;
  const auto fixable = query(Family::kShallow, Kind::kFixable, "x1", 0);
  for (std::size_t k = 0; k < p5.constraints().size(); ++k) {
    ok = ok && check_shallow(project_single_constraint(p5, k), fixable).holds;
  }
  ok = ok && p5.constraints().size() == 2 && !check_shallow(p5, fixable).holds;
  report(5, ok, "local counterexamples: PHI4 d-removable(x,2), PHI5 s-fixable(x1,0)", "");
}

void criterion6() {
  std::vector<Qcsp> instances;
  for (auto& g : golden_instances()) instances.push_back(std::move(g.problem));
  instances.insert(instances.end(), corpus().begin(), corpus().end());
  const auto r = validate_propositions(instances);
  std::ostringstream detail;
  for (const auto& t : r.tallies) {
    if (t.violations) detail << "prop " << t.id << ": " << t.violations << " violations; ";
  }
  if (!r.violations.empty()) detail << "first: " << r.violations.front().detail << "; ";

  // Negative controls.
  const std::vector<Qcsp> slice(corpus().begin(), corpus().begin() + 60);
  std::vector<std::pair<std::string, Hooks>> faults;
  auto h = Hooks::standard();
  h.truth = [](const Qcsp& phi) { return !evaluate_truth(phi); };
  faults.push_back({"truth", h});
  h = Hooks::standard();
  h.outcomes = [](const Qcsp& phi, const Limits& limits) {
    auto tuples = outcomes_lex(phi, limits).tuples();
    tuples.push_back(Tuple(phi.size(), 99));
    return OutcomeSet(std::move(tuples), OutcomeEngine::kLexicographicScan);
  };
  faults.push_back({"outcomes", h});
  h = Hooks::standard();
  h.is_outcome = [](const Qcsp&, std::span<const Value>) { return true; };
  faults.push_back({"is_outcome", h});
  h = Hooks::standard();
  h.check = [](const Qcsp& phi, const PropertyQuery& q, const CheckOptions& o) {
    auto v = check(phi, q, o);
    v.holds = !v.holds;
    return v;
  };
  faults.push_back({"check", h});
  h = Hooks::standard();
  h.remove = [](const Qcsp& phi, VarIndex x, Value a) { return fix_value(phi, x, a); };
  faults.push_back({"remove", h});
  h = Hooks::standard();
  h.fix = [](const Qcsp& phi, VarIndex x, Value a) {
    for (Value b : phi.domain(x)) {
      if (b != a) return fix_value(phi, x, b);
    }
    return phi;
  };
  faults.push_back({"fix", h});
  h = Hooks::standard();
  h.local = [](const Qcsp& phi, const PropertyQuery& q, const CheckOptions& o) {
    auto rep = local_detect(phi, q, o);
    rep.combined = true;
    return rep;
  };
  faults.push_back({"local", h});
  bool controls = true;
  for (const auto& [name, hooks] : faults) {
    if (validate_propositions(slice, hooks).ok()) {
      controls = false;
      detail << "fault '" << name << "' undetected; ";
    }
  }
  report(6, r.ok() && controls,
         "propositions 1-11 on 5 worked + 200 random instances: zero violations; "
         "every fault-injection control detected",
         detail.str());
}

void criterion7() {
  const auto [p1, log] = simplify_fixpoint(golden("PHI1"), {.verify = true});
  bool ok = p1.domain(0) == std::vector<Value>{2} && !p1.variable(2).contains(3) &&
            !p1.variable(2).contains(4) && evaluate_truth(p1);
  std::size_t steps = 0, broken = 0;
  for (const auto& phi : corpus()) {
    const auto [result, rlog] = simplify_fixpoint(phi, {.verify = true});
    for (const auto& s : rlog.steps) {
      ++steps;
      broken += s.truth_before != s.truth_after;
    }
  }
  ok = ok && broken == 0;
  report(7, ok, "simplify_fixpoint: PHI1 gives D_x1={2} without 3,4 in D_x3; every step preserves truth",
         std::to_string(steps) + " random steps, " + std::to_string(broken) + " truth changes");
}

void criterion8() {
  std::vector<Qcsp> instances;
  for (auto& g : golden_instances()) instances.push_back(std::move(g.problem));
  instances.insert(instances.end(), corpus().begin(), corpus().end());
  Limits limits;
  limits.max_strategies = kMaxStrategySpace;
  std::size_t checked = 0, mismatches = 0;
  for (const auto& phi : instances) {
    if (strategy_space(phi) > kMaxStrategySpace) continue;
    ++checked;
    bool some_winning = false;
    for_each_strategy(
        phi,
        [&](const Strategy& s) {
          some_winning = is_winning(phi, s);
          return !some_winning;
        },
        limits);
    const bool same = outcomes_lex(phi) == outcomes_via_strategies(phi, limits) &&
                      evaluate_truth(phi) == some_winning;
    mismatches += !same;
  }
  report(8, mismatches == 0,
         "outcomes_lex = outcomes_via_strategies and truth = some winning strategy, strategy space <= 1e5",
         std::to_string(checked) + " instances, " + std::to_string(mismatches) + " mismatches");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,
      criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "threw", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
