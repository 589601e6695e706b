#include "qcsp/harness.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>

#include "qcsp/simplify.hpp"
#include "qcsp/text_format.hpp"

namespace qcsp {

std::string_view to_string(QuantifierPattern p) {
  switch (p) {
    case QuantifierPattern::kRandom: return "random";
    case QuantifierPattern::kAlternating: return "alternating";
    case QuantifierPattern::kSigma: return "sigma";
    case QuantifierPattern::kAllExists: return "all-exists";
    case QuantifierPattern::kAllForall: return "all-forall";
  }
  return "?";
}

namespace {

// mt19937_64 is specified bit for bit; the standard distributions are not,
// so bounded draws are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % n;
    }
  }

  std::size_t range(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(below(hi - lo + 1));
  }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p;
  }

  // First k entries of a uniformly shuffled 0..n-1.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(v[i], v[i + below(n - i)]);
    }
    v.resize(k);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("infeasible config: ") + what);
}

std::vector<Quantifier> draw_quantifiers(const GenConfig& cfg, std::size_t n,
                                         Rng& rng) {
  std::vector<Quantifier> q(n, Quantifier::kExists);
  switch (cfg.pattern) {
    case QuantifierPattern::kRandom:
      for (auto& x : q) {
        x = rng.chance(0.5) ? Quantifier::kForall : Quantifier::kExists;
      }
      break;
    case QuantifierPattern::kAlternating:
      for (std::size_t i = 0; i < n; ++i) {
        q[i] = i % 2 ? Quantifier::kForall : Quantifier::kExists;
      }
      break;
    case QuantifierPattern::kSigma: {
      const std::size_t blocks = std::min(cfg.sigma_blocks, n);
      auto cuts = rng.sample(n - 1, blocks - 1);
      for (auto& c : cuts) ++c;
      std::sort(cuts.begin(), cuts.end());
      std::size_t block = 0;
      for (std::size_t i = 0; i < n; ++i) {
        while (block < cuts.size() && cuts[block] == i) ++block;
        q[i] = block % 2 ? Quantifier::kForall : Quantifier::kExists;
      }
      break;
    }
    case QuantifierPattern::kAllExists:
      break;
    case QuantifierPattern::kAllForall:
      std::fill(q.begin(), q.end(), Quantifier::kForall);
      break;
  }
  return q;
}

}  // namespace

Qcsp random_qcsp(const GenConfig& cfg) {
  require(cfg.min_vars >= 1 && cfg.min_vars <= cfg.max_vars, "variable range");
  require(cfg.min_domain >= 1 && cfg.min_domain <= cfg.max_domain,
          "domain size range");
  require(cfg.value_span >= cfg.max_domain, "value span below domain size");
  require(cfg.min_constraints <= cfg.max_constraints, "constraint range");
  require(cfg.max_arity >= 1, "arity");
  require(cfg.sigma_blocks >= 1, "sigma blocks");
  require(cfg.density >= 0.0 && cfg.density <= 1.0, "density");

  Rng rng(cfg.seed);
  const std::size_t n = rng.range(cfg.min_vars, cfg.max_vars);
  const auto quantifiers = draw_quantifiers(cfg, n, rng);

  std::vector<VariableDecl> vars(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i].name = "x" + std::to_string(i + 1);
    vars[i].quantifier = quantifiers[i];
    const std::size_t size = rng.range(cfg.min_domain, cfg.max_domain);
    for (std::size_t v : rng.sample(cfg.value_span, size)) {
      vars[i].domain.push_back(cfg.value_base + static_cast<Value>(v));
    }
    std::sort(vars[i].domain.begin(), vars[i].domain.end());
  }

  const std::size_t m = rng.range(cfg.min_constraints, cfg.max_constraints);
  std::vector<Relation> constraints;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t arity = rng.range(1, std::min(cfg.max_arity, n));
    std::vector<VarIndex> scope = rng.sample(n, arity);
    std::vector<std::vector<Value>> domains;
    for (VarIndex x : scope) domains.push_back(vars[x].domain);
    std::vector<Tuple> rows;
    for_each_product(std::span<const std::vector<Value>>(domains),
                     [&](const Tuple& t) {
                       if (rng.chance(cfg.density)) rows.push_back(t);
                     });
    constraints.emplace_back(std::move(scope), std::move(rows));
  }
  return Qcsp(std::move(vars), std::move(constraints));
}

std::vector<Qcsp> random_corpus(std::size_t count, std::uint64_t seed,
                                std::size_t max_vars, std::size_t max_domain) {
  static constexpr std::array kPatterns = {
      QuantifierPattern::kRandom, QuantifierPattern::kAlternating,
      QuantifierPattern::kSigma, QuantifierPattern::kAllExists,
      QuantifierPattern::kAllForall};
  static constexpr std::array kDensities = {0.35, 0.5, 0.65, 0.8, 0.95};
  std::vector<Qcsp> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenConfig cfg;
    cfg.max_vars = std::max<std::size_t>(1, max_vars);
    cfg.min_vars = std::min<std::size_t>(2, cfg.max_vars);
    cfg.max_domain = std::max<std::size_t>(1, max_domain);
    cfg.min_domain = std::min<std::size_t>(2, cfg.max_domain);
    cfg.value_span = std::max<std::size_t>(5, cfg.max_domain);
    cfg.pattern = kPatterns[i % kPatterns.size()];
    cfg.sigma_blocks = 2 + (i / kPatterns.size()) % 2;
    cfg.density = kDensities[(i / 2) % kDensities.size()];
    cfg.seed = seed * 0x9E3779B97F4A7C15ULL + i;
    out.push_back(random_qcsp(cfg));
  }
  return out;
}

namespace {

constexpr std::string_view kPhi1 = R"(qcsp
var x1 exists 2..3
var x2 forall 3..4
var x3 exists 3..6
constraint expr x1 + x2 <= x3
)";

constexpr std::string_view kPhi2 = R"(qcsp
var x1 forall {1,2}
var x2 exists {3,4}
var x3 exists {4,5,6}
constraint expr x1 + x2 = x3
)";

constexpr std::string_view kPhi3 = R"(qcsp
# two players alternately pick a number in 1..10; the first wins on 30
var x1 exists 1..10
var x2 forall 1..10
var x3 exists 1..10
var x4 forall 1..10
var x5 exists 1..10
constraint expr x1 + x2 + x3 + x4 + x5 = 30
)";

constexpr std::string_view kPhi4 = R"(qcsp
var x exists 1..3
var y exists 1..3
constraint expr x <= y
constraint expr y <= x
constraint expr x != 1
constraint expr x != 3
)";

constexpr std::string_view kPhi5 = R"(qcsp
var x1 exists {0,1}
var x2 exists {0,1}
constraint expr x1 = x2
constraint expr x2 = 1
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 5>
    kGolden = {{{"PHI1", kPhi1},
                {"PHI2", kPhi2},
                {"PHI3", kPhi3},
                {"PHI4", kPhi4},
                {"PHI5", kPhi5}}};

}  // namespace

std::string golden_text(std::string_view name) {
  for (const auto& [n, text] : kGolden) {
    if (n == name) return std::string(text);
  }
  throw InvalidArgument("no golden instance named '" + std::string(name) + "'");
}

std::vector<NamedInstance> golden_instances() {
  std::vector<NamedInstance> out;
  for (const auto& [n, text] : kGolden) {
    out.push_back({std::string(n), parse_qcsp(text)});
  }
  return out;
}

Hooks Hooks::standard() {
  Hooks h;
  h.truth = [](const Qcsp& phi) { return evaluate_truth(phi); };
  h.outcomes = [](const Qcsp& phi, const Limits& limits) {
    return outcomes_lex(phi, limits);
  };
  h.is_outcome = [](const Qcsp& phi, std::span<const Value> t) {
    return qcsp::is_outcome(phi, t);
  };
  h.check = [](const Qcsp& phi, const PropertyQuery& q,
               const CheckOptions& options) { return qcsp::check(phi, q, options); };
  h.remove = [](const Qcsp& phi, VarIndex x, Value a) {
    return remove_value(phi, x, a);
  };
  h.fix = [](const Qcsp& phi, VarIndex x, Value a) {
    return fix_value(phi, x, a);
  };
  h.local = [](const Qcsp& phi, const PropertyQuery& q,
               const CheckOptions& options) {
    return local_detect(phi, q, options);
  };
  return h;
}

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 12>
    kPropositions = {{
        {"1", "truth iff some strategy is winning"},
        {"2", "deep definitions agree with out or sol on the right"},
        {"3", "classical implies deep"},
        {"4", "deep implies shallow"},
        {"5", "relations between properties"},
        {"6", "removing an s-removable value preserves truth"},
        {"7", "fixing an s-fixable value preserves truth"},
        {"8", "removing a dual s-removable value preserves truth"},
        {"9", "fixing a dual s-fixable value preserves truth"},
        {"10", "augmented-problem membership equals strategy outcomes"},
        {"11", "local combination rules are sound"},
        {"out", "out within sol, empty iff false, equal to sol when all-exists"},
    }};

std::size_t slot(std::string_view id) {
  for (std::size_t k = 0; k < kPropositions.size(); ++k) {
    if (kPropositions[k].first == id) return k;
  }
  throw InvalidArgument("unknown proposition id '" + std::string(id) + "'");
}

std::string tuple_text(std::span<const Value> t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(t[k]);
  }
  return s + ')';
}

// All checks for one instance.
class InstanceRun {
 public:
  InstanceRun(const Qcsp& phi, std::size_t index, const Hooks& hooks,
              const HarnessOptions& options, PropositionReport& report)
      : phi_(phi),
        index_(index),
        hooks_(hooks),
        options_(options),
        report_(report) {}

  void run() {
    truth_ = hooks_.truth(phi_);
    out_ = hooks_.outcomes(phi_, options_.limits);
    outcome_basics();
    strategy_checks();
    relaxed_ = hooks_.outcomes(relax_existential(phi_), options_.limits);
    if (!phi_.universals().empty()) {
      negated_ = hooks_.outcomes(negate(phi_, options_.limits), options_.limits);
    }
    for (VarIndex x = 0; x < phi_.size(); ++x) {
      rhs_equivalence(x);
      classical_implies_deep(x);
      deep_implies_shallow(x);
      relations(x);
      simplifications(x);
      local_rules(x);
    }
  }

 private:
  template <class Detail>
  void record(std::string_view id, bool ok, Detail&& detail) {
    auto& tally = report_.tallies[slot(id)];
    ++tally.checks;
    if (ok) return;
    ++tally.violations;
    std::size_t stored = 0;
    for (const auto& v : report_.violations) stored += v.proposition == id;
    if (stored >= options_.max_recorded) return;
    if (text_.empty()) text_ = print_qcsp(phi_);
    report_.violations.push_back(
        {std::string(id), index_, std::string(detail()), text_});
  }

  PropertyQuery query(Family f, Kind k, VarIndex x,
                      std::optional<Value> a = std::nullopt,
                      std::optional<Value> b = std::nullopt) const {
    PropertyQuery q;
    q.family = f;
    q.kind = k;
    q.variable = phi_.name(x);
    q.a = a;
    q.b = b;
    return q;
  }

  CheckOptions options_for(Family f, RhsSet rhs = RhsSet::kOutcomes) const {
    CheckOptions o;
    o.limits = options_.limits;
    o.rhs = rhs;
    switch (f) {
      case Family::kDeep:
      case Family::kShallow: o.precomputed = &out_; break;
      case Family::kClassical: o.precomputed = &relaxed_; break;
      case Family::kDualShallow: o.precomputed = &negated_; break;
    }
    return o;
  }

  bool holds(const PropertyQuery& q, RhsSet rhs = RhsSet::kOutcomes) const {
    return hooks_.check(phi_, q, options_for(q.family, rhs)).holds;
  }
  bool holds(Family f, Kind k, VarIndex x,
             std::optional<Value> a = std::nullopt,
             std::optional<Value> b = std::nullopt) const {
    return holds(query(f, k, x, a, b));
  }

  // Every V subset of X minus {x}, as names.
  std::vector<std::vector<std::string>> subsets_without(VarIndex x) const {
    std::vector<VarIndex> others;
    for (VarIndex y = 0; y < phi_.size(); ++y) {
      if (y != x) others.push_back(y);
    }
    std::vector<std::vector<std::string>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << others.size());
         ++mask) {
      std::vector<std::string> v;
      for (std::size_t k = 0; k < others.size(); ++k) {
        if (mask >> k & 1) v.push_back(phi_.name(others[k]));
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  void outcome_basics() {
    const auto sol = enumerate_solutions(phi_, options_.limits);
    const OutcomeSet sol_set(sol, OutcomeEngine::kLexicographicScan);
    for (const auto& t : out_) {
      if (!sol_set.contains(t)) {
        record("out", false,
               [&] { return "outcome " + tuple_text(t) + " is not a solution"; });
        return;
      }
    }
    record("out", true, [] { return ""; });
    record("out", out_.empty() != truth_, [&] {
      return std::string("out is ") + (out_.empty() ? "empty" : "nonempty") +
             " but the problem is " + (truth_ ? "true" : "false");
    });
    if (phi_.universals().empty()) {
      record("out", out_ == sol_set, [] {
        return std::string("without universals out should equal sol");
      });
    }
  }

  void strategy_checks() {
    const auto space = strategy_space(phi_);
    if (space > options_.max_strategy_space) {
      report_.skipped.push_back(
          {index_, "strategy checks skipped: " + std::to_string(space) +
                       " strategies exceed the cap of " +
                       std::to_string(options_.max_strategy_space)});
      return;
    }
    Limits limits = options_.limits;
    limits.max_strategies = std::max(limits.max_strategies, space);

    bool winning = false;
    for_each_strategy(
        phi_,
        [&](const Strategy& s) {
          winning = is_winning(phi_, s);
          return !winning;
        },
        limits);
    record("1", winning == truth_, [&] {
      return std::string("truth is ") + (truth_ ? "true" : "false") +
             " but a winning strategy " + (winning ? "exists" : "does not exist");
    });

    const OutcomeSet via = outcomes_via_strategies(phi_, limits);
    record("10", via == out_, [] {
      return std::string("outcome engine disagrees with the strategy union");
    });
    const auto domains = domains_of(phi_);
    std::optional<Tuple> mismatch;
    for_each_product(std::span<const std::vector<Value>>(domains),
                     [&](const Tuple& t) {
                       if (hooks_.is_outcome(phi_, t) != via.contains(t)) {
                         mismatch = t;
                         return false;
                       }
                       return true;
                     });
    record("10", !mismatch, [&] {
      return "membership of " + tuple_text(*mismatch) +
             " differs from the strategy union";
    });
  }

  void rhs_equivalence(VarIndex x) {
    auto same = [&](const PropertyQuery& q) {
      const bool via_out = holds(q, RhsSet::kOutcomes);
      const bool via_sol = holds(q, RhsSet::kSolutions);
      record("2", via_out == via_sol, [&] {
        return describe(q) + ": out gives " + (via_out ? "true" : "false") +
               ", sol gives " + (via_sol ? "true" : "false");
      });
    };
    const auto& d = phi_.domain(x);
    for (Value a : d) {
      same(query(Family::kDeep, Kind::kFixable, x, a));
      same(query(Family::kDeep, Kind::kRemovable, x, a));
      for (Value b : d) {
        if (b != a) same(query(Family::kDeep, Kind::kSubstitutable, x, a, b));
      }
    }
    same(query(Family::kDeep, Kind::kIrrelevant, x));
  }

  void implies(std::string_view id, const PropertyQuery& strong,
               const PropertyQuery& weak) {
    const bool ok = !holds(strong) || holds(weak);
    record(id, ok, [&] {
      return describe(strong) + " holds but " + describe(weak) + " does not";
    });
  }

  void classical_implies_deep(VarIndex x) {
    auto pair = [&](Kind k, std::optional<Value> a = std::nullopt,
                    std::optional<Value> b = std::nullopt) {
      implies("3", query(Family::kClassical, k, x, a, b),
              query(Family::kDeep, k, x, a, b));
    };
    const auto& d = phi_.domain(x);
    for (Value a : d) {
      pair(Kind::kInconsistent, a);
      pair(Kind::kFixable, a);
      pair(Kind::kRemovable, a);
      for (Value b : d) {
        if (b == a) continue;
        pair(Kind::kSubstitutable, a, b);
        pair(Kind::kInterchangeable, a, b);
      }
    }
    pair(Kind::kDetermined);
    pair(Kind::kIrrelevant);
    for (auto& v : subsets_without(x)) {
      auto strong = query(Family::kClassical, Kind::kDependent, x);
      strong.depends_on = v;
      auto weak = strong;
      weak.family = Family::kDeep;
      implies("3", strong, weak);
    }
  }

  void deep_implies_shallow(VarIndex x) {
    auto pair = [&](Kind k, std::optional<Value> a = std::nullopt,
                    std::optional<Value> b = std::nullopt) {
      implies("4", query(Family::kDeep, k, x, a, b),
              query(Family::kShallow, k, x, a, b));
    };
    const auto& d = phi_.domain(x);
    for (Value a : d) {
      pair(Kind::kFixable, a);
      pair(Kind::kRemovable, a);
      for (Value b : d) {
        if (b == a) continue;
        pair(Kind::kSubstitutable, a, b);
        pair(Kind::kInterchangeable, a, b);
      }
    }
    pair(Kind::kIrrelevant);
  }

  void relations(VarIndex x) {
    const auto& d = phi_.domain(x);
    const std::string& name = phi_.name(x);
    auto h = [&](Family f, Kind k, std::optional<Value> a = std::nullopt,
                 std::optional<Value> b = std::nullopt) {
      return holds(f, k, x, a, b);
    };
    auto check = [&](bool ok, const std::string& what) {
      record("5", ok, [&] { return what + " fails for " + name; });
    };
    constexpr auto kD = Family::kDeep;
    constexpr auto kS = Family::kShallow;

    for (Value a : d) {
      const std::string at = " at " + std::to_string(a);
      const bool inconsistent = h(kD, Kind::kInconsistent, a);
      bool all_subst = true;
      bool all_others_inconsistent = true;
      bool some_d_subst = false;
      bool some_s_subst = false;
      for (Value b : d) {
        if (b == a) continue;
        all_subst = all_subst && h(kD, Kind::kSubstitutable, a, b);
        all_others_inconsistent =
            all_others_inconsistent && h(kD, Kind::kInconsistent, b);
        some_d_subst = some_d_subst || h(kD, Kind::kSubstitutable, a, b);
        some_s_subst = some_s_subst || h(kS, Kind::kSubstitutable, a, b);
      }
      const bool implied = h(kD, Kind::kImplied, a);
      const bool d_removable = h(kD, Kind::kRemovable, a);
      const bool s_removable = h(kS, Kind::kRemovable, a);
      check(!inconsistent || all_subst,
            "inconsistent => substitutable to every other value" + at);
      check(implied == all_others_inconsistent,
            "implied <=> every other value inconsistent" + at);
      check(!implied || h(kD, Kind::kFixable, a), "implied => d-fixable" + at);
      check(!inconsistent || d_removable, "inconsistent => d-removable" + at);
      check(!some_d_subst || d_removable,
            "d-substitutable to some other value => d-removable" + at);
      check(!some_s_subst || s_removable,
            "s-substitutable to some other value => s-removable" + at);
    }
    bool all_d_fixable = true;
    bool all_s_fixable = true;
    for (Value b : d) {
      bool d_into = true;
      bool s_into = true;
      for (Value a : d) {
        if (a == b) continue;
        d_into = d_into && h(kD, Kind::kSubstitutable, a, b);
        s_into = s_into && h(kS, Kind::kSubstitutable, a, b);
      }
      const bool d_fixable = h(kD, Kind::kFixable, b);
      const bool s_fixable = h(kS, Kind::kFixable, b);
      all_d_fixable = all_d_fixable && d_fixable;
      all_s_fixable = all_s_fixable && s_fixable;
      const std::string at = " at " + std::to_string(b);
      check(d_fixable == d_into,
            "d-fixable <=> every value d-substitutable to it" + at);
      check(s_fixable == s_into,
            "s-fixable <=> every value s-substitutable to it" + at);
    }
    check(h(kD, Kind::kIrrelevant) == all_d_fixable,
          "d-irrelevant <=> d-fixable to every value");
    check(h(kS, Kind::kIrrelevant) == all_s_fixable,
          "s-irrelevant <=> s-fixable to every value");
  }

  void preserved(std::string_view id, const Qcsp& edited,
                 const std::string& what) {
    const bool after = hooks_.truth(edited);
    record(id, after == truth_, [&] {
      return what + " changed truth from " + (truth_ ? "true" : "false") +
             " to " + (after ? "true" : "false");
    });
  }

  void simplifications(VarIndex x) {
    const bool existential = phi_.is_existential(x);
    const Family f = existential ? Family::kShallow : Family::kDualShallow;
    const char* remove_id = existential ? "6" : "8";
    const char* fix_id = existential ? "7" : "9";
    const auto& d = phi_.domain(x);
    for (Value a : d) {
      if (d.size() >= 2) {
        const auto q = query(f, Kind::kRemovable, x, a);
        if (holds(q)) {
          preserved(remove_id, hooks_.remove(phi_, x, a),
                    "removal licensed by " + describe(q));
        }
      }
      const auto q = query(f, Kind::kFixable, x, a);
      if (holds(q)) {
        preserved(fix_id, hooks_.fix(phi_, x, a),
                  "fixing licensed by " + describe(q));
      }
    }
  }

  void local_rule(const PropertyQuery& q) {
    CheckOptions o;
    o.limits = options_.limits;
    o.engine = options_.local_engine;
    const LocalReport r = hooks_.local(phi_, q, o);
    bool folded = r.mode == Combination::kEveryConstraint;
    for (const auto& v : r.per_constraint) {
      folded = r.mode == Combination::kEveryConstraint ? folded && v.holds
                                                       : folded || v.holds;
    }
    const bool consistent = r.mode == combination_for(q.kind) &&
                            r.combined == folded &&
                            r.per_constraint.size() == phi_.constraints().size();
    record("11", consistent, [&] {
      return "local report for " + describe(q) +
             " does not follow its combination rule";
    });
    if (r.combined) {
      record("11", holds(q), [&] {
        return "local certificate for " + describe(q) +
               " but the property fails on the whole problem";
      });
    }
  }

  void local_rules(VarIndex x) {
    const auto& d = phi_.domain(x);
    for (Value a : d) {
      local_rule(query(Family::kDeep, Kind::kInconsistent, x, a));
      local_rule(query(Family::kDeep, Kind::kImplied, x, a));
      local_rule(query(Family::kDeep, Kind::kFixable, x, a));
      for (Value b : d) {
        if (b == a) continue;
        local_rule(query(Family::kDeep, Kind::kSubstitutable, x, a, b));
        local_rule(query(Family::kDeep, Kind::kInterchangeable, x, a, b));
      }
    }
    local_rule(query(Family::kDeep, Kind::kDetermined, x));
    local_rule(query(Family::kDeep, Kind::kIrrelevant, x));
    for (auto& v : subsets_without(x)) {
      auto q = query(Family::kDeep, Kind::kDependent, x);
      q.depends_on = std::move(v);
      local_rule(q);
    }
  }

  const Qcsp& phi_;
  std::size_t index_;
  const Hooks& hooks_;
  const HarnessOptions& options_;
  PropositionReport& report_;

  bool truth_ = false;
  OutcomeSet out_;
  OutcomeSet relaxed_;
  OutcomeSet negated_;
  std::string text_;
};

}  // namespace

PropositionReport::PropositionReport() {
  for (const auto& [id, title] : kPropositions) {
    tallies.push_back({std::string(id), std::string(title), 0, 0});
  }
}

const PropositionTally& PropositionReport::tally(std::string_view id) const {
  return tallies.at(slot(id));
}

std::uint64_t PropositionReport::total_violations() const {
  std::uint64_t n = 0;
  for (const auto& t : tallies) n += t.violations;
  return n;
}

void PropositionReport::merge(const PropositionReport& other) {
  for (std::size_t k = 0; k < tallies.size(); ++k) {
    tallies[k].checks += other.tallies[k].checks;
    tallies[k].violations += other.tallies[k].violations;
  }
  for (auto v : other.violations) {
    v.instance_index += instances;
    violations.push_back(std::move(v));
  }
  for (auto s : other.skipped) {
    s.instance_index += instances;
    skipped.push_back(std::move(s));
  }
  instances += other.instances;
}

PropositionReport validate_propositions(std::span<const Qcsp> instances,
                                        const Hooks& hooks,
                                        const HarnessOptions& options) {
  PropositionReport report;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    ++report.instances;
    const Qcsp& phi = instances[i];
    if (phi.tuple_space() > options.limits.max_tuples) {
      report.skipped.push_back(
          {i, "instance skipped: " + std::to_string(phi.tuple_space()) +
                  " tuples exceed the limit of " +
                  std::to_string(options.limits.max_tuples)});
      continue;
    }
    try {
      InstanceRun(phi, i, hooks, options, report).run();
    } catch (const LimitExceeded& e) {
      report.skipped.push_back({i, std::string("instance skipped: ") + e.what()});
    }
  }
  return report;
}

}  // namespace qcsp
