#include "qcsp/cli.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "qcsp/harness.hpp"
#include "qcsp/local.hpp"
#include "qcsp/report.hpp"
#include "qcsp/simplify.hpp"
#include "qcsp/text_format.hpp"

namespace qcsp::cli {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string item = text.substr(start, comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Tuple parse_tuple(const std::string& text) {
  Tuple t;
  for (const auto& item : split_list(text)) {
    Value v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("'" + item + "' in --member is not an integer");
    }
    t.push_back(v);
  }
  return t;
}

OutcomeEngine parse_engine(const std::string& text) {
  if (text == "lex" || text == "lexicographic-scan") {
    return OutcomeEngine::kLexicographicScan;
  }
  if (text == "tree" || text == "game-tree") return OutcomeEngine::kGameTree;
  if (text == "strategies" || text == "strategy-enumeration") {
    return OutcomeEngine::kStrategyEnumeration;
  }
  throw UsageError("unknown engine '" + text + "'");
}

// Raw flag values shared by `check` and `local`.
struct QueryFlags {
  std::string family = "deep";
  std::string kind;
  std::string var;
  std::optional<Value> val;
  std::optional<Value> to;
  std::optional<std::string> set;
  std::string rhs = "out";
};

void add_query_flags(CLI::App* sub, QueryFlags& f, bool kind_required) {
  sub->add_option("--family", f.family,
                  "deep | shallow | dual | classical (default deep)");
  auto* kind = sub->add_option("--kind", f.kind, "property kind");
  if (kind_required) kind->required();
  sub->add_option("--var", f.var, "variable name");
  sub->add_option("--val", f.val, "value a");
  sub->add_option("--to", f.to, "value b");
  sub->add_option("--set", f.set, "comma-separated V for 'dependent'");
  sub->add_option("--rhs", f.rhs, "out | sol: right-hand set of deep checks");
}

PropertyQuery build_query(const QueryFlags& f) {
  PropertyQuery q;
  auto family = parse_family(f.family);
  if (!family) throw UsageError("unknown family '" + f.family + "'");
  auto kind = parse_kind(f.kind);
  if (!kind) throw UsageError("unknown kind '" + f.kind + "'");
  if (f.var.empty()) throw UsageError("--var is required");
  q.family = *family;
  q.kind = *kind;
  q.variable = f.var;
  q.a = f.val;
  q.b = f.to;
  if (f.set) q.depends_on = split_list(*f.set);
  return q;
}

RhsSet parse_rhs(const std::string& text) {
  if (text == "out") return RhsSet::kOutcomes;
  if (text == "sol") return RhsSet::kSolutions;
  throw UsageError("--rhs must be 'out' or 'sol'");
}

std::string tuple_text(std::span<const Value> t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(t[k]);
  }
  return s + ')';
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << (v.holds ? "holds" : "fails") << '\n';
  if (v.witness) out << "witness: " << tuple_text(*v.witness) << '\n';
  if (v.partner) out << "partner: " << tuple_text(*v.partner) << '\n';
  if (v.replacement) out << "replacement: " << *v.replacement << '\n';
  out << "method: " << describe(v.method) << '\n';
}

void print_step(std::ostream& out, const SimplificationStep& s) {
  out << step_json(s).dump() << '\n';
}

json base_document(const Command& cmd, std::string_view name) {
  return {{"command", name}, {"input", cmd.input}};
}

int run_solve(const Command& cmd, const Qcsp& phi, std::ostream& out) {
  const bool truth = evaluate_truth(phi);
  if (cmd.json) {
    auto doc = base_document(cmd, "solve");
    doc["truth"] = truth;
    doc["problem"] = problem_json(phi);
    out << doc.dump(2) << '\n';
  } else {
    out << (truth ? "true" : "false") << '\n';
  }
  return cmd.expect_true && !truth ? kViolation : kOk;
}

int run_outcomes(const Command& cmd, const Qcsp& phi, std::ostream& out) {
  if (cmd.member) {
    if (cmd.member->size() != phi.size()) {
      throw UsageError("--member has " + std::to_string(cmd.member->size()) +
                       " values, the problem has " +
                       std::to_string(phi.size()) + " variables");
    }
    const bool member = is_outcome(phi, *cmd.member);
    if (cmd.json) {
      auto doc = base_document(cmd, "outcomes");
      doc["member"] = {{"tuple", tuple_json(*cmd.member)}, {"outcome", member}};
      out << doc.dump(2) << '\n';
    } else {
      out << (member ? "true" : "false") << '\n';
    }
    return kOk;
  }
  const OutcomeSet set = compute_outcomes(phi, cmd.engine, cmd.limits);
  if (cmd.json) {
    auto doc = base_document(cmd, "outcomes");
    doc["outcomes"] = outcomes_json(set, cmd.limit);
    out << doc.dump(2) << '\n';
    return kOk;
  }
  const std::size_t shown = std::min(set.size(), cmd.limit.value_or(set.size()));
  for (std::size_t k = 0; k < shown; ++k) {
    out << tuple_text(set.tuples()[k]) << '\n';
  }
  if (shown < set.size()) {
    out << "... " << set.size() - shown << " more (" << set.size()
        << " outcomes)\n";
  }
  return kOk;
}

int run_check(const Command& cmd, const Qcsp& phi, std::ostream& out) {
  CheckOptions options;
  options.limits = cmd.limits;
  options.engine = cmd.engine;
  options.rhs = cmd.rhs;
  const Verdict v = check(phi, *cmd.query, options);
  if (cmd.json) {
    auto doc = base_document(cmd, "check");
    doc["query"] = query_json(*cmd.query);
    doc["verdict"] = verdict_json(v);
    out << doc.dump(2) << '\n';
  } else {
    out << describe(*cmd.query) << ": ";
    print_verdict(out, v);
  }
  return kOk;
}

bool truth_changed(const SimplificationLog& log) {
  for (const auto& s : log.steps) {
    if (s.truth_before && s.truth_after && *s.truth_before != *s.truth_after) {
      return true;
    }
  }
  return false;
}

int emit_simplified(const Command& cmd, std::string_view name,
                    const Qcsp& result, const SimplificationLog& log,
                    std::ostream& out, json doc) {
  if (cmd.json) {
    doc["command"] = name;
    doc["result"] = print_qcsp(result);
    json steps = json::array();
    for (const auto& s : log.steps) steps.push_back(step_json(s));
    doc["log"] = steps;
    out << doc.dump(2) << '\n';
  } else {
    out << print_qcsp(result);
    for (const auto& s : log.steps) print_step(out, s);
  }
  return truth_changed(log) ? kViolation : kOk;
}

int run_simplify(const Command& cmd, const Qcsp& phi, std::ostream& out) {
  SimplifyOptions options;
  options.check.limits = cmd.limits;
  options.check.engine = cmd.engine;
  options.verify = cmd.verify;
  auto [result, log] = simplify_fixpoint(phi, options);
  return emit_simplified(cmd, "simplify", result, log, out,
                         base_document(cmd, "simplify"));
}

int run_local(const Command& cmd, const Qcsp& phi, std::ostream& out) {
  CheckOptions options;
  options.limits = cmd.limits;
  options.engine = cmd.engine;
  json doc = base_document(cmd, "local");
  if (cmd.query) {
    const LocalReport r = local_detect(phi, *cmd.query, options);
    if (cmd.json) {
      doc["report"] = local_json(r);
    } else {
      out << describe(*cmd.query) << '\n';
      out << "constraint  verdict\n";
      for (std::size_t k = 0; k < r.per_constraint.size(); ++k) {
        out << std::setw(10) << std::left << ("c" + std::to_string(k + 1))
            << "  " << (r.per_constraint[k].holds ? "holds" : "fails")
            << '\n';
      }
      out << "combined (" << to_string(r.mode)
          << "): " << (r.combined ? "holds" : "inconclusive") << '\n';
    }
  }
  if (!cmd.prune) {
    if (cmd.json) out << doc.dump(2) << '\n';
    return kOk;
  }
  SimplifyOptions prune_options;
  prune_options.check = options;
  prune_options.verify = cmd.verify;
  auto [result, log] = local_prune_fixpoint(phi, prune_options);
  return emit_simplified(cmd, "local", result, log, out, std::move(doc));
}

int run_validate(const Command& cmd, std::ostream& out) {
  std::vector<Qcsp> instances;
  for (auto& g : golden_instances()) instances.push_back(std::move(g.problem));
  auto random = random_corpus(cmd.count, cmd.seed, cmd.max_vars, cmd.max_domain);
  instances.insert(instances.end(), random.begin(), random.end());
  HarnessOptions options;
  options.limits = cmd.limits;
  const auto report = validate_propositions(instances, Hooks::standard(), options);
  if (cmd.json) {
    auto doc = base_document(cmd, "validate");
    doc["report"] = proposition_json(report);
    out << doc.dump(2) << '\n';
  } else {
    out << report.instances << " instances (5 worked examples + " << cmd.count
        << " random, seed " << cmd.seed << ")\n";
    out << "id   checks      violations  proposition\n";
    for (const auto& t : report.tallies) {
      out << std::left << std::setw(5) << t.id << std::setw(12) << t.checks
          << std::setw(12) << t.violations << t.title << '\n';
    }
    for (const auto& v : report.violations) {
      out << "violation [" << v.proposition << "] instance " << v.instance_index
          << ": " << v.detail << '\n'
          << v.instance;
    }
    out << report.skipped.size() << " skips\n";
  }
  return report.ok() ? kOk : kViolation;
}

}  // namespace

std::optional<Command> parse_command(const std::vector<std::string>& args,
                                     std::ostream& out, std::ostream& err,
                                     int& exit_code) {
  Command cmd;
  CLI::App app{"Analyze quantified constraint satisfaction problems"};
  app.name("qcsp");
  app.require_subcommand(1);

  std::string engine = "lex";
  std::optional<std::size_t> limit;
  std::string member;
  std::string rhs = "out";
  QueryFlags check_flags;
  QueryFlags local_flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", cmd.input, "problem file")->required();
    sub->add_option("--max-tuples", cmd.limits.max_tuples,
                    "enumeration limit on tuples");
    sub->add_option("--max-strategies", cmd.limits.max_strategies,
                    "enumeration limit on strategies");
    sub->add_flag("--json", cmd.json, "emit one JSON document");
  };
  auto with_engine = [&](CLI::App* sub) {
    sub->add_option("--engine", engine,
                    "outcome engine: lex | tree | strategies (default lex)");
  };

  auto* solve = app.add_subcommand("solve", "print the truth value");
  common(solve);
  solve->add_flag("--expect-true", cmd.expect_true, "exit 1 when false");

  auto* outcomes = app.add_subcommand("outcomes", "print the outcome set");
  common(outcomes);
  with_engine(outcomes);
  outcomes->add_option("--limit", limit, "print at most N tuples");
  outcomes->add_option("--member", member,
                       "decide membership of v1,v2,... only");

  auto* check_cmd = app.add_subcommand("check", "decide one property");
  common(check_cmd);
  with_engine(check_cmd);
  add_query_flags(check_cmd, check_flags, true);

  auto* simplify = app.add_subcommand(
      "simplify", "apply licensed removals and fixes until none applies");
  common(simplify);
  with_engine(simplify);
  simplify->add_flag("--verify", cmd.verify, "record truth around each step");

  auto* local = app.add_subcommand(
      "local", "per-constraint detection of a deep property");
  common(local);
  with_engine(local);
  add_query_flags(local, local_flags, false);
  local->add_flag("--prune", cmd.prune,
                  "remove locally certified inconsistent values");
  local->add_flag("--verify", cmd.verify, "record truth around each step");

  auto* validate = app.add_subcommand(
      "validate", "check every proposition on worked and random instances");
  validate->add_option("--count", cmd.count, "random instances");
  validate->add_option("--seed", cmd.seed, "generator seed");
  validate->add_option("--max-vars", cmd.max_vars, "variables per instance");
  validate->add_option("--max-dom", cmd.max_domain, "values per domain");
  validate->add_option("--max-tuples", cmd.limits.max_tuples,
                       "enumeration limit on tuples");
  validate->add_option("--max-strategies", cmd.limits.max_strategies,
                       "enumeration limit on strategies");
  validate->add_flag("--json", cmd.json, "emit one JSON document");

  std::vector<std::string> argv_storage{"qcsp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (solve->parsed()) cmd.name = Subcommand::kSolve;
    if (outcomes->parsed()) cmd.name = Subcommand::kOutcomes;
    if (check_cmd->parsed()) cmd.name = Subcommand::kCheck;
    if (simplify->parsed()) cmd.name = Subcommand::kSimplify;
    if (local->parsed()) cmd.name = Subcommand::kLocal;
    if (validate->parsed()) cmd.name = Subcommand::kValidate;

    cmd.engine = parse_engine(engine);
    cmd.limit = limit;
    if (!member.empty()) cmd.member = parse_tuple(member);
    if (check_cmd->parsed()) {
      cmd.query = build_query(check_flags);
      cmd.rhs = parse_rhs(check_flags.rhs);
    }
    if (local->parsed()) {
      if (!local_flags.kind.empty()) cmd.query = build_query(local_flags);
      if (!cmd.query && !cmd.prune) {
        throw UsageError("local needs --kind, --prune or both");
      }
    }
    if (validate->parsed() && (cmd.max_vars == 0 || cmd.max_domain == 0)) {
      throw UsageError("--max-vars and --max-dom must be positive");
    }
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kOk : kUsage;
    return std::nullopt;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    exit_code = kUsage;
    return std::nullopt;
  }
  exit_code = kOk;
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.name == Subcommand::kValidate) return run_validate(cmd, out);
    const Qcsp phi = load_qcsp(cmd.input, cmd.limits);
    switch (cmd.name) {
      case Subcommand::kSolve: return run_solve(cmd, phi, out);
      case Subcommand::kOutcomes: return run_outcomes(cmd, phi, out);
      case Subcommand::kCheck: return run_check(cmd, phi, out);
      case Subcommand::kSimplify: return run_simplify(cmd, phi, out);
      case Subcommand::kLocal: return run_local(cmd, phi, out);
      case Subcommand::kValidate: break;
    }
  } catch (const ParseError& e) {
    err << cmd.input << ':' << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  int code = kOk;
  auto cmd = parse_command(args, out, err, code);
  if (!cmd) return code;
  return run(*cmd, out, err);
}

}  // namespace qcsp::cli
