#ifndef QCSP_CLI_HPP
#define QCSP_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcsp/game.hpp"
#include "qcsp/model.hpp"
#include "qcsp/properties.hpp"

namespace qcsp::cli {

enum class Subcommand { kSolve, kOutcomes, kCheck, kSimplify, kLocal, kValidate };

struct Command {
  Subcommand name = Subcommand::kSolve;
  std::string input;
  Limits limits;
  bool json = false;
  bool verify = false;

  // solve
  bool expect_true = false;
  // outcomes
  OutcomeEngine engine = OutcomeEngine::kLexicographicScan;
  std::optional<std::size_t> limit;
  std::optional<Tuple> member;
  // check, local
  std::optional<PropertyQuery> query;
  RhsSet rhs = RhsSet::kOutcomes;
  // local
  bool prune = false;
  // validate
  std::size_t count = 200;
  std::uint64_t seed = 1;
  std::size_t max_vars = 4;
  std::size_t max_domain = 3;
};

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2 };

/// Parses argv (without the program name). Returns the exit code to use
/// instead when parsing finished the job (help) or failed; messages go to
/// `out` / `err`.
std::optional<Command> parse_command(const std::vector<std::string>& args,
                                     std::ostream& out, std::ostream& err,
                                     int& exit_code);

/// Runs a parsed command. Library errors are reported on `err` and mapped to
/// kUsage.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_command followed by run.
int main_with_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

}  // namespace qcsp::cli

#endif  // QCSP_CLI_HPP
