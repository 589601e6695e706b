#ifndef QCSP_EXPRESSION_HPP
#define QCSP_EXPRESSION_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsp/model.hpp"

namespace qcsp {

enum class Comparison { kEq, kNe, kLe, kLt, kGe, kGt };

std::string_view to_string(Comparison op);

/// `sum(coefficient * variable) + constant <op> 0`, obtained by moving the
/// right-hand side of a parsed comparison to the left.
struct LinearComparison {
  /// Variables in order of first mention. Coefficients may cancel to zero; the
  /// variable still belongs to the scope.
  std::vector<std::pair<std::string, Value>> terms;
  Value constant = 0;
  Comparison op = Comparison::kEq;

  bool holds(std::span<const Value> values) const;
};

/// Parses `lhs <op> rhs` where both sides are sums of integer constants,
/// variables and `c*x` products. Operators: = == != <> <= < >= >.
/// Throws ParseError with a 1-based column (line 1).
LinearComparison parse_linear_comparison(std::string_view text);

/// Tabulates `expr` over the domains of the variables it mentions. The scope
/// lists those variables in prefix order. Throws UnknownVariable when `expr`
/// names a variable absent from `declared`, LimitExceeded when the scope
/// product exceeds limits.max_tuples.
Relation compile_expression(std::string_view expr,
                            std::span<const VariableDecl> declared,
                            const Limits& limits = {});
Relation compile_expression(const LinearComparison& expr,
                            std::span<const VariableDecl> declared,
                            const Limits& limits = {});

}  // namespace qcsp

#endif  // QCSP_EXPRESSION_HPP
