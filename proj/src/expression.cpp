#include "qcsp/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace qcsp {

std::string_view to_string(Comparison op) {
  switch (op) {
    case Comparison::kEq: return "=";
    case Comparison::kNe: return "!=";
    case Comparison::kLe: return "<=";
    case Comparison::kLt: return "<";
    case Comparison::kGe: return ">=";
    case Comparison::kGt: return ">";
  }
  return "?";
}

namespace {
__extension__ using Wide = __int128;
}  // namespace

bool LinearComparison::holds(std::span<const Value> values) const {
  Wide sum = constant;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    sum += static_cast<Wide>(terms[i].second) * values[i];
  }
  switch (op) {
    case Comparison::kEq: return sum == 0;
    case Comparison::kNe: return sum != 0;
    case Comparison::kLe: return sum <= 0;
    case Comparison::kLt: return sum < 0;
    case Comparison::kGe: return sum >= 0;
    case Comparison::kGt: return sum > 0;
  }
  return false;
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  LinearComparison parse() {
    LinearComparison out;
    parse_sum(out, 1);
    skip_space();
    const std::size_t op_column = pos_ + 1;
    out.op = parse_operator();
    parse_sum(out, -1);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (out.terms.empty()) {
      throw ParseError(1, op_column, "comparison mentions no variable");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(1, pos_ + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_ident_start() const {
    return pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_');
  }

  bool at_digit() const {
    return pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Value number() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    Value v = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) {
      pos_ = start;
      fail("integer out of range");
    }
    return v;
  }

  void add_term(LinearComparison& out, const std::string& name, Value coef) {
    auto it = std::find_if(out.terms.begin(), out.terms.end(),
                           [&](const auto& t) { return t.first == name; });
    if (it == out.terms.end()) {
      out.terms.emplace_back(name, coef);
    } else {
      it->second += coef;
    }
  }

  // sum := ['+'|'-'] term (('+'|'-') term)*
  // term := INT | IDENT | INT '*' IDENT | IDENT '*' INT
  void parse_sum(LinearComparison& out, Value side) {
    bool first = true;
    while (true) {
      skip_space();
      Value sign = 1;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        return;
      }
      parse_term(out, sign * side);
      first = false;
    }
  }

  void parse_term(LinearComparison& out, Value factor) {
    if (at_digit()) {
      const Value c = number();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (!at_ident_start()) fail("expected a variable after '*'");
        add_term(out, ident(), factor * c);
      } else {
        out.constant += factor * c;
      }
      return;
    }
    if (at_ident_start()) {
      const std::string name = ident();
      skip_space();
      Value c = 1;
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (!at_digit()) fail("expected an integer after '*'");
        c = number();
      }
      add_term(out, name, factor * c);
      return;
    }
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    fail("expected a term, found '" + std::string(1, text_[pos_]) + "'");
  }

  Comparison parse_operator() {
    auto rest = text_.substr(pos_);
    struct Op {
      std::string_view token;
      Comparison op;
    };
    static constexpr Op kOps[] = {
        {"==", Comparison::kEq}, {"!=", Comparison::kNe},
        {"<>", Comparison::kNe}, {"<=", Comparison::kLe},
        {">=", Comparison::kGe}, {"=", Comparison::kEq},
        {"<", Comparison::kLt},  {">", Comparison::kGt},
    };
    for (const auto& op : kOps) {
      if (rest.starts_with(op.token)) {
        pos_ += op.token.size();
        return op.op;
      }
    }
    if (pos_ >= text_.size()) fail("missing comparison operator");
    fail("unsupported operator at '" + std::string(rest.substr(0, 2)) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearComparison parse_linear_comparison(std::string_view text) {
  return ExpressionParser(text).parse();
}

Relation compile_expression(std::string_view expr,
                            std::span<const VariableDecl> declared,
                            const Limits& limits) {
  return compile_expression(parse_linear_comparison(expr), declared, limits);
}

Relation compile_expression(const LinearComparison& expr,
                            std::span<const VariableDecl> declared,
                            const Limits& limits) {
  // Scope in prefix order; `slot[j]` maps scope position j to its term.
  std::vector<std::pair<VarIndex, std::size_t>> placed;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    const auto& name = expr.terms[t].first;
    auto it = std::find_if(declared.begin(), declared.end(),
                           [&](const VariableDecl& v) { return v.name == name; });
    if (it == declared.end()) throw UnknownVariable(name);
    placed.emplace_back(static_cast<VarIndex>(it - declared.begin()), t);
  }
  std::sort(placed.begin(), placed.end());

  std::vector<VarIndex> scope;
  std::vector<std::vector<Value>> domains;
  std::uint64_t space = 1;
  for (const auto& [var, term] : placed) {
    scope.push_back(var);
    domains.push_back(declared[var].domain);
    space = saturating_mul(space, declared[var].domain.size());
  }
  if (space > limits.max_tuples) {
    throw LimitExceeded("expression scope has " + std::to_string(space) +
                        " tuples, above the limit of " +
                        std::to_string(limits.max_tuples));
  }

  std::vector<Tuple> rows;
  Tuple by_term(expr.terms.size());
  for_each_product(domains, [&](const Tuple& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      by_term[placed[j].second] = row[j];
    }
    if (expr.holds(by_term)) rows.push_back(row);
  });
  return Relation(std::move(scope), std::move(rows));
}

}  // namespace qcsp
