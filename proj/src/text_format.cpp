#include "qcsp/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "qcsp/expression.hpp"

namespace qcsp {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Cursor over one line. Columns are 1-based.
class LineReader {
 public:
  LineReader(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }
  std::size_t pos() const { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier(std::string_view what) {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
      fail("expected " + std::string(what));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Value integer() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    const std::size_t digits = end;
    while (end < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    if (end == digits) fail("expected an integer");
    Value v = 0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, v);
    if (ec != std::errc() || ptr != text_.data() + end) {
      fail("integer out of range");
    }
    pos_ = end;
    return v;
  }

  std::string_view rest() {
    skip_space();
    return text_.substr(pos_);
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, pos_ + 1, message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct PendingName {
  std::string name;
  std::size_t column;
};

struct PendingRow {
  std::vector<Value> values;
  std::size_t column;
};

struct PendingConstraint {
  std::size_t line = 0;
  bool is_expr = false;
  // expr
  LinearComparison expr;
  std::size_t expr_column = 0;
  // table
  std::vector<PendingName> scope;
  std::vector<PendingRow> rows;
};

std::vector<Value> parse_domain(LineReader& in) {
  std::vector<Value> domain;
  in.skip_space();
  const std::size_t column = in.column();
  if (in.accept("{")) {
    if (!in.accept("}")) {
      do {
        domain.push_back(in.integer());
      } while (in.accept(","));
      in.expect("}");
    }
    if (domain.empty()) throw ParseError(in.line(), column, "empty domain");
  } else {
    const Value lo = in.integer();
    in.expect("..");
    const Value hi = in.integer();
    if (lo > hi) {
      throw ParseError(in.line(), column,
                       "empty domain " + std::to_string(lo) + ".." +
                           std::to_string(hi));
    }
    if (static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) >=
        10'000'000) {
      throw ParseError(in.line(), column, "domain too large");
    }
    for (Value v = lo;; ++v) {
      domain.push_back(v);
      if (v == hi) break;
    }
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  return domain;
}

PendingConstraint parse_table(LineReader& in) {
  PendingConstraint c;
  c.line = in.line();
  in.expect("(");
  if (!in.accept(")")) {
    do {
      in.skip_space();
      const std::size_t column = in.column();
      c.scope.push_back({in.identifier("a variable name"), column});
    } while (in.accept(","));
    in.expect(")");
  }
  in.expect(":");
  while (!in.at_end()) {
    PendingRow row;
    row.column = in.column();
    in.expect("(");
    if (!in.accept(")")) {
      do {
        row.values.push_back(in.integer());
      } while (in.accept(","));
      in.expect(")");
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

Relation build_table(const PendingConstraint& c,
                     const std::vector<VariableDecl>& vars,
                     const std::unordered_map<std::string, VarIndex>& index) {
  std::vector<VarIndex> scope;
  for (const auto& n : c.scope) {
    auto it = index.find(n.name);
    if (it == index.end()) {
      throw ParseError(c.line, n.column, "undeclared variable '" + n.name + "'");
    }
    if (std::find(scope.begin(), scope.end(), it->second) != scope.end()) {
      throw ParseError(c.line, n.column,
                       "variable '" + n.name + "' repeated in scope");
    }
    scope.push_back(it->second);
  }
  std::vector<Tuple> rows;
  for (const auto& r : c.rows) {
    if (r.values.size() != scope.size()) {
      throw ParseError(c.line, r.column,
                       "row has " + std::to_string(r.values.size()) +
                           " values, scope has " +
                           std::to_string(scope.size()));
    }
    for (std::size_t k = 0; k < scope.size(); ++k) {
      if (!vars[scope[k]].contains(r.values[k])) {
        throw ParseError(c.line, r.column,
                         "value " + std::to_string(r.values[k]) +
                             " is outside the domain of '" +
                             vars[scope[k]].name + "'");
      }
    }
    rows.push_back(r.values);
  }
  return Relation(std::move(scope), std::move(rows));
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

Qcsp parse_qcsp(std::string_view text, const Limits& limits) {
  std::vector<VariableDecl> vars;
  std::unordered_map<std::string, VarIndex> index;
  std::vector<PendingConstraint> pending;
  bool header = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    LineReader in(strip_comment(raw), line_no);
    if (in.at_end()) {
      if (nl == std::string_view::npos) break;
      continue;
    }
    const std::size_t keyword_column = in.column();
    const std::string keyword = in.identifier("a keyword");

    if (keyword == "qcsp") {
      if (header) {
        throw ParseError(line_no, keyword_column, "duplicate 'qcsp' header");
      }
      header = true;
      if (!in.at_end()) in.fail("unexpected text after 'qcsp'");
    } else if (!header) {
      throw ParseError(1, 1, "missing 'qcsp' header");
    } else if (keyword == "var") {
      in.skip_space();
      const std::size_t name_column = in.column();
      VariableDecl decl;
      decl.name = in.identifier("a variable name");
      if (index.count(decl.name)) {
        throw ParseError(line_no, name_column,
                         "duplicate variable '" + decl.name + "'");
      }
      in.skip_space();
      const std::size_t q_column = in.column();
      const std::string q = in.identifier("'exists' or 'forall'");
      if (q == "exists") {
        decl.quantifier = Quantifier::kExists;
      } else if (q == "forall") {
        decl.quantifier = Quantifier::kForall;
      } else {
        throw ParseError(line_no, q_column,
                         "expected 'exists' or 'forall', got '" + q + "'");
      }
      decl.domain = parse_domain(in);
      if (!in.at_end()) in.fail("unexpected text after domain");
      index.emplace(decl.name, vars.size());
      vars.push_back(std::move(decl));
    } else if (keyword == "constraint") {
      in.skip_space();
      const std::size_t form_column = in.column();
      const std::string form = in.identifier("'expr' or 'table'");
      if (form == "expr") {
        PendingConstraint c;
        c.line = line_no;
        c.is_expr = true;
        in.skip_space();
        c.expr_column = in.column();
        try {
          c.expr = parse_linear_comparison(in.rest());
        } catch (const ParseError& e) {
          throw ParseError(line_no, c.expr_column + e.column() - 1,
                           e.message());
        }
        pending.push_back(std::move(c));
      } else if (form == "table") {
        pending.push_back(parse_table(in));
      } else {
        throw ParseError(line_no, form_column,
                         "expected 'expr' or 'table', got '" + form + "'");
      }
    } else {
      throw ParseError(line_no, keyword_column,
                       "unknown keyword '" + keyword + "'");
    }
    if (nl == std::string_view::npos) break;
  }
  if (!header) throw ParseError(1, 1, "missing 'qcsp' header");

  std::vector<Relation> constraints;
  for (const auto& c : pending) {
    if (!c.is_expr) {
      constraints.push_back(build_table(c, vars, index));
      continue;
    }
    try {
      constraints.push_back(compile_expression(c.expr, vars, limits));
    } catch (const UnknownVariable& e) {
      throw ParseError(c.line, c.expr_column, e.what());
    } catch (const LimitExceeded& e) {
      throw ParseError(c.line, c.expr_column, e.what());
    }
  }
  return Qcsp(std::move(vars), std::move(constraints));
}

Qcsp load_qcsp(const std::string& path, const Limits& limits) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_qcsp(buffer.str(), limits);
}

namespace {

void print_domain(std::ostream& os, const std::vector<Value>& d) {
  // Values are distinct and sorted, so the unsigned difference is exact.
  const bool contiguous =
      d.size() > 1 && static_cast<std::uint64_t>(d.back()) -
                              static_cast<std::uint64_t>(d.front()) ==
                          d.size() - 1;
  if (contiguous) {
    os << d.front() << ".." << d.back();
    return;
  }
  os << '{';
  for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k];
  os << '}';
}

}  // namespace

std::string print_qcsp(const Qcsp& phi) {
  std::ostringstream os;
  os << "qcsp\n";
  for (const auto& v : phi.variables()) {
    os << "var " << v.name << ' ' << to_string(v.quantifier) << ' ';
    print_domain(os, v.domain);
    os << '\n';
  }
  for (const auto& c : phi.constraints()) {
    os << "constraint table (";
    for (std::size_t k = 0; k < c.arity(); ++k) {
      os << (k ? ", " : "") << phi.name(c.scope()[k]);
    }
    os << ") :";
    for (std::size_t r = 0; r < c.size(); ++r) {
      auto row = c.row(r);
      bool reachable = true;
      for (std::size_t k = 0; k < row.size(); ++k) {
        reachable = reachable && phi.variable(c.scope()[k]).contains(row[k]);
      }
      if (!reachable) continue;
      os << " (";
      for (std::size_t k = 0; k < row.size(); ++k) {
        os << (k ? "," : "") << row[k];
      }
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qcsp
