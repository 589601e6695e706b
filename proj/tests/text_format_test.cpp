#include <gtest/gtest.h>

#include "qcsp/text_format.hpp"
#include "support/fixtures.hpp"

using namespace qcsp;

namespace {

struct Where {
  std::size_t line;
  std::size_t column;
  std::string message;
};

Where error_of(const std::string& text) {
  try {
    parse_qcsp(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.message()};
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return {0, 0, ""};
}

}  // namespace

TEST(Parse, Phi1File) {
  const auto p1 = fixtures::phi(1);
  ASSERT_EQ(p1.size(), 3u);
  EXPECT_EQ(p1.name(1), "x2");
  EXPECT_EQ(p1.quantifier(1), Quantifier::kForall);
  EXPECT_EQ(p1.domain(2), (std::vector<Value>{3, 4, 5, 6}));
  ASSERT_EQ(p1.constraints().size(), 1u);
  // x1 + x2 <= x3 over {2,3} x {3,4} x {3..6}: 16 scope tuples, 4 accepted.
  EXPECT_EQ(p1.constraints()[0].size(), 4u);
}

TEST(Parse, TablesSetsCommentsAndLineEndings) {
  const auto phi = parse_qcsp(
      "# leading comment\r\n"
      "qcsp\r\n"
      "var a exists {3, 1, 3}   # duplicates collapse\r\n"
      "var b forall -1..0\r\n"
      "constraint table (b, a) : (0,1) (-1,3)\r\n"
      "constraint table () : ()\r\n");
  EXPECT_EQ(phi.domain(0), (std::vector<Value>{1, 3}));
  EXPECT_EQ(phi.domain(1), (std::vector<Value>{-1, 0}));
  EXPECT_EQ(phi.constraints()[0].scope(), (std::vector<VarIndex>{1, 0}));
  EXPECT_EQ(phi.constraints()[0].size(), 2u);
  EXPECT_EQ(phi.constraints()[1].size(), 1u);
}

TEST(Parse, ForwardReferenceInConstraint) {
  const auto phi = parse_qcsp(
      "qcsp\nconstraint expr a < b\nvar a exists 0..1\nvar b exists 0..1\n");
  EXPECT_EQ(enumerate_solutions(phi), (std::vector<Tuple>{{0, 1}}));
}

TEST(Parse, Diagnostics) {
  auto w = error_of("var x exists 0..1\n");
  EXPECT_EQ(w.line, 1u);
  EXPECT_EQ(w.column, 1u);
  EXPECT_EQ(w.message, "missing 'qcsp' header");

  w = error_of("qcsp\nvar x exists 5..3\n");
  EXPECT_EQ(w.line, 2u);
  EXPECT_EQ(w.column, 14u);
  EXPECT_NE(w.message.find("empty domain"), std::string::npos);

  EXPECT_NE(error_of("qcsp\nvar x exists {}\n").message.find("empty domain"),
            std::string::npos);

  w = error_of("qcsp\nvar x exists 0..1\nvar x forall 0..1\n");
  EXPECT_EQ(w.line, 3u);
  EXPECT_EQ(w.column, 5u);

  w = error_of("qcsp\nvar x exists 0..1\nconstraint table (x, y) : (0,0)\n");
  EXPECT_EQ(w.line, 3u);
  EXPECT_EQ(w.column, 22u);
  EXPECT_NE(w.message.find("undeclared"), std::string::npos);

  w = error_of("qcsp\nvar x exists 0..1\nconstraint table (x) : (0) (1,1)\n");
  EXPECT_EQ(w.column, 28u);
  EXPECT_NE(w.message.find("row has 2 values"), std::string::npos);

  w = error_of("qcsp\nvar x exists 0..1\nconstraint table (x) : (7)\n");
  EXPECT_NE(w.message.find("outside the domain"), std::string::npos);

  w = error_of("qcsp\nvar x exists 0..1\nconstraint expr x + z = 1\n");
  EXPECT_EQ(w.line, 3u);
  EXPECT_NE(w.message.find("z"), std::string::npos);

  w = error_of("qcsp\nvar x exists 0..1\nconstraint expr x ~ 1\n");
  EXPECT_EQ(w.line, 3u);
  EXPECT_EQ(w.column, 19u);

  EXPECT_EQ(error_of("qcsp\nqcsp\n").line, 2u);
  EXPECT_EQ(error_of("qcsp\nvar x maybe 0..1\n").column, 7u);
  EXPECT_EQ(error_of("qcsp\nvar x exists 0..1 junk\n").line, 2u);
  EXPECT_EQ(error_of("qcsp\nvariable x\n").column, 1u);
  EXPECT_NE(error_of("qcsp\nvar x exists 0..99999999\n").message.find("too large"),
            std::string::npos);
  EXPECT_THROW(load_qcsp("/nonexistent/file.qcsp"), Error);
}

TEST(Parse, TableLimit) {
  Limits small;
  small.max_tuples = 5;
  EXPECT_THROW(parse_qcsp("qcsp\nvar a exists 0..9\nvar b exists 0..9\n"
                          "constraint expr a < b\n",
                          small),
               ParseError);
}

TEST(Print, CanonicalText) {
  const auto text = print_qcsp(fixtures::phi(2));
  EXPECT_EQ(text.rfind("qcsp\nvar x1 forall 1..2\nvar x2 exists 3..4\n"
                       "var x3 exists 4..6\nconstraint table (x1, x2, x3) : ",
                       0),
            0u);
  const auto gap = parse_qcsp("qcsp\nvar a exists {1,5}\n");
  EXPECT_EQ(print_qcsp(gap), "qcsp\nvar a exists {1,5}\n");
}

TEST(Print, DropsRowsOutsideEditedDomains) {
  const auto edited = fixtures::phi(1).with_domain(0, {2});
  const auto back = parse_qcsp(print_qcsp(edited));
  EXPECT_EQ(enumerate_solutions(back), enumerate_solutions(edited));
  EXPECT_LT(back.constraints()[0].size(), edited.constraints()[0].size());
}

TEST(TextProperties, RoundTrip) {
  for (const auto& phi : fixtures::corpus()) {
    const auto text = print_qcsp(phi);
    const auto back = parse_qcsp(text);
    EXPECT_EQ(back, phi) << text;
    EXPECT_EQ(print_qcsp(back), text);
  }
}

TEST(TextProperties, DataFilesMatchGoldenInstances) {
  const auto golden = golden_instances();
  ASSERT_EQ(golden.size(), 5u);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_EQ(fixtures::phi(k), golden[k - 1].problem) << k;
    EXPECT_EQ(golden[k - 1].name, "PHI" + std::to_string(k));
    EXPECT_EQ(parse_qcsp(golden_text(golden[k - 1].name)), fixtures::phi(k));
  }
  EXPECT_THROW(golden_text("PHI6"), InvalidArgument);
}
