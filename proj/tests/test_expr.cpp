#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "fretish/error.hpp"
#include "fretish/expr.hpp"

using namespace fretish;

namespace {

BoolExpr var(const char *n) { return BoolExpr::variable(n); }

BoolExpr random_expr(std::mt19937_64 &rng, int depth) {
  static const char *bools[] = {"a", "b", "c"};
  static const char *nums[] = {"x", "y"};
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 5) {
    case 0: return BoolExpr::constant(rng() % 2);
    case 1: {
      Operand lhs = std::string(nums[rng() % 2]);
      Operand rhs = Rational(static_cast<std::int64_t>(rng() % 41) - 20, 1 + rng() % 4);
      return BoolExpr::compare(lhs, static_cast<CompareOp>(rng() % 6), rhs);
    }
    default: return var(bools[rng() % 3]);
    }
  }
  switch (rng() % 4) {
  case 0: return BoolExpr::negate(random_expr(rng, depth - 1));
  case 1: { auto a = random_expr(rng, depth - 1); return BoolExpr::conj(a, random_expr(rng, depth - 1)); }
  case 2: { auto a = random_expr(rng, depth - 1); return BoolExpr::disj(a, random_expr(rng, depth - 1)); }
  default: { auto a = random_expr(rng, depth - 1); return BoolExpr::implies(a, random_expr(rng, depth - 1)); }
  }
}

} // namespace

TEST(BoolExprParse, Precedence) {
  EXPECT_EQ(parse_bool_expr("a & !b"), BoolExpr::conj(var("a"), BoolExpr::negate(var("b"))));
  EXPECT_EQ(parse_bool_expr("a -> b | c"), BoolExpr::implies(var("a"), BoolExpr::disj(var("b"), var("c"))));
  EXPECT_EQ(parse_bool_expr("a | b & c"), BoolExpr::disj(var("a"), BoolExpr::conj(var("b"), var("c"))));
  EXPECT_EQ(parse_bool_expr("a -> b -> c"),
            BoolExpr::implies(var("a"), BoolExpr::implies(var("b"), var("c"))));
  EXPECT_EQ(parse_bool_expr("(a -> b) -> c"),
            BoolExpr::implies(BoolExpr::implies(var("a"), var("b")), var("c")));
}

TEST(BoolExprParse, Comparisons) {
  BoolExpr e = parse_bool_expr("x <= 250 & y <= 50");
  EXPECT_EQ(e, BoolExpr::conj(BoolExpr::compare(std::string("x"), CompareOp::LessEq, Rational(250)),
                              BoolExpr::compare(std::string("y"), CompareOp::LessEq, Rational(50))));
  EXPECT_EQ(parse_bool_expr("x > -1.25").compare_rhs(), Operand(Rational(-5, 4)));
  EXPECT_EQ(parse_bool_expr("x != 1/3").compare_rhs(), Operand(Rational(1, 3)));
  EXPECT_EQ(parse_bool_expr("x == y").compare_op(), CompareOp::Equal);
  EXPECT_EQ(parse_bool_expr("x = y").compare_op(), CompareOp::Equal);
}

TEST(BoolExprParse, Errors) {
  EXPECT_THROW(parse_bool_expr("a & "), SyntaxError);
  EXPECT_THROW(parse_bool_expr("x < true"), TypeError);
  EXPECT_THROW(parse_bool_expr("3 & a"), TypeError);
  EXPECT_THROW(parse_bool_expr("x < 1/0"), ValidationError);
  EXPECT_THROW(parse_bool_expr("a $ b"), SyntaxError);
  try {
    parse_bool_expr("a &\n  | b");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(BoolExprText, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    BoolExpr e = random_expr(rng, 4);
    std::string text = to_string(e);
    ASSERT_EQ(parse_bool_expr(text), e) << text;
  }
}

TEST(BoolExprText, Rationals) {
  EXPECT_EQ(to_string(Rational(5, 4)), "1.25");
  EXPECT_EQ(to_string(Rational(-1, 8)), "-0.125");
  EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(to_string(Rational(7)), "7");
}

TEST(BoolExprEval, ExactComparisons) {
  State s{{"x", Rational(1, 3)}, {"a", true}};
  EXPECT_TRUE(parse_bool_expr("x < 0.34").evaluate(s));
  EXPECT_FALSE(parse_bool_expr("x < 0.333333333333333333").evaluate(s));
  EXPECT_TRUE(parse_bool_expr("x = 1/3").evaluate(s));
  EXPECT_TRUE(parse_bool_expr("a -> x > 0").evaluate(s));
}

TEST(BoolExprEval, MatchesTruthTable) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    BoolExpr e = random_expr(rng, 3);
    for (int bits = 0; bits < 8; ++bits) {
      State s{{"a", bool(bits & 1)}, {"b", bool(bits & 2)}, {"c", bool(bits & 4)},
              {"x", Rational(static_cast<std::int64_t>(rng() % 11) - 5)}, {"y", Rational(1, 2)}};
      std::function<bool(const BoolExpr &)> ref = [&](const BoolExpr &f) -> bool {
        switch (f.kind()) {
        case BoolExpr::Kind::Constant: return f.constant_value();
        case BoolExpr::Kind::Variable: return std::get<bool>(*s.find(f.name()));
        case BoolExpr::Kind::Compare: {
          auto val = [&](const Operand &o) {
            if (auto *q = std::get_if<Rational>(&o))
              return *q;
            return std::get<Rational>(*s.find(std::get<std::string>(o)));
          };
          Rational l = val(f.compare_lhs()), r = val(f.compare_rhs());
          switch (f.compare_op()) {
          case CompareOp::Less: return l < r;
          case CompareOp::LessEq: return !(r < l);
          case CompareOp::Equal: return !(l < r) && !(r < l);
          case CompareOp::NotEqual: return (l < r) || (r < l);
          case CompareOp::GreaterEq: return !(l < r);
          case CompareOp::Greater: return r < l;
          }
          return false;
        }
        case BoolExpr::Kind::Not: return !ref(f.lhs());
        case BoolExpr::Kind::And: return ref(f.lhs()) && ref(f.rhs());
        case BoolExpr::Kind::Or: return ref(f.lhs()) || ref(f.rhs());
        case BoolExpr::Kind::Implies: return !ref(f.lhs()) || ref(f.rhs());
        }
        return false;
      };
      ASSERT_EQ(e.evaluate(s), ref(e)) << to_string(e);
    }
  }
}

TEST(BoolExprEval, Errors) {
  State s{{"x", Rational(2)}, {"a", true}};
  EXPECT_THROW(parse_bool_expr("x").evaluate(s), TypeError);
  EXPECT_THROW(parse_bool_expr("a > 1").evaluate(s), TypeError);
  try {
    parse_bool_expr("a & zz").evaluate(s, 7);
    FAIL();
  } catch (const UnboundVariableError &e) {
    EXPECT_EQ(e.variable(), "zz");
    EXPECT_EQ(e.index(), 7u);
  }
}

TEST(BoolExprVars, Collect) {
  std::set<std::string> vars;
  parse_bool_expr("a & x < y | !b").collect_variables(vars);
  EXPECT_EQ(vars, (std::set<std::string>{"a", "b", "x", "y"}));
}

TEST(TraceModel, RejectsEmpty) { EXPECT_THROW(Trace(std::vector<State>{}), ArgumentError); }
