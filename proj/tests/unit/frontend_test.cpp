#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/expr.hpp"
#include "finsler/metrics.hpp"
#include "finsler/verify.hpp"

namespace finsler {
namespace {

double energy_at(const Metric& m, std::vector<double> x, std::vector<double> y) {
  return m.energy(TangentPoint(std::move(x), std::move(y)));
}

TEST(Zoo, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(energy_at(builtin_metric("euclid", {}, 2), {0, 0}, {3, 4}), 12.5);
  // kappa = 0 gives the constant one-form b = (0.1, 0).
  const auto randers = builtin_metric("randers", {{"b", {0.1, 0.0}}, {"kappa", {0.0}}}, 2);
  EXPECT_NEAR(energy_at(randers, {0.4, -0.7}, {1, 0}), 0.605, 1e-15);
  EXPECT_NEAR(energy_at(builtin_metric("quartic", {}, 2), {0, 0}, {1, 1}), 0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(energy_at(builtin_metric("polar", {}, 2), {2, 0.3}, {1, 1}), 2.5, 1e-15);
}

TEST(Zoo, Errors) {
  EXPECT_THROW(builtin_metric("kropina", {}, 2), UnknownMetric);
  EXPECT_THROW(builtin_metric("randers", {{"b", {1.2, 0.0}}}, 2), BadParams);
  EXPECT_THROW(builtin_metric("randers", {{"b", {0.1}}}, 2), BadParams);
  EXPECT_THROW(builtin_metric("euclid", {{"b", {0.1}}}, 2), BadParams);
  EXPECT_THROW(builtin_metric("polar", {}, 3), BadParams);
  EXPECT_THROW(builtin_metric("euclid", {}, 1), BadParams);
}

TEST(Zoo, FlagsMatchTheFamilies) {
  for (const auto& name : builtin_names()) {
    const auto m = builtin_metric(name, {}, 2);
    ASSERT_TRUE(m.riemannian.has_value()) << name;
    ASSERT_TRUE(m.locally_minkowski.has_value()) << name;
    EXPECT_EQ(m.base_lo.size(), 2u);
  }
  EXPECT_TRUE(*builtin_metric("polar", {}, 2).riemannian);
  EXPECT_FALSE(*builtin_metric("quartic", {}, 2).riemannian);
  EXPECT_TRUE(*builtin_metric("quartic", {}, 2).locally_minkowski);
  EXPECT_FALSE(*builtin_metric("randers", {}, 2).locally_minkowski);
  EXPECT_TRUE(builtin_metric("randers", {}, 3).witness.has_value());
}

TEST(Parser, Precedence) {
  const std::vector<double> x{2.0, 3.0};
  const std::vector<double> y{5.0, 7.0};
  auto eval = [&](const char* s) {
    return evaluate<double>(*parse_energy(s, 2), std::span<const double>(x), std::span<const double>(y));
  };
  EXPECT_DOUBLE_EQ(eval("1 + 2*3"), 7.0);
  EXPECT_DOUBLE_EQ(eval("-x1^2"), -4.0);  // ^ binds tighter than unary minus
  EXPECT_DOUBLE_EQ(eval("2^-1"), 0.5);
  EXPECT_DOUBLE_EQ(eval("x2 - y1 - y2"), -9.0);
  EXPECT_DOUBLE_EQ(eval("y2 / x1 / 2"), 1.75);
  EXPECT_DOUBLE_EQ(eval("sqrt(y1^2 + (x2 + 1)^2)"), std::sqrt(41.0));
  EXPECT_DOUBLE_EQ(eval("x1^(1/2)^2"), std::pow(2.0, 0.25));  // right associative
  EXPECT_DOUBLE_EQ(eval("1.5e1 * .5"), 7.5);
}

TEST(Parser, Errors) {
  try {
    parse_energy("0.5*(y1 +\n  * y2)", 2);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_energy("y1 * z3", 2), UnknownIdentifier);
  EXPECT_THROW(parse_energy("exp(y1)", 2), UnknownIdentifier);
  EXPECT_THROW(parse_energy("y3^2", 2), DimensionMismatch);
  EXPECT_THROW(parse_energy("y1^y2", 2), ParseError);
  EXPECT_THROW(parse_energy("(y1", 2), ParseError);
  EXPECT_THROW(parse_energy("", 2), ParseError);
  EXPECT_THROW(parse_energy("y1 y2", 2), ParseError);
  EXPECT_THROW(parse_energy("y01", 2), UnknownIdentifier);
  EXPECT_THROW(parse_energy("y1^0^-1", 2), ParseError);
}

// Random sentences of the grammar.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  std::uniform_int_distribution<int> idx(1, 3);
  std::uniform_real_distribution<double> num(0.0, 5.0);
  switch (pick(rng)) {
    case 0: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", num(rng));
      return buf;
    }
    case 1:
      return "x" + std::to_string(idx(rng));
    case 2:
      return "y" + std::to_string(idx(rng));
    case 3:
      return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 4:
      return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 5:
      return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 6:
      return "(" + random_expr(rng, depth - 1) + ")/" + random_expr(rng, depth - 1);
    case 7:
      return "-(" + random_expr(rng, depth - 1) + ")^" + std::to_string(idx(rng) - 2);
    default:
      return "sqrt(" + random_expr(rng, depth - 1) + ")";
  }
}

TEST(Parser, PrettyPrintRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const auto src = random_expr(rng, 5);
    const auto tree = parse_energy(src, 3);
    const auto printed = to_string(*tree);
    const auto again = parse_energy(printed, 3);
    EXPECT_TRUE(same_structure(*tree, *again)) << src << "  ->  " << printed;
    EXPECT_EQ(to_string(*again), printed);
  }
}

struct ZooExpression {
  const char* metric;
  Params params;
  int n;
  const char* source;
};

class ExpressionMatchesBuiltin : public ::testing::TestWithParam<ZooExpression> {};

TEST_P(ExpressionMatchesBuiltin, AtFiftyPoints) {
  const auto& c = GetParam();
  const auto builtin = builtin_metric(c.metric, c.params, c.n);
  const auto expr = resolve_metric(std::string("expr:") + c.source, {}, c.n);
  double worst = 0.0;
  for (const auto& p : sample_points(builtin, 50, 99)) {
    worst = std::max(worst, std::abs(builtin.energy(p) - expr.energy(p)));
  }
  EXPECT_LT(worst, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(
    Zoo, ExpressionMatchesBuiltin,
    ::testing::Values(
        ZooExpression{"euclid", {}, 2, "0.5*(y1^2 + y2^2)"},
        ZooExpression{"euclid", {}, 3, "0.5*(y1^2 + y2^2 + y3^2)"},
        ZooExpression{"polar", {}, 2, "0.5*(y1^2 + x1^2*y2^2)"},
        ZooExpression{"riem-diag", {}, 2,
                      "0.5*((1 + x2^2 + 0.5*x1*x2 + 0.25*x1^2)*y1^2 + (1 + x1^2 + 0.5*x2*x1 + 0.25*x2^2)*y2^2)"},
        ZooExpression{"randers", {{"b", {0.1, 0.0}}, {"kappa", {0.0}}}, 2, "0.5*(sqrt(y1^2+y2^2)+0.1*y1)^2"},
        ZooExpression{"randers", {}, 2, "0.5*(sqrt(y1^2+y2^2) + (0.1 + 0.2*x2)*y1 + 0.2*x1*y2)^2"},
        ZooExpression{"quartic", {}, 2, "0.5*sqrt(y1^4 + y2^4)"},
        ZooExpression{"quartic", {}, 3, "0.5*(y1^4 + y2^4 + y3^4)^0.5"}));

TEST(ResolveMetric, InfersExpressionDimension) {
  EXPECT_EQ(resolve_metric("expr:0.5*(y1^2+y2^2+y3^2)", {}, 0).energy.dim(), 3);
  EXPECT_EQ(resolve_metric("expr:0.5*y1^2", {}, 0).energy.dim(), 2);
  EXPECT_EQ(resolve_metric("euclid", {}, 0).energy.dim(), 2);
  EXPECT_THROW(resolve_metric("expr:y1^2", {{"b", {1.0}}}, 2), BadParams);
  EXPECT_THROW(resolve_metric("expr:y3^2", {}, 2), DimensionMismatch);
}

}  // namespace
}  // namespace finsler
