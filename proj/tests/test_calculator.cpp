#include <doctest.h>

#include <optional>

#include "helpers.hpp"
#include "sofic/calculator.hpp"
#include "sofic/rng.hpp"

using namespace sofic;
using calc::evaluate;

namespace {

// nullopt when a rule hypothesis fails, e.g. a corner that would give s < 0
std::optional<Rational> try_value(const std::string &text) {
  try {
    return evaluate(text).value;
  } catch (const calc::EvaluationError &) {
    return std::nullopt;
  }
}

Rational value_of(const std::string &text) { return evaluate(text, SOFIC_DATA_DIR).value; }

std::string random_atom(Rng &rng) {
  switch (rng.below(5)) {
    case 0: return "cyclic(" + std::to_string(1 + rng.below(9)) + ")";
    case 1: return "z";
    case 2: return "trivial";
    case 3: return "transitive(" + std::to_string(1 + rng.below(6)) + ")";
    default: return "amenable(1/" + std::to_string(1 + rng.below(7)) + ")";
  }
}

std::string random_tree(Rng &rng, int depth) {
  if (depth == 0 || rng.below(3) == 0) return random_atom(rng);
  switch (rng.below(3)) {
    case 0: return "bernoulli(" + random_tree(rng, depth - 1) + ", " + std::to_string(2 + rng.below(5)) + ")";
    case 1: return "corner(" + random_tree(rng, depth - 1) + ", " + std::to_string(1 + rng.below(4)) + "/5)";
    default: return "amalgam(" + random_tree(rng, depth - 1) + ", " + random_tree(rng, depth - 1) + ", " + random_atom(rng) + ")";
  }
}

} // namespace

TEST_CASE("closed-form values") {
  CHECK(value_of("trivial") == 0);
  CHECK(value_of("z") == 1);
  CHECK(value_of("cyclic(1)") == 0);
  CHECK(value_of("cyclic(2)") == Rational(1, 2));
  CHECK(value_of("cyclic(5)") == Rational(4, 5));
  CHECK(value_of("amenable(1/3)") == Rational(2, 3));
  CHECK(value_of("transitive(4)") == Rational(3, 4));
  CHECK(value_of("amalgam(cyclic(2), cyclic(3), trivial)") == Rational(7, 6));
  CHECK(value_of("corner(transitive(4), 1/2)") == Rational(1, 2));
  CHECK(value_of("corner(transitive(4), 1/2)") == value_of("transitive(2)"));
  CHECK(value_of("bernoulli(cyclic(2), 7)") == Rational(1, 2));
  CHECK(value_of("amalgam(z, z, z)") == 1);
  CHECK(value_of("amalgam(amenable(0)@1/2, amenable(0)@3/4, trivial@1/4)") == Rational(5, 4));
  CHECK_THROWS(value_of("amalgam(amenable(0)@1/2, amenable(0)@1/2, trivial@1/4)"));
}

TEST_CASE("finite groupoid files") {
  CHECK(value_of("finite_groupoid(z2.gpd)") == Rational(1, 2));
  CHECK(value_of("finite_groupoid(r2.gpd)") == Rational(1, 2));
  CHECK(value_of("finite_groupoid(r4.gpd)") == Rational(3, 4));
  CHECK(value_of("corner(finite_groupoid(r4.gpd), 1/2)") == value_of("finite_groupoid(r2.gpd)"));
  CHECK_THROWS(value_of("finite_groupoid(missing.gpd)"));
}

TEST_CASE("amenability and the amalgam hypothesis") {
  CHECK(evaluate("cyclic(3)").amenable);
  CHECK(evaluate("corner(transitive(4), 1/2)").amenable);
  CHECK_FALSE(evaluate("amalgam(cyclic(2), cyclic(3), trivial)").amenable);
  CHECK_THROWS_AS(evaluate("amalgam(z, z, amalgam(cyclic(2), cyclic(2), trivial))"), calc::EvaluationError);
}

TEST_CASE("assumption ledger") {
  for (const char *text : {"amalgam(cyclic(2), cyclic(3), trivial)", "corner(transitive(4), 1/2)", "bernoulli(z, 3)"}) {
    const auto v = evaluate(text);
    CHECK_FALSE(v.assumptions.empty());
    for (const auto &a : v.assumptions) {
      CHECK_FALSE(a.rule.empty());
      CHECK_FALSE(a.hypothesis.empty());
    }
  }
  bool regular = false;
  for (const auto &a : evaluate("amalgam(cyclic(2), cyclic(3), trivial)").assumptions) {
    regular = regular || a.rule.rfind("amalgam(", 0) == 0;
  }
  CHECK(regular);
}

TEST_CASE("parse errors carry positions") {
  const auto position = [](const std::string &text) -> std::size_t {
    try {
      calc::parse(text);
    } catch (const calc::ParseError &e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position("corner(z, 0)") == 10);
  CHECK(position("corner(z, 3/2)") != std::string::npos);
  CHECK(position("cyclic(") != std::string::npos);
  CHECK(position("amalgam(z, z)") != std::string::npos);
  CHECK(position("foo") == 0);
  CHECK(position("z z") == 2);
  CHECK(position("cyclic(0)") != std::string::npos);
  CHECK(position("bernoulli(z, 0)") != std::string::npos);
  CHECK(position("amalgam(cyclic(2), cyclic(3), trivial)") == std::string::npos);
}

TEST_CASE("printing round trips") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::string text = random_tree(rng, 3);
    const auto tree = calc::parse(text);
    const std::string printed = calc::to_string(*tree);
    REQUIRE(calc::to_string(*calc::parse(printed)) == printed);
  }
}

TEST_CASE("bernoulli is value neutral") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const std::string e = random_tree(rng, 2);
    for (int q = 2; q <= 7; ++q) {
      REQUIRE(try_value("bernoulli(" + e + ", " + std::to_string(q) + ")") == try_value(e));
    }
  }
}

TEST_CASE("corner composition") {
  Rng rng(8);
  int defined = 0;
  for (int i = 0; i < 400; ++i) {
    const std::string e = random_tree(rng, 3);
    const Rational a(1 + static_cast<long long>(rng.below(6)), 7), b(1 + static_cast<long long>(rng.below(4)), 5);
    const std::string nested = "corner(corner(" + e + ", " + to_string(a) + "), " + to_string(b) + ")";
    const std::string flat = "corner(" + e + ", " + to_string(a * b) + ")";
    const auto n = try_value(nested);
    REQUIRE(n == try_value(flat));
    defined += n.has_value();
  }
  CHECK(defined >= 60);
}

TEST_CASE("amalgams of amenable factors") {
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      const Rational alpha(a, 5), beta(b, 5);
      const std::string text = "amalgam(amenable(" + to_string(alpha) + "), amenable(" + to_string(beta) + "), trivial)";
      CHECK(value_of(text) == 2 - alpha - beta);
    }
  }
}
