#ifndef SOFIC_CALCULATOR_HPP_
#define SOFIC_CALCULATOR_HPP_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic::calc {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string &message)
      : std::runtime_error("position " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A rule whose hypotheses cannot be met by the expression.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { cyclic, z, trivial, amenable, finite_groupoid, transitive, amalgam, corner, bernoulli };

struct Expr {
  Kind kind = Kind::trivial;
  std::size_t begin = 0, end = 0;  // source span
  std::vector<std::unique_ptr<Expr>> args;
  Rational number;                  // cyclic m, amenable finite part, transitive d, corner h(p), bernoulli q
  std::string file;                 // finite_groupoid
  std::optional<Rational> weight;   // h(G^0) inside an amalgam, "@h"
};

// expr   := term ['@' rational]
// term   := 'z' | 'trivial' | cyclic(int) | amenable(rational) | transitive(int)
//         | finite_groupoid(path) | amalgam(expr, expr, expr)
//         | corner(expr, rational) | bernoulli(expr, int)
std::unique_ptr<Expr> parse(std::string_view text);
std::string to_string(const Expr &e);

struct Assumption {
  std::string rule;
  std::string hypothesis;
  std::string justification;
};

struct Value {
  Rational value;
  bool amenable = false;
  std::vector<Assumption> assumptions;
};

// Relative paths in finite_groupoid(...) are resolved against base_dir.
Value evaluate(const Expr &e, const std::string &base_dir = ".");
Value evaluate(std::string_view text, const std::string &base_dir = ".");

} // namespace sofic::calc

#endif // SOFIC_CALCULATOR_HPP_
