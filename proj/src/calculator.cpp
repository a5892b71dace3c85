#include "sofic/calculator.hpp"

#include <cctype>
#include <filesystem>

#include "sofic/groupoid.hpp"
#include "sofic/groupoid_io.hpp"

namespace sofic::calc {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Expr> parse_all() {
    auto e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected an expression");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   std::string_view("+-./eE").find(text_[pos_]) != std::string_view::npos)) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::exception &) {
      pos_ = start;
      fail("malformed number");
    }
  }

  Rational integer(const char *what, long long min) {
    const std::size_t start = (skip(), pos_);
    Rational r = rational();
    if (denominator(r) != 1 || r < min) {
      pos_ = start;
      fail(std::string(what) + " must be an integer >= " + std::to_string(min));
    }
    return r;
  }

  std::string path() {
    skip();
    if (accept('"')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
      if (pos_ == text_.size()) fail("unterminated string");
      return std::string(text_.substr(start, pos_++ - start));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a file path");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::unique_ptr<Expr> expr() {
    auto e = term();
    if (accept('@')) {
      const std::size_t start = pos_;
      e->weight = rational();
      if (*e->weight <= 0 || *e->weight > 1) {
        pos_ = start;
        fail("weight must lie in (0, 1]");
      }
      e->end = pos_;
    }
    return e;
  }

  std::unique_ptr<Expr> term() {
    skip();
    auto e = std::make_unique<Expr>();
    e->begin = pos_;
    const std::string name = identifier();
    if (name == "z") {
      e->kind = Kind::z;
    } else if (name == "trivial") {
      e->kind = Kind::trivial;
    } else if (name == "cyclic") {
      e->kind = Kind::cyclic;
      expect('(');
      e->number = integer("cyclic order", 1);
      expect(')');
    } else if (name == "transitive") {
      e->kind = Kind::transitive;
      expect('(');
      e->number = integer("transitive degree", 1);
      expect(')');
    } else if (name == "amenable") {
      e->kind = Kind::amenable;
      expect('(');
      const std::size_t start = (skip(), pos_);
      e->number = rational();
      if (e->number < 0 || e->number > 1) {
        pos_ = start;
        fail("finite part must lie in [0, 1]");
      }
      expect(')');
    } else if (name == "finite_groupoid") {
      e->kind = Kind::finite_groupoid;
      expect('(');
      e->file = path();
      expect(')');
    } else if (name == "amalgam") {
      e->kind = Kind::amalgam;
      expect('(');
      for (int i = 0; i < 3; ++i) {
        if (i) expect(',');
        e->args.push_back(expr());
      }
      expect(')');
    } else if (name == "corner") {
      e->kind = Kind::corner;
      expect('(');
      e->args.push_back(expr());
      expect(',');
      const std::size_t start = (skip(), pos_);
      e->number = rational();
      if (e->number <= 0 || e->number > 1) {
        pos_ = start;
        fail("h(p) must lie in (0, 1]");
      }
      expect(')');
    } else if (name == "bernoulli") {
      e->kind = Kind::bernoulli;
      expect('(');
      e->args.push_back(expr());
      expect(',');
      e->number = integer("alphabet size", 1);
      expect(')');
    } else {
      pos_ = e->begin;
      fail("unknown atom '" + name + "'");
    }
    e->end = pos_;
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char *kRegular = "amenable groupoids: the limsup and liminf formulas coincide (assumed per coincidence of limsup/liminf formulas)";

Value amenable_atom(const std::string &name, Rational finite_part) {
  Value v;
  v.value = 1 - finite_part;
  v.amenable = true;
  v.assumptions.push_back({name, "amenable, s = 1 - integral of 1/|G_e|, finite part " + sofic::to_string(finite_part),
                           "closed form for amenable groupoids"});
  v.assumptions.push_back({name, "s-regular", kRegular});
  return v;
}

void append(std::vector<Assumption> &to, const std::vector<Assumption> &from) { to.insert(to.end(), from.begin(), from.end()); }

Value eval(const Expr &e, const std::string &base_dir) {
  const std::string label = to_string(e);
  switch (e.kind) {
    case Kind::trivial:
      return amenable_atom(label, 1);
    case Kind::z:
      return amenable_atom(label, 0);
    case Kind::cyclic:
      return amenable_atom(label, 1 / e.number);
    case Kind::transitive:
      return amenable_atom(label, 1 / e.number);
    case Kind::amenable:
      return amenable_atom(label, e.number);
    case Kind::finite_groupoid: {
      std::filesystem::path p(e.file);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      GroupoidPtr g = load_groupoid(p.string());
      return amenable_atom(label, finite_part_measure(*g));
    }
    case Kind::bernoulli: {
      Value v = eval(*e.args[0], base_dir);
      v.assumptions.push_back({label, "finite alphabet of size " + sofic::to_string(e.number) + ", any base measure",
                               "Bernoulli extensions leave s unchanged"});
      return v;
    }
    case Kind::corner: {
      Value inner = eval(*e.args[0], base_dir);
      Value v;
      v.amenable = inner.amenable;
      v.value = (inner.value - 1) / e.number + 1;
      if (v.value < 0) {
        throw EvaluationError(label + ": scaling gives s = " + sofic::to_string(v.value) + " < 0; no corner of that measure exists");
      }
      v.assumptions = std::move(inner.assumptions);
      v.assumptions.push_back({label, "ambient groupoid ergodic", "user-asserted; required by the scaling formula"});
      v.assumptions.push_back({label, "corner of measure h(p) = " + sofic::to_string(e.number) + " with normalized Haar measure",
                               "s(G) - 1 = h(p)(s(pGp) - 1)"});
      return v;
    }
    case Kind::amalgam: {
      Value a = eval(*e.args[0], base_dir), b = eval(*e.args[1], base_dir), c = eval(*e.args[2], base_dir);
      if (!c.amenable) throw EvaluationError(label + ": the amalgamated subgroupoid must be amenable");
      const Rational h1 = e.args[0]->weight.value_or(1), h2 = e.args[1]->weight.value_or(1),
                     h3 = e.args[2]->weight.value_or(1);
      if (h1 + h2 - h3 != 1) {
        throw EvaluationError(label + ": unit weights must satisfy h1 + h2 - h3 = 1, got " + sofic::to_string(Rational(h1 + h2 - h3)));
      }
      if (h3 > h1 || h3 > h2) throw EvaluationError(label + ": h3 must not exceed h1 or h2");
      Value v;
      v.value = h1 * a.value + h2 * b.value - h3 * c.value;
      if (v.value < 0) throw EvaluationError(label + ": amalgam formula gives a negative value");
      v.assumptions = std::move(a.assumptions);
      append(v.assumptions, b.assumptions);
      append(v.assumptions, c.assumptions);
      v.assumptions.push_back({label, "third factor amenable", "tagged from its own evaluation"});
      v.assumptions.push_back({label, "first two factors s-regular and ergodic", "user-asserted; required by the free product formula"});
      v.assumptions.push_back({label, "unit weights h1 = " + sofic::to_string(h1) + ", h2 = " + sofic::to_string(h2) + ", h3 = " + sofic::to_string(h3),
                               "s = h1 s1 + h2 s2 - h3 s3"});
      return v;
    }
  }
  throw EvaluationError("unknown expression kind");
}

} // namespace

std::unique_ptr<Expr> parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr &e) {
  std::string out;
  switch (e.kind) {
    case Kind::z: out = "z"; break;
    case Kind::trivial: out = "trivial"; break;
    case Kind::cyclic: out = "cyclic(" + sofic::to_string(e.number) + ")"; break;
    case Kind::transitive: out = "transitive(" + sofic::to_string(e.number) + ")"; break;
    case Kind::amenable: out = "amenable(" + sofic::to_string(e.number) + ")"; break;
    case Kind::finite_groupoid: out = "finite_groupoid(" + e.file + ")"; break;
    case Kind::amalgam:
      out = "amalgam(" + to_string(*e.args[0]) + ", " + to_string(*e.args[1]) + ", " + to_string(*e.args[2]) + ")";
      break;
    case Kind::corner: out = "corner(" + to_string(*e.args[0]) + ", " + sofic::to_string(e.number) + ")"; break;
    case Kind::bernoulli: out = "bernoulli(" + to_string(*e.args[0]) + ", " + sofic::to_string(e.number) + ")"; break;
  }
  if (e.weight) out += "@" + sofic::to_string(*e.weight);
  return out;
}

Value evaluate(const Expr &e, const std::string &base_dir) { return eval(e, base_dir); }

Value evaluate(std::string_view text, const std::string &base_dir) { return eval(*parse(text), base_dir); }

} // namespace sofic::calc
