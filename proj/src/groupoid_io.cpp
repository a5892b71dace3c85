#include "sofic/groupoid_io.hpp"

#include <fstream>
#include <sstream>

namespace sofic {

namespace {

struct LineReader {
  std::istringstream in;
  std::size_t line_no = 0;

  explicit LineReader(std::string_view text) : in{std::string(text)} {}

  // Next non-empty, comment-stripped line split into tokens.
  bool next(std::vector<std::string> &tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw MalformedGroupoid("groupoid file line " + std::to_string(line_no) + ": " + what);
  }

  long long integer(const std::string &tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception &) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  void expect(const std::vector<std::string> &tokens, const std::string &keyword, std::size_t arity) const {
    if (tokens[0] != keyword || tokens.size() != arity + 1) {
      fail("expected '" + keyword + "' with " + std::to_string(arity) + " field(s)");
    }
  }
};

} // namespace

GroupoidPtr parse_groupoid(std::string_view text) {
  LineReader r(text);
  std::vector<std::string> t;
  if (!r.next(t)) r.fail("empty file");
  r.expect(t, "groupoid", 1);
  if (t[1] != "1") r.fail("unsupported format version " + t[1]);

  if (!r.next(t)) r.fail("missing units record");
  r.expect(t, "units", 1);
  const long long nu = r.integer(t[1]);
  if (nu <= 0) r.fail("unit count must be positive");
  std::vector<Rational> weights(static_cast<std::size_t>(nu));
  for (long long u = 0; u < nu; ++u) {
    if (!r.next(t)) r.fail("missing unit record");
    r.expect(t, "unit", 2);
    if (r.integer(t[1]) != u) r.fail("unit ids must be listed in order");
    try {
      weights[static_cast<std::size_t>(u)] = parse_rational(t[2]);
    } catch (const std::invalid_argument &e) {
      r.fail(e.what());
    }
  }

  if (!r.next(t)) r.fail("missing arrows record");
  r.expect(t, "arrows", 1);
  const long long na = r.integer(t[1]);
  if (na <= 0) r.fail("arrow count must be positive");
  std::vector<Arrow> arrows;
  for (long long a = 0; a < na; ++a) {
    if (!r.next(t)) r.fail("missing arrow record");
    r.expect(t, "arrow", 4);
    if (r.integer(t[1]) != a) r.fail("arrow ids must be listed in order");
    arrows.push_back({static_cast<UnitId>(r.integer(t[2])), static_cast<UnitId>(r.integer(t[3])),
                      static_cast<ArrowId>(r.integer(t[4]))});
  }

  std::vector<Composition> comp;
  while (r.next(t)) {
    r.expect(t, "compose", 3);
    comp.push_back({static_cast<ArrowId>(r.integer(t[1])), static_cast<ArrowId>(r.integer(t[2])),
                    static_cast<ArrowId>(r.integer(t[3]))});
  }
  return std::make_shared<const FiniteGroupoid>(std::move(weights), std::move(arrows), comp);
}

std::string write_groupoid(const FiniteGroupoid &g) {
  std::ostringstream os;
  os << "groupoid 1\n";
  os << "units " << g.unit_count() << "\n";
  for (std::size_t u = 0; u < g.unit_count(); ++u) os << "unit " << u << " " << to_string(g.weight(static_cast<UnitId>(u))) << "\n";
  os << "arrows " << g.arrow_count() << "\n";
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    const Arrow &ar = g.arrow(static_cast<ArrowId>(a));
    os << "arrow " << a << " " << ar.source << " " << ar.range << " " << ar.inverse << "\n";
  }
  for (const Composition &c : g.composition_table()) os << "compose " << c.left << " " << c.right << " " << c.result << "\n";
  return os.str();
}

GroupoidPtr load_groupoid(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open groupoid file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_groupoid(buf.str());
}

void save_groupoid(const FiniteGroupoid &g, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write groupoid file '" + path + "'");
  out << write_groupoid(g);
}

} // namespace sofic
