#include "sofic/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace sofic {

namespace {

[[noreturn]] void malformed(const std::string &what) { throw MalformedGroupoid("malformed groupoid: " + what); }

std::string arrow_name(ArrowId a) { return "arrow " + std::to_string(a); }

} // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<Rational> unit_weights, std::vector<Arrow> arrows,
                               const std::vector<Composition> &composition)
    : weights_(std::move(unit_weights)), arrows_(std::move(arrows)) {
  const std::size_t nu = weights_.size();
  const std::size_t na = arrows_.size();
  if (nu == 0) malformed("no units");
  Rational total = 0;
  for (std::size_t u = 0; u < nu; ++u) {
    if (weights_[u] < 0) malformed("negative weight on unit " + std::to_string(u));
    total += weights_[u];
  }
  if (total != 1) malformed("unit weights sum to " + to_string(total) + ", not 1");

  by_range_.assign(nu, {});
  by_source_.assign(nu, {});
  range_pos_.assign(na, 0);
  for (std::size_t a = 0; a < na; ++a) {
    const Arrow &ar = arrows_[a];
    if (ar.source < 0 || static_cast<std::size_t>(ar.source) >= nu || ar.range < 0 ||
        static_cast<std::size_t>(ar.range) >= nu) {
      malformed(arrow_name(a) + " has an endpoint outside the unit space");
    }
    if (ar.inverse < 0 || static_cast<std::size_t>(ar.inverse) >= na) malformed(arrow_name(a) + " has no valid inverse");
    range_pos_[a] = by_range_[ar.range].size();
    by_range_[ar.range].push_back(static_cast<ArrowId>(a));
    by_source_[ar.source].push_back(static_cast<ArrowId>(a));
  }

  row_offset_.assign(na + 1, 0);
  for (std::size_t g = 0; g < na; ++g) row_offset_[g + 1] = row_offset_[g] + by_range_[arrows_[g].source].size();
  table_.assign(row_offset_[na], kNoArrow);
  for (const Composition &c : composition) {
    if (c.left < 0 || c.right < 0 || c.result < 0 || static_cast<std::size_t>(c.left) >= na ||
        static_cast<std::size_t>(c.right) >= na || static_cast<std::size_t>(c.result) >= na) {
      malformed("composition row references an unknown arrow");
    }
    if (arrows_[c.left].source != arrows_[c.right].range) {
      malformed("composition row " + std::to_string(c.left) + "*" + std::to_string(c.right) + " is not composable");
    }
    if (arrows_[c.result].source != arrows_[c.right].source || arrows_[c.result].range != arrows_[c.left].range) {
      malformed("composition " + std::to_string(c.left) + "*" + std::to_string(c.right) + " has wrong endpoints");
    }
    ArrowId &slot = table_[row_offset_[c.left] + range_pos_[c.right]];
    if (slot != kNoArrow) malformed("composition " + std::to_string(c.left) + "*" + std::to_string(c.right) + " given twice");
    slot = c.result;
  }
  for (std::size_t g = 0; g < na; ++g) {
    for (std::size_t i = row_offset_[g]; i < row_offset_[g + 1]; ++i) {
      if (table_[i] == kNoArrow) {
        malformed("composition " + std::to_string(g) + "*" +
                  std::to_string(by_range_[arrows_[g].source][i - row_offset_[g]]) + " missing");
      }
    }
  }

  unit_arrow_.assign(nu, kNoArrow);
  for (std::size_t a = 0; a < na; ++a) {
    const Arrow &ar = arrows_[a];
    if (ar.source == ar.range && compose(static_cast<ArrowId>(a), static_cast<ArrowId>(a)) == static_cast<ArrowId>(a)) {
      if (unit_arrow_[ar.source] != kNoArrow) malformed("unit " + std::to_string(ar.source) + " has two identity arrows");
      unit_arrow_[ar.source] = static_cast<ArrowId>(a);
    }
  }
  for (std::size_t u = 0; u < nu; ++u) {
    if (unit_arrow_[u] == kNoArrow) malformed("unit " + std::to_string(u) + " has no identity arrow");
  }
  for (std::size_t a = 0; a < na; ++a) {
    const ArrowId g = static_cast<ArrowId>(a);
    const Arrow &ar = arrows_[a];
    if (compose(unit_arrow_[ar.range], g) != g || compose(g, unit_arrow_[ar.source]) != g) {
      malformed(arrow_name(a) + " is not fixed by the identities at its endpoints");
    }
    const Arrow &inv = arrows_[ar.inverse];
    if (inv.inverse != g || inv.source != ar.range || inv.range != ar.source) {
      malformed(arrow_name(a) + " has an inconsistent inverse");
    }
    if (compose(g, ar.inverse) != unit_arrow_[ar.range] || compose(ar.inverse, g) != unit_arrow_[ar.source]) {
      malformed(arrow_name(a) + " times its inverse is not an identity");
    }
  }
  for (std::size_t f = 0; f < na; ++f) {
    for (ArrowId g : by_range_[arrows_[f].source]) {
      const ArrowId fg = compose(static_cast<ArrowId>(f), g);
      for (ArrowId h : by_range_[arrows_[g].source]) {
        if (compose(fg, h) != compose(static_cast<ArrowId>(f), compose(g, h))) {
          malformed("composition is not associative at (" + std::to_string(f) + "," + std::to_string(g) + "," +
                    std::to_string(h) + ")");
        }
      }
    }
  }
}

ArrowId FiniteGroupoid::compose(ArrowId g, ArrowId h) const {
  if (arrows_[g].source != arrows_[h].range) {
    throw std::invalid_argument("arrows " + std::to_string(g) + " and " + std::to_string(h) + " are not composable");
  }
  return table_[row_offset_[g] + range_pos_[h]];
}

std::span<const ArrowId> FiniteGroupoid::arrows_with_range(UnitId u) const { return by_range_.at(u); }
std::span<const ArrowId> FiniteGroupoid::arrows_with_source(UnitId u) const { return by_source_.at(u); }

std::vector<Composition> FiniteGroupoid::composition_table() const {
  std::vector<Composition> rows;
  rows.reserve(table_.size());
  for (std::size_t g = 0; g < arrows_.size(); ++g) {
    std::vector<ArrowId> hs(by_range_[arrows_[g].source]);
    std::sort(hs.begin(), hs.end());
    for (ArrowId h : hs) rows.push_back({static_cast<ArrowId>(g), h, compose(static_cast<ArrowId>(g), h)});
  }
  return rows;
}

bool operator==(const FiniteGroupoid &a, const FiniteGroupoid &b) {
  if (a.weights_ != b.weights_ || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow &x = a.arrows_[i];
    const Arrow &y = b.arrows_[i];
    if (x.source != y.source || x.range != y.range || x.inverse != y.inverse) return false;
  }
  return a.table_ == b.table_;
}

// ---------------------------------------------------------------------------

PartialBisection::PartialBisection(GroupoidPtr host)
    : host_(std::move(host)), by_source_(host_->unit_count(), kNoArrow) {}

PartialBisection::PartialBisection(GroupoidPtr host, const std::vector<ArrowId> &arrows)
    : PartialBisection(std::move(host)) {
  std::vector<char> range_used(host_->unit_count(), 0);
  for (ArrowId a : arrows) {
    if (a < 0 || static_cast<std::size_t>(a) >= host_->arrow_count()) {
      throw std::invalid_argument("bisection references unknown arrow " + std::to_string(a));
    }
    const Arrow &ar = host_->arrow(a);
    if (by_source_[ar.source] == a) continue;
    if (by_source_[ar.source] != kNoArrow || range_used[ar.range]) {
      throw std::invalid_argument("not a partial bisection: arrow " + std::to_string(a) + " clashes");
    }
    by_source_[ar.source] = a;
    range_used[ar.range] = 1;
  }
}

PartialBisection PartialBisection::identity(GroupoidPtr host) {
  std::vector<ArrowId> units;
  for (std::size_t u = 0; u < host->unit_count(); ++u) units.push_back(host->unit_arrow(static_cast<UnitId>(u)));
  return PartialBisection(std::move(host), units);
}

PartialBisection PartialBisection::projection(GroupoidPtr host, const std::vector<UnitId> &units) {
  std::vector<ArrowId> arrows;
  for (UnitId u : units) arrows.push_back(host->unit_arrow(u));
  return PartialBisection(std::move(host), arrows);
}

ArrowId PartialBisection::at_range(UnitId u) const {
  for (ArrowId a : host_->arrows_with_range(u)) {
    if (contains(a)) return a;
  }
  return kNoArrow;
}

std::vector<ArrowId> PartialBisection::arrows() const {
  std::vector<ArrowId> out;
  for (ArrowId a : by_source_) {
    if (a != kNoArrow) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UnitId> PartialBisection::domain_units() const {
  std::vector<UnitId> out;
  for (std::size_t u = 0; u < by_source_.size(); ++u) {
    if (by_source_[u] != kNoArrow) out.push_back(static_cast<UnitId>(u));
  }
  return out;
}

std::vector<UnitId> PartialBisection::range_units() const {
  std::vector<UnitId> out;
  for (ArrowId a : by_source_) {
    if (a != kNoArrow) out.push_back(host_->range(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PartialBisection::empty() const {
  return std::all_of(by_source_.begin(), by_source_.end(), [](ArrowId a) { return a == kNoArrow; });
}

bool PartialBisection::is_projection() const {
  for (ArrowId a : by_source_) {
    if (a != kNoArrow && !host_->is_unit_arrow(a)) return false;
  }
  return true;
}

PartialBisection PartialBisection::inverse() const {
  PartialBisection out(host_);
  for (ArrowId a : by_source_) {
    if (a != kNoArrow) out.by_source_[host_->range(a)] = host_->inverse(a);
  }
  return out;
}

std::string PartialBisection::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (ArrowId a : arrows()) {
    if (!first) os << ",";
    os << a;
    first = false;
  }
  os << "}";
  return os.str();
}

std::size_t PartialBisectionHash::operator()(const PartialBisection &s) const {
  std::size_t h = 0xCBF29CE484222325ULL;
  for (ArrowId a : s.by_source()) h = (h ^ static_cast<std::size_t>(a + 2)) * 0x100000001B3ULL;
  return h;
}

PartialBisection compose(const PartialBisection &s, const PartialBisection &t) {
  if (s.host() != t.host() && !(*s.host() == *t.host())) {
    throw std::invalid_argument("compose: bisections live on different groupoids");
  }
  const FiniteGroupoid &g = *t.host();
  std::vector<ArrowId> arrows;
  for (ArrowId h : t.by_source()) {
    if (h == kNoArrow) continue;
    ArrowId a = s.at_source(g.range(h));
    if (a != kNoArrow) arrows.push_back(g.compose(a, h));
  }
  return PartialBisection(t.host(), arrows);
}

Rational tau(const PartialBisection &s) {
  Rational total = 0;
  const FiniteGroupoid &g = *s.host();
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    if (s.at_source(static_cast<UnitId>(u)) == g.unit_arrow(static_cast<UnitId>(u))) total += g.weight(static_cast<UnitId>(u));
  }
  return total;
}

Rational uniform_distance(const PartialBisection &s, const PartialBisection &t) {
  const FiniteGroupoid &g = *s.host();
  Rational total = 0;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    if (s.at_source(static_cast<UnitId>(u)) != t.at_source(static_cast<UnitId>(u))) total += g.weight(static_cast<UnitId>(u));
  }
  return total;
}

Rational unit_measure(const FiniteGroupoid &g, const std::vector<UnitId> &units) {
  Rational total = 0;
  for (UnitId u : units) total += g.weight(u);
  return total;
}

bool orthogonal(const PartialBisection &s, const PartialBisection &t) {
  auto sd = s.domain_units(), td = t.domain_units(), sr = s.range_units(), tr = t.range_units();
  std::vector<UnitId> common;
  std::set_intersection(sd.begin(), sd.end(), td.begin(), td.end(), std::back_inserter(common));
  if (!common.empty()) return false;
  std::set_intersection(sr.begin(), sr.end(), tr.begin(), tr.end(), std::back_inserter(common));
  return common.empty();
}

PmpReport validate_pmp(const FiniteGroupoid &g) {
  PmpReport rep;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    if (g.weight(g.source(static_cast<ArrowId>(a))) != g.weight(g.range(static_cast<ArrowId>(a)))) {
      rep.ok = false;
      rep.violations.push_back(static_cast<ArrowId>(a));
    }
  }
  return rep;
}

Rational finite_part_measure(const FiniteGroupoid &g) {
  Rational total = 0;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    total += g.weight(static_cast<UnitId>(u)) /
             Rational(static_cast<long long>(g.arrows_with_range(static_cast<UnitId>(u)).size()));
  }
  return total;
}

bool is_principal(const FiniteGroupoid &g) {
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    std::vector<UnitId> ranges;
    for (ArrowId a : g.arrows_with_source(static_cast<UnitId>(u))) ranges.push_back(g.range(a));
    std::sort(ranges.begin(), ranges.end());
    if (std::adjacent_find(ranges.begin(), ranges.end()) != ranges.end()) return false;
  }
  return true;
}

std::size_t orbit_count(const FiniteGroupoid &g) {
  std::vector<UnitId> seen(g.unit_count(), -1);
  std::size_t orbits = 0;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    if (seen[u] != -1) continue;
    ++orbits;
    for (ArrowId a : g.arrows_with_source(static_cast<UnitId>(u))) seen[g.range(a)] = static_cast<UnitId>(u);
  }
  return orbits;
}

// ---------------------------------------------------------------------------

PartialBisection Corner::embed(const PartialBisection &s) const {
  std::vector<ArrowId> arrows;
  for (ArrowId a : s.arrows()) arrows.push_back(arrow_to_ambient[a]);
  return PartialBisection(ambient, arrows);
}

PartialBisection Corner::pull_back(const PartialBisection &s) const {
  std::vector<ArrowId> arrows;
  for (ArrowId a : s.arrows()) {
    if (arrow_from_ambient[a] == kNoArrow) {
      throw std::invalid_argument("pull_back: arrow " + std::to_string(a) + " leaves the corner");
    }
    arrows.push_back(arrow_from_ambient[a]);
  }
  return PartialBisection(groupoid, arrows);
}

Corner corner(const GroupoidPtr &g, const std::vector<UnitId> &p) {
  if (p.empty()) throw std::invalid_argument("corner: empty unit set");
  Corner c;
  c.ambient = g;
  c.unit_from_ambient.assign(g->unit_count(), -1);
  for (UnitId u : p) {
    if (u < 0 || static_cast<std::size_t>(u) >= g->unit_count()) throw std::invalid_argument("corner: unknown unit");
    if (c.unit_from_ambient[u] != -1) continue;
    c.unit_from_ambient[u] = 0;
  }
  for (std::size_t u = 0; u < g->unit_count(); ++u) {
    if (c.unit_from_ambient[u] != -1) {
      c.unit_from_ambient[u] = static_cast<UnitId>(c.unit_to_ambient.size());
      c.unit_to_ambient.push_back(static_cast<UnitId>(u));
    }
  }
  c.ambient_measure = unit_measure(*g, c.unit_to_ambient);
  if (c.ambient_measure == 0) throw std::invalid_argument("corner: unit set has measure zero");

  std::vector<Rational> weights;
  for (UnitId u : c.unit_to_ambient) weights.push_back(g->weight(u) / c.ambient_measure);
  c.arrow_from_ambient.assign(g->arrow_count(), kNoArrow);
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < g->arrow_count(); ++a) {
    const Arrow &ar = g->arrow(static_cast<ArrowId>(a));
    if (c.unit_from_ambient[ar.source] == -1 || c.unit_from_ambient[ar.range] == -1) continue;
    c.arrow_from_ambient[a] = static_cast<ArrowId>(c.arrow_to_ambient.size());
    c.arrow_to_ambient.push_back(static_cast<ArrowId>(a));
  }
  for (ArrowId a : c.arrow_to_ambient) {
    const Arrow &ar = g->arrow(a);
    arrows.push_back({c.unit_from_ambient[ar.source], c.unit_from_ambient[ar.range], c.arrow_from_ambient[ar.inverse]});
  }
  std::vector<Composition> comp;
  for (const Composition &row : g->composition_table()) {
    if (c.arrow_from_ambient[row.left] == kNoArrow || c.arrow_from_ambient[row.right] == kNoArrow) continue;
    comp.push_back({c.arrow_from_ambient[row.left], c.arrow_from_ambient[row.right], c.arrow_from_ambient[row.result]});
  }
  c.groupoid = std::make_shared<const FiniteGroupoid>(std::move(weights), std::move(arrows), comp);
  return c;
}

// ---------------------------------------------------------------------------

GroupoidPtr transitive_groupoid(std::size_t d) {
  if (d == 0) throw std::invalid_argument("transitive_groupoid: d must be positive");
  // Arrow (i <- j) has id i*d + j: source j, range i.
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      arrows.push_back({static_cast<UnitId>(j), static_cast<UnitId>(i), static_cast<ArrowId>(j * d + i)});
    }
  }
  std::vector<Composition> comp;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        comp.push_back({static_cast<ArrowId>(i * d + j), static_cast<ArrowId>(j * d + k), static_cast<ArrowId>(i * d + k)});
      }
    }
  }
  std::vector<Rational> w(d, Rational(1, static_cast<long long>(d)));
  return std::make_shared<const FiniteGroupoid>(std::move(w), std::move(arrows), comp);
}

GroupoidPtr group_groupoid(const std::vector<std::vector<std::size_t>> &table) {
  const std::size_t n = table.size();
  if (n == 0) throw MalformedGroupoid("empty group table");
  std::vector<Arrow> arrows(n, Arrow{0, 0, kNoArrow});
  std::vector<Composition> comp;
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw MalformedGroupoid("group table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) throw MalformedGroupoid("group table entry out of range");
      if (table[i][j] == 0) arrows[i].inverse = static_cast<ArrowId>(j);
      comp.push_back({static_cast<ArrowId>(i), static_cast<ArrowId>(j), static_cast<ArrowId>(table[i][j])});
    }
    if (arrows[i].inverse == kNoArrow) throw MalformedGroupoid("element " + std::to_string(i) + " has no inverse");
  }
  return std::make_shared<const FiniteGroupoid>(std::vector<Rational>{Rational(1)}, std::move(arrows), comp);
}

GroupoidPtr cyclic_group_groupoid(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cyclic_group_groupoid: order must be positive");
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) table[i][j] = (i + j) % m;
  }
  return group_groupoid(table);
}

GroupoidPtr trivial_groupoid(const std::vector<Rational> &weights) {
  std::vector<Arrow> arrows;
  std::vector<Composition> comp;
  for (std::size_t u = 0; u < weights.size(); ++u) {
    arrows.push_back({static_cast<UnitId>(u), static_cast<UnitId>(u), static_cast<ArrowId>(u)});
    comp.push_back({static_cast<ArrowId>(u), static_cast<ArrowId>(u), static_cast<ArrowId>(u)});
  }
  return std::make_shared<const FiniteGroupoid>(weights, std::move(arrows), comp);
}

std::vector<PartialBisection> greedy_generators(const GroupoidPtr &g) {
  std::vector<std::vector<ArrowId>> groups;
  std::vector<std::vector<char>> src_used, rng_used;
  for (std::size_t a = 0; a < g->arrow_count(); ++a) {
    const ArrowId id = static_cast<ArrowId>(a);
    if (g->is_unit_arrow(id)) continue;
    std::size_t slot = 0;
    for (; slot < groups.size(); ++slot) {
      if (!src_used[slot][g->source(id)] && !rng_used[slot][g->range(id)]) break;
    }
    if (slot == groups.size()) {
      groups.emplace_back();
      src_used.emplace_back(g->unit_count(), 0);
      rng_used.emplace_back(g->unit_count(), 0);
    }
    groups[slot].push_back(id);
    src_used[slot][g->source(id)] = 1;
    rng_used[slot][g->range(id)] = 1;
  }
  std::vector<PartialBisection> out;
  for (const auto &grp : groups) out.emplace_back(g, grp);
  if (out.empty()) out.push_back(PartialBisection::identity(g));
  return out;
}

namespace {

void bisections_rec(const GroupoidPtr &g, std::size_t u, std::vector<ArrowId> &cur, std::vector<char> &range_used,
                    std::vector<PartialBisection> &out) {
  if (u == g->unit_count()) {
    out.emplace_back(g, cur);
    return;
  }
  bisections_rec(g, u + 1, cur, range_used, out);
  for (ArrowId a : g->arrows_with_source(static_cast<UnitId>(u))) {
    if (range_used[g->range(a)]) continue;
    range_used[g->range(a)] = 1;
    cur.push_back(a);
    bisections_rec(g, u + 1, cur, range_used, out);
    cur.pop_back();
    range_used[g->range(a)] = 0;
  }
}

} // namespace

std::vector<PartialBisection> all_partial_bisections(const GroupoidPtr &g) {
  std::vector<PartialBisection> out;
  std::vector<ArrowId> cur;
  std::vector<char> used(g->unit_count(), 0);
  bisections_rec(g, 0, cur, used, out);
  return out;
}

} // namespace sofic
