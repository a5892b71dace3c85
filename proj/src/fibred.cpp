#include "sofic/fibred.hpp"

#include <numeric>

namespace sofic {

FibredAction::FibredAction(GroupoidPtr host, std::vector<UnitId> fiber_of, std::vector<Rational> fiber_measure,
                           std::vector<std::vector<PointId>> images)
    : host_(std::move(host)),
      fiber_of_(std::move(fiber_of)),
      fiber_measure_(std::move(fiber_measure)),
      images_(std::move(images)) {
  const FiniteGroupoid &g = *host_;
  if (fiber_measure_.size() != fiber_of_.size()) throw ActionError("fiber measure length differs from point count");
  if (images_.size() != g.arrow_count()) throw ActionError("action table must have one row per arrow");
  fibers_.assign(g.unit_count(), {});
  fiber_pos_.assign(fiber_of_.size(), 0);
  for (std::size_t x = 0; x < fiber_of_.size(); ++x) {
    UnitId u = fiber_of_[x];
    if (u < 0 || static_cast<std::size_t>(u) >= g.unit_count()) throw ActionError("point over an unknown unit");
    fiber_pos_[x] = fibers_[u].size();
    fibers_[u].push_back(static_cast<PointId>(x));
  }
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    const Arrow &ar = g.arrow(static_cast<ArrowId>(a));
    const auto &row = images_[a];
    if (row.size() != fibers_[ar.source].size()) throw ActionError("arrow " + std::to_string(a) + ": row size differs from fiber size");
    std::vector<char> hit(point_count(), 0);
    for (PointId y : row) {
      if (y < 0 || static_cast<std::size_t>(y) >= point_count() || fiber_of_[y] != ar.range || hit[y]) {
        throw ActionError("arrow " + std::to_string(a) + " is not a bijection between fibers");
      }
      hit[y] = 1;
    }
  }
  arrow_offset_.assign(g.arrow_count() + 1, 0);
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    arrow_offset_[a + 1] = arrow_offset_[a] + fibers_[g.source(static_cast<ArrowId>(a))].size();
  }
}

Rational FibredAction::point_measure(PointId x) const { return host_->weight(fiber_of_[x]) * fiber_measure_[x]; }

PointId FibredAction::act(ArrowId g, PointId x) const {
  if (fiber_of_[x] != host_->source(g)) {
    throw std::invalid_argument("point " + std::to_string(x) + " is not over the source of arrow " + std::to_string(g));
  }
  return images_[g][fiber_pos_[x]];
}

void FibredAction::validate() const {
  const FiniteGroupoid &g = *host_;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    Rational total = 0;
    for (PointId x : fibers_[u]) {
      if (fiber_measure_[x] < 0) throw ActionError("negative fiber measure at point " + std::to_string(x));
      total += fiber_measure_[x];
    }
    if (total != 1) throw ActionError("fiber over unit " + std::to_string(u) + " has mass " + to_string(total));
    for (PointId x : fibers_[u]) {
      if (act(g.unit_arrow(static_cast<UnitId>(u)), x) != x) throw ActionError("unit " + std::to_string(u) + " moves a point");
    }
  }
  for (const Composition &c : g.composition_table()) {
    for (PointId x : fibers_[g.source(c.right)]) {
      if (act(c.result, x) != act(c.left, act(c.right, x))) {
        throw ActionError("action does not respect " + std::to_string(c.left) + "*" + std::to_string(c.right));
      }
    }
  }
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    for (PointId x : fibers_[g.source(static_cast<ArrowId>(a))]) {
      if (fiber_measure_[act(static_cast<ArrowId>(a), x)] != fiber_measure_[x]) {
        throw ActionError("arrow " + std::to_string(a) + " does not preserve the fiber measure");
      }
    }
  }
}

bool FibredAction::is_free() const {
  const FiniteGroupoid &g = *host_;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    const ArrowId id = static_cast<ArrowId>(a);
    if (g.is_unit_arrow(id) || g.source(id) != g.range(id)) continue;
    for (PointId x : fibers_[g.source(id)]) {
      if (act(id, x) == x) return false;
    }
  }
  return true;
}

ArrowId FibredAction::crossed_arrow(ArrowId g, PointId x) const {
  if (fiber_of_[x] != host_->source(g)) throw std::invalid_argument("crossed_arrow: point not over source");
  return static_cast<ArrowId>(arrow_offset_[g] + fiber_pos_[x]);
}

GroupoidPtr FibredAction::crossed_product() const {
  const FiniteGroupoid &g = *host_;
  std::vector<Rational> weights;
  for (std::size_t x = 0; x < point_count(); ++x) weights.push_back(point_measure(static_cast<PointId>(x)));
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    const ArrowId ga = static_cast<ArrowId>(a);
    for (PointId x : fibers_[g.source(ga)]) {
      PointId y = act(ga, x);
      arrows.push_back({x, y, crossed_arrow(g.inverse(ga), y)});
    }
  }
  // (g, y)(h, x) = (gh, x) when h x = y.
  std::vector<Composition> comp;
  for (const Composition &c : g.composition_table()) {
    for (PointId x : fibers_[g.source(c.right)]) {
      PointId y = act(c.right, x);
      comp.push_back({crossed_arrow(c.left, y), crossed_arrow(c.right, x), crossed_arrow(c.result, x)});
    }
  }
  return std::make_shared<const FiniteGroupoid>(std::move(weights), std::move(arrows), comp);
}

PartialBisection FibredAction::lift(const GroupoidPtr &crossed, const PartialBisection &s) const {
  std::vector<ArrowId> arrows;
  for (ArrowId a : s.arrows()) {
    for (PointId x : fibers_[host_->source(a)]) arrows.push_back(crossed_arrow(a, x));
  }
  return PartialBisection(crossed, arrows);
}

Rational fundamental_domain_measure(const FibredAction &a) {
  const FiniteGroupoid &g = *a.host();
  std::vector<PointId> root(a.point_count());
  std::iota(root.begin(), root.end(), 0);
  // The orbit of x is {g x : g in G_{p(x)}}; its least element is the
  // representative.
  for (std::size_t x = 0; x < a.point_count(); ++x) {
    for (ArrowId h : g.arrows_with_source(a.fiber_of(static_cast<PointId>(x)))) {
      PointId y = a.act(h, static_cast<PointId>(x));
      if (y < root[x]) root[x] = y;
    }
  }
  Rational total = 0;
  for (std::size_t x = 0; x < a.point_count(); ++x) {
    if (root[x] == static_cast<PointId>(x)) total += a.point_measure(static_cast<PointId>(x));
  }
  return total;
}

std::size_t BernoulliModel::letter(PointId x, ArrowId t) const {
  const FiniteGroupoid &g = *action.host();
  if (g.range(t) != action.fiber_of(x)) throw std::invalid_argument("letter: arrow does not end at the fiber of x");
  std::size_t code = action.fiber_position(x);
  const std::size_t q = alphabet.size();
  for (std::size_t i = 0; i < g.range_position(t); ++i) code /= q;
  return code % q;
}

BernoulliModel bernoulli_crossed_product(const GroupoidPtr &g, const std::vector<Rational> &alphabet, std::size_t cap) {
  if (alphabet.empty()) throw std::invalid_argument("bernoulli: empty alphabet");
  Rational mass = 0;
  for (const Rational &w : alphabet) {
    if (w < 0) throw std::invalid_argument("bernoulli: negative alphabet weight");
    mass += w;
  }
  if (mass != 1) throw std::invalid_argument("bernoulli: alphabet weights sum to " + to_string(mass) + ", not 1");
  const std::size_t q = alphabet.size();

  std::vector<std::size_t> fiber_size(g->unit_count());
  std::size_t total_points = 0;
  for (std::size_t u = 0; u < g->unit_count(); ++u) {
    std::size_t k = g->arrows_with_range(static_cast<UnitId>(u)).size();
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (n > cap / q) throw CapExceeded("bernoulli: fiber alphabet^" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
      n *= q;
    }
    fiber_size[u] = n;
    total_points += n;
    if (total_points > cap) throw CapExceeded("bernoulli: total points exceed cap " + std::to_string(cap));
  }

  std::vector<UnitId> fiber_of;
  std::vector<Rational> measure;
  std::vector<std::size_t> first(g->unit_count());
  for (std::size_t u = 0; u < g->unit_count(); ++u) {
    first[u] = fiber_of.size();
    const std::size_t k = g->arrows_with_range(static_cast<UnitId>(u)).size();
    for (std::size_t code = 0; code < fiber_size[u]; ++code) {
      Rational m = 1;
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        m *= alphabet[c % q];
        c /= q;
      }
      fiber_of.push_back(static_cast<UnitId>(u));
      measure.push_back(m);
    }
  }

  std::vector<std::vector<PointId>> images(g->arrow_count());
  for (std::size_t a = 0; a < g->arrow_count(); ++a) {
    const ArrowId ga = static_cast<ArrowId>(a);
    const UnitId s = g->source(ga), r = g->range(ga);
    auto targets = g->arrows_with_range(r);
    // digit position in the source configuration feeding each target digit
    std::vector<std::size_t> feed(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) feed[i] = g->range_position(g->compose(g->inverse(ga), targets[i]));
    std::vector<std::size_t> pow(g->arrows_with_range(s).size() + 1, 1);
    for (std::size_t i = 1; i < pow.size(); ++i) pow[i] = pow[i - 1] * q;
    auto &row = images[a];
    row.resize(fiber_size[s]);
    for (std::size_t code = 0; code < fiber_size[s]; ++code) {
      std::size_t out = 0, place = 1;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        out += ((code / pow[feed[i]]) % q) * place;
        place *= q;
      }
      row[code] = static_cast<PointId>(first[r] + out);
    }
  }
  FibredAction action(g, std::move(fiber_of), std::move(measure), std::move(images));
  GroupoidPtr crossed = action.crossed_product();
  return BernoulliModel{std::move(action), std::move(crossed), alphabet};
}

} // namespace sofic
