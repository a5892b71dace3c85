#include "sofic/representation.hpp"

#include <map>
#include <numeric>

namespace sofic {

namespace {

std::size_t lcm_of_denominators(const std::vector<Rational> &xs) {
  BigInt l = 1;
  for (const Rational &x : xs) l = lcm(l, denominator(x));
  if (l > BigInt(1'000'000'000)) throw std::invalid_argument("representation degree too large");
  return l.convert_to<std::size_t>();
}

std::size_t multiplicity(const Rational &x, std::size_t degree) {
  Rational m = x * Rational(static_cast<long long>(degree));
  if (denominator(m) != 1) {
    throw std::invalid_argument("degree " + std::to_string(degree) + " does not give integer multiplicities");
  }
  return numerator(m).convert_to<std::size_t>();
}

std::vector<Rational> regular_weights(const FiniteGroupoid &g) {
  std::vector<Rational> out;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    out.push_back(g.weight(static_cast<UnitId>(u)) /
                  Rational(static_cast<long long>(g.arrows_with_source(static_cast<UnitId>(u)).size())));
  }
  return out;
}

} // namespace

std::size_t min_unit_degree(const FiniteGroupoid &g) { return lcm_of_denominators(g.weights()); }

std::size_t min_regular_degree(const FiniteGroupoid &g) { return lcm_of_denominators(regular_weights(g)); }

Representation unit_representation(const GroupoidPtr &g, std::size_t degree) {
  if (!is_principal(*g)) throw std::invalid_argument("unit_representation needs a principal groupoid");
  Representation r;
  r.host = g;
  r.kind = Representation::Kind::unit;
  for (std::size_t u = 0; u < g->unit_count(); ++u) {
    std::size_t m = multiplicity(g->weight(static_cast<UnitId>(u)), degree);
    for (std::size_t c = 0; c < m; ++c) {
      r.point_arrow.push_back(g->unit_arrow(static_cast<UnitId>(u)));
      r.point_copy.push_back(c);
      r.point_unit.push_back(static_cast<UnitId>(u));
    }
  }
  r.degree = r.point_arrow.size();
  return r;
}

Representation regular_representation(const GroupoidPtr &g, std::size_t degree) {
  Representation r;
  r.host = g;
  r.kind = Representation::Kind::regular;
  auto w = regular_weights(*g);
  for (std::size_t a = 0; a < g->arrow_count(); ++a) {
    std::size_t m = multiplicity(w[g->source(static_cast<ArrowId>(a))], degree);
    for (std::size_t c = 0; c < m; ++c) {
      r.point_arrow.push_back(static_cast<ArrowId>(a));
      r.point_copy.push_back(c);
      r.point_unit.push_back(g->range(static_cast<ArrowId>(a)));
    }
  }
  r.degree = r.point_arrow.size();
  return r;
}

PartialPermutation Representation::operator()(const PartialBisection &s) const {
  std::map<std::pair<ArrowId, std::size_t>, std::int32_t> index;
  for (std::size_t k = 0; k < degree; ++k) index[{point_arrow[k], point_copy[k]}] = static_cast<std::int32_t>(k);
  std::vector<std::int32_t> img(degree, PartialPermutation::kUndefined);
  for (std::size_t k = 0; k < degree; ++k) {
    ArrowId a = s.at_source(point_unit[k]);
    if (a == kNoArrow) continue;
    ArrowId target = kind == Kind::unit ? host->unit_arrow(host->range(a)) : host->compose(a, point_arrow[k]);
    img[k] = index.at({target, point_copy[k]});
  }
  return PartialPermutation(degree, std::move(img));
}

} // namespace sofic
