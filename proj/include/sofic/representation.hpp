#ifndef SOFIC_REPRESENTATION_HPP_
#define SOFIC_REPRESENTATION_HPP_

#include <vector>

#include "sofic/groupoid.hpp"
#include "sofic/pperm.hpp"

namespace sofic {

// An exact trace-preserving representation [[G]] -> [[d]].
//
// Points are pairs (a, c): a an arrow (regular kind) or a unit (unit kind),
// c a copy index. point_unit[k] is the range of a, which is what bisections
// move; partitions pulled back along point_unit stay exact.
struct Representation {
  enum class Kind { unit, regular };

  GroupoidPtr host;
  Kind kind = Kind::regular;
  std::size_t degree = 0;
  std::vector<ArrowId> point_arrow;  // unit arrow for the unit kind
  std::vector<std::size_t> point_copy;
  std::vector<UnitId> point_unit;

  PartialPermutation operator()(const PartialBisection &s) const;
};

// Points are units, unit u repeated degree*w(u) times. Exact only for
// principal groupoids; throws if the multiplicities are not integers.
Representation unit_representation(const GroupoidPtr &g, std::size_t degree);
// Left action on arrows, arrow h repeated degree*w(s(h))/|G_{s(h)}| times.
// Exact for every pmp groupoid.
Representation regular_representation(const GroupoidPtr &g, std::size_t degree);

std::size_t min_unit_degree(const FiniteGroupoid &g);
std::size_t min_regular_degree(const FiniteGroupoid &g);

} // namespace sofic

#endif // SOFIC_REPRESENTATION_HPP_
