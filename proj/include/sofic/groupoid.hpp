#ifndef SOFIC_GROUPOID_HPP_
#define SOFIC_GROUPOID_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic {

using UnitId = std::int32_t;
using ArrowId = std::int32_t;
inline constexpr ArrowId kNoArrow = -1;

class MalformedGroupoid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Arrow {
  UnitId source;
  UnitId range;
  ArrowId inverse;
};

struct Composition {
  ArrowId left;   // g
  ArrowId right;  // h, with range(h) == source(g)
  ArrowId result; // g h
};

// A finite discrete groupoid with a probability measure on its units.
// Composition is functional: compose(g, h) is defined when
// source(g) == range(h); h acts first.
class FiniteGroupoid {
 public:
  // Validates the structure (units, inverses, associativity) and throws
  // MalformedGroupoid on failure. Unit weights must be >= 0 and sum to 1.
  FiniteGroupoid(std::vector<Rational> unit_weights, std::vector<Arrow> arrows,
                 const std::vector<Composition> &composition);

  std::size_t unit_count() const { return weights_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const Rational &weight(UnitId u) const { return weights_.at(u); }
  const std::vector<Rational> &weights() const { return weights_; }
  const Arrow &arrow(ArrowId a) const { return arrows_.at(a); }
  const std::vector<Arrow> &arrows() const { return arrows_; }
  UnitId source(ArrowId a) const { return arrows_[a].source; }
  UnitId range(ArrowId a) const { return arrows_[a].range; }
  ArrowId inverse(ArrowId a) const { return arrows_[a].inverse; }
  ArrowId unit_arrow(UnitId u) const { return unit_arrow_.at(u); }
  bool is_unit_arrow(ArrowId a) const { return unit_arrow_[arrows_[a].source] == a; }

  // g h; throws std::invalid_argument if not composable.
  ArrowId compose(ArrowId g, ArrowId h) const;

  std::span<const ArrowId> arrows_with_range(UnitId u) const;
  std::span<const ArrowId> arrows_with_source(UnitId u) const;
  // Position of an arrow inside arrows_with_range(range(a)).
  std::size_t range_position(ArrowId a) const { return range_pos_[a]; }

  // Composition rows in canonical (g, h) order.
  std::vector<Composition> composition_table() const;

  friend bool operator==(const FiniteGroupoid &a, const FiniteGroupoid &b);

 private:
  std::vector<Rational> weights_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> unit_arrow_;
  std::vector<std::vector<ArrowId>> by_range_;
  std::vector<std::vector<ArrowId>> by_source_;
  std::vector<std::size_t> range_pos_;
  std::vector<std::size_t> row_offset_;
  std::vector<ArrowId> table_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// An element of [[G]]: a set of arrows on which source and range are both
// injective. Stored as the arrow leaving each unit (or kNoArrow).
class PartialBisection {
 public:
  PartialBisection() = default;
  explicit PartialBisection(GroupoidPtr host);  // the empty bisection
  // Throws std::invalid_argument if two arrows share a source or a range.
  PartialBisection(GroupoidPtr host, const std::vector<ArrowId> &arrows);

  static PartialBisection identity(GroupoidPtr host);
  static PartialBisection projection(GroupoidPtr host, const std::vector<UnitId> &units);

  const GroupoidPtr &host() const { return host_; }
  ArrowId at_source(UnitId u) const { return by_source_[u]; }
  ArrowId at_range(UnitId u) const;
  const std::vector<ArrowId> &by_source() const { return by_source_; }
  std::vector<ArrowId> arrows() const;
  std::vector<UnitId> domain_units() const;
  std::vector<UnitId> range_units() const;
  bool empty() const;
  bool contains(ArrowId a) const { return by_source_[host_->source(a)] == a; }
  bool is_projection() const;

  PartialBisection inverse() const;
  std::string to_string() const;

  friend bool operator==(const PartialBisection &a, const PartialBisection &b) {
    return a.by_source_ == b.by_source_;
  }
  friend bool operator<(const PartialBisection &a, const PartialBisection &b) {
    return a.by_source_ < b.by_source_;
  }

 private:
  GroupoidPtr host_;
  std::vector<ArrowId> by_source_;
};

struct PartialBisectionHash {
  std::size_t operator()(const PartialBisection &s) const;
};

// s t (t first). Both must live on the same host.
PartialBisection compose(const PartialBisection &s, const PartialBisection &t);

// tau(s): total weight of units contained in s.
Rational tau(const PartialBisection &s);
// Weight of the units e with s e != t e.
Rational uniform_distance(const PartialBisection &s, const PartialBisection &t);
Rational unit_measure(const FiniteGroupoid &g, const std::vector<UnitId> &units);
bool orthogonal(const PartialBisection &s, const PartialBisection &t);

struct PmpReport {
  bool ok = true;
  std::vector<ArrowId> violations;  // arrows with weight(range) != weight(source)
};
PmpReport validate_pmp(const FiniteGroupoid &g);

// sum_e mu(e) / |r^-1(e)|
Rational finite_part_measure(const FiniteGroupoid &g);
// (source, range) injective on arrows.
bool is_principal(const FiniteGroupoid &g);
// Number of orbits of the units.
std::size_t orbit_count(const FiniteGroupoid &g);

// The reduction pGp with measure renormalised by 1/h(p), plus the maps back
// into the ambient groupoid.
struct Corner {
  GroupoidPtr groupoid;
  GroupoidPtr ambient;
  Rational ambient_measure;              // h(p)
  std::vector<UnitId> unit_to_ambient;
  std::vector<ArrowId> arrow_to_ambient;
  std::vector<UnitId> unit_from_ambient;  // -1 outside p
  std::vector<ArrowId> arrow_from_ambient;

  PartialBisection embed(const PartialBisection &s) const;
  // Requires every arrow of s to lie in pGp.
  PartialBisection pull_back(const PartialBisection &s) const;
};
Corner corner(const GroupoidPtr &g, const std::vector<UnitId> &p);

// Builders.
GroupoidPtr transitive_groupoid(std::size_t d);  // R_d, uniform weights
GroupoidPtr cyclic_group_groupoid(std::size_t m);
// table[i][j] = i*j, element 0 is the identity.
GroupoidPtr group_groupoid(const std::vector<std::vector<std::size_t>> &table);
GroupoidPtr trivial_groupoid(const std::vector<Rational> &weights);
// Every arrow of g, in id order, listed as singletons greedily merged into
// bisections; used as the default generating family.
std::vector<PartialBisection> greedy_generators(const GroupoidPtr &g);
// All of [[G]] in a fixed order.
std::vector<PartialBisection> all_partial_bisections(const GroupoidPtr &g);

} // namespace sofic

#endif // SOFIC_GROUPOID_HPP_
