#ifndef SOFIC_FIBRED_HPP_
#define SOFIC_FIBRED_HPP_

#include <cstdint>
#include <vector>

#include "sofic/groupoid.hpp"

namespace sofic {

using PointId = std::int32_t;

class ActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite fibred space X -> G^0 with fiber probability measures and a
// measure-preserving action of the arrows: g maps the fiber over source(g)
// onto the fiber over range(g).
class FibredAction {
 public:
  // images[g][i] is the image under g of the i-th point of the fiber over
  // source(g). Points of each fiber are listed in increasing id order.
  FibredAction(GroupoidPtr host, std::vector<UnitId> fiber_of, std::vector<Rational> fiber_measure,
               std::vector<std::vector<PointId>> images);

  const GroupoidPtr &host() const { return host_; }
  std::size_t point_count() const { return fiber_of_.size(); }
  UnitId fiber_of(PointId x) const { return fiber_of_[x]; }
  const std::vector<PointId> &fiber(UnitId u) const { return fibers_[u]; }
  std::size_t fiber_position(PointId x) const { return fiber_pos_[x]; }
  const Rational &fiber_measure(PointId x) const { return fiber_measure_[x]; }
  // h(p(x)) * mu^{p(x)}(x)
  Rational point_measure(PointId x) const;
  PointId act(ArrowId g, PointId x) const;

  // Throws ActionError if units do not act trivially, the action does not
  // respect composition, or fiber measures are not preserved.
  void validate() const;
  bool is_free() const;

  // Units are the points (weighted by point_measure); arrow (g, x) for x in
  // the fiber over source(g) has source x and range g x. Arrow ids run over
  // g in id order, then x in fiber order.
  GroupoidPtr crossed_product() const;
  ArrowId crossed_arrow(ArrowId g, PointId x) const;
  // s as an element of [[G x X]].
  PartialBisection lift(const GroupoidPtr &crossed, const PartialBisection &s) const;

 private:
  GroupoidPtr host_;
  std::vector<UnitId> fiber_of_;
  std::vector<Rational> fiber_measure_;
  std::vector<std::vector<PointId>> fibers_;
  std::vector<std::size_t> fiber_pos_;
  std::vector<std::vector<PointId>> images_;
  std::vector<std::size_t> arrow_offset_;
};

// Measure of a fundamental domain built from the minimum-index point of
// every orbit.
Rational fundamental_domain_measure(const FibredAction &a);

// The Bernoulli shift with base alphabet {0..q-1} and weights mu0: the fiber
// over e is alphabet^{G^e} with the product measure and
// (g x)_t = x_{g^-1 t} for t in G^{range(g)}.
struct BernoulliModel {
  FibredAction action;
  GroupoidPtr crossed;
  std::vector<Rational> alphabet;

  std::size_t alphabet_size() const { return alphabet.size(); }
  // x_t for t in G^{p(x)}.
  std::size_t letter(PointId x, ArrowId t) const;
};

BernoulliModel bernoulli_crossed_product(const GroupoidPtr &g, const std::vector<Rational> &alphabet,
                                         std::size_t cap = 1'000'000);

} // namespace sofic

#endif // SOFIC_FIBRED_HPP_
