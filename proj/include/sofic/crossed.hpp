#ifndef SOFIC_CROSSED_HPP_
#define SOFIC_CROSSED_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sofic/partitions.hpp"
#include "sofic/representation.hpp"
#include "sofic/sofic.hpp"

namespace sofic {

// Sigma P_{F^n_pm} for the Bernoulli partition P = {B_1..B_q}: the cylinder
// projections (indices 0..base_count()-1, same order as
// CylinderSystem::projections), the empty set if it is not one of them, then
// disjoint unions of at most sum_bound nonempty cylinders that are new sets.
class HASystem {
 public:
  HASystem(std::shared_ptr<const CylinderSystem> cyl, std::size_t sum_bound, std::size_t cap = 1024);

  const CylinderSystem &cylinders() const { return *cyl_; }
  std::size_t size() const { return sets_.size(); }
  std::size_t base_count() const { return base_count_; }
  std::size_t sum_bound() const { return sum_bound_; }
  const PointSet &set(std::size_t i) const { return sets_[i]; }
  const std::vector<std::size_t> &summands(std::size_t i) const { return summands_[i]; }
  std::optional<std::size_t> find(const PointSet &s) const;
  Rational measure(std::size_t i) const { return measures_[i]; }

  std::size_t full() const { return full_; }    // p_X
  std::size_t empty() const { return empty_; }  // the zero projection
  // B_i, i in 1..q
  std::size_t partition_element(std::size_t i) const { return partition_[i - 1]; }
  // s B_i for s in the ball
  std::size_t translate(std::size_t s, std::size_t i) const { return translates_[s * cyl_->q() + (i - 1)]; }
  // index of p_i p_j, or -1 when it falls outside the set
  std::int64_t intersection(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  std::string label(std::size_t i) const;

 private:
  std::shared_ptr<const CylinderSystem> cyl_;
  std::size_t sum_bound_;
  std::size_t base_count_ = 0;
  std::vector<PointSet> sets_;
  std::vector<std::vector<std::size_t>> summands_;
  std::vector<Rational> measures_;
  std::map<PointSet, std::size_t> lookup_;
  std::size_t full_ = 0, empty_ = 0;
  std::vector<std::size_t> partition_;
  std::vector<std::size_t> translates_;
  std::vector<std::int64_t> meet_;
};

struct HACandidate {
  std::vector<PartialPermutation> sigma;  // on CylinderSystem::ball()
  std::vector<PartialPermutation> phi;    // on HASystem elements
};

struct HAReport {
  bool is_member = false;
  Rational tolerance_sq;
  // worst gaps for conditions (i)..(iv), all in uniform distance
  Rational trace_gap, equivariance_gap, multiplicativity_gap, unit_gap;
  std::string trace_witness, equivariance_witness, multiplicativity_witness;
  std::size_t checks = 0;
};

// Conditions (i)-(iv); every gap must be below sqrt(tolerance_sq). The action
// of s on projections is conjugation: phi(s p s^-1) against
// sigma(s) phi(p) sigma(s)^-1. sigma itself is not rechecked here.
HAReport verify_ha(const HASystem &ha, const HACandidate &c, const Rational &tolerance_sq);
inline HAReport verify_ha_delta(const HASystem &ha, const HACandidate &c, const Rational &delta) {
  return verify_ha(ha, c, delta * delta);
}

// |phi(p1 + p2) - (phi(p1) + phi(p2))| with the corrected sum on the right.
// p1 p2 must be 0 and p1 + p2 must lie in the system.
Rational approx_sum_gap(const HASystem &ha, const HACandidate &c, std::size_t p1, std::size_t p2);

struct ApproxSumSweep {
  Rational worst_gap;
  std::string witness;
  std::size_t pairs = 0;
  bool pass = true;  // worst_gap < 146 delta
};
ApproxSumSweep approx_sum_sweep(const HASystem &ha, const HACandidate &c, const Rational &delta);

// ---- the phi_0 / phi construction -------------------------------------------

struct PropertyReport {
  // (1) uniform; (2)-(4) are squared 2-norms
  Rational trace_gap, equivariance_gap_sq, multiplicativity_gap_sq, unit_gap_sq;
  Rational delta0_sq;  // (3 kappa^2 l^2 q c3^2 sqrt(delta) / gamma)^2
  bool trace_ok = false, equivariance_ok = false, multiplicativity_ok = false, unit_ok = false;
  bool pass() const { return trace_ok && equivariance_ok && multiplicativity_ok && unit_ok; }
};

struct Phi0 {
  // diagonal of phi_0(p) for every cylinder projection p
  std::vector<std::vector<Rational>> diagonal;
  // p_{A_psi} for the first psi of every projection
  std::vector<PointSet> approximate;
  PropertyReport report;
};

Phi0 build_phi0(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                const std::vector<std::uint32_t> &block_of, const Rational &delta);

struct PhiResult {
  HACandidate candidate;
  PointSet V;
  Rational v_fraction;
  Rational v_bound;  // 1 - 2|P|^2 c3^2 kappa^4 delta / gamma^2
  bool v_bound_ok = false;
  Rational tolerance_sq;  // (9 |P|^2 kappa^5 l^2 q c3^2 sqrt(delta) / gamma^2)^2
  HAReport report;
};

// V: points where phi_0 of every projection is the indicator of its A_psi and
// the A_psi of disjoint cylinders do not meet. phi(p) = p_{A_psi} on V, sums
// by orthogonal union. Throws if V is empty.
PhiResult build_phi(const HASystem &ha, const SpanBasis &basis, const Phi0 &phi0, const std::vector<PartialPermutation> &sigma,
                    const Rational &delta);

// ---- exact instances ----------------------------------------------------------

// sigma(s) = rep(lift(s)) for a representation of the crossed product,
// A_i = points whose letter at their own unit is i, phi(p) = p over the
// points lying over p.
struct ExactInstance {
  Representation rep;
  std::vector<PartialPermutation> sigma;  // on the ball
  std::vector<std::uint32_t> block_of;
  HACandidate candidate;
};
ExactInstance exact_instance(const HASystem &ha, std::size_t degree);
// The same sigma on the base elements of a source over the host groupoid.
SoficCandidate exact_candidate(const SoficSource &source, const CylinderSystem &cyl, const Representation &rep);

// ---- counting -------------------------------------------------------------------

struct HAStatistic {
  std::uint64_t count = 0;  // distinct (sigma|_E, phi|_Q)
  double statistic = 0.0;
  std::uint64_t sa_count = 0;  // |SA|_E
  BigInt bound;                // |Q|^d |SA|_E
  bool bound_holds = true;
  std::uint64_t pairs = 0;     // members of HA enumerated
};

struct HAEnumerationOptions {
  std::uint64_t cap = 10'000'000;  // search nodes
  EnumerationOptions sa;
};

// Joint enumeration: SA members of p (a groupoid source containing the
// ball), then every phi over [[d]] meeting (i)-(iv) at p.delta. E are base
// indices of p.source, Q element indices of ha (default: the partition P).
HAStatistic ha_statistic(const HASystem &ha, const SAParams &p, const std::vector<std::size_t> &E,
                         std::vector<std::size_t> Q = {}, const HAEnumerationOptions &opt = {});

} // namespace sofic

#endif // SOFIC_CROSSED_HPP_
