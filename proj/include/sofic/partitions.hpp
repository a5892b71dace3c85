#ifndef SOFIC_PARTITIONS_HPP_
#define SOFIC_PARTITIONS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sofic/fibred.hpp"
#include "sofic/groupoid.hpp"
#include "sofic/pperm.hpp"
#include "sofic/set_partition.hpp"
#include "sofic/sofic.hpp"

namespace sofic {

// ---- profiles -------------------------------------------------------------

// Units e in the range of every s in F0 such that the arrows "e s" (the arrow
// of s ending at e) agree exactly when pi puts s and t in the same block.
std::vector<UnitId> profile_units(const std::vector<PartialBisection> &F0, const SetPartition &pi);
Rational profile_measure(const std::vector<PartialBisection> &F0, const SetPartition &pi);
// The same on {1..d}: points k in every range with sigma(s)^-1 k equal
// exactly along the blocks of pi.
std::vector<std::size_t> profile_points(const std::vector<PartialPermutation> &F0, const SetPartition &pi);
Rational profile_fraction(const std::vector<PartialPermutation> &F0, const SetPartition &pi);

// F plus the projections onto every profile F_{0|pi}, F0 a subset of F^n_pm.
// Requires |F^n_pm| <= 8.
std::vector<PartialBisection> augment_generators(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n);

inline constexpr std::size_t kProfileCap = 8;

// ---- constants ------------------------------------------------------------

BigInt lemma_c1(std::size_t f_pm, std::size_t n);  // 176 * 3^{2n} * |F_pm|^{2n}
BigInt lemma_c2(std::size_t f_pm, std::size_t n);  // 2 c1 Bell(|F_pm|^n)
BigInt lemma_block_count(std::size_t ell);         // N_ell = ell 2^ell
Rational lemma_c3(std::size_t f_pm, std::size_t n, std::size_t ell, const Rational &kappa);

// ---- random partitions ----------------------------------------------------

// block_of[k] in {0..q-1}, point k independently in block i with
// probability mu0(i). Stream: Rng(seed), one unit draw per point.
std::vector<std::uint32_t> random_partition(std::size_t d, const std::vector<Rational> &mu0, std::uint64_t seed);

// ---- cylinder sets ---------------------------------------------------------

using PointSet = boost::dynamic_bitset<>;
// psi over F^n_pm: 0 = undefined, otherwise a letter 1..q.
using Psi = std::vector<std::uint8_t>;

// The Bernoulli model of (G, mu0) restricted to positive-measure points, the
// translates s B_i for s in F^n_pm and the cylinders
// B_psi = intersection of s B_psi(s).
class CylinderSystem {
 public:
  CylinderSystem(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n, std::vector<Rational> mu0,
                 std::size_t point_cap = 1'000'000);

  const GroupoidPtr &groupoid() const { return g_; }
  const std::vector<PartialBisection> &generators() const { return F_; }
  std::size_t radius() const { return n_; }
  const std::vector<PartialBisection> &ball() const { return ball_; }
  std::size_t ball_size() const { return ball_.size(); }
  std::size_t identity_index() const { return 0; }
  const BernoulliModel &model() const { return model_; }
  std::size_t q() const { return mu0_.size(); }
  const std::vector<Rational> &mu0() const { return mu0_; }
  std::size_t support_size() const { return support_.size(); }
  const std::vector<PointId> &support() const { return support_; }
  const Rational &weight(std::size_t support_index) const { return weights_[support_index]; }

  // s B_i, i in 1..q
  const PointSet &translate(std::size_t s, std::size_t i) const { return translates_[s * q() + (i - 1)]; }
  PointSet cylinder(const Psi &psi) const;
  Rational measure(const PointSet &set) const;
  // Sum over partitions pi of the domain of psi; independent of the model.
  Rational cylinder_measure_closed_form(const Psi &psi) const;

  // Every psi in lexicographic order (the empty psi first).
  std::vector<Psi> all_psis() const;
  std::string psi_label(const Psi &psi) const;

  // Distinct cylinder sets P_{F^n_pm}, each with the first psi producing it.
  struct Projection {
    PointSet set;
    Psi psi;
  };
  const std::vector<Projection> &projections() const { return projections_; }
  std::optional<std::size_t> projection_index(const PointSet &set) const;
  std::size_t projection_of(const Psi &psi) const;

 private:
  GroupoidPtr g_;
  std::vector<PartialBisection> F_;
  std::size_t n_;
  std::vector<Rational> mu0_;
  std::vector<PartialBisection> ball_;
  BernoulliModel model_;
  std::vector<PointId> support_;
  std::vector<Rational> weights_;
  std::vector<PointSet> translates_;
  std::vector<Projection> projections_;
  std::map<PointSet, std::size_t> projection_lookup_;
};

// sigma on the elements of cyl.ball(), read off a candidate for a source
// whose set contains them.
std::vector<PartialPermutation> sigma_on_ball(const CylinderSystem &cyl, const SoficSource &source,
                                              const SoficCandidate &sigma);

// A_psi = intersection of sigma(s) A_psi(s), with A_i = {k : block_of[k] = i-1}.
PointSet approximate_cylinder(const std::vector<PartialPermutation> &sigma, const std::vector<std::uint32_t> &block_of,
                              const Psi &psi);

// ---- span basis ------------------------------------------------------------

struct SpanBasis {
  std::vector<std::size_t> members;  // projection ids forming the basis
  std::size_t ell = 0;
  Rational kappa;
  Rational gamma1, gamma2, gamma3, gamma;
  // coefficients[j]: expansion of projection j in the basis
  std::vector<std::vector<Rational>> coefficients;
};

// Greedy basis over the projections in lexicographic psi order, exact
// rational elimination.
SpanBasis span_basis(const CylinderSystem &cyl);

// ---- lemma checks -----------------------------------------------------------

// |F u F^-1 u {1}| for the generators of cyl.
std::size_t f_pm_size(const CylinderSystem &cyl);

struct BoundReport {
  std::string name;
  double bound = 0.0;
  double worst = 0.0;
  std::string witness;
  double slack_ratio = 0.0;  // worst / bound
  bool pass = true;
  std::size_t checked = 0;
  // Exact forms; for norm bounds both sides are squared.
  Rational bound_exact;
  Rational worst_exact;
  bool squared = false;
};

// max over F0 in F^n_pm and partitions pi of |h(F_{0|pi}) - |F^sigma_{0|pi}|/d| < c1 delta.
// sigma must be in SA(F_n, 4n|F^n_pm|+1, delta, d).
BoundReport verify_lemma_c1(const CylinderSystem &cyl, const std::vector<PartialPermutation> &sigma, const Rational &delta);
// max over psi of |mu(B_psi) - |A_psi|/d| < c2 delta.
BoundReport verify_lemma_c2(const CylinderSystem &cyl, const std::vector<PartialPermutation> &sigma,
                            const std::vector<std::uint32_t> &block_of, const Rational &delta);
// max over projections of ||p_{A_psi} - sum a_i p_{A_psi_i}||_2 < c3 sqrt(delta).
BoundReport verify_lemma_c3(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                            const std::vector<std::uint32_t> &block_of, const Rational &delta);
// Single-psi form of the c3 check, returns ||.||_2^2.
Rational c3_discrepancy_sq(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                           const std::vector<std::uint32_t> &block_of, std::size_t projection);

} // namespace sofic

#endif // SOFIC_PARTITIONS_HPP_
