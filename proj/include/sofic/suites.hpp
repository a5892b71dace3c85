#ifndef SOFIC_SUITES_HPP_
#define SOFIC_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sofic/crossed.hpp"
#include "sofic/partitions.hpp"
#include "sofic/scaling.hpp"

// Certification sweeps shared by `sofic verify` and the acceptance test.
// Instances run in parallel; results are gathered in instance order, so the
// outcome does not depend on the thread count.
namespace sofic::suites {

struct LemmaSweepConfig {
  GroupoidPtr groupoid;
  std::vector<PartialBisection> F;
  std::size_t n = 1;
  Rational delta = Rational(1, 10);
  std::vector<std::size_t> degrees{2, 4, 6};
  std::vector<Rational> mu0{Rational(1, 2), Rational(1, 2)};
  std::size_t partitions = 100;
  std::uint64_t seed = 1;
  bool ha = true;  // also run the phi_0 / phi construction
  int threads = 0;
  std::uint64_t cap = 100'000'000;
};

struct InstanceOutcome {
  std::size_t degree = 0;
  std::size_t member = 0;
  std::size_t partition = 0;
  BoundReport c2, c3;
  bool phi0_ok = true, v_bound_ok = true, ha_ok = true, sum_ok = true;
  std::string error;  // construction failure, if any
};

struct LemmaSweepOutcome {
  std::vector<std::size_t> members_per_degree;
  std::vector<BoundReport> c1;  // one per member
  std::vector<InstanceOutcome> instances;
  std::size_t c1_violations = 0, c2_violations = 0, c3_violations = 0;
  std::size_t phi0_violations = 0, v_bound_violations = 0, ha_violations = 0, sum_violations = 0, errors = 0;
  // worst slack ratios
  double c1_worst = 0, c2_worst = 0, c3_worst = 0;
  std::string c1_witness, c2_witness, c3_witness;
  std::size_t sa_radius = 0;
  std::size_t f_n_size = 0;

  bool lemmas_pass() const { return c1_violations + c2_violations + c3_violations == 0; }
  bool ha_pass() const { return phi0_violations + v_bound_violations + ha_violations + sum_violations + errors == 0; }
};

// Enumerates SA(F_n, 4n|F_pm^n|+1, delta, d) over the groupoid for each
// degree, then checks c1 per member and c2, c3 (and the HA construction)
// per (member, random partition). Partition k uses seed splitmix64(seed + k).
LemmaSweepOutcome lemma_sweep(const LemmaSweepConfig &cfg);

struct ScalingSweepConfig {
  Rational delta = Rational(1, 10);
  std::size_t instances = 50;
  std::size_t n = 1;
  std::size_t min_degree = 12, max_degree = 40;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct ScalingInstance {
  std::size_t degree = 0;
  std::size_t removed = 0;
  bool expand_ok = false, restrict_ok = false, roundtrip_ok = false;
  Rational expand_delta, restrict_delta;
  Rational roundtrip_gap;  // uniform distance back to the input
  std::string error;
};

struct ScalingSweepOutcome {
  std::vector<ScalingInstance> instances;
  std::size_t expand_violations = 0, restrict_violations = 0, roundtrip_violations = 0, errors = 0;
  Rational worst_roundtrip_fraction;  // gap / (3 * 20 delta / h)
  bool pass() const { return expand_violations + restrict_violations + roundtrip_violations + errors == 0; }
};

// The trivial corner p = {0} of R_2 (N = 2, k = 1). Instance i draws a
// degree in [min, max] and sigma(1) = the identity minus r < delta d / 2
// points, all from Rng::stream(seed, i); expands with a shuffled gamma, then
// restricts back.
ScalingSweepOutcome scaling_sweep(const ScalingSweepConfig &cfg);

// The R_2 instance used by the sweeps: F = {swap}.
GroupoidPtr r2();
std::vector<PartialBisection> r2_generators(const GroupoidPtr &g);

} // namespace sofic::suites

#endif // SOFIC_SUITES_HPP_
