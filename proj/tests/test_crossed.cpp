#include <doctest.h>

#include <memory>

#include "helpers.hpp"
#include "sofic/crossed.hpp"
#include "sofic/suites.hpp"

using namespace sofic;

namespace {

struct Setup {
  std::shared_ptr<const CylinderSystem> cyl;
  std::unique_ptr<HASystem> ha;
  SpanBasis basis;
};

Setup r2_setup(std::size_t sum_bound = 2) {
  const GroupoidPtr g = suites::r2();
  Setup s;
  s.cyl = std::make_shared<const CylinderSystem>(g, suites::r2_generators(g), 1,
                                                 std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  s.ha = std::make_unique<HASystem>(s.cyl, sum_bound);
  s.basis = span_basis(*s.cyl);
  return s;
}

} // namespace

TEST_CASE("HA system structure") {
  const Setup s = r2_setup();
  const HASystem &ha = *s.ha;
  CHECK(ha.base_count() == s.cyl->projections().size());
  CHECK(ha.measure(ha.full()) == 1);
  CHECK(ha.measure(ha.empty()) == 0);
  Rational blocks;
  for (std::size_t i = 1; i <= s.cyl->q(); ++i) blocks += ha.measure(ha.partition_element(i));
  CHECK(blocks == 1);
  for (std::size_t i = 0; i < ha.size(); ++i) {
    for (std::size_t j = 0; j < ha.size(); ++j) {
      const std::int64_t m = ha.intersection(i, j);
      if (m >= 0) REQUIRE(ha.set(static_cast<std::size_t>(m)) == (ha.set(i) & ha.set(j)));
    }
  }
}

TEST_CASE("exact instances are HA members with zero gaps") {
  const Setup s = r2_setup();
  for (std::size_t d : {16, 32}) {
    const ExactInstance ex = exact_instance(*s.ha, d);
    const HAReport r = verify_ha(*s.ha, ex.candidate, Rational(1, 1000000));
    CHECK(r.is_member);
    CHECK(r.trace_gap == 0);
    CHECK(r.equivariance_gap == 0);
    CHECK(r.multiplicativity_gap == 0);
    CHECK(r.unit_gap == 0);
    const ApproxSumSweep sums = approx_sum_sweep(*s.ha, ex.candidate, Rational(1, 100));
    CHECK(sums.pass);
    CHECK(sums.worst_gap == 0);
  }
}

TEST_CASE("corrupting phi at one point is detected") {
  const Setup s = r2_setup();
  const std::size_t d = 16;
  ExactInstance ex = exact_instance(*s.ha, d);
  const std::size_t b1 = s.ha->partition_element(1);
  PointSet support = ex.candidate.phi[b1].domain();
  support.flip(0);
  std::vector<std::size_t> pts;
  for (std::size_t k = 0; k < d; ++k) {
    if (support.test(k)) pts.push_back(k);
  }
  ex.candidate.phi[b1] = PartialPermutation::projection(d, pts);
  const HAReport r = verify_ha(*s.ha, ex.candidate, Rational(1, 1000000));
  CHECK_FALSE(r.is_member);
  const Rational worst = std::max({r.trace_gap, r.equivariance_gap, r.multiplicativity_gap, r.unit_gap});
  CHECK(worst >= Rational(1, static_cast<long long>(d)));
  // a tolerance above the corruption accepts it
  CHECK(verify_ha(*s.ha, ex.candidate, Rational(1)).is_member);
}

TEST_CASE("phi construction on exact data") {
  const Setup s = r2_setup();
  const Rational delta(1, 100);
  const ExactInstance ex = exact_instance(*s.ha, 16);
  const Phi0 phi0 = build_phi0(*s.cyl, s.basis, ex.sigma, ex.block_of, delta);
  CHECK(phi0.report.pass());
  CHECK(phi0.report.trace_gap == 0);
  CHECK(phi0.report.equivariance_gap_sq == 0);
  const PhiResult phi = build_phi(*s.ha, s.basis, phi0, ex.sigma, delta);
  CHECK(phi.v_fraction == 1);
  CHECK(phi.v_bound_ok);
  CHECK(phi.report.is_member);
  CHECK(approx_sum_sweep(*s.ha, phi.candidate, delta).worst_gap < 146 * delta);
}

TEST_CASE("phi construction on random partitions") {
  const Setup s = r2_setup();
  const Rational delta(1, 10);
  const ExactInstance ex = exact_instance(*s.ha, 16);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto blocks = random_partition(16, s.cyl->mu0(), seed);
    const Phi0 phi0 = build_phi0(*s.cyl, s.basis, ex.sigma, blocks, delta);
    CHECK(phi0.report.pass());
    const PhiResult phi = build_phi(*s.ha, s.basis, phi0, ex.sigma, delta);
    CHECK(phi.v_bound_ok);
    CHECK(phi.report.is_member);
    const auto sums = approx_sum_sweep(*s.ha, phi.candidate, delta);
    CHECK(sums.pass);
    CHECK(sums.worst_gap < 146 * delta);
  }
}

TEST_CASE("HA counts over a one-point Bernoulli space") {
  const GroupoidPtr g = cyclic_group_groupoid(1);
  const std::vector<PartialBisection> F{PartialBisection::identity(g)};
  auto cyl = std::make_shared<const CylinderSystem>(g, F, 1, std::vector<Rational>{Rational(1)});
  const HASystem ha(cyl, 1);
  for (std::size_t d : {1, 2, 3}) {
    SAParams p = make_params(SoficSource::from_groupoid(g, F, 1, 1), Rational(1, static_cast<long long>(2 * d)), d);
    const HAStatistic st = ha_statistic(ha, p, {});
    CHECK(st.count == st.sa_count);
    CHECK(st.bound_holds);
    CHECK(st.count >= 1);
  }
}

TEST_CASE("HA counts respect the |Q|^d bound") {
  const Setup s = r2_setup(1);
  const GroupoidPtr g = s.cyl->groupoid();
  std::vector<PartialBisection> F = s.cyl->ball();
  const SAParams p = make_params(SoficSource::from_groupoid(g, F, 1, 2), Rational(1, 3), 2);
  const HAStatistic st = ha_statistic(*s.ha, p, {});
  CHECK(st.bound_holds);
  CHECK(BigInt(st.count) <= st.bound);
}
