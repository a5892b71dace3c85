#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "sofic/partitions.hpp"
#include "sofic/suites.hpp"

using namespace sofic;

namespace {

// Direct count of points k in every range with the preimages equal exactly
// along the blocks of pi.
std::size_t oracle_profile_points(const std::vector<PartialPermutation> &F0, const SetPartition &pi) {
  const std::size_t d = F0.front().degree();
  std::size_t count = 0;
  for (std::size_t k = 0; k < d; ++k) {
    bool ok = true;
    std::vector<std::int32_t> pre;
    for (const auto &s : F0) {
      const auto inv = s.inverse();
      if (!inv.defined_at(k)) ok = false;
      pre.push_back(ok ? inv(k) : -1);
    }
    for (std::size_t a = 0; ok && a < F0.size(); ++a) {
      for (std::size_t b = 0; b < F0.size(); ++b) {
        if ((pre[a] == pre[b]) != (pi[a] == pi[b])) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

CylinderSystem trivial_system(std::vector<Rational> mu0) {
  const GroupoidPtr g = cyclic_group_groupoid(1);
  return CylinderSystem(g, {PartialBisection::identity(g)}, 1, std::move(mu0));
}

} // namespace

TEST_CASE("lemma constants") {
  CHECK(lemma_c1(3, 1) == 14256);
  CHECK(lemma_c1(2, 1) == 6336);
  CHECK(lemma_c2(2, 1) == 25344);
  CHECK(lemma_block_count(3) == 24);
  CHECK(bell_number(2) == 2);
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(8) == 4140);
  // (1 + (3 + kappa ell) Bell(ell) N_ell) c2
  CHECK(lemma_c3(2, 1, 2, Rational(1)) == Rational(81 * 25344));
  CHECK(lemma_c3(3, 2, 3, Rational(2)) == Rational((1 + 9 * 5 * 24) * lemma_c2(3, 2)));
  for (std::size_t k = 0; k <= 6; ++k) {
    std::size_t loops = 0;
    for_each_set_partition(k, [&](const SetPartition &) { ++loops; });
    CHECK(BigInt(loops) == bell_number(k));
  }
}

TEST_CASE("profiles on R_2") {
  const GroupoidPtr g = suites::r2();
  const PartialBisection id = PartialBisection::identity(g), swap = suites::r2_generators(g)[0];
  // arrows differ everywhere, so only the discrete partition has mass
  CHECK(profile_measure({id, swap}, {0, 0}) == 0);
  CHECK(profile_measure({id, swap}, {0, 1}) == 1);
  CHECK(profile_measure({swap}, {0}) == 1);
  CHECK(profile_measure({id, id}, {0, 0}) == 1);
  CHECK(profile_measure({id, id}, {0, 1}) == 0);
}

TEST_CASE("profiles partition the common range") {
  const GroupoidPtr g = transitive_groupoid(3);
  const auto all = all_partial_bisections(g);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.below(3);
    std::vector<PartialBisection> F0;
    for (std::size_t i = 0; i < k; ++i) F0.push_back(all[rng.below(all.size())]);
    std::vector<UnitId> common;
    for (UnitId u = 0; u < g->unit_count(); ++u) {
      bool in = true;
      for (const auto &s : F0) {
        const auto r = s.range_units();
        in = in && std::find(r.begin(), r.end(), u) != r.end();
      }
      if (in) common.push_back(u);
    }
    Rational total;
    for_each_set_partition(k, [&](const SetPartition &pi) { total += profile_measure(F0, pi); });
    REQUIRE(total == unit_measure(*g, common));
  }
}

TEST_CASE("point profiles") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.below(7), k = 1 + rng.below(3);
    std::vector<PartialPermutation> F0;
    for (std::size_t i = 0; i < k; ++i) F0.push_back(testing_helpers::random_pperm(d, rng));
    for_each_set_partition(k, [&](const SetPartition &pi) {
      REQUIRE(profile_points(F0, pi).size() == oracle_profile_points(F0, pi));
      REQUIRE(profile_fraction(F0, pi) ==
              Rational(static_cast<long long>(oracle_profile_points(F0, pi)), static_cast<long long>(d)));
    });
  }
  const auto s = PartialPermutation::parse("4:[1->1, 2->3, 3->2, 4->4]");
  CHECK(profile_fraction({PartialPermutation::identity(4), s}, {0, 0}) == Rational(1, 2));
}

TEST_CASE("augmented generators") {
  const GroupoidPtr triv = cyclic_group_groupoid(1);
  const auto F1 = augment_generators(triv, {PartialBisection::identity(triv)}, 1);
  CHECK(F1.size() <= 2);
  CHECK(F1.front() == PartialBisection::identity(triv));

  const GroupoidPtr g = suites::r2();
  const auto F = suites::r2_generators(g);
  const auto Fn = augment_generators(g, F, 1);
  CHECK(Fn.size() >= F.size());
  for (std::size_t i = 0; i < F.size(); ++i) CHECK(Fn[i] == F[i]);
  for (std::size_t i = F.size(); i < Fn.size(); ++i) {
    CHECK(Fn[i].is_projection());
    CHECK(compose(Fn[i], Fn[i]) == Fn[i]);
    CHECK(Fn[i].inverse() == Fn[i]);
  }
  // |F_pm| = 2: subsets of sizes 1, 1, 2
  CHECK(Fn.size() <= F.size() + 1 + 1 + 2);
}

TEST_CASE("random partitions") {
  const auto one = random_partition(50, {Rational(1)}, 3);
  CHECK(std::all_of(one.begin(), one.end(), [](std::uint32_t b) { return b == 0; }));
  CHECK(random_partition(40, {Rational(1, 2), Rational(1, 2)}, 7) == random_partition(40, {Rational(1, 2), Rational(1, 2)}, 7));
  CHECK(random_partition(40, {Rational(1, 2), Rational(1, 2)}, 7) != random_partition(40, {Rational(1, 2), Rational(1, 2)}, 8));
  const auto degenerate = random_partition(30, {Rational(1), Rational(0)}, 4);
  CHECK(std::count(degenerate.begin(), degenerate.end(), 1u) == 0);

  // block sizes are Binomial(d, 1/3)
  const std::size_t d = 12, seeds = 10000;
  double sum = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto b = random_partition(d, {Rational(1, 3), Rational(2, 3)}, s);
    sum += static_cast<double>(std::count(b.begin(), b.end(), 0u));
  }
  CHECK(sum / seeds == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("span basis") {
  const auto two = span_basis(trivial_system({Rational(1, 2), Rational(1, 2)}));
  CHECK(two.ell == 2);
  CHECK(two.kappa == 1);
  CHECK(two.gamma == 1);
  const auto one = span_basis(trivial_system({Rational(1)}));
  CHECK(one.ell == 1);
  CHECK(one.kappa == 1);
  CHECK(one.gamma == 1);

  const GroupoidPtr z2 = cyclic_group_groupoid(2);
  const CylinderSystem cyl(z2, greedy_generators(z2), 1, {Rational(1, 2), Rational(1, 2)});
  const auto b = span_basis(cyl);
  CHECK(b.ell >= 1);
  CHECK(b.ell <= 4);
  CHECK(b.kappa >= 1);
  CHECK(b.gamma <= 1);
  CHECK(b.gamma > 0);
  CHECK(b.coefficients.size() == cyl.projections().size());
  // each projection equals its expansion in the model
  for (std::size_t j = 0; j < cyl.projections().size(); ++j) {
    for (std::size_t x = 0; x < cyl.support_size(); ++x) {
      Rational v;
      for (std::size_t i = 0; i < b.ell; ++i) {
        if (cyl.projections()[b.members[i]].set.test(x)) v += b.coefficients[j][i];
      }
      REQUIRE(v == (cyl.projections()[j].set.test(x) ? 1 : 0));
    }
  }
}

TEST_CASE("cylinder measures") {
  const GroupoidPtr g = suites::r2();
  for (const auto &mu0 : {std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                          std::vector<Rational>{Rational(1, 3), Rational(1, 6), Rational(1, 2)}}) {
    const CylinderSystem cyl(g, suites::r2_generators(g), 1, mu0);
    Rational full;
    for (const Psi &psi : cyl.all_psis()) {
      REQUIRE(cyl.measure(cyl.cylinder(psi)) == cyl.cylinder_measure_closed_form(psi));
      if (std::none_of(psi.begin(), psi.end(), [](std::uint8_t c) { return c == 0; })) full += cyl.measure(cyl.cylinder(psi));
    }
    CHECK(full == 1);
  }
}

TEST_CASE("exact instances have zero discrepancy") {
  const CylinderSystem cyl = trivial_system({Rational(1, 2), Rational(1, 2)});
  const SpanBasis basis = span_basis(cyl);
  const std::size_t d = 8;
  const std::vector<PartialPermutation> sigma{PartialPermutation::identity(d)};
  const std::vector<std::uint32_t> block_of{0, 1, 0, 1, 1, 0, 1, 0};
  const auto c1 = verify_lemma_c1(cyl, sigma, Rational(1, 10));
  CHECK(c1.pass);
  CHECK(c1.worst_exact == 0);
  const auto c2 = verify_lemma_c2(cyl, sigma, block_of, Rational(1, 10));
  CHECK(c2.pass);
  CHECK(c2.worst_exact == 0);
  const auto c3 = verify_lemma_c3(cyl, basis, sigma, block_of, Rational(1, 10));
  CHECK(c3.pass);
  CHECK(c3.worst_exact == 0);

  // basis elements expand to themselves whatever the partition
  Rng rng(2);
  const auto random_blocks = random_partition(d, cyl.mu0(), 11);
  for (std::size_t m : basis.members) CHECK(c3_discrepancy_sq(cyl, basis, sigma, random_blocks, m) == 0);
}

TEST_CASE("approximate cylinders follow the blocks") {
  const std::size_t d = 6;
  const std::vector<std::uint32_t> block_of{1, 0, 0, 1, 0, 1};
  const auto A1 = approximate_cylinder({PartialPermutation::identity(d)}, block_of, {1});
  const auto A2 = approximate_cylinder({PartialPermutation::identity(d)}, block_of, {2});
  for (std::size_t k = 0; k < d; ++k) {
    CHECK(A1.test(k) == (block_of[k] == 0));
    CHECK(A2.test(k) == (block_of[k] == 1));
  }
}

TEST_CASE("R_2 members satisfy the three bounds") {
  suites::LemmaSweepConfig cfg;
  cfg.groupoid = suites::r2();
  cfg.F = suites::r2_generators(cfg.groupoid);
  cfg.degrees = {2, 4};
  cfg.partitions = 10;
  cfg.ha = false;
  const auto out = suites::lemma_sweep(cfg);
  CHECK(out.members_per_degree.size() == 2);
  CHECK(out.members_per_degree[0] >= 1);
  CHECK(out.lemmas_pass());
  CHECK(out.errors == 0);
}
