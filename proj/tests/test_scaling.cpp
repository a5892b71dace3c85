#include <doctest.h>

#include "helpers.hpp"
#include "sofic/representation.hpp"
#include "sofic/scaling.hpp"
#include "sofic/suites.hpp"

using namespace sofic;

namespace {

struct TrivialCorner {
  CornerData cd;
  std::vector<PartialBisection> F;
  SourcePtr source;
};

// p = {0} in R_2: the corner is the trivial group on one unit
TrivialCorner r2_trivial_corner() {
  TrivialCorner t{make_corner_data(suites::r2(), {0}), {}, nullptr};
  t.F = {PartialBisection::identity(t.cd.corner.groupoid)};
  t.source = SoficSource::from_groupoid(t.cd.corner.groupoid, t.F, 1, 1);
  return t;
}

SoficCandidate on_corner(const SoficSource &src, const PartialPermutation &value) {
  SoficCandidate sigma{value.degree(), {}};
  for (std::size_t b = 0; b < src.base_count(); ++b) {
    sigma.values.push_back(src.bisection(b).empty() ? PartialPermutation(value.degree()) : value);
  }
  return sigma;
}

} // namespace

TEST_CASE("corner data") {
  const GroupoidPtr g = transitive_groupoid(4);
  const CornerData cd = make_corner_data(g, {0, 2});
  CHECK(cd.N == 4);
  CHECK(cd.k == 2);
  CHECK(cd.S.size() == 2);
  CHECK(cd.corner.ambient_measure == Rational(1, 2));
  CHECK_NOTHROW(validate_corner_data(cd));
  const CornerData whole = make_corner_data(g, {0, 1, 2, 3});
  CHECK(whole.k == 0);
  CHECK(whole.S.empty());
}

TEST_CASE("expansion with k = 0 is the identity") {
  const GroupoidPtr g = suites::r2();
  const CornerData cd = make_corner_data(g, {0, 1});
  const GroupoidPtr c = cd.corner.groupoid;
  const SourcePtr src = SoficSource::from_groupoid(c, greedy_generators(c), 1, 2);
  const Representation rep = regular_representation(c, 8);
  SoficCandidate sigma{8, {}};
  for (std::size_t b = 0; b < src->base_count(); ++b) sigma.values.push_back(rep(src->bisection(b)));
  const ScalingResult up = expand_sigma(src, sigma, cd, 1, Rational(1, 10));
  CHECK(up.degree == 8);
  CHECK(up.report.is_member);
  for (std::size_t b = 0; b < src->base_count(); ++b) {
    const auto idx = up.source->find(cd.corner.embed(src->bisection(b)));
    REQUIRE(idx);
    CHECK(up.sigma.values[*idx] == sigma.values[b]);
  }
}

TEST_CASE("expansion from the trivial corner of R_2") {
  const TrivialCorner t = r2_trivial_corner();
  for (std::size_t d : {4, 12, 20}) {
    const ScalingResult up = expand_sigma(t.source, on_corner(*t.source, PartialPermutation::identity(d)), t.cd, 1, Rational(1, 10));
    CHECK(up.degree == 2 * d);
    CHECK(up.report.is_member);
    CHECK(up.report.worst_multiplicativity_gap == 0);
    CHECK(up.report.worst_trace_gap == 0);
    REQUIRE(up.blocks.size() == 1);
    CHECK(up.blocks[0].size() == d);
  }
}

TEST_CASE("distinct gamma choices give distinct expansions") {
  const TrivialCorner t = r2_trivial_corner();
  const SoficCandidate sigma = on_corner(*t.source, PartialPermutation::identity(10));
  ExpansionOptions a, b;
  a.gamma_seed = 1;
  b.gamma_seed = 2;
  const ScalingResult x = expand_sigma(t.source, sigma, t.cd, 1, Rational(1, 10), a);
  const ScalingResult y = expand_sigma(t.source, sigma, t.cd, 1, Rational(1, 10), b);
  const ScalingResult z = expand_sigma(t.source, sigma, t.cd, 1, Rational(1, 10), a);
  CHECK(x.report.is_member);
  CHECK(y.report.is_member);
  CHECK(x.sigma.values != y.sigma.values);
  CHECK(x.sigma.values == z.sigma.values);
}

TEST_CASE("restriction of an exact representation is exact") {
  const GroupoidPtr g = suites::r2();
  const CornerData cd = make_corner_data(g, {0});
  const std::vector<PartialBisection> F{PartialBisection::identity(cd.corner.groupoid)};
  const SourcePtr src = SoficSource::from_groupoid(g, ambient_generators(cd, F), 1, 2);
  for (std::size_t d : {24, 40}) {
    const Representation rep = regular_representation(g, d);
    SoficCandidate sigma{d, {}};
    for (std::size_t b = 0; b < src->base_count(); ++b) sigma.values.push_back(rep(src->bisection(b)));
    const ScalingResult down = restrict_sigma(src, sigma, cd, F, 1, Rational(1, 10));
    CHECK(down.degree == d / 2);
    CHECK(down.report.is_member);
    CHECK(down.report.worst_multiplicativity_gap == 0);
    CHECK(down.report.worst_trace_gap == 0);
    CHECK(down.delta == 20 * Rational(1, 10) / Rational(1, 2));
  }
  // d' must exceed 1/delta
  const Representation small = regular_representation(g, 8);
  SoficCandidate sigma{8, {}};
  for (std::size_t b = 0; b < src->base_count(); ++b) sigma.values.push_back(small(src->bisection(b)));
  CHECK_THROWS(restrict_sigma(src, sigma, cd, F, 1, Rational(1, 10)));
}

TEST_CASE("round trip through the corner") {
  suites::ScalingSweepConfig cfg;
  cfg.instances = 12;
  cfg.seed = 3;
  const auto out = suites::scaling_sweep(cfg);
  CHECK(out.errors == 0);
  CHECK(out.pass());
  cfg.threads = 1;
  const auto serial = suites::scaling_sweep(cfg);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    CHECK(serial.instances[i].degree == out.instances[i].degree);
    CHECK(serial.instances[i].roundtrip_gap == out.instances[i].roundtrip_gap);
  }
}

TEST_CASE("scaling values") {
  CHECK(scaling_value(Rational(0), Rational(1, 2)) == Rational(1, 2));
  CHECK(scaling_inverse(Rational(3, 4), Rational(1, 2)) == Rational(1, 2));
  CHECK(scaling_value(Rational(5, 7), Rational(1)) == Rational(5, 7));
  CHECK(scaling_value(0.25, 0.5) == doctest::Approx(0.625));
  CHECK_THROWS(scaling_value(Rational(1), Rational(0)));
  CHECK_THROWS(scaling_inverse(Rational(1), Rational(0)));
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const Rational s(static_cast<long long>(rng.below(200)) - 100, 1 + static_cast<long long>(rng.below(50)));
    const Rational h(1 + static_cast<long long>(rng.below(30)), 31);
    REQUIRE(scaling_inverse(scaling_value(s, h), h) == s);
    REQUIRE(scaling_value(scaling_inverse(s, h), h) == s);
  }
}
