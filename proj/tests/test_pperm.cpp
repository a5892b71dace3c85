#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "sofic/pperm.hpp"

using namespace sofic;
using testing_helpers::random_permutation;
using testing_helpers::random_pperm;

namespace {

PartialPermutation pp(const char *text) { return PartialPermutation::parse(text); }

Rational tr(const PartialPermutation &s) { return s.trace(); }

} // namespace

TEST_CASE("compose applies the right factor first") {
  CHECK(compose(pp("2:[1->2]"), pp("2:[2->1]")) == pp("2:[2->2]"));
  const auto s = pp("4:[1->3, 2->4, 4->1]");
  CHECK(compose(PartialPermutation::identity(4), s) == s);
  CHECK(compose(s, PartialPermutation::identity(4)) == s);
  CHECK(compose(pp("2:[1->1]"), pp("2:[2->2]")) == PartialPermutation(2));
  CHECK_THROWS_AS(compose(pp("2:[1->2]"), pp("3:[1->2]")), DegreeMismatch);
}

TEST_CASE("inverse") {
  CHECK(pp("2:[1->2]").inverse() == pp("2:[2->1]"));
  CHECK(PartialPermutation::identity(5).inverse() == PartialPermutation::identity(5));
  CHECK(PartialPermutation(3).inverse() == PartialPermutation(3));
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_pperm(9, rng);
    CHECK(s.inverse().inverse() == s);
    CHECK(compose(s, s.inverse()) == PartialPermutation::projection(9, [&] {
            std::vector<std::size_t> r;
            for (std::size_t x = 0; x < 9; ++x) {
              if (s.range()[x]) r.push_back(x);
            }
            return r;
          }()));
    CHECK(tr(compose(s, s.inverse())) == Rational(static_cast<long long>(s.rank()), 9));
  }
}

TEST_CASE("trace") {
  CHECK(tr(PartialPermutation::identity(7)) == 1);
  CHECK(tr(pp("2:[1->2, 2->1]")) == 0);
  CHECK(tr(PartialPermutation::projection(4, {0})) == Rational(1, 4));
}

TEST_CASE("distances") {
  const auto id2 = PartialPermutation::identity(2), swap = pp("2:[1->2, 2->1]");
  CHECK(distances(swap, swap).uniform == 0);
  CHECK(distances(swap, swap).two_norm_sq == 0);
  CHECK(distances(swap, id2).uniform == 1);
  CHECK(distances(swap, id2).two_norm_sq == 2);
  for (std::size_t k = 0; k <= 6; ++k) {
    std::vector<std::size_t> pts;
    for (std::size_t x = 0; x < k; ++x) pts.push_back(x);
    const auto dd = distances(PartialPermutation::projection(6, pts), PartialPermutation::identity(6));
    CHECK(dd.uniform == Rational(static_cast<long long>(6 - k), 6));
    CHECK(dd.two_norm_sq == Rational(static_cast<long long>(6 - k), 6));
  }
  CHECK_THROWS_AS(distances(id2, PartialPermutation::identity(3)), DegreeMismatch);
}

TEST_CASE("distance identity and norm comparison on random pairs") {
  Rng rng(2024);
  for (std::size_t d : {4, 8, 16, 32}) {
    for (int i = 0; i < 2000; ++i) {
      const auto s = random_pperm(d, rng), t = random_pperm(d, rng);
      const Distances dd = distances(s, t);
      const Rational rhs = tr(compose(s.inverse(), s)) + tr(compose(t.inverse(), t)) -
                           tr(compose(compose(s.inverse(), s), compose(t.inverse(), t))) - tr(compose(s, t.inverse()));
      REQUIRE(dd.uniform == rhs);
      REQUIRE(dd.two_norm_sq >= dd.uniform);
    }
  }
}

TEST_CASE("two-norm on total permutations is twice the uniform distance") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_permutation(10, rng), t = random_permutation(10, rng);
    const Distances dd = distances(s, t);
    CHECK(dd.two_norm_sq == 2 * dd.uniform);
  }
}

TEST_CASE("uniform distance is a metric") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_pperm(12, rng), b = random_pperm(12, rng), c = random_pperm(12, rng);
    const Rational ab = distances(a, b).uniform, bc = distances(b, c).uniform, ac = distances(a, c).uniform;
    REQUIRE(ac <= ab + bc);
    REQUIRE(ab == distances(b, a).uniform);
    REQUIRE((ab == 0) == (a == b));
  }
}

TEST_CASE("orthogonal sums") {
  CHECK(orthogonal_sum({pp("4:[1->2]"), pp("4:[3->4]")}) == pp("4:[1->2, 3->4]"));
  const auto s = pp("5:[1->3, 4->2]");
  CHECK(orthogonal_sum({s, PartialPermutation(5)}) == s);
  CHECK_THROWS_AS(orthogonal_sum({pp("3:[1->2]"), pp("3:[1->3]")}), OverlapError);
  CHECK_THROWS_AS(orthogonal_sum({pp("3:[1->2]"), pp("3:[3->2]")}), OverlapError);
  // corrected sum drops the clashing part of the second summand only
  CHECK(corrected_sum(pp("3:[1->2]"), pp("3:[1->3, 3->1]")) == pp("3:[1->2, 3->1]"));
  CHECK(corrected_sum(pp("4:[1->2]"), pp("4:[3->4]")) == orthogonal_sum({pp("4:[1->2]"), pp("4:[3->4]")}));
}

TEST_CASE("exhaustive generation of [[d]] matches the summation formula") {
  for (unsigned d = 1; d <= 6; ++d) {
    std::set<PartialPermutation> seen;
    std::size_t calls = 0;
    for_each_partial_permutation(d, [&](const PartialPermutation &p) {
      ++calls;
      seen.insert(p);
    });
    // independent oracle: sum_k C(d,k)^2 k!
    unsigned long long expected = 0;
    for (unsigned k = 0; k <= d; ++k) {
      unsigned long long c = 1, f = 1;
      for (unsigned i = 1; i <= k; ++i) {
        c = c * (d - k + i) / i;
        f *= i;
      }
      expected += c * c * f;
    }
    CHECK(calls == expected);
    CHECK(seen.size() == expected);
    CHECK(partial_permutation_count(d) == BigInt(expected));
  }
  CHECK(partial_permutation_count(3) == 34);
  CHECK(partial_permutation_count(4) == 209);
}

TEST_CASE("text form round trip") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_pperm(7, rng);
    CHECK(PartialPermutation::parse(s.to_string()) == s);
  }
  CHECK(pp("3:[]") == PartialPermutation(3));
  CHECK_THROWS(pp("3:[1->4]"));
  CHECK_THROWS(pp("3:[1->2, 2->2]"));
}

TEST_CASE("conjugation preserves distances") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_pperm(8, rng), t = random_pperm(8, rng), pi = random_permutation(8, rng);
    CHECK(distances(conjugate(s, pi), conjugate(t, pi)).uniform == distances(s, t).uniform);
    CHECK(tr(conjugate(s, pi)) == tr(s));
  }
}
