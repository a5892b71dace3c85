#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "sofic/wordball.hpp"

using namespace sofic;

namespace {

// Independent free-product reducer: a stack of (factor, exponent) syllables.
Word oracle_reduce(const std::vector<std::size_t> &orders, const Word &w) {
  std::vector<std::pair<std::size_t, long long>> stack;
  for (Letter l : w) {
    const std::size_t f = static_cast<std::size_t>(l > 0 ? l : -l);
    long long e = l > 0 ? 1 : -1;
    if (!stack.empty() && stack.back().first == f) {
      e += stack.back().second;
      stack.pop_back();
    }
    const std::size_t m = orders[f - 1];
    if (m) e = ((e % static_cast<long long>(m)) + static_cast<long long>(m)) % static_cast<long long>(m);
    if (e != 0) stack.emplace_back(f, e);
  }
  Word out;
  for (auto [f, e] : stack) {
    const Letter l = e > 0 ? static_cast<Letter>(f) : -static_cast<Letter>(f);
    for (long long i = 0; i < (e > 0 ? e : -e); ++i) out.push_back(l);
  }
  return out;
}

std::set<Word> oracle_ball(const std::vector<std::size_t> &orders, std::size_t n) {
  std::vector<Letter> letters{};
  for (std::size_t f = 1; f <= orders.size(); ++f) {
    letters.push_back(static_cast<Letter>(f));
    letters.push_back(-static_cast<Letter>(f));
  }
  std::set<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Word> next;
    for (const Word &w : frontier) {
      for (Letter l : letters) {
        Word v = w;
        v.push_back(l);
        next.push_back(v);
        out.insert(oracle_reduce(orders, v));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

} // namespace

TEST_CASE("balls in cyclic groups") {
  const SystemPtr z = parse_system("z");
  const Ball b = ball(z, {1}, 2);
  CHECK(b.size() == 5);
  CHECK(b.elements.front().empty());
  for (std::size_t n = 0; n <= 10; ++n) CHECK(ball(z, {1}, n).size() == 2 * n + 1);
  CHECK(ball(parse_system("zmod(2)"), {1}, 3).size() == 2);
  CHECK(ball(parse_system("zmod(1)"), {1}, 3).size() == 1);
}

TEST_CASE("free product ball matches exhaustive normal forms") {
  const SystemPtr sys = parse_system("freeprod(zmod(2), zmod(3))");
  for (std::size_t n = 0; n <= 4; ++n) {
    const Ball b = ball(sys, {1, 2}, n);
    const std::set<Word> got(b.elements.begin(), b.elements.end());
    CHECK(got == oracle_ball({2, 3}, n));
  }
  CHECK(ball(sys, {1, 2}, 2).size() == 8);
  const SystemPtr mixed = parse_system("freeprod(z, zmod(4), zmod(2))");
  const Ball mb = ball(mixed, {1, 2, 3}, 3);
  CHECK(std::set<Word>(mb.elements.begin(), mb.elements.end()) == oracle_ball({0, 4, 2}, 3));
}

TEST_CASE("reduction") {
  const SystemPtr z2 = parse_system("zmod(2)"), z = parse_system("z"), fp = parse_system("freeprod(zmod(2),zmod(3))");
  CHECK(reduce_product(*z2, {1}, {1}).empty());
  CHECK(reduce_product(*z, {1, 1}, {-1}) == Word{1});
  CHECK(reduce_product(*fp, {1, 2}, {2, 2}) == Word{1});
  CHECK_THROWS_AS(fp->reduce({3}), UnknownGenerator);

  Rng rng(9);
  const std::vector<Letter> letters{1, -1, 2, -2};
  for (int i = 0; i < 500; ++i) {
    Word w;
    const std::size_t len = rng.below(12);
    for (std::size_t k = 0; k < len; ++k) w.push_back(letters[rng.below(4)]);
    const Word r = fp->reduce(w);
    REQUIRE(r == oracle_reduce({2, 3}, w));
    REQUIRE(fp->reduce(r) == r);
    Word inv;
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(fp->inverse(*it));
    Word ww = w;
    ww.insert(ww.end(), inv.begin(), inv.end());
    REQUIRE(fp->reduce(ww).empty());
    // no two consecutive syllables from the same factor
    std::vector<Letter> factors;
    for (Letter l : r) {
      const Letter f = l > 0 ? l : -l;
      if (factors.empty() || factors.back() != f) factors.push_back(f);
    }
    for (std::size_t k = 1; k < factors.size(); ++k) REQUIRE(factors[k] != factors[k - 1]);
  }
}

TEST_CASE("trace oracle") {
  const SystemPtr fp = parse_system("freeprod(zmod(2),zmod(3))");
  CHECK(fp->tau({}) == 1);
  CHECK(parse_system("zmod(2)")->tau({1}) == 0);
  CHECK(fp->tau(fp->reduce({1, 2})) == 0);
  CHECK(fp->tau(fp->reduce({2, 2, 2})) == 1);
}

TEST_CASE("ball closure and multiplication table") {
  const SystemPtr fp = parse_system("freeprod(zmod(2), z)");
  const std::size_t n = 4;
  const Ball b = ball(fp, {1, 2}, n);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Word prod = reduce_product(*fp, b.elements[i], b.elements[j]);
      const auto k = b.product(i, j);
      if (k) REQUIRE(b.elements[*k] == prod);
      if (b.word_length[i] + b.word_length[j] <= n) REQUIRE(k.has_value());
      if (!k) REQUIRE_FALSE(b.index_of(prod).has_value());
    }
    // closed under inverses
    Word inv;
    for (auto it = b.elements[i].rbegin(); it != b.elements[i].rend(); ++it) inv.push_back(fp->inverse(*it));
    REQUIRE(b.index_of(fp->reduce(inv)).has_value());
  }
}

TEST_CASE("Cayley table systems") {
  const SystemPtr s3 = parse_system("table(" + testing_helpers::data_file("s3.table") + ")");
  const Ball b = ball(s3, s3->generators(), 3);
  CHECK(b.size() == 6);
  CHECK(s3->tau({}) == 1);
  CHECK(s3->reduce({1, 1}).empty());
  CHECK(s3->reduce({1, 2, 1, 2, 1, 2}).empty());  // (12)(23) has order 3
  CHECK_THROWS(load_table_system(testing_helpers::data_file("missing.table")));
}

TEST_CASE("caps and descriptors") {
  CHECK_THROWS_AS(ball(parse_system("freeprod(z, z)"), {1, 2}, 12, 1000), CapError);
  CHECK_THROWS(parse_system("zmod(0)"));
  CHECK_THROWS(parse_system("foo"));
  CHECK_THROWS(parse_system("freeprod(z)"));
  const SystemPtr z = parse_system("z");
  CHECK(z->parse_word(z->format({1, 1, -1})) == Word{1, 1, -1});
}
