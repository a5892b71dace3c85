// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../helpers.hpp"
#include "sofic/calculator.hpp"
#include "sofic/cli.hpp"
#include "sofic/partitions.hpp"
#include "sofic/pperm.hpp"
#include "sofic/sofic.hpp"
#include "sofic/suites.hpp"

using namespace sofic;

namespace {

// Pinned limits.
constexpr double kC1Seconds = 10, kC2Seconds = 30, kC3Seconds = 1, kC4Seconds = 300, kC5Seconds = 1;
constexpr double kC6Seconds = 600, kC8Seconds = 120, kC9Seconds = 1;
constexpr double kC5Low = 0.40, kC5High = 0.50;
constexpr std::size_t kC1Pairs = 10000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string &name, double limit, const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  failures += !o.pass;
  std::printf("C%-2d %s  %s  [%.2fs%s] %s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), secs,
              limit > 0 ? (" < " + std::to_string(static_cast<int>(limit)) + "s").c_str() : "", o.detail.c_str());
  std::fflush(stdout);
}

SAParams trivial_params(const Rational &delta, std::size_t d) {
  const SystemPtr sys = parse_system("zmod(1)");
  SAParams p = make_params(SoficSource::from_ball(ball(sys, sys->generators(), 1), d), delta, d);
  p.space = CandidateSpace::partial;
  return p;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt double_factorial(long n) {
  BigInt r = 1;
  for (; n > 1; n -= 2) r *= n;
  return r;
}

// Involutions of d points with fewer than delta d fixed points, by cycle type.
BigInt involution_oracle(unsigned d, const Rational &delta) {
  BigInt total = 0;
  for (unsigned f = 0; f <= d; ++f) {
    if ((d - f) % 2 != 0 || !(Rational(f, d) < delta)) continue;
    total += binomial(d, f) * double_factorial(static_cast<long>(d - f) - 1);
  }
  return total;
}

Outcome c1_distances() {
  Rng rng(2024);
  std::size_t pairs = 0;
  for (std::size_t d : {4, 8, 16, 32}) {
    for (std::size_t i = 0; i < kC1Pairs; ++i) {
      const bool total = i % 4 == 0;
      const auto s = total ? testing_helpers::random_permutation(d, rng) : testing_helpers::random_pperm(d, rng);
      const auto t = total ? testing_helpers::random_permutation(d, rng) : testing_helpers::random_pperm(d, rng);
      const Distances dist = distances(s, t);
      const auto ss = compose(s.inverse(), s), tt = compose(t.inverse(), t);
      const Rational identity = ss.trace() + tt.trace() - compose(ss, tt).trace() - compose(s, t.inverse()).trace();
      if (dist.uniform != identity) return {false, "identity fails at d=" + std::to_string(d) + " for " + s.to_string() + ", " + t.to_string()};
      if (dist.two_norm_sq < dist.uniform) return {false, "two_norm_sq < uniform at d=" + std::to_string(d)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " pairs over d in {4,8,16,32}"};
}

Outcome c2_partial_count() {
  std::string detail;
  for (unsigned d = 0; d <= 6; ++d) {
    BigInt oracle = 0;
    for (unsigned k = 0; k <= d; ++k) oracle += binomial(d, k) * binomial(d, k) * factorial(k);
    std::uint64_t generated = 0;
    for_each_partial_permutation(d, [&](const PartialPermutation &) { ++generated; });
    if (BigInt(generated) != oracle || partial_permutation_count(d) != oracle) {
      return {false, "d=" + std::to_string(d) + " generated " + std::to_string(generated) + " vs " + to_string(oracle)};
    }
    if (d == 3 || d == 4) detail += "|[[" + std::to_string(d) + "]]|=" + std::to_string(generated) + " ";
  }
  const bool frozen = partial_permutation_count(3) == 34 && partial_permutation_count(4) == 209;
  return {frozen, detail + "d<=6 match the summation"};
}

Outcome c3_exact_counts() {
  const std::uint64_t a = count_sa(trivial_params(Rational(3, 5), 2));
  const std::uint64_t b = count_sa(trivial_params(Rational(2), 2));
  const std::uint64_t c = count_sa(trivial_params(Rational(5), 2));
  return {a == 3 && b == 7 && c == 7,
          "delta=3/5 -> " + std::to_string(a) + ", delta=2 -> " + std::to_string(b) + ", delta=5 -> " + std::to_string(c)};
}

Outcome c4_trivial_trend() {
  std::ostringstream detail;
  double prev = INFINITY;
  bool ok = true;
  for (std::size_t d : {4, 5, 6}) {
    const auto r = restricted_statistic(trivial_params(Rational(1, 20), d), {});
    ok = ok && r.statistic <= prev;
    prev = r.statistic;
    detail << "d=" << d << ": " << r.count << " -> " << r.statistic << "  ";
  }
  return {ok, detail.str()};
}

Outcome c5_involution_trend() {
  const Rational delta(1, 10);
  std::ostringstream detail;
  double prev = -1;
  bool ok = true;
  for (unsigned d : {50u, 100u, 200u, 400u}) {
    if (closed_form_count(2, d, delta) != involution_oracle(d, delta)) return {false, "count differs from the oracle at d=" + std::to_string(d)};
    const double s = closed_form_statistic(2, d, delta);
    ok = ok && s > prev;
    prev = s;
    detail << "d=" << d << ": " << s << "  ";
  }
  ok = ok && prev >= kC5Low && prev <= kC5High;
  return {ok, detail.str()};
}

suites::LemmaSweepOutcome lemma_outcome;

Outcome c6_lemmas() {
  suites::LemmaSweepConfig cfg;
  cfg.groupoid = suites::r2();
  cfg.F = suites::r2_generators(cfg.groupoid);
  cfg.degrees = {1, 2, 3, 4, 5, 6};
  cfg.partitions = 100;
  lemma_outcome = suites::lemma_sweep(cfg);
  const auto &o = lemma_outcome;
  std::ostringstream detail;
  std::size_t members = 0;
  for (std::size_t m : o.members_per_degree) members += m;
  detail << members << " members, " << o.instances.size() << " (member, partition) instances; violations c1/c2/c3 = " << o.c1_violations
         << "/" << o.c2_violations << "/" << o.c3_violations << "; worst slack " << o.c1_worst << "/" << o.c2_worst << "/"
         << o.c3_worst;
  return {o.lemmas_pass() && members > 0, detail.str()};
}

Outcome c7_ha() {
  const auto &o = lemma_outcome;
  if (o.instances.empty()) return {false, "no instances from C6"};
  std::ostringstream detail;
  detail << "phi0/V/HA/146delta violations = " << o.phi0_violations << "/" << o.v_bound_violations << "/" << o.ha_violations << "/"
         << o.sum_violations << ", errors " << o.errors;
  return {o.ha_pass(), detail.str()};
}

Outcome c8_scaling() {
  suites::ScalingSweepConfig cfg;
  cfg.instances = 50;
  const auto o = suites::scaling_sweep(cfg);
  std::ostringstream detail;
  detail << cfg.instances << " instances; expand/restrict/round-trip violations = " << o.expand_violations << "/" << o.restrict_violations
         << "/" << o.roundtrip_violations << ", errors " << o.errors << "; worst round-trip fraction of bound "
         << to_double(o.worst_roundtrip_fraction);
  return {o.pass(), detail.str()};
}

std::optional<Rational> try_value(const std::string &text) {
  try {
    return calc::evaluate(text).value;
  } catch (const calc::EvaluationError &) {
    return std::nullopt;
  }
}

std::string random_tree(Rng &rng, int depth) {
  static const std::vector<std::string> atoms{"z", "trivial", "cyclic(2)", "cyclic(5)", "transitive(3)", "amenable(1/4)", "amenable(0)"};
  if (depth == 0 || rng.below(3) == 0) return atoms[rng.below(atoms.size())];
  switch (rng.below(3)) {
    case 0: return "bernoulli(" + random_tree(rng, depth - 1) + ", " + std::to_string(2 + rng.below(6)) + ")";
    case 1: return "corner(" + random_tree(rng, depth - 1) + ", " + std::to_string(3 + rng.below(3)) + "/5)";
    default: return "amalgam(" + random_tree(rng, depth - 1) + ", " + random_tree(rng, depth - 1) + ", " + atoms[rng.below(2)] + ")";
  }
}

Outcome c9_calculator() {
  for (int m = 1; m <= 12; ++m) {
    if (calc::evaluate("cyclic(" + std::to_string(m) + ")").value != 1 - Rational(1, m)) return {false, "cyclic(" + std::to_string(m) + ")"};
  }
  if (calc::evaluate("amalgam(cyclic(2), cyclic(3), trivial)").value != Rational(7, 6)) return {false, "amalgam"};
  const Rational c = calc::evaluate("corner(transitive(4), 1/2)").value;
  if (c != Rational(1, 2) || c != calc::evaluate("transitive(2)").value) return {false, "corner(transitive(4), 1/2)"};
  for (const char *e : {"cyclic(2)", "z", "amalgam(cyclic(2), cyclic(3), trivial)", "transitive(5)"}) {
    for (int q = 2; q <= 7; ++q) {
      if (try_value("bernoulli(" + std::string(e) + ", " + std::to_string(q) + ")") != try_value(e)) return {false, "bernoulli neutrality"};
    }
  }
  Rng rng(100);
  int trees = 0, attempts = 0;
  while (trees < 100 && attempts < 100000) {
    ++attempts;
    const std::string e = random_tree(rng, 3);
    const Rational a(1 + static_cast<long long>(rng.below(6)), 7), b(1 + static_cast<long long>(rng.below(4)), 5);
    const auto nested = try_value("corner(corner(" + e + ", " + to_string(a) + "), " + to_string(b) + ")");
    const auto flat = try_value("corner(" + e + ", " + to_string(a * b) + ")");
    if (nested != flat) return {false, "corner composition fails for " + e};
    trees += nested.has_value();
  }
  return {trees == 100, std::to_string(trees) + " defined corner-composition trees (" + std::to_string(attempts) + " drawn)"};
}

std::string cli_output(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome c10_determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"count", "--family", "freeprod(zmod(2),zmod(2))", "--d", "2..5", "--delta", "1/2"},
      {"count", "--family", "zmod(3)", "--d", "3..5", "--delta", "1/2", "--method", "montecarlo", "--trials", "20000"},
      {"verify", "--suite", "all", "--d", "2..6", "--partitions", "20", "--instances", "20"},
      {"construct", "--what", "expand", "--seed", "9"},
      {"construct", "--what", "phi", "--seed", "9"},
  };
  for (const auto &args : commands) {
    std::vector<std::string> runs;
    for (const char *threads : {"1", "4", "4"}) {
      auto a = args;
      a.insert(a.end(), {"--threads", threads});
      runs.push_back(cli_output(a));
    }
    if (runs[0][0] != '0') return {false, "'" + args[0] + "' failed"};
    if (runs[0] != runs[1] || runs[1] != runs[2]) return {false, "output differs for '" + args[0] + " " + args[1] + " " + args[2] + "'"};
  }
  return {true, std::to_string(commands.size()) + " seeded commands byte-identical at 1, 4, 4 threads"};
}

} // namespace

int main() {
  report(1, "distance identity", kC1Seconds, c1_distances);
  report(2, "partial permutation count", kC2Seconds, c2_partial_count);
  report(3, "exact SA counts", kC3Seconds, c3_exact_counts);
  report(4, "trivial group trend", kC4Seconds, c4_trivial_trend);
  report(5, "Z/2 involution trend", kC5Seconds, c5_involution_trend);
  report(6, "lemma certification", kC6Seconds, c6_lemmas);
  report(7, "HA construction", 0, c7_ha);
  report(8, "scaling constructions", kC8Seconds, c8_scaling);
  report(9, "calculator", kC9Seconds, c9_calculator);
  report(10, "determinism", 0, c10_determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
