#include <algorithm>
#include <unordered_set>

#include "sofic/partitions.hpp"
#include "sofic/rng.hpp"

namespace sofic {

std::vector<UnitId> profile_units(const std::vector<PartialBisection> &F0, const SetPartition &pi) {
  if (F0.size() != pi.size()) throw std::invalid_argument("profile: partition size differs from |F0|");
  if (F0.empty()) throw std::invalid_argument("profile: empty F0 has no host; use all units");
  const FiniteGroupoid &g = *F0.front().host();
  std::vector<UnitId> out;
  std::vector<ArrowId> arrow(F0.size());
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    bool ok = true;
    for (std::size_t i = 0; i < F0.size() && ok; ++i) {
      arrow[i] = F0[i].at_range(static_cast<UnitId>(u));
      ok = arrow[i] != kNoArrow;
    }
    for (std::size_t i = 0; i < F0.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < F0.size() && ok; ++j) ok = (arrow[i] == arrow[j]) == (pi[i] == pi[j]);
    }
    if (ok) out.push_back(static_cast<UnitId>(u));
  }
  return out;
}

Rational profile_measure(const std::vector<PartialBisection> &F0, const SetPartition &pi) {
  return unit_measure(*F0.front().host(), profile_units(F0, pi));
}

std::vector<std::size_t> profile_points(const std::vector<PartialPermutation> &F0, const SetPartition &pi) {
  if (F0.size() != pi.size()) throw std::invalid_argument("profile: partition size differs from |F0|");
  if (F0.empty()) throw std::invalid_argument("profile: empty F0 has no degree");
  const std::size_t d = F0.front().degree();
  std::vector<PartialPermutation> inv;
  for (const auto &s : F0) inv.push_back(s.inverse());
  std::vector<std::size_t> out;
  std::vector<std::int32_t> pre(F0.size());
  for (std::size_t k = 0; k < d; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < F0.size() && ok; ++i) {
      pre[i] = inv[i](k);
      ok = pre[i] != PartialPermutation::kUndefined;
    }
    for (std::size_t i = 0; i < F0.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < F0.size() && ok; ++j) ok = (pre[i] == pre[j]) == (pi[i] == pi[j]);
    }
    if (ok) out.push_back(k);
  }
  return out;
}

Rational profile_fraction(const std::vector<PartialPermutation> &F0, const SetPartition &pi) {
  return Rational(static_cast<long long>(profile_points(F0, pi).size()), static_cast<long long>(F0.front().degree()));
}

std::vector<PartialBisection> augment_generators(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n) {
  std::vector<PartialBisection> ball = bisection_ball(g, F, n);
  if (ball.size() > kProfileCap) {
    throw CapError("augment_generators: |F^n_pm| = " + std::to_string(ball.size()) + " exceeds " + std::to_string(kProfileCap));
  }
  std::vector<PartialBisection> out;
  std::unordered_set<PartialBisection, PartialBisectionHash> seen;
  for (const auto &f : F) {
    if (seen.insert(f).second) out.push_back(f);
  }
  auto add = [&](PartialBisection p) {
    if (seen.insert(p).second) out.push_back(std::move(p));
  };
  add(PartialBisection::identity(g));  // F0 empty: every unit
  for (std::size_t mask = 1; mask < (std::size_t{1} << ball.size()); ++mask) {
    std::vector<PartialBisection> F0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (mask >> i & 1u) F0.push_back(ball[i]);
    }
    for_each_set_partition(F0.size(), [&](const SetPartition &pi) {
      add(PartialBisection::projection(g, profile_units(F0, pi)));
    });
  }
  return out;
}

BigInt lemma_c1(std::size_t f_pm, std::size_t n) {
  BigInt three = 3, f = static_cast<unsigned long long>(f_pm);
  return BigInt(176) * pow(three, static_cast<unsigned>(2 * n)) * pow(f, static_cast<unsigned>(2 * n));
}

BigInt lemma_c2(std::size_t f_pm, std::size_t n) {
  BigInt arg = pow(BigInt(static_cast<unsigned long long>(f_pm)), static_cast<unsigned>(n));
  if (arg > 2000) throw std::invalid_argument("lemma_c2: Bell argument |F_pm|^n too large");
  return 2 * lemma_c1(f_pm, n) * bell_number(arg.convert_to<std::size_t>());
}

BigInt lemma_block_count(std::size_t ell) {
  return BigInt(static_cast<unsigned long long>(ell)) * pow(BigInt(2), static_cast<unsigned>(ell));
}

Rational lemma_c3(std::size_t f_pm, std::size_t n, std::size_t ell, const Rational &kappa) {
  Rational kl = kappa * Rational(static_cast<long long>(ell));
  Rational inner = 1 + (3 + kl) * Rational(bell_number(ell)) * Rational(lemma_block_count(ell));
  return inner * Rational(lemma_c2(f_pm, n));
}

std::vector<std::uint32_t> random_partition(std::size_t d, const std::vector<Rational> &mu0, std::uint64_t seed) {
  if (mu0.empty()) throw std::invalid_argument("random_partition: empty alphabet");
  std::vector<double> cdf;
  Rational acc = 0;
  for (const Rational &w : mu0) {
    if (w < 0) throw std::invalid_argument("random_partition: negative weight");
    acc += w;
    cdf.push_back(to_double(acc));
  }
  if (acc != 1) throw std::invalid_argument("random_partition: weights sum to " + to_string(acc));
  cdf.back() = 1.0;
  Rng rng(seed);
  std::vector<std::uint32_t> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double u = rng.unit();
    std::uint32_t b = 0;
    while (u >= cdf[b]) ++b;
    out[k] = b;
  }
  return out;
}

} // namespace sofic
