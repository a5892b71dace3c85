#include <cmath>
#include <numeric>

#include <omp.h>

#include "sofic/kernel.hpp"
#include "sofic/rng.hpp"
#include "sofic/sofic.hpp"

namespace sofic {

namespace {

// Uniform element of [[d]]: rank k with probability C(d,k)^2 k! / |[[d]]|,
// then a uniform domain, range and matching.
kernel::PackedPerm sample_partial(std::size_t d, const std::vector<double> &rank_cdf, Rng &rng) {
  const double u = rng.unit();
  std::size_t k = 0;
  while (k < d && u >= rank_cdf[k]) ++k;
  std::vector<std::uint8_t> dom(d), ran(d);
  std::iota(dom.begin(), dom.end(), 0);
  std::iota(ran.begin(), ran.end(), 0);
  rng.shuffle(dom);
  rng.shuffle(ran);
  kernel::PackedPerm p;
  for (std::size_t i = 0; i < k; ++i) {
    p.img[dom[i]] = ran[i];
    p.dom |= 1u << dom[i];
    p.ran |= 1u << ran[i];
    p.fix += dom[i] == ran[i];
  }
  return p;
}

kernel::PackedPerm sample_total(std::size_t d, Rng &rng) {
  std::vector<std::uint8_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  rng.shuffle(img);
  kernel::PackedPerm p;
  for (std::size_t x = 0; x < d; ++x) {
    p.img[x] = img[x];
    p.dom |= 1u << x;
    p.ran |= 1u << img[x];
    p.fix += img[x] == x;
  }
  return p;
}

} // namespace

MonteCarloEstimate monte_carlo_count(const SAParams &p, std::uint64_t trials, std::uint64_t seed, int threads) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_count: trials must be positive");
  kernel::CompiledProblem prob(p);
  const std::size_t d = p.d;
  const BigInt per = p.space == CandidateSpace::total ? factorial(static_cast<unsigned>(d)) : partial_permutation_count(static_cast<unsigned>(d));
  std::vector<double> rank_cdf(d + 1, 1.0);
  {
    BigInt acc = 0;
    for (std::size_t k = 0; k <= d; ++k) {
      BigInt c = binomial(static_cast<unsigned>(d), static_cast<unsigned>(k));
      acc += c * c * factorial(static_cast<unsigned>(k));
      rank_cdf[k] = to_double(Rational(acc, per));
    }
  }
  std::uint64_t hits = 0;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(nt)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    std::vector<kernel::PackedPerm> values(prob.total);
    for (std::size_t i = 0; i < prob.base; ++i) {
      values[i] = p.space == CandidateSpace::total ? sample_total(d, rng) : sample_partial(d, rank_cdf, rng);
    }
    hits += prob.all_ok(values) ? 1 : 0;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.hits = hits;
  est.space = pow(per, static_cast<unsigned>(prob.base));
  const double space = to_double(Rational(est.space));
  const double rate = static_cast<double>(hits) / static_cast<double>(trials);
  est.estimate = rate * space;
  est.standard_error = space * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
  return est;
}

} // namespace sofic
