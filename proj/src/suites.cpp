#include "sofic/suites.hpp"

#include <algorithm>
#include <memory>
#include <omp.h>

#include "sofic/rng.hpp"

namespace sofic::suites {

namespace {

int thread_count(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

void track(const BoundReport &r, std::size_t &violations, double &worst, std::string &witness) {
  if (!r.pass) ++violations;
  if (r.slack_ratio > worst || witness.empty()) {
    worst = std::max(worst, r.slack_ratio);
    witness = r.witness;
  }
}

} // namespace

GroupoidPtr r2() { return transitive_groupoid(2); }

std::vector<PartialBisection> r2_generators(const GroupoidPtr &g) {
  // arrow i*2 + j is (i <- j)
  return {PartialBisection(g, {1, 2})};
}

LemmaSweepOutcome lemma_sweep(const LemmaSweepConfig &cfg) {
  LemmaSweepOutcome out;
  auto cyl = std::make_shared<const CylinderSystem>(cfg.groupoid, cfg.F, cfg.n, cfg.mu0);
  const SpanBasis basis = span_basis(*cyl);
  const std::vector<PartialBisection> F_n = augment_generators(cfg.groupoid, cfg.F, cfg.n);
  out.f_n_size = F_n.size();
  out.sa_radius = 4 * cfg.n * cyl->ball_size() + 1;
  const std::size_t units = cfg.groupoid->unit_count();
  const SourcePtr source = SoficSource::from_groupoid(cfg.groupoid, F_n, out.sa_radius, units);
  std::unique_ptr<HASystem> ha;
  if (cfg.ha) ha = std::make_unique<HASystem>(cyl, units);

  struct Job {
    std::size_t degree, member, partition;
    const std::vector<PartialPermutation> *sigma;
  };
  std::vector<std::vector<PartialPermutation>> sigmas;
  std::vector<std::size_t> sigma_degree;
  for (std::size_t d : cfg.degrees) {
    EnumerationOptions opt;
    opt.collect_members = true;
    opt.threads = cfg.threads;
    opt.cap = cfg.cap;
    const EnumerationResult res = enumerate_sa(make_params(source, cfg.delta, d), opt);
    out.members_per_degree.push_back(res.members.size());
    for (const SoficCandidate &m : res.members) {
      sigmas.push_back(sigma_on_ball(*cyl, *source, m));
      sigma_degree.push_back(d);
    }
  }

  out.c1.resize(sigmas.size());
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    for (std::size_t k = 0; k < cfg.partitions; ++k) jobs.push_back({sigma_degree[i], i, k, &sigmas[i]});
  }
  out.instances.resize(jobs.size());

#pragma omp parallel num_threads(thread_count(cfg.threads))
  {
#pragma omp for schedule(dynamic)
    for (std::size_t i = 0; i < sigmas.size(); ++i) out.c1[i] = verify_lemma_c1(*cyl, sigmas[i], cfg.delta);

#pragma omp for schedule(dynamic)
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const Job &job = jobs[j];
      InstanceOutcome &r = out.instances[j];
      r.degree = job.degree;
      r.member = job.member;
      r.partition = job.partition;
      try {
        const auto block_of = random_partition(job.degree, cfg.mu0, splitmix64(cfg.seed + job.partition));
        r.c2 = verify_lemma_c2(*cyl, *job.sigma, block_of, cfg.delta);
        r.c3 = verify_lemma_c3(*cyl, basis, *job.sigma, block_of, cfg.delta);
        if (ha) {
          const Phi0 phi0 = build_phi0(*cyl, basis, *job.sigma, block_of, cfg.delta);
          r.phi0_ok = phi0.report.pass();
          const PhiResult phi = build_phi(*ha, basis, phi0, *job.sigma, cfg.delta);
          r.v_bound_ok = phi.v_bound_ok;
          r.ha_ok = phi.report.is_member;
          r.sum_ok = approx_sum_sweep(*ha, phi.candidate, cfg.delta).pass;
        }
      } catch (const std::exception &e) {
        r.error = e.what();
      }
    }
  }

  for (const BoundReport &r : out.c1) track(r, out.c1_violations, out.c1_worst, out.c1_witness);
  for (const InstanceOutcome &r : out.instances) {
    if (!r.error.empty()) {
      ++out.errors;
      continue;
    }
    track(r.c2, out.c2_violations, out.c2_worst, out.c2_witness);
    track(r.c3, out.c3_violations, out.c3_worst, out.c3_witness);
    out.phi0_violations += !r.phi0_ok;
    out.v_bound_violations += !r.v_bound_ok;
    out.ha_violations += !r.ha_ok;
    out.sum_violations += !r.sum_ok;
  }
  return out;
}

ScalingSweepOutcome scaling_sweep(const ScalingSweepConfig &cfg) {
  const GroupoidPtr g = r2();
  const CornerData cd = make_corner_data(g, {0});
  const std::vector<PartialBisection> F_corner{PartialBisection::identity(cd.corner.groupoid)};
  const SourcePtr corner_source = SoficSource::from_groupoid(cd.corner.groupoid, F_corner, cfg.n, 1);
  const Rational h = cd.corner.ambient_measure;
  const Rational roundtrip_bound = 3 * (20 * cfg.delta / h);

  ScalingSweepOutcome out;
  out.instances.resize(cfg.instances);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg.threads))
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    ScalingInstance &r = out.instances[i];
    try {
      Rng rng = Rng::stream(cfg.seed, i);
      const std::size_t d = cfg.min_degree + rng.below(cfg.max_degree - cfg.min_degree + 1);
      // r < delta d / 2
      const Rational half = cfg.delta * Rational(static_cast<long long>(d)) / 2;
      std::size_t r_max = 0;
      while (Rational(static_cast<long long>(r_max + 1)) < half) ++r_max;
      const std::size_t removed = rng.below(r_max + 1);
      std::vector<std::size_t> points(d);
      for (std::size_t x = 0; x < d; ++x) points[x] = x;
      rng.shuffle(points);
      points.resize(d - removed);

      SoficCandidate sigma{d, {}};
      for (std::size_t b = 0; b < corner_source->base_count(); ++b) {
        sigma.values.push_back(corner_source->bisection(b).empty() ? PartialPermutation(d)
                                                                    : PartialPermutation::projection(d, points));
      }
      r.degree = d;
      r.removed = removed;

      ExpansionOptions opt;
      opt.gamma_seed = rng.next();
      const ScalingResult up = expand_sigma(corner_source, sigma, cd, cfg.n, cfg.delta, opt);
      r.expand_ok = up.report.is_member;
      r.expand_delta = up.delta;
      const ScalingResult down = restrict_sigma(up.source, up.sigma, cd, F_corner, cfg.n, cfg.delta, false);
      r.restrict_ok = down.report.is_member;
      r.restrict_delta = down.delta;

      std::size_t gap = 0;
      for (std::size_t b = 0; b < corner_source->base_count(); ++b) {
        auto idx = down.source->find(corner_source->bisection(b));
        if (!idx || down.degree != d) throw std::runtime_error("round trip lost an element");
        gap = std::max(gap, disagreement_count(down.sigma.values[*idx], sigma.values[b]));
      }
      r.roundtrip_gap = Rational(static_cast<long long>(gap), static_cast<long long>(d));
      r.roundtrip_ok = r.roundtrip_gap <= roundtrip_bound;
    } catch (const std::exception &e) {
      r.error = e.what();
    }
  }

  for (const ScalingInstance &r : out.instances) {
    if (!r.error.empty()) {
      ++out.errors;
      continue;
    }
    out.expand_violations += !r.expand_ok;
    out.restrict_violations += !r.restrict_ok;
    out.roundtrip_violations += !r.roundtrip_ok;
    out.worst_roundtrip_fraction = std::max(out.worst_roundtrip_fraction, Rational(r.roundtrip_gap / roundtrip_bound));
  }
  return out;
}

} // namespace sofic::suites
