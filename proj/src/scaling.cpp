#include "sofic/scaling.hpp"

#include <algorithm>
#include <set>

#include "sofic/rng.hpp"

namespace sofic {

namespace {

// The first `size` elements of `preferred` (ascending), padded with the
// smallest points of [0, d) outside it.
std::vector<std::size_t> adjust(std::vector<std::size_t> preferred, std::size_t size, std::size_t d) {
  std::sort(preferred.begin(), preferred.end());
  if (preferred.size() >= size) {
    preferred.resize(size);
    return preferred;
  }
  std::vector<bool> in(d, false);
  for (std::size_t x : preferred) in[x] = true;
  for (std::size_t x = 0; x < d && preferred.size() < size; ++x) {
    if (!in[x]) preferred.push_back(x);
  }
  std::sort(preferred.begin(), preferred.end());
  return preferred;
}

PartialPermutation embed_degree(const PartialPermutation &s, std::size_t degree) {
  std::vector<std::int32_t> img(s.images());
  img.resize(degree, PartialPermutation::kUndefined);
  return PartialPermutation(degree, std::move(img));
}

} // namespace

CornerData make_corner_data(const GroupoidPtr &g, const std::vector<UnitId> &p) {
  const std::size_t U = g->unit_count();
  for (std::size_t u = 1; u < U; ++u) {
    if (g->weight(static_cast<UnitId>(u)) != g->weight(0)) {
      throw std::invalid_argument("make_corner_data: only uniform unit weights are supported");
    }
  }
  CornerData cd{g, corner(g, p), PartialBisection::projection(g, p), U, 0, {}};
  std::vector<bool> in_p(U, false);
  for (UnitId u : p) in_p[u] = true;
  for (std::size_t u = 0; u < U; ++u) {
    if (in_p[u]) continue;
    ArrowId best = kNoArrow;
    for (ArrowId a : g->arrows_with_range(static_cast<UnitId>(u))) {
      if (in_p[g->source(a)] && (best == kNoArrow || g->source(a) < g->source(best))) best = a;
    }
    if (best == kNoArrow) {
      throw std::invalid_argument("make_corner_data: unit " + std::to_string(u) + " is not reachable from p");
    }
    cd.S.emplace_back(g, std::vector<ArrowId>{best});
  }
  cd.k = cd.S.size();
  validate_corner_data(cd);
  return cd;
}

void validate_corner_data(const CornerData &cd) {
  const FiniteGroupoid &g = *cd.ambient;
  const Rational N = static_cast<long long>(cd.N);
  if (tau(cd.p) != Rational(static_cast<long long>(cd.N - cd.k)) / N) {
    throw std::invalid_argument("corner data: h(p) != (N-k)/N");
  }
  std::set<UnitId> p_units;
  for (UnitId u : cd.p.domain_units()) p_units.insert(u);
  std::vector<bool> covered(g.unit_count(), false);
  for (const PartialBisection &s : cd.S) {
    const auto dom = s.domain_units();
    for (UnitId u : dom) {
      if (!p_units.count(u)) throw std::invalid_argument("corner data: s^-1 s is not below p");
    }
    if (unit_measure(g, dom) != 1 / N) throw std::invalid_argument("corner data: h(s^-1 s) != 1/N");
    for (UnitId u : s.range_units()) {
      if (covered[u] || p_units.count(u)) throw std::invalid_argument("corner data: ranges of S do not sum to 1 - p");
      covered[u] = true;
    }
  }
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    if (!covered[u] && !p_units.count(static_cast<UnitId>(u))) {
      throw std::invalid_argument("corner data: ranges of S do not sum to 1 - p");
    }
  }
}

std::vector<PartialBisection> ambient_generators(const CornerData &cd, const std::vector<PartialBisection> &F_corner) {
  std::vector<PartialBisection> out;
  for (const auto &f : F_corner) out.push_back(cd.corner.embed(f));
  out.insert(out.end(), cd.S.begin(), cd.S.end());
  return out;
}

ScalingResult expand_sigma(const SourcePtr &corner_source, const SoficCandidate &sigma, const CornerData &cd,
                           std::size_t n, const Rational &delta, const ExpansionOptions &opt) {
  const std::size_t d = sigma.degree;
  const std::size_t rest = cd.N - cd.k;
  if (d % rest != 0) throw std::invalid_argument("expand_sigma: N - k must divide d");
  if (opt.check_hypothesis && !verify_membership(make_params(corner_source, delta, d), sigma).is_member) {
    throw std::invalid_argument("expand_sigma: sigma is not in SA over the corner at delta");
  }
  const std::size_t m = d / rest;
  const std::size_t d2 = cd.N * m;
  const Extension ext = extend(*corner_source, sigma);

  auto sigma_prime = [&](const PartialBisection &f) {
    if (f.empty()) return PartialPermutation(d2);
    auto idx = corner_source->find(f);
    if (!idx) throw std::invalid_argument("expand_sigma: " + f.to_string() + " is outside the corner source");
    return embed_degree(ext.values[*idx], d2);
  };

  // gamma(s_0) = p_{A_0}; gamma(s_i): B_i -> A_i
  std::vector<PartialPermutation> gamma;
  std::vector<PartialBisection> s_list{cd.p};
  ScalingResult out;
  {
    std::vector<std::size_t> a0(d);
    for (std::size_t x = 0; x < d; ++x) a0[x] = x;
    gamma.push_back(PartialPermutation::projection(d2, a0));
  }
  for (std::size_t i = 0; i < cd.k; ++i) {
    const PartialBisection &s = cd.S[i];
    s_list.push_back(s);
    const PartialBisection e = cd.corner.pull_back(compose(s.inverse(), s));
    const PartialPermutation fixer = sigma_prime(e);
    std::vector<std::size_t> fixed;
    for (std::size_t x = 0; x < d; ++x) {
      if (fixer(x) == static_cast<std::int32_t>(x)) fixed.push_back(x);
    }
    std::vector<std::size_t> B = adjust(fixed, m, d);
    std::vector<std::size_t> A(m);
    for (std::size_t t = 0; t < m; ++t) A[t] = d + i * m + t;
    if (opt.gamma_seed) Rng::stream(*opt.gamma_seed, i).shuffle(A);
    std::vector<std::int32_t> img(d2, PartialPermutation::kUndefined);
    for (std::size_t t = 0; t < m; ++t) img[B[t]] = static_cast<std::int32_t>(A[t]);
    gamma.emplace_back(d2, std::move(img));
    out.blocks.push_back(std::move(B));
  }
  std::vector<PartialPermutation> gamma_inv;
  for (const auto &g : gamma) gamma_inv.push_back(g.inverse());

  const std::vector<PartialBisection> F_corner = [&] {
    std::vector<PartialBisection> f;
    for (std::size_t i : corner_source->generators()) f.push_back(corner_source->bisection(i));
    return f;
  }();
  const std::vector<PartialBisection> gens = ambient_generators(cd, F_corner);
  out.source = SoficSource::from_groupoid(cd.ambient, gens, n, corner_source->sum_bound());
  out.degree = d2;
  out.sigma.degree = d2;
  for (std::size_t b = 0; b < out.source->base_count(); ++b) {
    const PartialBisection &u = out.source->bisection(b);
    PartialPermutation value(d2);
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      for (std::size_t j = 0; j < s_list.size(); ++j) {
        const PartialBisection f = compose(compose(s_list[i].inverse(), u), s_list[j]);
        if (f.empty()) continue;
        const PartialPermutation term = compose(compose(gamma[i], sigma_prime(cd.corner.pull_back(f))), gamma_inv[j]);
        value = corrected_sum(value, term);
      }
    }
    out.sigma.values.push_back(std::move(value));
  }

  const Rational N2 = static_cast<long long>(cd.N * cd.N);
  std::set<PartialBisection> distinct(gens.begin(), gens.end());
  const BigInt base = BigInt(2 * distinct.size() + 1);
  out.delta = 5 * N2 * delta + 150 * N2 * Rational(pow(base, static_cast<unsigned>(2 * (2 * n + 5)))) * delta;
  out.report = verify_membership(make_params(out.source, out.delta, d2), out.sigma);
  return out;
}

ScalingResult restrict_sigma(const SourcePtr &ambient_source, const SoficCandidate &sigma, const CornerData &cd,
                             const std::vector<PartialBisection> &F_corner, std::size_t n, const Rational &delta,
                             bool check_hypothesis) {
  const std::size_t d = sigma.degree;
  const Rational h = cd.corner.ambient_measure;
  const Rational hd = h * Rational(static_cast<long long>(d));
  const std::size_t d2 = static_cast<std::size_t>((numerator(hd) / denominator(hd)).convert_to<unsigned long long>());
  if (Rational(static_cast<long long>(d2)) * delta <= 1) {
    throw std::invalid_argument("restrict_sigma: floor(h(p) d) = " + std::to_string(d2) + " must exceed 1/delta");
  }
  if (check_hypothesis && !verify_membership(make_params(ambient_source, delta, d), sigma).is_member) {
    throw std::invalid_argument("restrict_sigma: sigma is not in SA over the ambient groupoid at delta");
  }
  const Extension ext = extend(*ambient_source, sigma);
  auto p_idx = ambient_source->find(cd.p);
  if (!p_idx) throw std::invalid_argument("restrict_sigma: p is outside the ambient source");
  const std::vector<std::size_t> B = adjust(ext.values[*p_idx].fixed_points(), d2, d);

  std::vector<std::int32_t> pos(d, -1);
  for (std::size_t t = 0; t < B.size(); ++t) pos[B[t]] = static_cast<std::int32_t>(t);

  ScalingResult out;
  out.blocks.push_back(B);
  out.source = SoficSource::from_groupoid(cd.corner.groupoid, F_corner, n, ambient_source->sum_bound());
  out.degree = d2;
  out.sigma.degree = d2;
  for (std::size_t b = 0; b < out.source->base_count(); ++b) {
    const PartialBisection u = cd.corner.embed(out.source->bisection(b));
    std::vector<std::int32_t> img(d2, PartialPermutation::kUndefined);
    if (!u.empty()) {
      auto idx = ambient_source->find(u);
      if (!idx) throw std::invalid_argument("restrict_sigma: " + u.to_string() + " is outside the ambient source");
      const PartialPermutation &s = ext.values[*idx];
      for (std::size_t t = 0; t < B.size(); ++t) {
        const std::int32_t y = s(B[t]);
        if (y != PartialPermutation::kUndefined && pos[y] >= 0) img[t] = pos[y];
      }
    }
    out.sigma.values.emplace_back(d2, std::move(img));
  }
  out.delta = 20 * delta / h;
  out.report = verify_membership(make_params(out.source, out.delta, d2), out.sigma);
  return out;
}

Rational scaling_value(const Rational &s_corner, const Rational &h_p) {
  if (h_p <= 0 || h_p > 1) throw std::invalid_argument("scaling: h(p) must lie in (0, 1]");
  return h_p * (s_corner - 1) + 1;
}

Rational scaling_inverse(const Rational &s_ambient, const Rational &h_p) {
  if (h_p <= 0 || h_p > 1) throw std::invalid_argument("scaling: h(p) must lie in (0, 1]");
  return (s_ambient - 1) / h_p + 1;
}

double scaling_value(double s_corner, double h_p) {
  if (!(h_p > 0 && h_p <= 1)) throw std::invalid_argument("scaling: h(p) must lie in (0, 1]");
  return h_p * (s_corner - 1) + 1;
}

double scaling_inverse(double s_ambient, double h_p) {
  if (!(h_p > 0 && h_p <= 1)) throw std::invalid_argument("scaling: h(p) must lie in (0, 1]");
  return (s_ambient - 1) / h_p + 1;
}

} // namespace sofic
