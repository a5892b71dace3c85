#include <cmath>
#include <set>

#include "sofic/partitions.hpp"

namespace sofic {

std::size_t f_pm_size(const CylinderSystem &cyl) {
  std::set<PartialBisection> f{PartialBisection::identity(cyl.groupoid())};
  for (const auto &s : cyl.generators()) {
    f.insert(s);
    f.insert(s.inverse());
  }
  return f.size();
}

namespace {

void finish(BoundReport &r) {
  const double b = to_double(r.bound_exact), w = to_double(r.worst_exact);
  r.bound = r.squared ? std::sqrt(b) : b;
  r.worst = r.squared ? std::sqrt(w) : w;
  r.slack_ratio = r.bound > 0 ? r.worst / r.bound : 0.0;
  r.pass = r.worst_exact < r.bound_exact;
}

void check_sigma(const CylinderSystem &cyl, const std::vector<PartialPermutation> &sigma) {
  if (sigma.size() != cyl.ball_size()) throw std::invalid_argument("lemma check: sigma must cover F^n_pm");
}

} // namespace

BoundReport verify_lemma_c1(const CylinderSystem &cyl, const std::vector<PartialPermutation> &sigma, const Rational &delta) {
  check_sigma(cyl, sigma);
  BoundReport r;
  r.name = "c1";
  r.bound_exact = Rational(lemma_c1(f_pm_size(cyl), cyl.radius())) * delta;
  r.worst_exact = 0;
  const auto &ball = cyl.ball();
  for (std::size_t mask = 1; mask < (std::size_t{1} << ball.size()); ++mask) {
    std::vector<PartialBisection> F0;
    std::vector<PartialPermutation> S0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (mask >> i & 1u) {
        F0.push_back(ball[i]);
        S0.push_back(sigma[i]);
      }
    }
    for_each_set_partition(F0.size(), [&](const SetPartition &pi) {
      ++r.checked;
      Rational gap = abs(profile_measure(F0, pi) - profile_fraction(S0, pi));
      if (gap > r.worst_exact || r.witness.empty()) {
        r.worst_exact = gap;
        std::string w = "F0={";
        for (std::size_t i = 0; i < F0.size(); ++i) w += (i ? "," : "") + F0[i].to_string();
        w += "} pi=";
        for (auto b : pi) w += std::to_string(b + 1);
        r.witness = w;
      }
    });
  }
  finish(r);
  return r;
}

BoundReport verify_lemma_c2(const CylinderSystem &cyl, const std::vector<PartialPermutation> &sigma,
                            const std::vector<std::uint32_t> &block_of, const Rational &delta) {
  check_sigma(cyl, sigma);
  BoundReport r;
  r.name = "c2";
  r.bound_exact = Rational(lemma_c2(f_pm_size(cyl), cyl.radius())) * delta;
  r.worst_exact = 0;
  const Rational d = static_cast<long long>(block_of.size());
  for (const Psi &psi : cyl.all_psis()) {
    ++r.checked;
    const Rational mu = cyl.measure(cyl.cylinder(psi));
    const Rational frac = Rational(static_cast<long long>(approximate_cylinder(sigma, block_of, psi).count())) / d;
    Rational gap = abs(mu - frac);
    if (gap > r.worst_exact || r.witness.empty()) {
      r.worst_exact = gap;
      r.witness = cyl.psi_label(psi);
    }
  }
  finish(r);
  return r;
}

Rational c3_discrepancy_sq(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                           const std::vector<std::uint32_t> &block_of, std::size_t projection) {
  const std::size_t d = block_of.size();
  const auto &projections = cyl.projections();
  std::vector<Rational> v(d, Rational(0));
  const PointSet a = approximate_cylinder(sigma, block_of, projections.at(projection).psi);
  for (std::size_t k = a.find_first(); k != PointSet::npos; k = a.find_next(k)) v[k] = 1;
  const auto &coeffs = basis.coefficients.at(projection);
  for (std::size_t i = 0; i < basis.ell; ++i) {
    if (coeffs[i] == 0) continue;
    const PointSet ai = approximate_cylinder(sigma, block_of, projections[basis.members[i]].psi);
    for (std::size_t k = ai.find_first(); k != PointSet::npos; k = ai.find_next(k)) v[k] -= coeffs[i];
  }
  Rational total = 0;
  for (const Rational &x : v) total += x * x;
  return total / Rational(static_cast<long long>(d));
}

BoundReport verify_lemma_c3(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                            const std::vector<std::uint32_t> &block_of, const Rational &delta) {
  check_sigma(cyl, sigma);
  BoundReport r;
  r.name = "c3";
  r.squared = true;
  const Rational c3 = lemma_c3(f_pm_size(cyl), cyl.radius(), basis.ell, basis.kappa);
  r.bound_exact = c3 * c3 * delta;
  r.worst_exact = 0;
  for (std::size_t j = 0; j < cyl.projections().size(); ++j) {
    ++r.checked;
    Rational gap = c3_discrepancy_sq(cyl, basis, sigma, block_of, j);
    if (gap > r.worst_exact || r.witness.empty()) {
      r.worst_exact = gap;
      r.witness = cyl.psi_label(cyl.projections()[j].psi);
    }
  }
  finish(r);
  return r;
}

} // namespace sofic
