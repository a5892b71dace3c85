#include "sofic/crossed.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sofic {

namespace {

Rational frac(std::size_t num, std::size_t den) {
  return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

Rational uniform(const PartialPermutation &a, const PartialPermutation &b) {
  return frac(disagreement_count(a, b), a.degree());
}

PartialPermutation conjugate_by(const PartialPermutation &s, const PartialPermutation &p) {
  return compose(compose(s, p), s.inverse());
}

PartialPermutation projection_onto(const PointSet &set) {
  std::vector<std::size_t> pts;
  for (std::size_t k = set.find_first(); k != PointSet::npos; k = set.find_next(k)) pts.push_back(k);
  return PartialPermutation::projection(set.size(), pts);
}

Psi single_letter(const CylinderSystem &cyl, std::size_t s, std::size_t i) {
  Psi psi(cyl.ball_size(), 0);
  psi[s] = static_cast<std::uint8_t>(i);
  return psi;
}

} // namespace

// ---- HASystem ----------------------------------------------------------------

HASystem::HASystem(std::shared_ptr<const CylinderSystem> cyl, std::size_t sum_bound, std::size_t cap)
    : cyl_(std::move(cyl)), sum_bound_(sum_bound) {
  const auto &projections = cyl_->projections();
  auto add = [&](PointSet set, std::vector<std::size_t> parts) {
    if (sets_.size() >= cap) throw CapError("HASystem: more than " + std::to_string(cap) + " elements");
    lookup_.emplace(set, sets_.size());
    sets_.push_back(std::move(set));
    summands_.push_back(std::move(parts));
  };
  for (std::size_t j = 0; j < projections.size(); ++j) add(projections[j].set, {j});
  base_count_ = sets_.size();
  const PointSet none(cyl_->support_size());
  if (!lookup_.count(none)) add(none, {});
  empty_ = lookup_.at(none);

  std::vector<std::size_t> nonempty;
  for (std::size_t j = 0; j < base_count_; ++j) {
    if (sets_[j].any()) nonempty.push_back(j);
  }
  std::vector<std::size_t> combo;
  std::function<void(std::size_t, const PointSet &)> rec = [&](std::size_t from, const PointSet &acc) {
    if (combo.size() >= 2 && !lookup_.count(acc)) add(acc, combo);
    if (combo.size() == sum_bound_) return;
    for (std::size_t t = from; t < nonempty.size(); ++t) {
      const PointSet &s = sets_[nonempty[t]];
      if (acc.intersects(s)) continue;
      combo.push_back(nonempty[t]);
      rec(t + 1, acc | s);
      combo.pop_back();
    }
  };
  rec(0, none);

  for (const PointSet &s : sets_) measures_.push_back(cyl_->measure(s));
  PointSet all(cyl_->support_size());
  all.set();
  full_ = lookup_.at(all);
  for (std::size_t i = 1; i <= cyl_->q(); ++i) partition_.push_back(cyl_->projection_of(single_letter(*cyl_, 0, i)));
  for (std::size_t s = 0; s < cyl_->ball_size(); ++s) {
    for (std::size_t i = 1; i <= cyl_->q(); ++i) translates_.push_back(cyl_->projection_of(single_letter(*cyl_, s, i)));
  }
  meet_.assign(sets_.size() * sets_.size(), -1);
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    for (std::size_t j = i; j < sets_.size(); ++j) {
      auto it = lookup_.find(sets_[i] & sets_[j]);
      if (it == lookup_.end()) continue;
      meet_[i * sets_.size() + j] = meet_[j * sets_.size() + i] = static_cast<std::int64_t>(it->second);
    }
  }
}

std::optional<std::size_t> HASystem::find(const PointSet &s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::string HASystem::label(std::size_t i) const {
  if (i < base_count_) return cyl_->psi_label(cyl_->projections()[i].psi);
  if (summands_[i].empty()) return "0";
  std::string out;
  for (std::size_t j : summands_[i]) out += (out.empty() ? "" : " + ") + label(j);
  return out;
}

// ---- verification ---------------------------------------------------------------

HAReport verify_ha(const HASystem &ha, const HACandidate &c, const Rational &tolerance_sq) {
  const CylinderSystem &cyl = ha.cylinders();
  if (c.sigma.size() != cyl.ball_size()) throw std::invalid_argument("verify_ha: sigma must cover the ball");
  if (c.phi.size() != ha.size()) throw std::invalid_argument("verify_ha: phi must cover Sigma P");
  const std::size_t d = c.phi.front().degree();
  HAReport r;
  r.tolerance_sq = tolerance_sq;
  r.trace_gap = r.equivariance_gap = r.multiplicativity_gap = r.unit_gap = 0;

  for (std::size_t i = 0; i < ha.base_count(); ++i) {
    ++r.checks;
    Rational gap = abs(c.phi[i].trace() - ha.measure(i));
    if (gap > r.trace_gap || r.trace_witness.empty()) {
      r.trace_gap = gap;
      r.trace_witness = ha.label(i);
    }
  }
  for (std::size_t s = 0; s < cyl.ball_size(); ++s) {
    for (std::size_t i = 1; i <= cyl.q(); ++i) {
      ++r.checks;
      Rational gap = uniform(c.phi[ha.translate(s, i)], conjugate_by(c.sigma[s], c.phi[ha.partition_element(i)]));
      if (gap > r.equivariance_gap || r.equivariance_witness.empty()) {
        r.equivariance_gap = gap;
        r.equivariance_witness = cyl.ball()[s].to_string() + " B_" + std::to_string(i);
      }
    }
  }
  for (std::size_t i = 0; i < ha.size(); ++i) {
    for (std::size_t j = 0; j < ha.size(); ++j) {
      const std::int64_t m = ha.intersection(i, j);
      if (m < 0) continue;
      ++r.checks;
      Rational gap = uniform(c.phi[static_cast<std::size_t>(m)], compose(c.phi[i], c.phi[j]));
      if (gap > r.multiplicativity_gap || r.multiplicativity_witness.empty()) {
        r.multiplicativity_gap = gap;
        r.multiplicativity_witness = "(" + ha.label(i) + ")(" + ha.label(j) + ")";
      }
    }
  }
  ++r.checks;
  r.unit_gap = uniform(c.phi[ha.full()], PartialPermutation::identity(d));

  auto below = [&](const Rational &g) { return g * g < tolerance_sq; };
  r.is_member = below(r.trace_gap) && below(r.equivariance_gap) && below(r.multiplicativity_gap) && below(r.unit_gap);
  return r;
}

Rational approx_sum_gap(const HASystem &ha, const HACandidate &c, std::size_t p1, std::size_t p2) {
  if (ha.set(p1).intersects(ha.set(p2))) throw std::invalid_argument("approx_sum_gap: p1 p2 is not 0");
  auto sum = ha.find(ha.set(p1) | ha.set(p2));
  if (!sum) throw std::invalid_argument("approx_sum_gap: p1 + p2 is outside Sigma P");
  return uniform(c.phi[*sum], corrected_sum(c.phi[p1], c.phi[p2]));
}

ApproxSumSweep approx_sum_sweep(const HASystem &ha, const HACandidate &c, const Rational &delta) {
  ApproxSumSweep out;
  out.worst_gap = 0;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    for (std::size_t j = 0; j < ha.size(); ++j) {
      if (i == j || ha.set(i).intersects(ha.set(j)) || !ha.find(ha.set(i) | ha.set(j))) continue;
      ++out.pairs;
      Rational gap = approx_sum_gap(ha, c, i, j);
      if (gap > out.worst_gap || out.witness.empty()) {
        out.worst_gap = gap;
        out.witness = ha.label(i) + " | " + ha.label(j);
      }
    }
  }
  out.pass = out.worst_gap < 146 * delta;
  return out;
}

// ---- phi_0 and phi -------------------------------------------------------------------

Phi0 build_phi0(const CylinderSystem &cyl, const SpanBasis &basis, const std::vector<PartialPermutation> &sigma,
                const std::vector<std::uint32_t> &block_of, const Rational &delta) {
  const std::size_t d = block_of.size();
  const auto &projections = cyl.projections();
  const Rational dd = static_cast<long long>(d);
  Phi0 out;
  for (const auto &p : projections) out.approximate.push_back(approximate_cylinder(sigma, block_of, p.psi));
  for (std::size_t j = 0; j < projections.size(); ++j) {
    std::vector<Rational> diag(d, Rational(0));
    const auto &coeffs = basis.coefficients[j];
    for (std::size_t i = 0; i < basis.ell; ++i) {
      if (coeffs[i] == 0) continue;
      const PointSet &a = out.approximate[basis.members[i]];
      for (std::size_t k = a.find_first(); k != PointSet::npos; k = a.find_next(k)) diag[k] += coeffs[i];
    }
    out.diagonal.push_back(std::move(diag));
  }
  auto norm_sq = [&](const std::vector<Rational> &a, const std::vector<Rational> &b) -> Rational {
    Rational t = 0;
    for (std::size_t k = 0; k < d; ++k) t += (a[k] - b[k]) * (a[k] - b[k]);
    return t / dd;
  };

  PropertyReport &r = out.report;
  const Rational c3 = lemma_c3(f_pm_size(cyl), cyl.radius(), basis.ell, basis.kappa);
  const Rational k2 = basis.kappa * basis.kappa;
  const Rational l2 = Rational(static_cast<long long>(basis.ell * basis.ell));
  const Rational q = static_cast<long long>(cyl.q());
  r.delta0_sq = 9 * k2 * k2 * l2 * l2 * q * q * c3 * c3 * c3 * c3 * delta / (basis.gamma * basis.gamma);

  r.trace_gap = 0;
  for (std::size_t j = 0; j < projections.size(); ++j) {
    Rational tr = 0;
    for (const Rational &x : out.diagonal[j]) tr += x;
    r.trace_gap = std::max(r.trace_gap, Rational(abs(tr / dd - cyl.measure(projections[j].set))));
  }
  r.equivariance_gap_sq = 0;
  for (std::size_t s = 0; s < cyl.ball_size(); ++s) {
    for (std::size_t i = 1; i <= cyl.q(); ++i) {
      const auto &moved = out.diagonal[*cyl.projection_index(cyl.translate(s, i))];
      const auto &base = out.diagonal[cyl.projection_of(single_letter(cyl, 0, i))];
      std::vector<Rational> pushed(d, Rational(0));
      for (std::size_t k = 0; k < d; ++k) {
        const auto y = sigma[s](k);
        if (y != PartialPermutation::kUndefined) pushed[static_cast<std::size_t>(y)] = base[k];
      }
      r.equivariance_gap_sq = std::max(r.equivariance_gap_sq, norm_sq(moved, pushed));
    }
  }
  r.multiplicativity_gap_sq = 0;
  const std::vector<Rational> zero(d, Rational(0));
  for (std::size_t a = 0; a < projections.size(); ++a) {
    for (std::size_t b = a; b < projections.size(); ++b) {
      const PointSet meet = projections[a].set & projections[b].set;
      auto idx = cyl.projection_index(meet);
      if (!idx && meet.any()) throw std::logic_error("build_phi0: cylinder algebra not closed under products");
      const auto &lhs = idx ? out.diagonal[*idx] : zero;
      std::vector<Rational> prod(d);
      for (std::size_t k = 0; k < d; ++k) prod[k] = out.diagonal[a][k] * out.diagonal[b][k];
      r.multiplicativity_gap_sq = std::max(r.multiplicativity_gap_sq, norm_sq(lhs, prod));
    }
  }
  PointSet all(cyl.support_size());
  all.set();
  r.unit_gap_sq = norm_sq(out.diagonal[*cyl.projection_index(all)], std::vector<Rational>(d, Rational(1)));

  r.trace_ok = r.trace_gap * r.trace_gap < r.delta0_sq;
  r.equivariance_ok = r.equivariance_gap_sq < r.delta0_sq;
  r.multiplicativity_ok = r.multiplicativity_gap_sq < r.delta0_sq;
  r.unit_ok = r.unit_gap_sq < r.delta0_sq;
  return out;
}

PhiResult build_phi(const HASystem &ha, const SpanBasis &basis, const Phi0 &phi0, const std::vector<PartialPermutation> &sigma,
                    const Rational &delta) {
  const CylinderSystem &cyl = ha.cylinders();
  const auto &projections = cyl.projections();
  const std::size_t d = phi0.diagonal.front().size();
  PhiResult out;
  out.V = PointSet(d);
  out.V.set();
  for (std::size_t j = 0; j < projections.size(); ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      if (phi0.diagonal[j][k] != (phi0.approximate[j][k] ? 1 : 0)) out.V.reset(k);
    }
    for (std::size_t j2 = j; j2 < projections.size(); ++j2) {
      if (!projections[j].set.intersects(projections[j2].set)) out.V -= phi0.approximate[j] & phi0.approximate[j2];
    }
  }
  if (out.V.none()) throw std::runtime_error("build_phi: V is empty");
  out.v_fraction = frac(out.V.count(), d);

  const Rational c3 = lemma_c3(f_pm_size(cyl), cyl.radius(), basis.ell, basis.kappa);
  const Rational P = static_cast<long long>(projections.size());
  const Rational k = basis.kappa, g2 = basis.gamma * basis.gamma;
  const Rational k4 = k * k * k * k;
  out.v_bound = 1 - 2 * P * P * c3 * c3 * k4 * delta / g2;
  out.v_bound_ok = out.v_fraction >= out.v_bound;
  const Rational l2 = Rational(static_cast<long long>(basis.ell * basis.ell));
  const Rational q = static_cast<long long>(cyl.q());
  out.tolerance_sq = 81 * P * P * P * P * k4 * k4 * k * k * l2 * l2 * q * q * c3 * c3 * c3 * c3 * delta / (g2 * g2);

  out.candidate.sigma = sigma;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    if (i < ha.base_count()) {
      out.candidate.phi.push_back(projection_onto(phi0.approximate[i] & out.V));
      continue;
    }
    std::vector<PartialPermutation> parts;
    for (std::size_t j : ha.summands(i)) parts.push_back(out.candidate.phi[j]);
    out.candidate.phi.push_back(parts.empty() ? PartialPermutation(d) : orthogonal_sum(parts));
  }
  out.report = verify_ha(ha, out.candidate, out.tolerance_sq);
  return out;
}

// ---- exact instances -------------------------------------------------------------------

ExactInstance exact_instance(const HASystem &ha, std::size_t degree) {
  const CylinderSystem &cyl = ha.cylinders();
  const BernoulliModel &model = cyl.model();
  const GroupoidPtr &host = cyl.groupoid();
  ExactInstance out{regular_representation(model.crossed, degree), {}, {}, {}};
  const Representation &rep = out.rep;
  for (const PartialBisection &s : cyl.ball()) out.sigma.push_back(rep(model.action.lift(model.crossed, s)));
  for (std::size_t k = 0; k < rep.degree; ++k) {
    const PointId x = rep.point_unit[k];
    out.block_of.push_back(static_cast<std::uint32_t>(model.letter(x, host->unit_arrow(model.action.fiber_of(x)))));
  }
  std::vector<std::int64_t> support_index(model.action.point_count(), -1);
  for (std::size_t i = 0; i < cyl.support_size(); ++i) support_index[cyl.support()[i]] = static_cast<std::int64_t>(i);
  out.candidate.sigma = out.sigma;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    PointSet over(rep.degree);
    for (std::size_t k = 0; k < rep.degree; ++k) {
      const std::int64_t idx = support_index[rep.point_unit[k]];
      if (idx >= 0 && ha.set(i)[static_cast<std::size_t>(idx)]) over.set(k);
    }
    out.candidate.phi.push_back(projection_onto(over));
  }
  return out;
}

SoficCandidate exact_candidate(const SoficSource &source, const CylinderSystem &cyl, const Representation &rep) {
  if (source.kind() != SoficSource::Kind::groupoid) throw std::invalid_argument("exact_candidate: groupoid source required");
  const BernoulliModel &model = cyl.model();
  SoficCandidate out{rep.degree, {}};
  for (std::size_t i = 0; i < source.base_count(); ++i) {
    out.values.push_back(rep(model.action.lift(model.crossed, source.bisection(i))));
  }
  return out;
}

// ---- counting ---------------------------------------------------------------------------

namespace {

// Constraints of (i)-(iv) on phi with sigma fixed; each is checked once all
// of its elements are assigned.
struct PhiSearch {
  const HASystem &ha;
  const std::vector<PartialPermutation> &sigma;
  const Rational &delta;
  const std::vector<PartialPermutation> &space;
  std::uint64_t cap;
  std::uint64_t nodes = 0;

  struct Triple {
    std::size_t i, j, m;
  };
  struct Pair {
    std::size_t s, moved, base;
  };
  std::vector<std::vector<Triple>> mult_at;
  std::vector<std::vector<Pair>> equi_at;
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> choice;

  PhiSearch(const HASystem &h, const std::vector<PartialPermutation> &sg, const Rational &dl,
            const std::vector<PartialPermutation> &sp, std::uint64_t c)
      : ha(h), sigma(sg), delta(dl), space(sp), cap(c) {
    const std::size_t n = ha.size();
    mult_at.resize(n);
    equi_at.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t m = ha.intersection(i, j);
        if (m < 0) continue;
        const std::size_t level = std::max({i, j, static_cast<std::size_t>(m)});
        mult_at[level].push_back({i, j, static_cast<std::size_t>(m)});
      }
    }
    const CylinderSystem &cyl = ha.cylinders();
    for (std::size_t s = 0; s < cyl.ball_size(); ++s) {
      for (std::size_t i = 1; i <= cyl.q(); ++i) {
        const std::size_t a = ha.translate(s, i), b = ha.partition_element(i);
        equi_at[std::max(a, b)].push_back({s, a, b});
      }
    }
    const std::size_t d = space.front().degree();
    const PartialPermutation id = PartialPermutation::identity(d);
    candidates.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t v = 0; v < space.size(); ++v) {
        const PartialPermutation &x = space[v];
        if (e < ha.base_count() && !(abs(x.trace() - ha.measure(e)) < delta)) continue;
        if (e == ha.full() && !(uniform(x, id) < delta)) continue;
        candidates[e].push_back(v);
      }
    }
    choice.assign(n, 0);
  }

  bool ok(std::size_t level) const {
    for (const Triple &t : mult_at[level]) {
      if (!(uniform(space[choice[t.m]], compose(space[choice[t.i]], space[choice[t.j]])) < delta)) return false;
    }
    for (const Pair &p : equi_at[level]) {
      if (!(uniform(space[choice[p.moved]], conjugate_by(sigma[p.s], space[choice[p.base]])) < delta)) return false;
    }
    return true;
  }

  void run(std::size_t level, const std::function<void(const std::vector<std::size_t> &)> &emit) {
    if (level == choice.size()) {
      emit(choice);
      return;
    }
    for (std::size_t v : candidates[level]) {
      if (++nodes > cap) throw InfeasibleError("ha_statistic: node cap exceeded", BigInt(nodes), BigInt(cap));
      choice[level] = v;
      if (ok(level)) run(level + 1, emit);
    }
  }
};

} // namespace

HAStatistic ha_statistic(const HASystem &ha, const SAParams &p, const std::vector<std::size_t> &E, std::vector<std::size_t> Q,
                         const HAEnumerationOptions &opt) {
  const CylinderSystem &cyl = ha.cylinders();
  const SoficSource &source = *p.source;
  if (Q.empty()) {
    for (std::size_t i = 1; i <= cyl.q(); ++i) Q.push_back(ha.partition_element(i));
  }
  std::vector<std::size_t> ball_index;
  for (const PartialBisection &s : cyl.ball()) {
    auto idx = source.find(s);
    if (!idx) throw std::invalid_argument("ha_statistic: the source does not contain " + s.to_string());
    ball_index.push_back(*idx);
  }
  const std::vector<std::size_t> &restrict_to = E.empty() ? source.generators() : E;

  EnumerationOptions sa_opt = opt.sa;
  sa_opt.collect_members = true;
  const EnumerationResult members = enumerate_sa(p, sa_opt);

  std::vector<PartialPermutation> space;
  for_each_partial_permutation(p.d, [&](const PartialPermutation &x) { space.push_back(x); });

  std::set<std::vector<PartialPermutation>> sa_keys, ha_keys;
  HAStatistic out;
  std::uint64_t budget = opt.cap;
  for (const SoficCandidate &m : members.members) {
    const Extension ext = extend(source, m);
    std::vector<PartialPermutation> key;
    for (std::size_t e : restrict_to) key.push_back(ext.values.at(e));
    sa_keys.insert(key);
    std::vector<PartialPermutation> sigma;
    for (std::size_t i : ball_index) sigma.push_back(ext.values[i]);
    PhiSearch search(ha, sigma, p.delta, space, budget);
    search.run(0, [&](const std::vector<std::size_t> &choice) {
      ++out.pairs;
      std::vector<PartialPermutation> k = key;
      for (std::size_t q : Q) k.push_back(space[choice[q]]);
      ha_keys.insert(std::move(k));
    });
    budget -= std::min(budget, search.nodes);
  }
  out.count = ha_keys.size();
  out.sa_count = sa_keys.size();
  out.statistic = restricted_statistic_value(out.count, p.d);
  out.bound = pow(BigInt(static_cast<unsigned long long>(Q.size())), static_cast<unsigned>(p.d)) *
              BigInt(static_cast<unsigned long long>(out.sa_count));
  out.bound_holds = BigInt(static_cast<unsigned long long>(out.count)) <= out.bound;
  return out;
}

} // namespace sofic
