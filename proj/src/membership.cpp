#include "sofic/sofic.hpp"

#include <cmath>

namespace sofic {

SAParams make_params(SourcePtr source, Rational delta, std::size_t d) {
  SAParams p;
  p.space = source->kind() == SoficSource::Kind::group ? CandidateSpace::total : CandidateSpace::partial;
  p.source = std::move(source);
  p.delta = std::move(delta);
  p.d = d;
  return p;
}

Extension extend(const SoficSource &source, const SoficCandidate &sigma) {
  if (sigma.values.size() != source.base_count()) {
    throw std::invalid_argument("candidate has " + std::to_string(sigma.values.size()) + " values, source has " +
                                std::to_string(source.base_count()) + " base elements");
  }
  Extension ext;
  ext.values = sigma.values;
  for (std::size_t i = source.base_count(); i < source.size(); ++i) {
    const auto &parts = source.summands(i);
    PartialPermutation acc = sigma.values[parts[0]];
    bool clash = false;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const PartialPermutation &next = sigma.values[parts[k]];
      clash = clash || !orthogonal(acc, next);
      acc = corrected_sum(acc, next);
    }
    ext.overlapping_sums += clash;
    ext.values.push_back(std::move(acc));
  }
  return ext;
}

MembershipReport verify_membership(const SAParams &p, const SoficCandidate &sigma) {
  const SoficSource &src = *p.source;
  if (sigma.degree != p.d) throw DegreeMismatch("candidate degree differs from parameters");
  for (const auto &v : sigma.values) {
    if (v.degree() != p.d) throw DegreeMismatch("candidate value has the wrong degree");
  }
  Extension ext = extend(src, sigma);
  MembershipReport rep;
  rep.delta = p.delta;
  rep.degree = p.d;
  rep.overlapping_sums = ext.overlapping_sums;
  const long long d = static_cast<long long>(p.d);

  std::size_t worst_count = 0;
  bool have_pair = false;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < src.size(); ++j) {
      std::int64_t k = src.product(i, j);
      if (k < 0) continue;
      ++rep.pairs_checked;
      std::size_t c = disagreement_count(ext.values[static_cast<std::size_t>(k)], compose(ext.values[i], ext.values[j]));
      if (!have_pair || c > worst_count) {
        worst_count = c;
        have_pair = true;
        rep.multiplicativity_witness = std::make_pair(i, j);
      }
    }
  }
  rep.worst_multiplicativity_gap = Rational(static_cast<long long>(worst_count), d);

  bool have_trace = false;
  for (std::size_t i = 0; i < src.base_count(); ++i) {
    Rational gap = abs(ext.values[i].trace() - src.trace(i));
    if (!have_trace || gap > rep.worst_trace_gap) {
      rep.worst_trace_gap = gap;
      rep.trace_witness = i;
      have_trace = true;
    }
  }
  rep.is_member = rep.worst_multiplicativity_gap < p.delta && rep.worst_trace_gap < p.delta;
  if (rep.multiplicativity_witness) {
    rep.witness_labels.push_back(src.label(rep.multiplicativity_witness->first));
    rep.witness_labels.push_back(src.label(rep.multiplicativity_witness->second));
  }
  if (rep.trace_witness) rep.witness_labels.push_back(src.label(*rep.trace_witness));
  return rep;
}

double restricted_statistic_value(std::uint64_t count, std::size_t d) {
  if (count == 0) return -std::numeric_limits<double>::infinity();
  if (count <= 1) return 0.0;
  if (d < 2) return std::numeric_limits<double>::quiet_NaN();
  const double dd = static_cast<double>(d);
  return std::log(static_cast<double>(count)) / (dd * std::log(dd));
}

std::uint64_t count_sa(const SAParams &p, const EnumerationOptions &opt) { return enumerate_sa(p, opt).count; }

RestrictedStatistic restricted_statistic(const SAParams &p, const std::vector<std::size_t> &E, const EnumerationOptions &opt) {
  EnumerationOptions o = opt;
  o.restrict_to = E;
  EnumerationResult r = enumerate_sa(p, o);
  return {r.restricted_count, restricted_statistic_value(r.restricted_count, p.d)};
}

} // namespace sofic
