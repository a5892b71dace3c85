#include "sofic/kernel.hpp"

namespace sofic::kernel {

PackedPerm pack(const PartialPermutation &p) {
  if (p.degree() > kMaxDegree) throw std::invalid_argument("kernel degree limit is " + std::to_string(kMaxDegree));
  PackedPerm out;
  for (std::size_t x = 0; x < p.degree(); ++x) {
    if (!p.defined_at(x)) continue;
    const auto y = static_cast<std::uint8_t>(p(x));
    out.img[x] = y;
    out.dom |= 1u << x;
    out.ran |= 1u << y;
    out.fix += y == x;
  }
  return out;
}

PartialPermutation unpack(const PackedPerm &p, std::size_t d) {
  std::vector<std::int32_t> img(d, PartialPermutation::kUndefined);
  for (std::size_t x = 0; x < d; ++x) {
    if (p.img[x] != kNone) img[x] = p.img[x];
  }
  return PartialPermutation(d, std::move(img));
}

std::vector<PackedPerm> candidate_space(std::size_t d, CandidateSpace space) {
  if (d > kMaxDegree) throw std::invalid_argument("kernel degree limit is " + std::to_string(kMaxDegree));
  std::vector<PackedPerm> out;
  auto push = [&](const PartialPermutation &p) { out.push_back(pack(p)); };
  if (space == CandidateSpace::total) {
    for_each_permutation(d, push);
  } else {
    for_each_partial_permutation(d, push);
  }
  return out;
}

CompiledProblem::CompiledProblem(const SAParams &p) : d(p.d) {
  const SoficSource &src = *p.source;
  if (d == 0) throw std::invalid_argument("degree must be positive");
  if (d > kMaxDegree) throw std::invalid_argument("kernel degree limit is " + std::to_string(kMaxDegree));
  if (p.delta <= 0) throw std::invalid_argument("delta must be positive");
  base = src.base_count();
  total = src.size();
  summands.resize(total);
  for (std::size_t i = base; i < total; ++i) {
    for (std::size_t s : src.summands(i)) summands[i].push_back(static_cast<std::uint32_t>(s));
  }
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      std::int64_t k = src.product(i, j);
      if (k >= 0) constraints.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)});
    }
  }
  idempotent.assign(total, 0);
  for (const Constraint &c : constraints) {
    if (c.i == c.j && c.j == c.k) idempotent[c.i] = 1;
  }
  fix_ok.assign(base, std::vector<char>(d + 1, 0));
  const Rational dd(static_cast<long long>(d));
  for (std::size_t i = 0; i < base; ++i) {
    for (std::size_t f = 0; f <= d; ++f) fix_ok[i][f] = abs(Rational(static_cast<long long>(f)) / dd - src.trace(i)) < p.delta;
  }
  // largest c with c/d < delta
  BigInt num = numerator(p.delta) * BigInt(static_cast<long long>(d));
  BigInt den = denominator(p.delta);
  BigInt c = (num + den - 1) / den - 1;
  if (c > BigInt(static_cast<long long>(d))) c = static_cast<long long>(d);
  max_gap = c.convert_to<std::int64_t>();
}

bool CompiledProblem::unary_ok(std::size_t i, const PackedPerm &v) const {
  if (!fix_ok[i][v.fix]) return false;
  return !idempotent[i] || static_cast<std::int64_t>(product_gap(v, v, v, d)) <= max_gap;
}

void CompiledProblem::derive_sums(std::vector<PackedPerm> &values) const {
  for (std::size_t i = base; i < total; ++i) {
    PackedPerm acc = values[summands[i][0]];
    for (std::size_t k = 1; k < summands[i].size(); ++k) corrected_add(acc, values[summands[i][k]], d);
    values[i] = acc;
  }
}

bool CompiledProblem::all_ok(std::vector<PackedPerm> &values) const {
  for (std::size_t i = 0; i < base; ++i) {
    if (!fix_ok[i][values[i].fix]) return false;
  }
  derive_sums(values);
  for (const Constraint &c : constraints) {
    if (static_cast<std::int64_t>(product_gap(values[c.k], values[c.i], values[c.j], d)) > max_gap) return false;
  }
  return true;
}

} // namespace sofic::kernel
