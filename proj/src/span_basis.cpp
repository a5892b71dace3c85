#include <algorithm>
#include <set>

#include "sofic/partitions.hpp"

namespace sofic {

namespace {

constexpr std::size_t kSubsetCap = 20;

// Distinct nonzero subset sums of the nonzero coefficients.
std::set<Rational> subset_sums(const std::vector<Rational> &coeffs) {
  std::vector<Rational> nz;
  for (const Rational &a : coeffs) {
    if (a != 0) nz.push_back(a);
  }
  if (nz.size() > kSubsetCap) throw CapError("span_basis: too many nonzero coefficients for subset sums");
  std::set<Rational> sums{Rational(0)};
  for (const Rational &a : nz) {
    std::set<Rational> next = sums;
    for (const Rational &s : sums) next.insert(s + a);
    sums = std::move(next);
  }
  return sums;
}

} // namespace

SpanBasis span_basis(const CylinderSystem &cyl) {
  const auto &projections = cyl.projections();
  const std::size_t dim = cyl.support_size();

  struct Row {
    std::vector<Rational> v;  // reduced vector, 1 at pivot
    std::size_t pivot;
    std::vector<Rational> combo;  // v as a combination of basis members
  };
  std::vector<Row> rows;
  SpanBasis out;
  std::vector<std::vector<Rational>> raw_coeffs(projections.size());

  auto pad = [](std::vector<Rational> c, std::size_t n) {
    c.resize(n, Rational(0));
    return c;
  };

  for (std::size_t j = 0; j < projections.size(); ++j) {
    std::vector<Rational> v(dim, Rational(0));
    const PointSet &set = projections[j].set;
    for (std::size_t k = set.find_first(); k != PointSet::npos; k = set.find_next(k)) v[k] = 1;
    std::vector<Rational> combo;  // sum of a_k combo_k subtracted so far
    for (const Row &r : rows) {
      const Rational a = v[r.pivot];
      if (a == 0) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        if (r.v[k] != 0) v[k] -= a * r.v[k];
      }
      combo = pad(std::move(combo), out.members.size());
      for (std::size_t k = 0; k < r.combo.size(); ++k) combo[k] += a * r.combo[k];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational &x) { return x != 0; });
    if (nz == v.end()) {
      raw_coeffs[j] = std::move(combo);
      continue;
    }
    const std::size_t pivot = static_cast<std::size_t>(nz - v.begin());
    const Rational scale = v[pivot];
    const std::size_t id = out.members.size();
    out.members.push_back(j);
    Row row{std::move(v), pivot, pad(std::move(combo), id + 1)};
    for (auto &x : row.v) x /= scale;
    for (std::size_t k = 0; k < id; ++k) row.combo[k] = -row.combo[k] / scale;
    row.combo[id] = 1 / scale;
    rows.push_back(std::move(row));
    std::vector<Rational> unit(id + 1, Rational(0));
    unit[id] = 1;
    raw_coeffs[j] = std::move(unit);
  }

  out.ell = out.members.size();
  if (out.ell == 0) throw std::invalid_argument("span_basis: every cylinder has measure zero");
  out.kappa = 1;
  out.gamma1 = 1;
  out.gamma2 = 1;
  for (auto &c : raw_coeffs) {
    c = pad(std::move(c), out.ell);
    for (const Rational &a : c) out.kappa = std::max(out.kappa, Rational(abs(a)));
    for (const Rational &s : subset_sums(c)) {
      if (s != 0) out.gamma1 = std::min(out.gamma1, Rational(abs(s)));
      if (s != 1) out.gamma2 = std::min(out.gamma2, Rational(abs(s - 1)));
    }
  }
  // Products of two nonzero subset sums: the minimum is gamma1 squared.
  out.gamma3 = out.gamma1 * out.gamma1;
  out.gamma = std::min({out.gamma1, out.gamma2, out.gamma3});
  out.coefficients = std::move(raw_coeffs);
  return out;
}

} // namespace sofic
