#include <algorithm>
#include <sstream>

#include "sofic/partitions.hpp"

namespace sofic {

CylinderSystem::CylinderSystem(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n,
                               std::vector<Rational> mu0, std::size_t point_cap)
    : g_(g), F_(F), n_(n), mu0_(std::move(mu0)), ball_(bisection_ball(g, F, n)),
      model_(bernoulli_crossed_product(g, mu0_, point_cap)) {
  if (mu0_.size() > 250) throw std::invalid_argument("CylinderSystem: alphabet too large");
  if (ball_.size() > kProfileCap) {
    throw CapError("CylinderSystem: |F^n_pm| = " + std::to_string(ball_.size()) + " exceeds " +
                   std::to_string(kProfileCap));
  }
  const FibredAction &a = model_.action;
  for (std::size_t x = 0; x < a.point_count(); ++x) {
    Rational w = a.point_measure(static_cast<PointId>(x));
    if (w > 0) {
      support_.push_back(static_cast<PointId>(x));
      weights_.push_back(std::move(w));
    }
  }
  if (support_.empty()) throw std::invalid_argument("CylinderSystem: all points have measure zero");

  // y lies in s B_i iff p(y) is in ran s and y reads i at the arrow of s ending at p(y).
  translates_.assign(ball_.size() * q(), PointSet(support_.size()));
  for (std::size_t s = 0; s < ball_.size(); ++s) {
    for (std::size_t k = 0; k < support_.size(); ++k) {
      const PointId y = support_[k];
      const ArrowId arrow = ball_[s].at_range(a.fiber_of(y));
      if (arrow == kNoArrow) continue;
      translates_[s * q() + model_.letter(y, arrow)].set(k);
    }
  }

  for (const Psi &psi : all_psis()) {
    PointSet set = cylinder(psi);
    if (projection_lookup_.emplace(set, projections_.size()).second) projections_.push_back({std::move(set), psi});
  }
}

PointSet CylinderSystem::cylinder(const Psi &psi) const {
  if (psi.size() != ball_.size()) throw std::invalid_argument("cylinder: psi has the wrong length");
  PointSet out(support_.size());
  out.set();
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0) continue;
    if (psi[s] > q()) throw std::invalid_argument("cylinder: letter out of range");
    out &= translate(s, psi[s]);
  }
  return out;
}

Rational CylinderSystem::measure(const PointSet &set) const {
  Rational total = 0;
  for (std::size_t k = set.find_first(); k != PointSet::npos; k = set.find_next(k)) total += weights_[k];
  return total;
}

Rational CylinderSystem::cylinder_measure_closed_form(const Psi &psi) const {
  std::vector<PartialBisection> F0;
  std::vector<std::uint8_t> letters;
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0) continue;
    F0.push_back(ball_[s]);
    letters.push_back(psi[s]);
  }
  if (F0.empty()) return 1;
  // Coinciding arrows must carry the same letter; distinct arrows are independent.
  Rational total = 0;
  for_each_set_partition(F0.size(), [&](const SetPartition &pi) {
    std::vector<int> block_letter(block_count(pi), -1);
    for (std::size_t i = 0; i < pi.size(); ++i) {
      int &b = block_letter[pi[i]];
      if (b == -1) b = letters[i];
      else if (b != letters[i]) return;
    }
    Rational w = profile_measure(F0, pi);
    if (w == 0) return;
    for (int b : block_letter) w *= mu0_[b - 1];
    total += w;
  });
  return total;
}

std::vector<Psi> CylinderSystem::all_psis() const {
  std::vector<Psi> out;
  Psi cur(ball_.size(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t pos = cur.size();
    while (pos > 0 && cur[pos - 1] == q()) cur[--pos] = 0;
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

std::string CylinderSystem::psi_label(const Psi &psi) const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0) continue;
    if (!first) os << ", ";
    first = false;
    os << ball_[s].to_string() << "->" << static_cast<int>(psi[s]);
  }
  os << ']';
  return os.str();
}

std::optional<std::size_t> CylinderSystem::projection_index(const PointSet &set) const {
  auto it = projection_lookup_.find(set);
  if (it == projection_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t CylinderSystem::projection_of(const Psi &psi) const { return *projection_index(cylinder(psi)); }

std::vector<PartialPermutation> sigma_on_ball(const CylinderSystem &cyl, const SoficSource &source,
                                              const SoficCandidate &sigma) {
  const Extension ext = extend(source, sigma);
  std::vector<PartialPermutation> out;
  for (const PartialBisection &s : cyl.ball()) {
    auto idx = source.find(s);
    if (!idx) throw std::invalid_argument("sigma_on_ball: " + s.to_string() + " is not in the source");
    out.push_back(ext.values[*idx]);
  }
  return out;
}

PointSet approximate_cylinder(const std::vector<PartialPermutation> &sigma, const std::vector<std::uint32_t> &block_of,
                              const Psi &psi) {
  if (sigma.size() != psi.size()) throw std::invalid_argument("approximate_cylinder: psi has the wrong length");
  const std::size_t d = block_of.size();
  PointSet out(d);
  out.set();
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0) continue;
    PointSet image(d);
    for (std::size_t k = 0; k < d; ++k) {
      if (block_of[k] + 1 != psi[s]) continue;
      const auto y = sigma[s](k);
      if (y != PartialPermutation::kUndefined) image.set(static_cast<std::size_t>(y));
    }
    out &= image;
  }
  return out;
}

} // namespace sofic
