#ifndef SOFIC_SOURCE_HPP_
#define SOFIC_SOURCE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sofic/groupoid.hpp"
#include "sofic/wordball.hpp"

namespace sofic {

// The finite piece of the source object a sofic approximation is tested on:
// the base elements F^n_pm (indices 0..base_count()-1, with traces), then the
// sums of pairwise orthogonal base elements with at most sum_bound summands
// that are not already base elements. Each sum keeps the first decomposition
// found in lexicographic order of summand indices.
class SoficSource {
 public:
  enum class Kind { group, groupoid };

  static std::shared_ptr<const SoficSource> from_ball(const Ball &ball, std::size_t sum_bound);
  // F^n_pm is closed up to radius n (stopping early once products saturate).
  static std::shared_ptr<const SoficSource> from_groupoid(const GroupoidPtr &g, const std::vector<PartialBisection> &F,
                                                          std::size_t n, std::size_t sum_bound, std::size_t cap = 4096);

  Kind kind() const { return kind_; }
  std::size_t base_count() const { return base_count_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t radius() const { return radius_; }
  std::size_t sum_bound() const { return sum_bound_; }
  std::size_t identity() const { return identity_; }
  // Indices of F among the base elements.
  const std::vector<std::size_t> &generators() const { return generators_; }
  const std::vector<std::size_t> &summands(std::size_t i) const { return summands_[i]; }
  bool is_sum(std::size_t i) const { return i >= base_count_; }
  const Rational &trace(std::size_t i) const { return traces_.at(i); }
  // Index of e_i e_j when it lies in the set, else -1.
  std::int64_t product(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  const std::string &label(std::size_t i) const { return labels_[i]; }
  std::string describe() const { return description_; }

  // groupoid sources
  const GroupoidPtr &groupoid() const { return groupoid_; }
  const PartialBisection &bisection(std::size_t i) const { return bisections_.at(i); }
  std::optional<std::size_t> find(const PartialBisection &s) const;

  // group sources
  const Ball *ball() const { return ball_ ? &*ball_ : nullptr; }

 private:
  SoficSource() = default;
  void build_table(const std::function<std::optional<std::size_t>(std::size_t, std::size_t)> &mult);

  Kind kind_ = Kind::group;
  std::size_t base_count_ = 0;
  std::size_t radius_ = 0;
  std::size_t sum_bound_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<std::size_t>> summands_;
  std::vector<Rational> traces_;
  std::vector<std::int64_t> table_;
  std::vector<std::string> labels_;
  std::string description_;

  GroupoidPtr groupoid_;
  std::vector<PartialBisection> bisections_;
  std::unordered_map<PartialBisection, std::size_t, PartialBisectionHash> index_;

  std::optional<Ball> ball_;
};

using SourcePtr = std::shared_ptr<const SoficSource>;

// Products of at most n elements of F, F^-1 and the identity, in BFS order
// starting with the identity.
std::vector<PartialBisection> bisection_ball(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n,
                                             std::size_t cap = 4096);

} // namespace sofic

#endif // SOFIC_SOURCE_HPP_
