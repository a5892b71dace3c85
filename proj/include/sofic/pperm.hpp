#ifndef SOFIC_PPERM_HPP_
#define SOFIC_PPERM_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sofic/rational.hpp"

namespace sofic {

class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A partial permutation of {0, ..., d-1}. Points are 0-based internally and
// 1-based in the text form "d:[i1->j1, i2->j2]".
//
// Composition is functional: compose(s, t)(x) = s(t(x)), so t acts first.
class PartialPermutation {
 public:
  static constexpr std::int32_t kUndefined = -1;

  PartialPermutation() = default;
  // The empty map on d points.
  explicit PartialPermutation(std::size_t degree);
  // images[x] is the image of x or kUndefined. Throws if not injective.
  PartialPermutation(std::size_t degree, std::vector<std::int32_t> images);

  static PartialPermutation identity(std::size_t degree);
  static PartialPermutation projection(std::size_t degree, const std::vector<std::size_t> &points);

  std::size_t degree() const { return images_.size(); }
  std::int32_t operator()(std::size_t x) const { return images_[x]; }
  bool defined_at(std::size_t x) const { return images_[x] != kUndefined; }
  const std::vector<std::int32_t> &images() const { return images_; }

  const boost::dynamic_bitset<> &domain() const { return dom_; }
  const boost::dynamic_bitset<> &range() const { return ran_; }
  std::size_t rank() const { return dom_.count(); }
  std::size_t fixed_point_count() const;
  std::vector<std::size_t> fixed_points() const;
  bool is_total() const { return rank() == degree(); }
  bool is_projection() const;

  PartialPermutation inverse() const;
  // Trace normalised by the degree.
  Rational trace() const;

  // Restriction to points in `keep`, on the domain side (s p_keep).
  PartialPermutation restrict_domain(const boost::dynamic_bitset<> &keep) const;

  std::string to_string() const;
  static PartialPermutation parse(std::string_view text);

  friend bool operator==(const PartialPermutation &a, const PartialPermutation &b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const PartialPermutation &a, const PartialPermutation &b) {
    return a.images_ < b.images_;
  }

 private:
  void rebuild_masks();

  std::vector<std::int32_t> images_;
  boost::dynamic_bitset<> dom_;
  boost::dynamic_bitset<> ran_;
};

PartialPermutation compose(const PartialPermutation &s, const PartialPermutation &t);

struct Distances {
  Rational uniform;      // fraction of points where s and t disagree
  Rational two_norm_sq;  // tr(s^-1 s) + tr(t^-1 t) - 2 tr(s t^-1)
};

// Disagreement counts "defined vs undefined" as a disagreement and "both
// undefined" as agreement.
Distances distances(const PartialPermutation &s, const PartialPermutation &t);
std::size_t disagreement_count(const PartialPermutation &s, const PartialPermutation &t);

bool orthogonal(const PartialPermutation &s, const PartialPermutation &t);

// Union of maps with pairwise disjoint domains and ranges; throws
// OverlapError otherwise.
PartialPermutation orthogonal_sum(const std::vector<PartialPermutation> &parts);

// s + t restricted so that t only contributes off dom(s) and off ran(s).
// Equals the orthogonal sum when s and t are orthogonal.
PartialPermutation corrected_sum(const PartialPermutation &s, const PartialPermutation &t);

// Calls f on every element of [[d]] in a fixed order (by rank, then
// lexicographically by domain, range and matching).
void for_each_partial_permutation(std::size_t d, const std::function<void(const PartialPermutation &)> &f);
void for_each_permutation(std::size_t d, const std::function<void(const PartialPermutation &)> &f);

// Conjugation pi s pi^-1 by a total permutation.
PartialPermutation conjugate(const PartialPermutation &s, const PartialPermutation &pi);

struct PartialPermutationHash {
  std::size_t operator()(const PartialPermutation &p) const;
};

} // namespace sofic

#endif // SOFIC_PPERM_HPP_
