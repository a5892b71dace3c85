#ifndef SOFIC_TESTS_HELPERS_HPP_
#define SOFIC_TESTS_HELPERS_HPP_

#include <string>
#include <vector>

#include "sofic/pperm.hpp"
#include "sofic/rng.hpp"

namespace testing_helpers {

// Uniform random injection from a random subset: each point is kept with
// probability 1/2, images drawn from a shuffled range.
inline sofic::PartialPermutation random_pperm(std::size_t d, sofic::Rng &rng) {
  std::vector<std::int32_t> targets(d);
  for (std::size_t i = 0; i < d; ++i) targets[i] = static_cast<std::int32_t>(i);
  rng.shuffle(targets);
  std::vector<std::int32_t> img(d, sofic::PartialPermutation::kUndefined);
  for (std::size_t x = 0; x < d; ++x) {
    if (rng.below(2)) img[x] = targets[x];
  }
  return sofic::PartialPermutation(d, std::move(img));
}

inline sofic::PartialPermutation random_permutation(std::size_t d, sofic::Rng &rng) {
  std::vector<std::int32_t> img(d);
  for (std::size_t i = 0; i < d; ++i) img[i] = static_cast<std::int32_t>(i);
  rng.shuffle(img);
  return sofic::PartialPermutation(d, std::move(img));
}

inline std::string data_file(const std::string &name) { return std::string(SOFIC_DATA_DIR) + "/" + name; }

} // namespace testing_helpers

#endif // SOFIC_TESTS_HELPERS_HPP_
