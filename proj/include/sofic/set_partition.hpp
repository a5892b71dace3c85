#ifndef SOFIC_SET_PARTITION_HPP_
#define SOFIC_SET_PARTITION_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic {

// Set partitions of {0..n-1} as restricted growth strings: block[i] is the
// block of element i, blocks numbered in order of first appearance.
using SetPartition = std::vector<std::uint8_t>;

void for_each_set_partition(std::size_t n, const std::function<void(const SetPartition &)> &f);
std::size_t block_count(const SetPartition &pi);

// Bell numbers by the Bell triangle.
BigInt bell_number(std::size_t n);

} // namespace sofic

#endif // SOFIC_SET_PARTITION_HPP_
