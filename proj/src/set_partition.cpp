#include "sofic/set_partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace sofic {

namespace {

void rgs(std::size_t n, SetPartition &cur, std::uint8_t max_block, const std::function<void(const SetPartition &)> &f) {
  if (cur.size() == n) {
    f(cur);
    return;
  }
  for (std::uint8_t b = 0; b <= max_block; ++b) {
    cur.push_back(b);
    rgs(n, cur, b == max_block ? static_cast<std::uint8_t>(max_block + 1) : max_block, f);
    cur.pop_back();
  }
}

} // namespace

void for_each_set_partition(std::size_t n, const std::function<void(const SetPartition &)> &f) {
  if (n > 250) throw std::invalid_argument("set partitions limited to 250 elements");
  SetPartition cur;
  cur.reserve(n);
  rgs(n, cur, 0, f);
}

std::size_t block_count(const SetPartition &pi) {
  return pi.empty() ? 0 : static_cast<std::size_t>(*std::max_element(pi.begin(), pi.end())) + 1;
}

BigInt bell_number(std::size_t n) {
  if (n > 2000) throw std::invalid_argument("bell_number: argument too large");
  std::vector<BigInt> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> next{row.back()};
    for (const BigInt &x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

} // namespace sofic
