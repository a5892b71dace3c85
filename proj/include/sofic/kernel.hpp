#ifndef SOFIC_KERNEL_HPP_
#define SOFIC_KERNEL_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "sofic/pperm.hpp"
#include "sofic/sofic.hpp"

// Fixed-width partial permutations and a compiled form of the SA membership
// test, shared by the enumerators and the Monte Carlo estimator.
namespace sofic::kernel {

inline constexpr std::size_t kMaxDegree = 32;
inline constexpr std::uint8_t kNone = 0xFF;
// Largest per-element candidate list the enumerator materialises.
inline constexpr std::uint64_t kCandidateCap = 4'000'000;

struct PackedPerm {
  std::array<std::uint8_t, kMaxDegree> img;
  std::uint32_t dom = 0;
  std::uint32_t ran = 0;
  std::uint8_t fix = 0;

  PackedPerm() { img.fill(kNone); }
};

PackedPerm pack(const PartialPermutation &p);
PartialPermutation unpack(const PackedPerm &p, std::size_t d);

// number of x with k(x) != s(t(x))
inline std::size_t product_gap(const PackedPerm &k, const PackedPerm &s, const PackedPerm &t, std::size_t d) {
  std::size_t gap = 0;
  for (std::size_t x = 0; x < d; ++x) {
    const std::uint8_t y = t.img[x];
    const std::uint8_t z = y == kNone ? kNone : s.img[y];
    gap += z != k.img[x];
  }
  return gap;
}

inline void corrected_add(PackedPerm &acc, const PackedPerm &t, std::size_t d) {
  for (std::size_t x = 0; x < d; ++x) {
    const std::uint8_t y = t.img[x];
    if (y == kNone || acc.img[x] != kNone || ((acc.ran >> y) & 1u)) continue;
    acc.img[x] = y;
    acc.dom |= 1u << x;
    acc.ran |= 1u << y;
    acc.fix += y == x;
  }
}

// Every element of [[d]] (or Sym(d)) in the order of for_each_partial_permutation.
std::vector<PackedPerm> candidate_space(std::size_t d, CandidateSpace space);

struct Constraint {
  std::uint32_t i, j, k;  // sigma(k) ~ sigma(i) sigma(j)
};

// SAParams lowered to integer tests.
struct CompiledProblem {
  std::size_t d = 0;
  std::size_t base = 0;
  std::size_t total = 0;
  std::vector<std::vector<std::uint32_t>> summands;  // per element; empty for base
  std::vector<Constraint> constraints;
  std::vector<std::vector<char>> fix_ok;  // fix_ok[i][f]: trace test for base i
  std::vector<char> idempotent;           // e_i e_i = e_i
  std::int64_t max_gap = -1;              // largest disagreement count below delta*d

  explicit CompiledProblem(const SAParams &p);

  bool unary_ok(std::size_t i, const PackedPerm &v) const;
  void derive_sums(std::vector<PackedPerm> &values) const;
  bool all_ok(std::vector<PackedPerm> &values) const;
};

} // namespace sofic::kernel

#endif // SOFIC_KERNEL_HPP_
