#ifndef SOFIC_RNG_HPP_
#define SOFIC_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace sofic {

// Portable seeded generator.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The std:: distributions are implementation-defined, so bounded
// integers and unit doubles are derived here by hand: integers by rejection
// sampling on the raw 64-bit output, doubles from the top 53 bits. The same
// seed therefore gives the same stream on every conforming toolchain.
//
// Independent sub-streams (one per trial, per partition, ...) are obtained by
// mixing (seed, index) through SplitMix64, so results never depend on how
// work is split across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace sofic

#endif // SOFIC_RNG_HPP_
