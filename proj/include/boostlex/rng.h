#ifndef BOOSTLEX_RNG_H_
#define BOOSTLEX_RNG_H_

#include <cstdint>
#include <span>
#include <utility>

namespace boostlex {

// PCG32 (XSH-RR variant, 64-bit state, 32-bit output). The output sequence
// for a given (seed, stream) is identical on every platform, which keeps
// splits and folds bit-reproducible.
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x5851f42d4c957f2dULL);

  std::uint32_t next();

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint32_t bounded(std::uint32_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

// Fisher-Yates shuffle driven by Pcg32.
template <typename T>
void shuffle(std::span<T> items, Pcg32& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = rng.bounded(static_cast<std::uint32_t>(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace boostlex

#endif  // BOOSTLEX_RNG_H_
