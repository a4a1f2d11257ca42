#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mcct {

// Counter-based splittable PRNG (splitmix64 core). A stream derived from a
// (master seed, stream index) pair depends only on that pair, so parallel and
// serial consumers see identical sequences sample for sample.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  static RandomStream substream(std::uint64_t master, std::uint64_t index);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit();

  // Uniform in [-1, 1).
  double next_symmetric();

  // Exponential with rate 1, strictly positive.
  double next_exponential();

 private:
  std::uint64_t state_;
};

// Inverse-CDF draw from a finite distribution given u in [0, 1). Tolerates
// rows whose sum is slightly below 1 by falling back to the last positive
// entry.
std::size_t sample_categorical(std::span<const double> probs, double u);

}  // namespace mcct
