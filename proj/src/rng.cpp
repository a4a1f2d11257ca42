#include "mcct/rng.hpp"

#include <cmath>

namespace mcct {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream RandomStream::substream(std::uint64_t master, std::uint64_t index) {
  // Decorrelate the master seed and the counter before mixing so that
  // (master, index) and (master + 1, index - 1) do not collide.
  return RandomStream(mix64(mix64(master + kGolden) + (index + 1) * kGolden));
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_symmetric() { return 2.0 * next_unit() - 1.0; }

double RandomStream::next_exponential() {
  // Offset the mantissa so u lies strictly inside (0, 1); the draw is then
  // finite and strictly positive.
  const double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  return -std::log(u);
}

std::size_t sample_categorical(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace mcct
