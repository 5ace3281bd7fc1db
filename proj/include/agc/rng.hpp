#ifndef AGC_RNG_HPP_
#define AGC_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace agc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Named substream of a master seed. Draw helpers avoid std distribution
// objects so that outputs are identical across standard libraries.
class Substream {
 public:
  Substream(uint64_t seed, uint64_t stream_id)
      : rng_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id))) {}

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    // rejection sampling keeps the draw unbiased
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  // Index sampled from a probability vector by CDF inversion.
  int discrete(const std::vector<double>& probs) {
    const double u = uniform01();
    double acc = 0.0;
    for (size_t k = 0; k < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace agc

#endif
