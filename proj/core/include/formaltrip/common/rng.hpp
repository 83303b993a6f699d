#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace formaltrip {

/// Seeded random source whose draws are identical on every platform.
///
/// std::mt19937_64 output is fixed by the standard, but the standard
/// distributions are not, so all derived draws are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit();

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && unit() < p); }

  /// k distinct indices of [0, population), ascending. Takes all when k >= population.
  std::vector<std::size_t> sample_indices(std::size_t population, std::size_t k);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 mixing of (seed, stream); used to give batches and records independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace formaltrip
