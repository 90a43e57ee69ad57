#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace srdsm {

/// Seedable generator with portable derived draws.
///
/// The standard distributions are implementation-defined, so every derived
/// quantity (uniforms, indices, normals, shuffles) is computed here from the
/// raw 64-bit mt19937_64 stream. Identical seeds give identical streams on any
/// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform_open();

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal();

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = index(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  std::vector<std::size_t> permutation(std::size_t n);

  /// Derives an independent child seed; used to split one config seed
  /// across pipeline stages.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace srdsm
