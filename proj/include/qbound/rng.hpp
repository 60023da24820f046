#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qbound {

/// Counter-based random stream: the k-th draw is a fixed bijective mix of
/// (key, k), so a stream is fully determined by its key. Substreams derive
/// new keys from (key, index), which lets every Monte Carlo sample own an
/// independent stream regardless of how work is scheduled.
///
/// Satisfies UniformRandomBitGenerator.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  explicit SeededStream(std::uint64_t seed) noexcept;

  SeededStream substream(std::uint64_t index) const noexcept;

  result_type operator()() noexcept;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Standard normal.
  double normal();

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  SeededStream(std::uint64_t key, int) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_;
};

}  // namespace qbound
