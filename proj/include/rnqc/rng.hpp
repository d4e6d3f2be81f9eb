#pragma once

#include <cstdint>
#include <limits>

namespace rnqc {

/// Counter-based, splittable generator.
///
/// Output k of a stream is `mix64(key + (k + 1) * 0x9E3779B97F4A7C15)` where
/// `mix64` is the SplitMix64 finalizer and `key` is derived from the seed and
/// the stream id. Streams are addressed by id, so a job can construct its own
/// stream without touching a shared generator, and results do not depend on
/// how jobs are scheduled. The sequence is defined entirely by 64-bit integer
/// arithmetic and is identical on every platform.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  /// Independent child stream. `split(a).split(b)` and `split(b).split(a)`
  /// are different streams.
  CounterRng split(std::uint64_t child) const noexcept;

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace rnqc
