#pragma once

#include <cstdint>
#include <random>

namespace tvnet {

/// A seedable random stream. Two streams built from the same (seed, stream id)
/// produce identical sequences; distinct stream ids are decorrelated by
/// hashing both words through SplitMix64 before seeding the engine.
///
/// A stream is owned by exactly one chain and is not thread-safe.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  /// Gamma with mean shape * scale.
  double gamma(double shape, double scale);
  double exponential(double rate);
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  engine_type& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  engine_type engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace tvnet
