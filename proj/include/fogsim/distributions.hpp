#pragma once

#include <cstdint>
#include <string>

namespace fogsim {

/// Deterministic 64-bit random stream (splitmix64). Standard-library
/// distributions are not bit-stable across implementations, so every draw
/// made by the simulator goes through this stream. Same seed, same sequence,
/// on any platform.
class RandomStream {
 public:
  RandomStream() = default;
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform draw on [0, 1). Zero is possible, one is not.
  double uniform01();

  /// Exponential draw with the given mean, strictly positive.
  double exponential(double mean);

  /// Substream for a process: mixing (seed, key) keeps the draws of one
  /// process independent of how many other processes exist.
  static RandomStream derive(std::uint64_t seed, std::uint64_t key);

 private:
  std::uint64_t state_ = 0;
};

struct TemporalDistribution {
  enum class Kind { Deterministic, DeterministicStart, Exponential, ExponentialStart };

  Kind kind = Kind::Deterministic;
  double period = 0;  // deterministic period, in simulation time units
  double mean = 0;    // exponential mean
  double start = 0;   // first-firing offset for the *Start kinds

  static TemporalDistribution deterministic(double period);
  static TemporalDistribution deterministic_start(double start, double period);
  static TemporalDistribution exponential(double mean);
  static TemporalDistribution exponential_start(double start, double mean);

  /// Throws std::invalid_argument when period/mean/start are out of range.
  void validate() const;
};

/// Delta until the next firing. Deterministic kinds return the period on
/// every call (the start offset on the first); exponential kinds return a
/// fresh draw. Always > 0.
double next_interval(const TemporalDistribution& dist, RandomStream& rng, bool is_first);

}  // namespace fogsim
