#include "fogsim/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace fogsim {

std::uint64_t RandomStream::next_u64() {
  // splitmix64 (Steele, Lea, Flood)
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::exponential(double mean) {
  // inverse CDF over a uniform shifted into (0, 1) so the draw is never 0
  const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  return -mean * std::log(u);
}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t key) {
  RandomStream mixer(seed ^ (key * 0xD1B54A32D192ED03ULL));
  mixer.next_u64();
  mixer.next_u64();
  return RandomStream(mixer.next_u64());
}

TemporalDistribution TemporalDistribution::deterministic(double period) {
  TemporalDistribution d;
  d.kind = Kind::Deterministic;
  d.period = period;
  d.validate();
  return d;
}

TemporalDistribution TemporalDistribution::deterministic_start(double start, double period) {
  TemporalDistribution d;
  d.kind = Kind::DeterministicStart;
  d.start = start;
  d.period = period;
  d.validate();
  return d;
}

TemporalDistribution TemporalDistribution::exponential(double mean) {
  TemporalDistribution d;
  d.kind = Kind::Exponential;
  d.mean = mean;
  d.validate();
  return d;
}

TemporalDistribution TemporalDistribution::exponential_start(double start, double mean) {
  TemporalDistribution d;
  d.kind = Kind::ExponentialStart;
  d.start = start;
  d.mean = mean;
  d.validate();
  return d;
}

void TemporalDistribution::validate() const {
  switch (kind) {
    case Kind::Deterministic:
      if (!(period > 0)) throw std::invalid_argument("deterministic distribution: period must be > 0");
      break;
    case Kind::DeterministicStart:
      if (!(period > 0)) throw std::invalid_argument("deterministic_start distribution: period must be > 0");
      if (start < 0) throw std::invalid_argument("deterministic_start distribution: start must be >= 0");
      break;
    case Kind::Exponential:
      if (!(mean > 0)) throw std::invalid_argument("exponential distribution: mean must be > 0");
      break;
    case Kind::ExponentialStart:
      if (!(mean > 0)) throw std::invalid_argument("exponential_start distribution: mean must be > 0");
      if (start < 0) throw std::invalid_argument("exponential_start distribution: start must be >= 0");
      break;
  }
}

double next_interval(const TemporalDistribution& dist, RandomStream& rng, bool is_first) {
  using Kind = TemporalDistribution::Kind;
  switch (dist.kind) {
    case Kind::Deterministic:
      return dist.period;
    case Kind::DeterministicStart:
      return is_first ? dist.start : dist.period;
    case Kind::Exponential:
      return rng.exponential(dist.mean);
    case Kind::ExponentialStart:
      // offset plus exponential inter-arrivals, so the first firing is
      // strictly after the start point
      return is_first ? dist.start + rng.exponential(dist.mean) : rng.exponential(dist.mean);
  }
  return dist.period;
}

}  // namespace fogsim
