#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace ehsched {

struct Instance;

// SplitMix64 generator with hand-rolled variate transforms. The standard
// library distributions are unspecified across implementations; experiments
// must replay byte-identically on any platform, so every transform lives
// here.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next();

  // Uniform on [0, 1) with 53 random bits.
  double next_double();
  double next_uniform(double lo, double hi);
  // Inverse-CDF exponential with the given mean.
  double next_exponential(double mean);
  // Box-Muller standard normal (one variate per call).
  double next_normal();
  // Marsaglia-Tsang gamma with given shape and scale (any shape > 0).
  double next_gamma(double shape, double scale);
  double next_lognormal(double mu, double sigma);
};

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a(const void* data, std::size_t len);
std::uint64_t fnv1a(std::string_view text);

// Order-sensitive key mixer for deriving independent substreams.
std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys);

// Content hash of an instance (all numeric fields, canonical byte order).
std::uint64_t hash_instance(const Instance& inst);

// Uniformly random size-k subset of {1..n}, sorted ascending
// (Floyd's algorithm; deterministic for a fixed generator state).
std::vector<int> sample_subset(SplitMix64& rng, int n, int k);

} // namespace ehsched
