#include "ehsched/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "ehsched/types.hpp"

namespace ehsched {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double SplitMix64::next_exponential(double mean) {
  // Inverse CDF; 1 - u > 0 since next_double() < 1.
  return -mean * std::log1p(-next_double());
}

double SplitMix64::next_normal() {
  // Box-Muller, cosine branch only: one variate per call keeps the stream
  // layout independent of call parity.
  const double u1 = 1.0 - next_double(); // in (0, 1]
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double SplitMix64::next_gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma shape and scale must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1 and shrink back (Marsaglia-Tsang section 8).
    const double u = 1.0 - next_double(); // (0, 1]
    return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double z, v;
    do {
      z = next_normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - next_double(); // (0, 1]
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v))
      return d * v * scale;
  }
}

double SplitMix64::next_lognormal(double mu, double sigma) {
  return std::exp(mu + sigma * next_normal());
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(std::string_view text) {
  return fnv1a(text.data(), text.size());
}

std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys) {
  // Feed every key through a SplitMix64 step so (a,b) and (b,a) differ.
  std::uint64_t h = 0x51ed2701a5c5e54dULL;
  for (std::uint64_t k : keys) {
    SplitMix64 g(h ^ k);
    h = g.next();
  }
  return h;
}

namespace {

void hash_double(std::uint64_t& h, double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof bits);
  h = mix_keys({h, bits});
}

} // namespace

std::uint64_t hash_instance(const Instance& inst) {
  std::uint64_t h = fnv1a("ehsched.instance");
  h = mix_keys({h, static_cast<std::uint64_t>(inst.n_slots)});
  hash_double(h, inst.rate);
  hash_double(h, inst.noise);
  hash_double(h, inst.price_conv);
  hash_double(h, inst.price_renew);
  for (double g : inst.gains) hash_double(h, g);
  for (double t : inst.arrivals) hash_double(h, t);
  hash_double(h, inst.initial_storage);
  hash_double(h, inst.epsilon);
  return h;
}

std::vector<int> sample_subset(SplitMix64& rng, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("subset size out of range");
  // Floyd's algorithm: for j = n-k+1..n insert a random element of [1, j],
  // falling back to j itself on collision.
  std::vector<int> chosen;
  chosen.reserve(k);
  for (int j = n - k + 1; j <= n; ++j) {
    const int t = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(j));
    bool collided = false;
    for (int c : chosen)
      if (c == t) {
        collided = true;
        break;
      }
    chosen.push_back(collided ? j : t);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

} // namespace ehsched
