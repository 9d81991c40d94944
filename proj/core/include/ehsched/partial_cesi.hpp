#pragma once

#include <span>
#include <string>

#include "ehsched/types.hpp"

namespace ehsched {

struct SplitMix64; // ehsched/rng.hpp

enum class FadingKind { kExponential, kGammaNakagami, kLognormal };

// Channel-gain distribution used when the transmitter only knows statistics.
// mean is the mean of the gain itself for every kind.
struct ChannelDistribution {
  FadingKind kind = FadingKind::kExponential;
  double mean = 1.0;
  double shape = 1.0;  // Nakagami-m figure; gain ~ Gamma(shape, mean/shape)
  double sigma2 = 1.0; // variance of ln(gain) for the lognormal kind

  static ChannelDistribution exponential(double mean);
  static ChannelDistribution nakagami(double shape_m, double mean);
  static ChannelDistribution lognormal(double sigma2, double mean);

  double cdf(double x) const;
  // Smallest q with CDF(q) = eps (to 1e-10). Throws std::domain_error for
  // eps outside (0, 1).
  double quantile(double eps) const;
  double sample(SplitMix64& rng) const;

  // Canonical text form, e.g. "exp:mean=1", "nakagami:m=2,mean=1",
  // "lognormal:sigma2=1,mean=1". parse() accepts exactly this syntax.
  std::string to_text() const;
  static ChannelDistribution parse(const std::string& text);

  void validate() const; // throws std::invalid_argument
};

struct PartialCesiResult {
  Allocation allocation;
  double total_cost = 0.0;
  // Power spent in every slot: noise * (e^rate - 1) / quantile(eps).
  double per_slot_power = 0.0;
};

// Schedule under statistical channel knowledge: every slot transmits at the
// fixed power that keeps the outage probability at eps, harvested energy is
// spent causally as early as possible, conventional energy covers the rest.
PartialCesiResult allocate_partial_cesi(const ChannelDistribution& dist,
                                        double rate, double noise, double eps,
                                        std::span<const double> arrivals,
                                        double initial_storage,
                                        double price_conv, double price_renew);

} // namespace ehsched
