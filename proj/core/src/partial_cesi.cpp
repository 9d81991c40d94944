#include "ehsched/partial_cesi.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ehsched/instance_io.hpp"
#include "ehsched/rng.hpp"

namespace ehsched {

namespace {

// Regularized lower incomplete gamma P(a, x): series expansion below the
// a+1 crossover, Lentz continued fraction above it.
double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(log_prefix);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

} // namespace

ChannelDistribution ChannelDistribution::exponential(double mean) {
  ChannelDistribution d;
  d.kind = FadingKind::kExponential;
  d.mean = mean;
  d.validate();
  return d;
}

ChannelDistribution ChannelDistribution::nakagami(double shape_m, double mean) {
  ChannelDistribution d;
  d.kind = FadingKind::kGammaNakagami;
  d.shape = shape_m;
  d.mean = mean;
  d.validate();
  return d;
}

ChannelDistribution ChannelDistribution::lognormal(double sigma2, double mean) {
  ChannelDistribution d;
  d.kind = FadingKind::kLognormal;
  d.sigma2 = sigma2;
  d.mean = mean;
  d.validate();
  return d;
}

void ChannelDistribution::validate() const {
  if (!(std::isfinite(mean) && mean > 0.0))
    throw std::invalid_argument("distribution mean must be finite and > 0");
  if (kind == FadingKind::kGammaNakagami &&
      !(std::isfinite(shape) && shape > 0.0))
    throw std::invalid_argument("nakagami m must be finite and > 0");
  if (kind == FadingKind::kLognormal &&
      !(std::isfinite(sigma2) && sigma2 > 0.0))
    throw std::invalid_argument("lognormal sigma2 must be finite and > 0");
}

double ChannelDistribution::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  switch (kind) {
    case FadingKind::kExponential:
      return -std::expm1(-x / mean);
    case FadingKind::kGammaNakagami:
      // Gain ~ Gamma(shape, mean/shape).
      return gamma_p(shape, x * shape / mean);
    case FadingKind::kLognormal: {
      // ln(gain) ~ N(mu, sigma2) with mu fixed by the unit-mean convention
      // E[gain] = exp(mu + sigma2/2).
      const double mu = std::log(mean) - 0.5 * sigma2;
      return normal_cdf((std::log(x) - mu) / std::sqrt(sigma2));
    }
  }
  return 0.0;
}

double ChannelDistribution::quantile(double eps) const {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::domain_error("quantile requires eps in (0, 1)");
  if (kind == FadingKind::kExponential)
    return -mean * std::log1p(-eps);
  // Bisection on the documented bracket; the CDFs here are continuous and
  // strictly increasing on (0, inf).
  double lo = 1e-12, hi = mean * 1e6;
  for (int i = 0; i < 300 && (hi - lo) > 1e-13 * (1.0 + lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ChannelDistribution::sample(SplitMix64& rng) const {
  switch (kind) {
    case FadingKind::kExponential:
      return rng.next_exponential(mean);
    case FadingKind::kGammaNakagami:
      return rng.next_gamma(shape, mean / shape);
    case FadingKind::kLognormal: {
      const double mu = std::log(mean) - 0.5 * sigma2;
      return rng.next_lognormal(mu, std::sqrt(sigma2));
    }
  }
  return 0.0;
}

std::string ChannelDistribution::to_text() const {
  switch (kind) {
    case FadingKind::kExponential:
      return "exp:mean=" + format_double(mean);
    case FadingKind::kGammaNakagami:
      return "nakagami:m=" + format_double(shape) +
             ",mean=" + format_double(mean);
    case FadingKind::kLognormal:
      return "lognormal:sigma2=" + format_double(sigma2) +
             ",mean=" + format_double(mean);
  }
  return "";
}

ChannelDistribution ChannelDistribution::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  ChannelDistribution d;
  bool saw_m = false, saw_sigma2 = false;
  if (name == "exp")
    d.kind = FadingKind::kExponential;
  else if (name == "nakagami")
    d.kind = FadingKind::kGammaNakagami;
  else if (name == "lognormal")
    d.kind = FadingKind::kLognormal;
  else
    throw std::invalid_argument("unknown distribution '" + name +
                                "' (expected exp|nakagami|lognormal)");

  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string pair;
    while (std::getline(rest, pair, ',')) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("distribution parameter '" + pair +
                                    "' is not key=value");
      const std::string key = pair.substr(0, eq);
      double value;
      try {
        size_t used = 0;
        value = std::stod(pair.substr(eq + 1), &used);
        if (used != pair.size() - eq - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value in '" + pair + "'");
      }
      if (key == "mean") {
        d.mean = value;
      } else if (key == "m" && d.kind == FadingKind::kGammaNakagami) {
        d.shape = value;
        saw_m = true;
      } else if (key == "sigma2" && d.kind == FadingKind::kLognormal) {
        d.sigma2 = value;
        saw_sigma2 = true;
      } else {
        throw std::invalid_argument("unknown parameter '" + key + "' for " +
                                    name);
      }
    }
  }
  if (d.kind == FadingKind::kGammaNakagami && !saw_m)
    throw std::invalid_argument("nakagami requires m=<shape>");
  if (d.kind == FadingKind::kLognormal && !saw_sigma2)
    throw std::invalid_argument("lognormal requires sigma2=<variance>");
  d.validate();
  return d;
}

PartialCesiResult allocate_partial_cesi(const ChannelDistribution& dist,
                                        double rate, double noise, double eps,
                                        std::span<const double> arrivals,
                                        double initial_storage,
                                        double price_conv, double price_renew) {
  dist.validate();
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::domain_error("allocate_partial_cesi requires eps in (0, 1)");
  if (!(std::isfinite(rate) && rate >= 0.0))
    throw std::invalid_argument("rate must be finite and >= 0");
  if (!(std::isfinite(noise) && noise > 0.0))
    throw std::invalid_argument("noise must be finite and > 0");
  if (!(std::isfinite(initial_storage) && initial_storage >= 0.0))
    throw std::invalid_argument("initial_storage must be finite and >= 0");
  if (!(price_conv > price_renew) || !(price_renew > 0.0))
    throw std::invalid_argument("prices must satisfy conv > renew > 0");
  for (double a : arrivals)
    if (!(std::isfinite(a) && a >= 0.0))
      throw std::invalid_argument("arrivals must be finite and >= 0");

  PartialCesiResult out;
  out.per_slot_power = noise * std::expm1(rate) / dist.quantile(eps);
  const int n = static_cast<int>(arrivals.size());
  out.allocation.conv.assign(n, 0.0);
  out.allocation.renew.assign(n, 0.0);
  double stored = initial_storage;
  for (int i = 0; i < n; ++i) {
    stored += arrivals[i];
    const double renew = std::min(out.per_slot_power, stored);
    out.allocation.renew[i] = renew;
    out.allocation.conv[i] = out.per_slot_power - renew;
    stored -= renew;
  }
  double sum_conv = 0.0, sum_renew = 0.0;
  for (int i = 0; i < n; ++i) {
    sum_conv += out.allocation.conv[i];
    sum_renew += out.allocation.renew[i];
  }
  out.total_cost = price_conv * sum_conv + price_renew * sum_renew;
  return out;
}

} // namespace ehsched
