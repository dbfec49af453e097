#include "sigscan/nfa.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sigscan/errors.hpp"

namespace sigscan {

namespace {

void check_counts(std::uint64_t kappa, std::uint64_t nu) {
  if (kappa > nu) {
    throw DomainError("kappa (" + std::to_string(kappa) + ") exceeds nu (" + std::to_string(nu) + ")");
  }
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability outside [0,1]: " + std::to_string(p));
  }
}

double log_binomial_term(double log_nu_fact, std::uint64_t nu, std::uint64_t i, double ln_p, double ln_q) {
  const double n = static_cast<double>(nu);
  const double k = static_cast<double>(i);
  return log_nu_fact - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * ln_p + (n - k) * ln_q;
}

}  // namespace

void NaiveModel::validate() const {
  check_probability(p);
  if (!std::isfinite(ln_eta2) || ln_eta2 < 0.0) {
    throw DomainError("ln_eta2 must be finite and >= 0, got " + std::to_string(ln_eta2));
  }
}

double binomial_tail_log(std::uint64_t kappa, std::uint64_t nu, double p) {
  check_counts(kappa, nu);
  check_probability(p);
  if (kappa == 0 || p == 1.0) {
    return 0.0;
  }
  if (p == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }

  const double ln_p = std::log(p);
  const double ln_q = std::log1p(-p);
  const double log_nu_fact = std::lgamma(static_cast<double>(nu) + 1.0);
  // Terms are unimodal in i; past the mode they decay at least geometrically,
  // so stopping 60 nats under the running maximum loses nothing in double precision.
  const double mode = std::floor((static_cast<double>(nu) + 1.0) * p);

  double max_term = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;  // sum of exp(t - max_term)
  for (std::uint64_t i = kappa; i <= nu; ++i) {
    const double t = log_binomial_term(log_nu_fact, nu, i, ln_p, ln_q);
    if (t > max_term) {
      scaled_sum = scaled_sum * std::exp(max_term - t) + 1.0;
      max_term = t;
    } else {
      scaled_sum += std::exp(t - max_term);
      if (static_cast<double>(i) > mode && t < max_term - 60.0) {
        break;
      }
    }
  }
  const double result = max_term + std::log(scaled_sum);
  return result > 0.0 ? 0.0 : result;
}

SignificanceResult significance_exact(std::uint64_t kappa, std::uint64_t nu, const NaiveModel& model) {
  model.validate();
  const double tail = binomial_tail_log(kappa, nu, model.p);
  return {kappa, nu, -(model.ln_eta2 + tail)};
}

double kl_mass(std::uint64_t kappa, std::uint64_t nu, double p) noexcept {
  if (nu == 0) {
    return 0.0;
  }
  const double n = static_cast<double>(nu);
  const double q = static_cast<double>(kappa) / n;
  if (q <= p) {
    return 0.0;
  }
  double kl = q * std::log(q / p);
  if (q < 1.0) {
    kl += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
  }
  return n * kl;
}

SignificanceResult significance_hoeffding(std::uint64_t kappa, std::uint64_t nu, const NaiveModel& model) {
  check_counts(kappa, nu);
  model.validate();
  if (!(model.p > 0.0 && model.p < 1.0)) {
    throw PreconditionError("Hoeffding significance needs 0 < p < 1");
  }
  if (nu == 0) {
    throw PreconditionError("Hoeffding significance needs nu > 0");
  }
  if (static_cast<double>(kappa) < model.p * static_cast<double>(nu)) {
    throw PreconditionError("Hoeffding significance needs kappa/nu >= p");
  }
  return {kappa, nu, kl_mass(kappa, nu, model.p) - model.ln_eta2};
}

}  // namespace sigscan
