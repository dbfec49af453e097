#pragma once

#include <cstdint>

namespace sigscan {

/// Bernoulli background model used to score patterns.
///
/// `p` is the probability that a pixel is true; `ln_eta2` is the natural log of
/// the number-of-tests coefficient (the multiplicity correction).
struct NaiveModel {
  double p = 0.0;
  double ln_eta2 = 0.0;

  /// Throws DomainError unless 0 <= p <= 1 and ln_eta2 is finite and >= 0.
  void validate() const;
};

struct SignificanceResult {
  std::uint64_t kappa = 0;  // true pixels
  std::uint64_t nu = 0;     // pixels in the pattern
  double s = 0.0;           // -ln NFA
};

/// ln of the upper binomial tail sum_{i=kappa}^{nu} C(nu,i) p^i (1-p)^(nu-i).
///
/// Evaluated by log-sum-exp over lgamma-based log terms, so nu in the millions
/// neither overflows nor underflows. Returns 0 for kappa == 0 and -inf when the
/// tail is exactly empty (p == 0, kappa > 0).
double binomial_tail_log(std::uint64_t kappa, std::uint64_t nu, double p);

/// S = -(ln eta2 + ln tail).
SignificanceResult significance_exact(std::uint64_t kappa, std::uint64_t nu, const NaiveModel& model);

/// Hoeffding (Kullback-Leibler) approximation of the significance:
/// nu * KL(kappa/nu || p) - ln eta2.
///
/// Requires kappa/nu >= p and 0 < p < 1; q == p is accepted as a diagnostic
/// boundary (S = -ln eta2). Throws PreconditionError when kappa/nu < p.
SignificanceResult significance_hoeffding(std::uint64_t kappa, std::uint64_t nu, const NaiveModel& model);

/// nu * KL(q || p) with q = kappa/nu, clamped to 0 when q <= p.
/// Unchecked fast path for inner loops; arguments must already be valid.
double kl_mass(std::uint64_t kappa, std::uint64_t nu, double p) noexcept;

}  // namespace sigscan
