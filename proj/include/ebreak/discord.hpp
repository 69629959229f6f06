#pragma once

// Gaussian classical correlations and discord, measuring mode B.

#include "ebreak/correlations.hpp"
#include "ebreak/gaussian_core.hpp"

namespace ebreak::discord {

// Pure single-mode seed R_phi diag(lambda, 1/lambda) R_phi^T.
// lambda = 1 is heterodyne; lambda -> 0 approaches homodyne on q.
struct GaussianMeasurement {
  double seed_variance = 1.0;
  double angle = 0.0;

  Mat2 seed_cm() const;
};

// A - C (B + sigma)^{-1} C^T. SingularConditioningError if B + sigma is singular.
Mat2 conditional_cm(const TwoModeCM& cm, const GaussianMeasurement& m);

// h(sqrt det) of the conditional CM; independent of the outcome.
double conditional_entropy(const TwoModeCM& cm, const GaussianMeasurement& m);

struct DiscordResult {
  CorrelationBudget budget;
  GaussianMeasurement optimum;
  double min_conditional_entropy = 0.0;
};

// Minimizes conditional_entropy over (log10 lambda in [-8,8], phi in [0,pi))
// with a 12x12 start grid and coordinatewise golden-section refinement. The
// wide lambda range reaches the homodyne limit to ~1e-8.
DiscordResult gaussian_discord(const TwoModeCM& cm);

}  // namespace ebreak::discord
