#pragma once

// Random phase-space rotations applied to both modes, at the CM level.

#include "ebreak/gaussian_core.hpp"

namespace ebreak::bosonic {

enum class RotationSign { Correlated, Anticorrelated };

struct RotationPair {
  double theta = 0.0;
  RotationSign sign = RotationSign::Correlated;

  // R_theta (+) R_{+-theta}
  Mat4 symplectic() const;
};

// [[cos, sin], [-sin, cos]]
Mat2 rotation(double theta);

TwoModeCM rotate_cm(const TwoModeCM& cm, const RotationPair& pair);

// Exact average over theta in [0, 2pi). Diagonal blocks become (tr/2) I; the
// cross block keeps its rotation-commuting part [[m, t], [-t, m]] (correlated)
// or its reflection part [[a, b], [b, -a]] (anticorrelated).
TwoModeCM twirl_cm(const TwoModeCM& cm, RotationSign sign);

// A = alpha I, B = beta I, C = [[omega, phi], [-phi, omega]].
TwoModeCM quasi_normal_form(double alpha, double beta, double omega, double phi);

struct SeparabilityVerdict {
  double eps = 1.0;
  bool separable = true;  // eps >= 1 - 1e-9
};

// NotInvariantError unless cm is fixed by correlated rotations at 8 angles.
SeparabilityVerdict invariant_separability_check(const TwoModeCM& cm);

struct SqueezingTraceVerdict {
  double trace_before = 0.0;
  double trace_after = 0.0;
  bool trace_changed = false;
  bool cm_changed = false;
};

// Applies diag(r, 1/r) to both modes. DomainError for r <= 0.
SqueezingTraceVerdict squeezing_changes_trace(const TwoModeCM& cm, double r);

// 1 / (1 + 2 coth(2 asinh sqrt(nbar))); 0 at nbar = 0. DomainError for nbar < 0.
double cv_werner_threshold(double nbar);

}  // namespace ebreak::bosonic
