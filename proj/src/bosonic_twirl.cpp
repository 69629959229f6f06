#include "ebreak/bosonic_twirl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ebreak/errors.hpp"

namespace ebreak::bosonic {

namespace {

Mat2 rotation_average(const Mat2& m) {
  const double diag = 0.5 * (m(0, 0) + m(1, 1));
  const double off = 0.5 * (m(0, 1) - m(1, 0));
  Mat2 out;
  out << diag, off, -off, diag;
  return out;
}

Mat2 reflection_average(const Mat2& m) {
  const double a = 0.5 * (m(0, 0) - m(1, 1));
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  Mat2 out;
  out << a, b, b, -a;
  return out;
}

}  // namespace

Mat2 rotation(double theta) {
  Mat2 r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Mat4 RotationPair::symplectic() const {
  return local_symplectic(rotation(theta), rotation(sign == RotationSign::Correlated ? theta : -theta));
}

TwoModeCM rotate_cm(const TwoModeCM& cm, const RotationPair& pair) {
  return apply_symplectic(cm, pair.symplectic());
}

TwoModeCM twirl_cm(const TwoModeCM& cm, RotationSign sign) {
  const Mat2 a = 0.5 * cm.a_block().trace() * Mat2::Identity();
  const Mat2 b = 0.5 * cm.b_block().trace() * Mat2::Identity();
  const Mat2 c = sign == RotationSign::Correlated ? rotation_average(cm.c_block()) : reflection_average(cm.c_block());
  return TwoModeCM(a, b, c);
}

TwoModeCM quasi_normal_form(double alpha, double beta, double omega, double phi) {
  Mat2 c;
  c << omega, phi, -phi, omega;
  return TwoModeCM(alpha * Mat2::Identity(), beta * Mat2::Identity(), c);
}

SeparabilityVerdict invariant_separability_check(const TwoModeCM& cm) {
  const double tol = 1e-9 * std::max(1.0, cm.matrix().cwiseAbs().maxCoeff());
  for (int k = 0; k < 8; ++k) {
    const RotationPair pair{2.0 * std::numbers::pi * (k + 0.5) / 8.0, RotationSign::Correlated};
    if (rotate_cm(cm, pair).max_abs_diff(cm) > tol) {
      throw NotInvariantError("CM is not invariant under correlated rotations");
    }
  }
  SeparabilityVerdict v;
  v.eps = pts_eigenvalue(cm);
  v.separable = v.eps >= 1.0 - kPhysicalityTol;
  return v;
}

SqueezingTraceVerdict squeezing_changes_trace(const TwoModeCM& cm, double r) {
  if (!(r > 0.0)) throw DomainError("squeezing factor must be positive");
  Mat2 s;
  s << r, 0.0, 0.0, 1.0 / r;
  const Mat4 out = local_symplectic(s, s) * cm.matrix() * local_symplectic(s, s).transpose();
  SqueezingTraceVerdict v;
  v.trace_before = cm.matrix().trace();
  v.trace_after = out.trace();
  const double scale = std::max(1.0, std::abs(v.trace_before));
  v.trace_changed = std::abs(v.trace_after - v.trace_before) > 1e-12 * scale;
  v.cm_changed = (out - cm.matrix()).cwiseAbs().maxCoeff() > 1e-12 * scale;
  return v;
}

double cv_werner_threshold(double nbar) {
  if (!(nbar >= 0.0)) throw DomainError("nbar must be >= 0");
  if (nbar == 0.0) return 0.0;
  // coth(2 asinh sqrt(n)) = (1 + 2n) / (2 sqrt(n (n + 1)))
  return 1.0 / (1.0 + (1.0 + 2.0 * nbar) / std::sqrt(nbar * (nbar + 1.0)));
}

}  // namespace ebreak::bosonic
