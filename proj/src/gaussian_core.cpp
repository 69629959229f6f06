#include "ebreak/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ebreak/errors.hpp"

namespace ebreak {

namespace {

bool block_symmetric(const Mat2& m, double tol) {
  return std::abs(m(0, 1) - m(1, 0)) <= tol;
}

double scaled_tol(double scale) { return kSymmetryTol * std::max(1.0, scale); }

Mat2 symmetrized(const Mat2& m) { return 0.5 * (m + m.transpose()); }

struct Invariants {
  long double det_a;
  long double det_b;
  long double det_c;
  long double det_v;

  long double delta(long double c_sign) const { return det_a + det_b + c_sign * 2.0L * det_c; }
  long double term_scale() const { return std::abs(det_a) + std::abs(det_b) + 2.0L * std::abs(det_c); }
};

using Mat2L = Eigen::Matrix<long double, 2, 2>;

long double det2(const Mat2L& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// B - C^T A^{-1} C through the adjugate of A; caller guarantees det A != 0.
Mat2L schur_complement(const TwoModeCM& cm, long double det_a) {
  const Mat2L a = cm.a_block().cast<long double>();
  const Mat2L b = cm.b_block().cast<long double>();
  const Mat2L c = cm.c_block().cast<long double>();
  Mat2L adj;
  adj << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return b - c.transpose() * adj * c / det_a;
}

// det V = det A det(B - C^T A^-1 C). The 4x4 cofactor expansion cancels
// catastrophically for squeezed states (entries ~1e6, det V ~1).
long double det_v(const TwoModeCM& cm) {
  const long double det_a = det2(cm.a_block().cast<long double>());
  if (det_a == 0.0L) return cm.matrix().cast<long double>().determinant();
  return det_a * det2(schur_complement(cm, det_a));
}

Invariants invariants(const TwoModeCM& cm) {
  Invariants inv;
  inv.det_a = det2(cm.a_block().cast<long double>());
  inv.det_b = det2(cm.b_block().cast<long double>());
  inv.det_c = det2(cm.c_block().cast<long double>());
  inv.det_v = det_v(cm);
  return inv;
}

// Squared symplectic eigenvalues from (Delta, det V). The small root goes
// through det V / nu_+^2 so it does not suffer from cancellation. A
// discriminant within rounding noise is taken as zero: Delta carries an
// error ~eps * term_scale, so Delta^2 one of ~eps * term_scale * Delta, and
// rounded inputs would otherwise put pure states (nu_- = nu_+ = 1) a
// distance sqrt(noise) off the degenerate point.
std::pair<long double, long double> squared_roots(long double delta, long double det_v, long double term_scale) {
  long double disc = delta * delta - 4.0L * det_v;
  const long double noise =
      64.0L * std::numeric_limits<double>::epsilon() * term_scale * std::max<long double>(1.0L, std::abs(delta));
  if (std::abs(disc) <= noise) disc = 0.0L;
  const long double scale = std::max<long double>(1.0L, delta * delta);
  if (disc < -1e-10L * scale) {
    throw ComplexSpectrumError("Delta^2 < 4 det V");
  }
  const long double root = std::sqrt(std::max<long double>(disc, 0.0L));
  const long double plus = (delta + root) / 2.0L;
  if (plus <= 0.0L) return {0.0L, 0.0L};
  const long double minus = std::max<long double>(det_v / plus, 0.0L);
  return {minus, plus};
}

// V > 0 iff A > 0 and its Schur complement is > 0; same verdict as the
// leading minors without the cancellation.
bool positive_definite(const TwoModeCM& cm) {
  const Mat2L a = cm.a_block().cast<long double>();
  const long double det_a = det2(a);
  if (a(0, 0) <= 0.0L || det_a <= 0.0L) return false;
  const Mat2L s = schur_complement(cm, det_a);
  return s(0, 0) > 0.0L && det2(s) > 0.0L;
}

}  // namespace

TwoModeCM::TwoModeCM() : a_(Mat2::Identity()), b_(Mat2::Identity()), c_(Mat2::Zero()) {}

TwoModeCM::TwoModeCM(const Mat2& a, const Mat2& b, const Mat2& c) : c_(c) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (!block_symmetric(a, scaled_tol(scale)) || !block_symmetric(b, scaled_tol(scale))) {
    throw NonSymmetricError("diagonal blocks must be symmetric");
  }
  a_ = symmetrized(a);
  b_ = symmetrized(b);
}

TwoModeCM TwoModeCM::from_matrix(const Mat4& v) {
  const double tol = scaled_tol(v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw NonSymmetricError("covariance matrix is not symmetric");
  }
  const Mat4 s = 0.5 * (v + v.transpose());
  return TwoModeCM(s.topLeftCorner<2, 2>(), s.bottomRightCorner<2, 2>(), s.topRightCorner<2, 2>());
}

TwoModeCM TwoModeCM::thermal(double omega_a, double omega_b) {
  return TwoModeCM(omega_a * Mat2::Identity(), omega_b * Mat2::Identity(), Mat2::Zero());
}

TwoModeCM TwoModeCM::epr(double mu) {
  if (!(mu >= 1.0)) throw DomainError("EPR variance must be >= 1");
  // Round mu' down until mu^2 - mu'^2 >= 1 so the stored matrix stays
  // physical; mu - mu' is exact here and the product is taken in long double.
  double mu_prime = std::sqrt((mu - 1.0) * (mu + 1.0));
  while (mu_prime > 0.0 && static_cast<long double>(mu - mu_prime) * (static_cast<long double>(mu) + mu_prime) < 1.0L) {
    mu_prime = std::nextafter(mu_prime, 0.0);
  }
  Mat2 z;
  z << 1.0, 0.0, 0.0, -1.0;
  return TwoModeCM(mu * Mat2::Identity(), mu * Mat2::Identity(), mu_prime * z);
}

Mat4 TwoModeCM::matrix() const {
  Mat4 v;
  v.topLeftCorner<2, 2>() = a_;
  v.bottomRightCorner<2, 2>() = b_;
  v.topRightCorner<2, 2>() = c_;
  v.bottomLeftCorner<2, 2>() = c_.transpose();
  return v;
}

double TwoModeCM::max_abs_diff(const TwoModeCM& other) const {
  return (matrix() - other.matrix()).cwiseAbs().maxCoeff();
}

PhysicalityVerdict validate_cm(const TwoModeCM& cm) {
  PhysicalityVerdict out;
  out.positive_definite = positive_definite(cm);
  if (!out.positive_definite) return out;
  const Invariants inv = invariants(cm);
  try {
    out.nu_minus_sq = static_cast<double>(squared_roots(inv.delta(1.0L), inv.det_v, inv.term_scale()).first);
  } catch (const ComplexSpectrumError&) {
    return out;
  }
  if (out.nu_minus_sq >= 1.0 - kPhysicalityTol) out.verdict = Physicality::Physical;
  return out;
}

PhysicalityVerdict validate_cm(const Mat4& v) { return validate_cm(TwoModeCM::from_matrix(v)); }

SymplecticSpectrum symplectic_spectrum(const TwoModeCM& cm) {
  const Invariants inv = invariants(cm);
  const auto [m, p] = squared_roots(inv.delta(1.0L), inv.det_v, inv.term_scale());
  return {static_cast<double>(std::sqrt(m)), static_cast<double>(std::sqrt(p))};
}

double pts_eigenvalue(const TwoModeCM& cm) {
  if (!positive_definite(cm)) throw DomainError("CM is not positive definite");
  const Invariants inv = invariants(cm);
  const auto [m, p] = squared_roots(inv.delta(-1.0L), inv.det_v, inv.term_scale());
  (void)p;
  return static_cast<double>(std::sqrt(m));
}

TwoModeCM partial_transpose(const TwoModeCM& cm) {
  Mat2 flip;
  flip << 1.0, 0.0, 0.0, -1.0;
  return TwoModeCM(cm.a_block(), flip * cm.b_block() * flip, cm.c_block() * flip);
}

double entropy_h(double x) {
  if (!(x >= 1.0 - kPhysicalityTol)) throw DomainError("h(x) requires x >= 1");
  if (x <= 1.0) return 0.0;
  const double u = (x - 1.0) / 2.0;
  if (x - 1.0 < 1e-6) {
    // (1+u)ln(1+u) ~ u + u^2/2
    return (u - u * std::log(u) + 0.5 * u * u) / std::numbers::ln2;
  }
  return ((1.0 + u) * std::log1p(u) - u * std::log(u)) / std::numbers::ln2;
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
  if (spectrum.nu_minus < 1.0 - kPhysicalityTol || spectrum.nu_plus < 1.0 - kPhysicalityTol) {
    throw DomainError("symplectic eigenvalue below 1");
  }
  return entropy_h(spectrum.nu_minus) + entropy_h(spectrum.nu_plus);
}

double von_neumann_entropy(const TwoModeCM& cm) { return von_neumann_entropy(symplectic_spectrum(cm)); }

double coherent_information(const TwoModeCM& cm) {
  return entropy_h(std::sqrt(cm.b_block().determinant())) - von_neumann_entropy(cm);
}

double coherent_information_asymptotic(const TwoModeCM& cm) {
  const double ratio = static_cast<double>(cm.b_block().determinant() / det_v(cm));
  return std::log2(2.0 / std::numbers::e * std::sqrt(ratio));
}

double purity(const TwoModeCM& cm) {
  return static_cast<double>(1.0L / std::sqrt(det_v(cm)));
}

double log_negativity(double eps) { return std::max(0.0, -std::log2(eps)); }

EntanglementReport entanglement_report(const TwoModeCM& cm) {
  EntanglementReport r;
  r.eps = pts_eigenvalue(cm);
  r.logneg = log_negativity(r.eps);
  r.coherent_info = coherent_information(cm);
  r.separable = r.eps >= 1.0;
  r.distillable_one_way = r.coherent_info > 0.0;
  return r;
}

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

bool is_symplectic(const Mat4& s, double tol) {
  const Mat4 omega = symplectic_form();
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

TwoModeCM apply_symplectic(const TwoModeCM& cm, const Mat4& s) {
  if (!is_symplectic(s)) throw NotSymplecticError("S Omega S^T != Omega");
  const Mat4 out = s * cm.matrix() * s.transpose();
  return TwoModeCM::from_matrix(0.5 * (out + out.transpose()));
}

Mat4 beam_splitter(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("transmissivity outside [0,1]");
  const double t = std::sqrt(tau);
  const double r = std::sqrt(1.0 - tau);
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = t * Mat2::Identity();
  s.topRightCorner<2, 2>() = r * Mat2::Identity();
  s.bottomLeftCorner<2, 2>() = -r * Mat2::Identity();
  s.bottomRightCorner<2, 2>() = t * Mat2::Identity();
  return s;
}

Mat4 local_symplectic(const Mat2& s_a, const Mat2& s_b) {
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = s_a;
  s.bottomRightCorner<2, 2>() = s_b;
  return s;
}

}  // namespace ebreak
