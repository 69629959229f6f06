#pragma once

// Covariance-matrix algebra for one- and two-mode Gaussian states.
//
// Conventions: hbar = 2, so the vacuum has unit quadrature variance; the
// quadrature ordering is (q_A, p_A, q_B, p_B); every entropy is in bits.

#include <Eigen/Dense>

namespace ebreak {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-9;
inline constexpr double kSymplecticTol = 1e-10;

// Two-mode covariance matrix in block form  V = [[A, C], [C^T, B]].
class TwoModeCM {
 public:
  // Two vacua.
  TwoModeCM();
  // A and B must be symmetric (NonSymmetricError otherwise).
  TwoModeCM(const Mat2& a, const Mat2& b, const Mat2& c);

  // Throws NonSymmetricError if any off-diagonal pair differs by more than
  // kSymmetryTol (relative to the largest entry once that exceeds one).
  static TwoModeCM from_matrix(const Mat4& v);

  static TwoModeCM vacuum() { return TwoModeCM(); }
  static TwoModeCM thermal(double omega_a, double omega_b);
  // Two-mode squeezed vacuum, blocks mu*I and sqrt(mu^2-1)*Z.
  static TwoModeCM epr(double mu);

  const Mat2& a_block() const { return a_; }
  const Mat2& b_block() const { return b_; }
  const Mat2& c_block() const { return c_; }
  Mat4 matrix() const;

  double max_abs_diff(const TwoModeCM& other) const;

 private:
  Mat2 a_;
  Mat2 b_;
  Mat2 c_;
};

struct SymplecticSpectrum {
  double nu_minus = 1.0;
  double nu_plus = 1.0;
};

enum class Physicality { Physical, NotPhysical };

struct PhysicalityVerdict {
  Physicality verdict = Physicality::NotPhysical;
  bool positive_definite = false;
  // Smallest squared symplectic eigenvalue; meaningful when positive_definite.
  double nu_minus_sq = 0.0;

  bool physical() const { return verdict == Physicality::Physical; }
};

struct EntanglementReport {
  double eps = 1.0;            // smallest PTS eigenvalue
  double logneg = 0.0;         // ebits
  double coherent_info = 0.0;  // I(A>B), ebits, may be negative
  bool separable = true;
  bool distillable_one_way = false;
};

// The bona-fide test: V > 0 (leading principal minors) and nu_-^2 >= 1 - tol.
PhysicalityVerdict validate_cm(const TwoModeCM& cm);
PhysicalityVerdict validate_cm(const Mat4& v);

// Closed form nu_pm = sqrt[(Delta +- sqrt(Delta^2 - 4 det V)) / 2],
// Delta = det A + det B + 2 det C. The smaller root is evaluated as
// det V / nu_+^2 in extended precision, which keeps highly squeezed inputs
// (entries ~1e6) accurate. Throws ComplexSpectrumError when the discriminant
// is negative beyond rounding.
SymplecticSpectrum symplectic_spectrum(const TwoModeCM& cm);

// Smallest symplectic eigenvalue of the partially transposed CM, i.e. the
// same closed form with Delta~ = det A + det B - 2 det C. eps >= 1 iff the
// state is separable. Throws DomainError if V is not positive definite.
double pts_eigenvalue(const TwoModeCM& cm);

// Momentum flip on mode B (the phase-space image of partial transposition).
TwoModeCM partial_transpose(const TwoModeCM& cm);

// h(x) = (x+1)/2 log2((x+1)/2) - (x-1)/2 log2((x-1)/2), with h(1) = 0.
double entropy_h(double x);

// S = h(nu_-) + h(nu_+). DomainError if either eigenvalue is below 1 - tol.
double von_neumann_entropy(const SymplecticSpectrum& spectrum);
double von_neumann_entropy(const TwoModeCM& cm);

// I(A>B) = h(sqrt det B) - h(nu_-) - h(nu_+).
double coherent_information(const TwoModeCM& cm);
// Large-spectrum expansion log2[(2/e) sqrt(det B / det V)].
double coherent_information_asymptotic(const TwoModeCM& cm);

// mu_p = 1 / sqrt(det V).
double purity(const TwoModeCM& cm);

double log_negativity(double eps);

// Builds the full report from the exact CM.
EntanglementReport entanglement_report(const TwoModeCM& cm);

// V -> S V S^T. Throws NotSymplecticError unless S Omega S^T = Omega to 1e-10.
TwoModeCM apply_symplectic(const TwoModeCM& cm, const Mat4& s);

Mat4 symplectic_form();
bool is_symplectic(const Mat4& s, double tol = kSymplecticTol);
// Two-mode beam splitter [[sqrt(t) I, sqrt(1-t) I], [-sqrt(1-t) I, sqrt(t) I]].
Mat4 beam_splitter(double tau);
Mat4 local_symplectic(const Mat2& s_a, const Mat2& s_b);

}  // namespace ebreak
