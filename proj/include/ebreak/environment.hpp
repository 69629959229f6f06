#pragma once

// Correlated two-mode thermal environments: the symmetric normal form
// V_E = [[omega I, G], [G, omega I]] with G = diag(g, g').

#include "ebreak/correlations.hpp"
#include "ebreak/gaussian_core.hpp"

namespace ebreak::environment {

struct EnvSpec {
  double tau = 1.0;    // beam-splitter transmissivity, [0,1]
  double omega = 1.0;  // thermal variance, 2 nbar + 1
  double g = 0.0;
  double g_prime = 0.0;
};

enum class EnvClass { Forbidden, SeparablePhysical, EntangledPhysical };
// 'F', 'S' or 'E'.
char class_code(EnvClass c);

enum class FamilyPoint { MSC, MAC_pos, EPR_pos, EPR_neg };
enum class Family { SC, AC };
enum class BudgetMethod { ClosedForm, Numeric };

struct Thresholds {
  double g_er = 0.0;
  double g_ed = 0.0;
  double g_max_separable = 0.0;
  double g_max_physical = 0.0;
};

struct CriticalBits {
  double g_er = 0.0;
  double c_crit = 0.0;
  double d_crit = 0.0;
  double i_crit = 0.0;
};

struct NonMonotonicityWitness {
  double tau = 0.0;
  double omega = 0.0;
  double c_msc = 0.0, c_mac = 0.0;
  double d_msc = 0.0, d_mac = 0.0;
  double n_msc = 0.0, n_mac = 0.0;
  double delta_s = 0.0;  // S_MSC - S_MAC
  bool holds = false;    // C equal (1e-9), D_MSC > D_MAC, N_MSC < N_MAC
};

double omega_from_nbar(double nbar);
double nbar_from_omega(double omega);

TwoModeCM env_cm(const EnvSpec& spec);

// Boundary quantities of the separability test.
double gamma_minus(double omega, double g, double g_prime);
double gamma_plus(double omega, double g, double g_prime);

// |g| < omega, |g'| < omega, omega^2 + g g' - 1 >= omega |g + g'|, each with a
// 1e-12 guard band so that boundary points are physical.
bool is_physical(const EnvSpec& spec);

// DomainError if omega < 1.
EnvClass classify(const EnvSpec& spec);

// sqrt(omega^2 - g g' - omega |g - g'|), the PTS eigenvalue of env_cm.
double env_pts_eigenvalue(const EnvSpec& spec);

// (1 + tau) / (1 - tau). DomainError unless 0 <= tau < 1.
double omega_eb(double tau);

// Extremal points at the given omega (tau left at 0). At omega = 1 every
// kind collapses to g = g' = 0. DomainError if omega < 1.
EnvSpec family_point(FamilyPoint kind, double omega);
// Same point at omega = omega_eb(tau), with tau filled in.
EnvSpec eb_family_point(FamilyPoint kind, double tau);

// Closed-form thresholds at omega_eb(tau). DomainError unless 0 < tau < 1.
Thresholds thresholds(Family family, double tau);

// Closed forms need g' = +-g (NotSpecialFamilyError otherwise); Numeric goes
// through the discord minimizer. UnphysicalEnvError on unphysical input.
CorrelationBudget correlation_budget(const EnvSpec& spec, BudgetMethod method);

// Budget at g = g_ER(tau), omega = omega_eb(tau). SC needs tau > 2/3.
CriticalBits critical_bits(Family family, double tau);

// h(2 omega - 1) - 2 h(sqrt(2 omega - 1)).
double entropy_gap_msc_mac(double omega);

NonMonotonicityWitness nonmono_witness(double tau);

}  // namespace ebreak::environment
