#pragma once

// An EPR pair sent through two beam splitters that mix each mode with one
// mode of a correlated environment.

#include "ebreak/environment.hpp"
#include "ebreak/gaussian_core.hpp"

namespace ebreak::propagation {

using environment::EnvSpec;

inline constexpr double kLargeMu = 1e6;

class EprInput {
 public:
  // DomainError if mu < 1.
  explicit EprInput(double mu);

  double mu() const { return mu_; }
  // sqrt(mu^2 - 1)
  double mu_prime() const { return mu_prime_; }
  // mu - mu', evaluated as 1 / (mu + mu').
  double mu_minus_mu_prime() const { return 1.0 / (mu_ + mu_prime_); }
  TwoModeCM cm() const { return TwoModeCM::epr(mu_); }

 private:
  double mu_;
  double mu_prime_;
};

struct EprVariances {
  double vq_minus = 0.0;  // Var(q_A - q_B)
  double vp_plus = 0.0;   // Var(p_A + p_B)

  bool epr_condition() const { return vq_minus < 1.0 && vp_plus < 1.0; }
};

// Only B is transmitted: blocks mu I, x I, sqrt(tau) mu' Z with
// x = tau mu + (1 - tau) omega.
TwoModeCM single_mode_transmit(const EprInput& input, double tau, double omega);
// Exact eps of single_mode_transmit; tends to (1 - tau) omega / (1 + tau)
// as mu grows, which equals 1 at omega = omega_EB.
double single_mode_eps(const EprInput& input, double tau, double omega);

// tau V_AB + (1 - tau) V_E. UnphysicalEnvError for an unphysical environment.
TwoModeCM two_mode_transmit(const EprInput& input, const EnvSpec& env);

// Exact eps and I(A>B) of the two-mode output, computed mode by mode so that
// mu up to ~1e8 keeps full relative accuracy.
EntanglementReport exact_report(const EprInput& input, const EnvSpec& env);
SymplecticSpectrum exact_spectrum(const EprInput& input, const EnvSpec& env);

// (1 - tau) sqrt((omega - g)(omega + g')), no validation.
double eps_asymptotic(const EnvSpec& env);
// The same at omega = omega_EB: sqrt([1 + tau - (1 - tau) g][1 + tau + (1 - tau) g']).
double eps_eb(double tau, double g, double g_prime);

// nu_pm ~ sqrt[(2 omega + g' - g +- |g + g'|)(1 - tau) tau mu].
SymplecticSpectrum asymptotic_spectrum(const EnvSpec& env, double mu);

// mu -> infinity: eps as above, I = -log2(e eps), distillable iff eps < 1/e.
// UnphysicalEnvError / DomainError (tau = 1) on bad input.
EntanglementReport asymptotic_report(const EnvSpec& env);

EprVariances epr_variances(const EprInput& input, const EnvSpec& env);
// (1 - tau)(omega - g), (1 - tau)(omega + g').
EprVariances epr_variances_asymptotic(const EnvSpec& env);
// (1 + tau) - (1 - tau) g, (1 + tau) + (1 - tau) g'.
EprVariances epr_variances_asymptotic_eb(double tau, double g, double g_prime);

}  // namespace ebreak::propagation
