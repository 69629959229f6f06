#include "ebreak/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ebreak/errors.hpp"

namespace ebreak::propagation {

namespace {

void require_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0,1]");
}

void require_physical(const EnvSpec& env) {
  require_tau(env.tau);
  if (!(env.omega >= 1.0)) throw DomainError("omega must be >= 1");
  if (!environment::is_physical(env)) throw UnphysicalEnvError("environment violates the bona-fide conditions");
}

// Output CM in the basis of q_A -+ q_B and p_A -+ p_B: each combination is
// a single-mode variance, so the products below never cancel.
struct ModeVariances {
  double q_minus, q_plus, p_minus, p_plus;
};

ModeVariances mode_variances(const EprInput& in, const EnvSpec& env) {
  const double t = env.tau;
  const double small = t * in.mu_minus_mu_prime();
  const double large = t * (in.mu() + in.mu_prime());
  const double r = 1.0 - t;
  return {small + r * (env.omega - env.g), large + r * (env.omega + env.g),
          large + r * (env.omega - env.g_prime), small + r * (env.omega + env.g_prime)};
}

}  // namespace

EprInput::EprInput(double mu) : mu_(mu), mu_prime_(0.0) {
  if (!(mu >= 1.0) || !std::isfinite(mu)) throw DomainError("EPR variance must be >= 1");
  // Same rounding as TwoModeCM::epr, so cm() and the mode formulas agree.
  mu_prime_ = TwoModeCM::epr(mu).c_block()(0, 0);
}

TwoModeCM single_mode_transmit(const EprInput& input, double tau, double omega) {
  require_tau(tau);
  if (!(omega >= 1.0)) throw DomainError("omega must be >= 1");
  const double x = tau * input.mu() + (1.0 - tau) * omega;
  Mat2 z;
  z << 1.0, 0.0, 0.0, -1.0;
  return TwoModeCM(input.mu() * Mat2::Identity(), x * Mat2::Identity(), std::sqrt(tau) * input.mu_prime() * z);
}

double single_mode_eps(const EprInput& input, double tau, double omega) {
  require_tau(tau);
  if (!(omega >= 1.0)) throw DomainError("omega must be >= 1");
  const double mu = input.mu();
  const double mp2 = (mu - 1.0) * (mu + 1.0);
  const double x = tau * mu + (1.0 - tau) * omega;
  const double sqrt_det = (1.0 - tau) * omega * mu + tau;
  const double delta = mu * mu + x * x + 2.0 * tau * mp2;
  const double root = (mu + x) * std::sqrt((mu - x) * (mu - x) + 4.0 * tau * mp2);
  return std::sqrt(2.0 * sqrt_det * sqrt_det / (delta + root));
}

TwoModeCM two_mode_transmit(const EprInput& input, const EnvSpec& env) {
  require_physical(env);
  const double t = env.tau;
  const double x = t * input.mu() + (1.0 - t) * env.omega;
  Mat2 h = Mat2::Zero();
  h(0, 0) = t * input.mu_prime() + (1.0 - t) * env.g;
  h(1, 1) = -t * input.mu_prime() + (1.0 - t) * env.g_prime;
  return TwoModeCM(x * Mat2::Identity(), x * Mat2::Identity(), h);
}

SymplecticSpectrum exact_spectrum(const EprInput& input, const EnvSpec& env) {
  require_physical(env);
  const ModeVariances m = mode_variances(input, env);
  const double a = std::sqrt(m.q_minus * m.p_minus);
  const double b = std::sqrt(m.q_plus * m.p_plus);
  return {std::min(a, b), std::max(a, b)};
}

EntanglementReport exact_report(const EprInput& input, const EnvSpec& env) {
  require_physical(env);
  const ModeVariances m = mode_variances(input, env);
  const double x = env.tau * input.mu() + (1.0 - env.tau) * env.omega;
  EntanglementReport r;
  r.eps = std::sqrt(std::min(m.q_minus * m.p_plus, m.q_plus * m.p_minus));
  r.logneg = log_negativity(r.eps);
  r.coherent_info = entropy_h(x) - von_neumann_entropy(exact_spectrum(input, env));
  r.separable = r.eps >= 1.0;
  r.distillable_one_way = r.coherent_info > 0.0;
  return r;
}

double eps_asymptotic(const EnvSpec& env) {
  const double prod = (env.omega - env.g) * (env.omega + env.g_prime);
  return (1.0 - env.tau) * std::sqrt(std::max(prod, 0.0));
}

double eps_eb(double tau, double g, double g_prime) {
  const double prod = (1.0 + tau - (1.0 - tau) * g) * (1.0 + tau + (1.0 - tau) * g_prime);
  return std::sqrt(std::max(prod, 0.0));
}

SymplecticSpectrum asymptotic_spectrum(const EnvSpec& env, double mu) {
  const double scale = (1.0 - env.tau) * env.tau * mu;
  const double base = 2.0 * env.omega + env.g_prime - env.g;
  const double spread = std::abs(env.g + env.g_prime);
  return {std::sqrt(std::max(0.0, (base - spread) * scale)), std::sqrt(std::max(0.0, (base + spread) * scale))};
}

EntanglementReport asymptotic_report(const EnvSpec& env) {
  require_physical(env);
  if (env.tau >= 1.0) throw DomainError("asymptotic report needs tau < 1");
  EntanglementReport r;
  r.eps = eps_asymptotic(env);
  r.logneg = log_negativity(r.eps);
  r.coherent_info = -std::log2(std::numbers::e * r.eps);
  r.separable = r.eps >= 1.0;
  r.distillable_one_way = r.eps < 1.0 / std::numbers::e;
  return r;
}

EprVariances epr_variances(const EprInput& input, const EnvSpec& env) {
  require_physical(env);
  const ModeVariances m = mode_variances(input, env);
  return {m.q_minus, m.p_plus};
}

EprVariances epr_variances_asymptotic(const EnvSpec& env) {
  const double r = 1.0 - env.tau;
  return {r * (env.omega - env.g), r * (env.omega + env.g_prime)};
}

EprVariances epr_variances_asymptotic_eb(double tau, double g, double g_prime) {
  return {(1.0 + tau) - (1.0 - tau) * g, (1.0 + tau) + (1.0 - tau) * g_prime};
}

}  // namespace ebreak::propagation
