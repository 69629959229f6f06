#include "ebreak/environment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string_view>
#include <cmath>
#include <numbers>

#include "ebreak/discord.hpp"
#include "ebreak/errors.hpp"
#include "ebreak/propagation.hpp"

namespace ebreak::environment {

namespace {

double guard_band(double omega) { return 1e-12 * std::max(1.0, omega * omega); }

void require_omega(double omega) {
  if (!(omega >= 1.0)) throw DomainError("omega must be >= 1");
}

void require_open_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0,1)");
}

Family special_family(const EnvSpec& spec) {
  const double tol = 1e-12 * std::max(1.0, std::abs(spec.g));
  if (std::abs(spec.g_prime - spec.g) <= tol) return Family::SC;
  if (std::abs(spec.g_prime + spec.g) <= tol) return Family::AC;
  throw NotSpecialFamilyError("closed forms need g' = g or g' = -g");
}

}  // namespace

char class_code(EnvClass c) {
  switch (c) {
    case EnvClass::Forbidden:
      return 'F';
    case EnvClass::SeparablePhysical:
      return 'S';
    case EnvClass::EntangledPhysical:
      return 'E';
  }
  return '?';
}

double omega_from_nbar(double nbar) {
  if (!(nbar >= 0.0)) throw DomainError("nbar must be >= 0");
  return 2.0 * nbar + 1.0;
}

double nbar_from_omega(double omega) {
  require_omega(omega);
  return (omega - 1.0) / 2.0;
}

TwoModeCM env_cm(const EnvSpec& spec) {
  Mat2 g = Mat2::Zero();
  g(0, 0) = spec.g;
  g(1, 1) = spec.g_prime;
  return TwoModeCM(spec.omega * Mat2::Identity(), spec.omega * Mat2::Identity(), g);
}

double gamma_minus(double omega, double g, double g_prime) {
  return omega * std::abs(g + g_prime) - g * g_prime;
}

double gamma_plus(double omega, double g, double g_prime) {
  return omega * std::abs(g - g_prime) + g * g_prime;
}

bool is_physical(const EnvSpec& spec) {
  const double w = spec.omega;
  const double band = guard_band(w);
  if (std::abs(spec.g) > w + band || std::abs(spec.g_prime) > w + band) return false;
  return w * w - 1.0 - gamma_minus(w, spec.g, spec.g_prime) >= -band;
}

EnvClass classify(const EnvSpec& spec) {
  require_omega(spec.omega);
  if (!is_physical(spec)) return EnvClass::Forbidden;
  const double w = spec.omega;
  const double worst = std::max(gamma_minus(w, spec.g, spec.g_prime), gamma_plus(w, spec.g, spec.g_prime));
  return w * w - 1.0 >= worst - guard_band(w) ? EnvClass::SeparablePhysical : EnvClass::EntangledPhysical;
}

double env_pts_eigenvalue(const EnvSpec& spec) {
  const double w = spec.omega;
  const double arg = w * w - spec.g * spec.g_prime - w * std::abs(spec.g - spec.g_prime);
  return std::sqrt(std::max(arg, 0.0));
}

double omega_eb(double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw DomainError("omega_EB needs 0 <= tau < 1");
  // Read tau as its shortest round-trip decimal n / 10^k; then (10^k + n) /
  // (10^k - n) is a single rounding of exact integers, so 0.9 gives 19.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, tau, std::chars_format::fixed);
  const std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto dot = text.find('.');
  if (res.ec == std::errc() && dot != std::string_view::npos && text.size() - dot - 1 <= 15) {
    const std::string_view frac = text.substr(dot + 1);
    std::int64_t n = 0, scale = 1;
    for (char ch : frac) {
      n = 10 * n + (ch - '0');
      scale *= 10;
    }
    return static_cast<double>(scale + n) / static_cast<double>(scale - n);
  }
  return (1.0 + tau) / (1.0 - tau);
}

EnvSpec family_point(FamilyPoint kind, double omega) {
  require_omega(omega);
  EnvSpec spec;
  spec.tau = 0.0;
  spec.omega = omega;
  const double edge = omega - 1.0;
  const double epr = std::sqrt((omega - 1.0) * (omega + 1.0));
  switch (kind) {
    case FamilyPoint::MSC:
      spec.g = edge;
      spec.g_prime = edge;
      break;
    case FamilyPoint::MAC_pos:
      spec.g = edge;
      spec.g_prime = -edge;
      break;
    case FamilyPoint::EPR_pos:
      spec.g = epr;
      spec.g_prime = -epr;
      break;
    case FamilyPoint::EPR_neg:
      spec.g = -epr;
      spec.g_prime = epr;
      break;
  }
  return spec;
}

EnvSpec eb_family_point(FamilyPoint kind, double tau) {
  EnvSpec spec = family_point(kind, omega_eb(tau));
  spec.tau = tau;
  return spec;
}

Thresholds thresholds(Family family, double tau) {
  require_open_tau(tau);
  const double e = std::numbers::e;
  const double d = 1.0 - tau;
  Thresholds t;
  if (family == Family::SC) {
    t.g_er = std::sqrt(tau * (tau + 2.0)) / d;
    t.g_ed = std::sqrt(e * e * (1.0 + tau) * (1.0 + tau) - 1.0) / (e * d);
    t.g_max_separable = 2.0 * tau / d;
    t.g_max_physical = 2.0 * tau / d;
  } else {
    t.g_er = tau / d;
    t.g_ed = (1.0 + tau - 1.0 / e) / d;
    t.g_max_separable = 2.0 * tau / d;
    t.g_max_physical = 2.0 * std::sqrt(tau) / d;
  }
  return t;
}

CorrelationBudget correlation_budget(const EnvSpec& spec, BudgetMethod method) {
  require_omega(spec.omega);
  if (!is_physical(spec)) throw UnphysicalEnvError("environment violates the bona-fide conditions");
  if (method == BudgetMethod::Numeric) return discord::gaussian_discord(env_cm(spec)).budget;

  const Family family = special_family(spec);
  const double w = spec.omega;
  const double g = spec.g;
  const double h_w = entropy_h(w);
  const double h_cond = entropy_h(std::max(1.0, w - g * g / (w + 1.0)));
  CorrelationBudget b;
  if (family == Family::SC) {
    b.entropy_s = entropy_h(w + std::abs(g)) + entropy_h(std::max(1.0, w - std::abs(g)));
  } else {
    b.entropy_s = 2.0 * entropy_h(std::max(1.0, std::sqrt(std::max(0.0, w * w - g * g))));
  }
  b.classical_c = h_w - h_cond;
  b.discord_d = h_w + h_cond - b.entropy_s;
  b.mutual_i = b.classical_c + b.discord_d;
  return b;
}

CriticalBits critical_bits(Family family, double tau) {
  require_open_tau(tau);
  if (family == Family::SC && tau <= 2.0 / 3.0) {
    throw DomainError("SC restoration needs tau > 2/3");
  }
  CriticalBits out;
  out.g_er = thresholds(family, tau).g_er;
  EnvSpec spec;
  spec.tau = tau;
  spec.omega = omega_eb(tau);
  spec.g = out.g_er;
  spec.g_prime = family == Family::SC ? out.g_er : -out.g_er;
  const CorrelationBudget b = correlation_budget(spec, BudgetMethod::ClosedForm);
  out.c_crit = b.classical_c;
  out.d_crit = b.discord_d;
  out.i_crit = b.mutual_i;
  return out;
}

double entropy_gap_msc_mac(double omega) {
  require_omega(omega);
  const double s = 2.0 * omega - 1.0;
  return entropy_h(s) - 2.0 * entropy_h(std::sqrt(s));
}

NonMonotonicityWitness nonmono_witness(double tau) {
  require_open_tau(tau);
  const EnvSpec msc = eb_family_point(FamilyPoint::MSC, tau);
  const EnvSpec mac = eb_family_point(FamilyPoint::MAC_pos, tau);
  const CorrelationBudget b_msc = correlation_budget(msc, BudgetMethod::ClosedForm);
  const CorrelationBudget b_mac = correlation_budget(mac, BudgetMethod::ClosedForm);
  NonMonotonicityWitness w;
  w.tau = tau;
  w.omega = msc.omega;
  w.c_msc = b_msc.classical_c;
  w.c_mac = b_mac.classical_c;
  w.d_msc = b_msc.discord_d;
  w.d_mac = b_mac.discord_d;
  w.n_msc = log_negativity(propagation::eps_asymptotic(msc));
  w.n_mac = log_negativity(propagation::eps_asymptotic(mac));
  w.delta_s = b_msc.entropy_s - b_mac.entropy_s;
  w.holds = std::abs(w.c_msc - w.c_mac) <= 1e-9 && w.d_msc > w.d_mac && w.n_msc < w.n_mac;
  return w;
}

}  // namespace ebreak::environment
