#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ebreak/environment.hpp"
#include "ebreak/errors.hpp"
#include "ebreak/propagation.hpp"
#include "support/oracles.hpp"

using namespace ebreak;
using namespace ebreak::environment;

namespace {

EnvSpec at(double omega, double g, double gp, double tau = 0.0) { return {tau, omega, g, gp}; }

}  // namespace

TEST(EnvCm, Examples) {
  EXPECT_EQ(env_cm(at(1.0, 0.0, 0.0)).matrix(), Mat4::Identity());
  const TwoModeCM ac = env_cm(at(2.0, 1.0, -1.0));
  EXPECT_EQ(ac.a_block(), 2.0 * Mat2::Identity());
  EXPECT_EQ(ac.b_block(), 2.0 * Mat2::Identity());
  EXPECT_EQ(ac.c_block(), (Mat2() << 1.0, 0.0, 0.0, -1.0).finished());
}

TEST(EnvCm, SymmetricUnderModeSwap) {
  Mat4 swap = Mat4::Zero();
  swap.topRightCorner<2, 2>() = Mat2::Identity();
  swap.bottomLeftCorner<2, 2>() = Mat2::Identity();
  const Mat4 v = env_cm(at(3.0, 1.2, -0.7)).matrix();
  EXPECT_EQ(swap * v * swap.transpose(), v);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(at(2.0, 0.0, 0.0)), EnvClass::SeparablePhysical);
  EXPECT_EQ(classify(at(2.0, 1.7, -1.7)), EnvClass::EntangledPhysical);
  EXPECT_NEAR(pts_eigenvalue(env_cm(at(2.0, 1.7, -1.7))), 0.3, 1e-12);
  // |g| above sqrt(omega^2 - 1): nu_-^2 = 0.76, so not a state at all.
  EXPECT_EQ(classify(at(2.0, 1.8, -1.8)), EnvClass::Forbidden);
  EXPECT_FALSE(validate_cm(env_cm(at(2.0, 1.8, -1.8))).physical());
  EXPECT_EQ(classify(at(2.0, 1.5, 1.5)), EnvClass::Forbidden);
  EXPECT_FALSE(validate_cm(env_cm(at(2.0, 1.5, 1.5))).physical());
  EXPECT_THROW(classify(at(0.5, 0.0, 0.0)), DomainError);
}

TEST(Classify, BoundaryPointsArePhysicalAndSeparable) {
  // MSC and MAC sit exactly on the boundaries.
  EXPECT_EQ(classify(family_point(FamilyPoint::MSC, 2.0)), EnvClass::SeparablePhysical);
  EXPECT_EQ(classify(family_point(FamilyPoint::MAC_pos, 2.0)), EnvClass::SeparablePhysical);
  EXPECT_EQ(classify(family_point(FamilyPoint::EPR_pos, 2.0)), EnvClass::EntangledPhysical);
  EXPECT_EQ(classify(at(2.0, 1.0 + 1e-6, 1.0 + 1e-6)), EnvClass::Forbidden);
}

TEST(Classify, CodesAreSingleLetters) {
  EXPECT_EQ(class_code(EnvClass::Forbidden), 'F');
  EXPECT_EQ(class_code(EnvClass::SeparablePhysical), 'S');
  EXPECT_EQ(class_code(EnvClass::EntangledPhysical), 'E');
}

TEST(OmegaEb, Values) {
  EXPECT_EQ(omega_eb(0.9), 19.0);
  EXPECT_EQ(omega_eb(0.0), 1.0);
  EXPECT_EQ(omega_eb(0.5), 3.0);
  EXPECT_THROW(omega_eb(1.0), DomainError);
  EXPECT_THROW(omega_eb(-0.1), DomainError);
  EXPECT_EQ(omega_eb(0.75), 7.0);
  EXPECT_EQ(omega_eb(0.3), 13.0 / 7.0);
  // No short decimal: falls back to the direct quotient.
  EXPECT_DOUBLE_EQ(omega_eb(1.0 / 3.0), 2.0);
  for (double tau = 0.001; tau < 1.0; tau += 0.0137) EXPECT_NEAR(omega_eb(tau), (1 + tau) / (1 - tau), 1e-12 * omega_eb(tau));
}

TEST(OmegaEb, SingleModeOutputIsOnTheBoundary) {
  EXPECT_NEAR(propagation::single_mode_eps(propagation::EprInput(1e6), 0.5, 3.0), 1.0, 1e-3);
}

TEST(Nbar, RoundTrip) {
  EXPECT_EQ(omega_from_nbar(9.0), 19.0);
  EXPECT_EQ(nbar_from_omega(19.0), 9.0);
  EXPECT_THROW(omega_from_nbar(-1.0), DomainError);
}

TEST(FamilyPoint, Examples) {
  const EnvSpec msc = family_point(FamilyPoint::MSC, 19.0);
  EXPECT_EQ(msc.g, 18.0);
  EXPECT_EQ(msc.g_prime, 18.0);
  const EnvSpec epr = family_point(FamilyPoint::EPR_pos, 19.0);
  EXPECT_NEAR(epr.g, std::sqrt(360.0), 1e-12);
  EXPECT_NEAR(epr.g_prime, -std::sqrt(360.0), 1e-12);
  EXPECT_NEAR(epr.g, 2.0 * std::sqrt(0.9) / 0.1, 1e-12);
  for (auto k : {FamilyPoint::MSC, FamilyPoint::MAC_pos, FamilyPoint::EPR_pos, FamilyPoint::EPR_neg}) {
    const EnvSpec p = family_point(k, 1.0);
    EXPECT_EQ(p.g, 0.0);
    EXPECT_EQ(p.g_prime, 0.0);
  }
  EXPECT_THROW(family_point(FamilyPoint::MSC, 0.9), DomainError);
}

TEST(FamilyPoint, EbVariantCarriesTau) {
  const EnvSpec p = eb_family_point(FamilyPoint::MAC_pos, 0.9);
  EXPECT_EQ(p.tau, 0.9);
  EXPECT_EQ(p.omega, 19.0);
  EXPECT_EQ(p.g, 18.0);
  EXPECT_EQ(p.g_prime, -18.0);
}

TEST(Thresholds, AcAtNinetyPercent) {
  const Thresholds t = thresholds(Family::AC, 0.9);
  EXPECT_NEAR(t.g_er, 9.0, 1e-12);
  EXPECT_NEAR(t.g_ed, 15.3212055882855768, 1e-12);
  EXPECT_NEAR(t.g_max_separable, 18.0, 1e-12);
  EXPECT_NEAR(t.g_max_physical, 18.9736659610102759, 1e-12);
  EXPECT_DOUBLE_EQ(t.g_er, t.g_max_separable / 2.0);
}

TEST(Thresholds, AcRestorationMatchesBisection) {
  for (double tau : {0.1, 0.3, 0.5, 0.9}) {
    const Thresholds t = thresholds(Family::AC, tau);
    const double root = oracle::bisect([&](double g) { return propagation::eps_eb(tau, g, -g) - 1.0; }, 0.0,
                                       t.g_max_physical);
    EXPECT_NEAR(t.g_er, root, 1e-9) << tau;
  }
}

TEST(Thresholds, ScVanishesAtTwoThirds) {
  const Thresholds t = thresholds(Family::SC, 2.0 / 3.0);
  EXPECT_NEAR(t.g_er, 4.0, 1e-12);
  EXPECT_NEAR(t.g_er, t.g_max_separable, 1e-12);
}

TEST(Thresholds, SmallTauLimit) {
  const double tau = 1e-6;
  const Thresholds t = thresholds(Family::AC, tau);
  EXPECT_NEAR(t.g_er / tau, 1.0, 1e-5);
  EXPECT_NEAR(t.g_max_separable / (2.0 * tau), 1.0, 1e-5);
  EXPECT_NEAR(t.g_max_physical / (2.0 * std::sqrt(tau)), 1.0, 1e-5);
}

TEST(Thresholds, OrderingAndDomain) {
  for (double tau = 0.01; tau < 1.0; tau += 0.01) {
    for (Family f : {Family::SC, Family::AC}) {
      const Thresholds t = thresholds(f, tau);
      EXPECT_LE(t.g_er, t.g_ed);
      EXPECT_LE(t.g_max_separable, t.g_max_physical);
    }
  }
  EXPECT_THROW(thresholds(Family::SC, 0.0), DomainError);
  EXPECT_THROW(thresholds(Family::AC, 1.0), DomainError);
}

TEST(Thresholds, EpsilonHitsOneAndInverseE) {
  const double inv_e = 1.0 / std::numbers::e;
  for (double tau : {0.7, 0.8, 0.9, 0.97}) {
    const Thresholds sc = thresholds(Family::SC, tau);
    EXPECT_NEAR(propagation::eps_eb(tau, sc.g_er, sc.g_er), 1.0, 1e-9);
    EXPECT_NEAR(propagation::eps_eb(tau, sc.g_ed, sc.g_ed), inv_e, 1e-9);
  }
  for (double tau : {0.2, 0.5, 0.9}) {
    const Thresholds ac = thresholds(Family::AC, tau);
    EXPECT_NEAR(propagation::eps_eb(tau, ac.g_er, -ac.g_er), 1.0, 1e-9);
    EXPECT_NEAR(propagation::eps_eb(tau, ac.g_ed, -ac.g_ed), inv_e, 1e-9);
  }
}

TEST(Budget, ProductStateHasNoCorrelations) {
  const CorrelationBudget b = correlation_budget(at(3.0, 0.0, 0.0), BudgetMethod::ClosedForm);
  EXPECT_DOUBLE_EQ(b.classical_c, 0.0);
  EXPECT_DOUBLE_EQ(b.discord_d, 0.0);
  EXPECT_DOUBLE_EQ(b.mutual_i, 0.0);
}

TEST(Budget, FrozenValues) {
  const CorrelationBudget sc = correlation_budget(at(2.0, 1.0, 1.0), BudgetMethod::ClosedForm);
  EXPECT_NEAR(sc.classical_c, 0.295739585136223787, 1e-12);
  EXPECT_NEAR(sc.discord_d, 0.459147917027244757, 1e-12);
  const CorrelationBudget ac = correlation_budget(at(2.0, 1.0, -1.0), BudgetMethod::ClosedForm);
  EXPECT_NEAR(ac.classical_c, sc.classical_c, 1e-12);
  EXPECT_NEAR(ac.discord_d, 0.168305722357784526, 1e-12);
}

TEST(Budget, ScAndAcShareClassicalCorrelations) {
  for (double w : {1.5, 2.0, 5.0, 19.0}) {
    for (double g = 0.0; g <= w - 1.0; g += (w - 1.0) / 20.0) {
      const CorrelationBudget sc = correlation_budget(at(w, g, g), BudgetMethod::ClosedForm);
      const CorrelationBudget ac = correlation_budget(at(w, g, -g), BudgetMethod::ClosedForm);
      EXPECT_NEAR(sc.classical_c, ac.classical_c, 1e-12);
      EXPECT_NEAR(sc.discord_d - ac.discord_d, ac.entropy_s - sc.entropy_s, 1e-12);
      if (g > 0.0) EXPECT_GT(sc.discord_d, ac.discord_d);
    }
  }
}

TEST(Budget, EprPointSplitsEvenly) {
  for (double w : {2.0, 5.0, 19.0}) {
    const CorrelationBudget b = correlation_budget(family_point(FamilyPoint::EPR_pos, w), BudgetMethod::ClosedForm);
    EXPECT_NEAR(b.classical_c, entropy_h(w), 1e-9);
    EXPECT_NEAR(b.discord_d, entropy_h(w), 1e-9);
  }
}

TEST(Budget, Errors) {
  EXPECT_THROW(correlation_budget(at(2.0, 1.0, 0.5), BudgetMethod::ClosedForm), NotSpecialFamilyError);
  EXPECT_THROW(correlation_budget(at(2.0, 1.5, 1.5), BudgetMethod::ClosedForm), UnphysicalEnvError);
  EXPECT_NO_THROW(correlation_budget(at(2.0, 1.0, 0.5), BudgetMethod::Numeric));
}

TEST(Budget, NumericAgreesWithClosedForm) {
  for (double w : {2.0, 19.0}) {
    for (double g : {0.3 * (w - 1.0), 0.9 * (w - 1.0)}) {
      for (double sign : {1.0, -1.0}) {
        const CorrelationBudget c = correlation_budget(at(w, g, sign * g), BudgetMethod::ClosedForm);
        const CorrelationBudget n = correlation_budget(at(w, g, sign * g), BudgetMethod::Numeric);
        EXPECT_NEAR(c.classical_c, n.classical_c, 1e-6);
        EXPECT_NEAR(c.discord_d, n.discord_d, 1e-6);
        EXPECT_NEAR(c.mutual_i, n.mutual_i, 1e-6);
      }
    }
  }
}

TEST(Budget, MonotoneInCorrelationStrength) {
  for (double w : {1.5, 3.0, 19.0}) {
    for (double sign : {1.0, -1.0}) {
      const double g_max = sign > 0 ? w - 1.0 : std::sqrt(w * w - 1.0);
      CorrelationBudget prev = correlation_budget(at(w, 0.0, 0.0), BudgetMethod::ClosedForm);
      for (int k = 1; k <= 400; ++k) {
        const double g = g_max * k / 400.0;
        const CorrelationBudget b = correlation_budget(at(w, g, sign * g), BudgetMethod::ClosedForm);
        ASSERT_GE(b.classical_c, prev.classical_c - 1e-12);
        ASSERT_GE(b.discord_d, prev.discord_d - 1e-12);
        prev = b;
      }
    }
  }
}

TEST(CriticalBits, Bounds) {
  const double bound = 2.0 - std::log2(3.0);
  const CriticalBits ac = critical_bits(Family::AC, 0.5);
  EXPECT_LT(ac.i_crit, bound);
  EXPECT_LT(ac.d_crit, 0.05);
  const CriticalBits sc = critical_bits(Family::SC, 0.999);
  EXPECT_LT(sc.d_crit, 0.01);
  EXPECT_NEAR(sc.c_crit, 2.0, 0.01);
  EXPECT_LT(sc.i_crit, 2.0);
  const CriticalBits tiny = critical_bits(Family::AC, 1e-4);
  EXPECT_LT(tiny.i_crit, 1e-3);
  EXPECT_LT(tiny.c_crit, 1e-3);
  EXPECT_LT(tiny.d_crit, 1e-3);
  EXPECT_THROW(critical_bits(Family::SC, 2.0 / 3.0), DomainError);
  EXPECT_THROW(critical_bits(Family::SC, 0.5), DomainError);
}

TEST(CriticalBits, ThresholdMatchesBisection) {
  const double tau = 0.9;
  const CriticalBits sc = critical_bits(Family::SC, tau);
  const double root = oracle::bisect([&](double g) { return propagation::eps_eb(tau, g, g) - 1.0; }, 0.0, 18.0);
  EXPECT_NEAR(sc.g_er, root, 1e-9);
  EXPECT_NEAR(sc.g_er, 16.1554944214035121, 1e-12);
}

TEST(NonMonotonicity, NinetyPercent) {
  const NonMonotonicityWitness w = nonmono_witness(0.9);
  EXPECT_TRUE(w.holds);
  EXPECT_NEAR(w.c_msc, w.c_mac, 1e-9);
  EXPECT_GT(w.d_msc, w.d_mac);
  EXPECT_NEAR(w.n_msc, 0.717201412072887457, 1e-12);
  EXPECT_NEAR(w.n_mac, 3.32192809488736235, 1e-12);
  EXPECT_NEAR(w.n_msc, -std::log2(std::sqrt(0.37)), 1e-12);
}

TEST(NonMonotonicity, HalfAndEntropyGap) {
  EXPECT_TRUE(nonmono_witness(0.5).holds);
  EXPECT_NEAR(entropy_gap_msc_mac(3.0), -0.349856721251727676, 1e-12);
  EXPECT_NEAR(entropy_gap_msc_mac(3.0), entropy_h(5.0) - 2.0 * entropy_h(std::sqrt(5.0)), 1e-15);
  for (double tau = 0.05; tau < 1.0; tau += 0.05) {
    const NonMonotonicityWitness w = nonmono_witness(tau);
    EXPECT_TRUE(w.holds) << tau;
    EXPECT_NEAR(w.delta_s, entropy_gap_msc_mac(w.omega), 1e-9);
  }
}

// --- properties -----------------------------------------------------------

class ClassifyGrid : public ::testing::TestWithParam<double> {};

TEST_P(ClassifyGrid, AgreesWithCovarianceMatrixTests) {
  const double w = GetParam();
  const int n = 401;
  int disagreements = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double g = -w + 2.0 * w * i / (n - 1);
      const double gp = -w + 2.0 * w * j / (n - 1);
      const EnvSpec spec = at(w, g, gp);
      const EnvClass c = classify(spec);
      // Distance to the nearest classification boundary, in the same units.
      const double phys_margin = std::min({w * w - 1.0 - gamma_minus(w, g, gp), w - std::abs(g), w - std::abs(gp)});
      const double sep_margin = w * w - 1.0 - std::max(gamma_minus(w, g, gp), gamma_plus(w, g, gp));
      const Mat4 v = env_cm(spec).matrix();
      const auto verdict = validate_cm(v);
      EnvClass expected;
      if (!verdict.physical()) {
        expected = EnvClass::Forbidden;
      } else {
        expected = oracle::pts_eigenvalue(v) >= 1.0 ? EnvClass::SeparablePhysical : EnvClass::EntangledPhysical;
      }
      const bool near_boundary = std::abs(phys_margin) < 1e-9 * w * w || std::abs(sep_margin) < 1e-9 * w * w;
      if (c != expected && !near_boundary) ++disagreements;
    }
  }
  EXPECT_EQ(disagreements, 0);
}

INSTANTIATE_TEST_SUITE_P(Omegas, ClassifyGrid, ::testing::Values(1.5, 2.0, 5.0, 19.0));

TEST(EnvProperties, SymmetricFamilyIsNeverEntangled) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> w_dist(1.0, 40.0), u(-1.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double w = w_dist(rng);
    const double g = u(rng) * (w - 1.0);
    ASSERT_NE(classify(at(w, g, g)), EnvClass::EntangledPhysical) << w << " " << g;
  }
}

TEST(EnvProperties, ClosedFormPtsEigenvalue) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w_dist(1.0, 20.0), u(-1.0, 1.0);
  int checked = 0;
  while (checked < 5000) {
    const double w = w_dist(rng);
    const EnvSpec spec = at(w, u(rng) * w, u(rng) * w);
    if (!is_physical(spec)) continue;
    ++checked;
    ASSERT_NEAR(env_pts_eigenvalue(spec), pts_eigenvalue(env_cm(spec)), 1e-10 * std::max(1.0, w));
    ASSERT_NEAR(env_pts_eigenvalue(spec), oracle::pts_eigenvalue(env_cm(spec).matrix()), 1e-8 * std::max(1.0, w));
  }
}
