#include "ebreak/discord.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "ebreak/errors.hpp"

namespace ebreak::discord {

namespace {

constexpr double kLogLambdaMin = -8.0;
constexpr double kLogLambdaMax = 8.0;
constexpr int kGrid = 12;
constexpr int kStarts = 4;
constexpr int kMaxSweeps = 60;
constexpr double kGoldenTol = 1e-10;

Mat2 rotation(double phi) {
  Mat2 r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

struct Point {
  double log_lambda;
  double phi;
  double value;
};

// det of the conditional CM; monotone in the conditional entropy.
double objective(const TwoModeCM& cm, double log_lambda, double phi) {
  return conditional_cm(cm, {std::pow(10.0, log_lambda), phi}).determinant();
}

template <class F>
double golden_min(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > kGoldenTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

Point refine(const TwoModeCM& cm, Point p) {
  const double dl = (kLogLambdaMax - kLogLambdaMin) / (kGrid - 1);
  const double dphi = std::numbers::pi / kGrid;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = p.value;
    const double lo = std::max(kLogLambdaMin, p.log_lambda - dl);
    const double hi = std::min(kLogLambdaMax, p.log_lambda + dl);
    const double l = golden_min([&](double x) { return objective(cm, x, p.phi); }, lo, hi);
    const double fl = objective(cm, l, p.phi);
    if (fl < p.value) {
      p.log_lambda = l;
      p.value = fl;
    }
    const double phi = golden_min([&](double x) { return objective(cm, p.log_lambda, x); }, p.phi - dphi, p.phi + dphi);
    const double fphi = objective(cm, p.log_lambda, phi);
    if (fphi < p.value) {
      p.phi = phi;
      p.value = fphi;
    }
    if (before - p.value <= 1e-15 * std::max(1.0, before)) break;
  }
  p.phi = std::fmod(p.phi, std::numbers::pi);
  if (p.phi < 0.0) p.phi += std::numbers::pi;
  return p;
}

}  // namespace

Mat2 GaussianMeasurement::seed_cm() const {
  if (!(seed_variance > 0.0)) throw DomainError("seed variance must be positive");
  const Mat2 r = rotation(angle);
  return r * Eigen::Vector2d(seed_variance, 1.0 / seed_variance).asDiagonal() * r.transpose();
}

Mat2 conditional_cm(const TwoModeCM& cm, const GaussianMeasurement& m) {
  const Mat2 k = cm.b_block() + m.seed_cm();
  const double det = k.determinant();
  if (!(std::abs(det) > 1e-300)) throw SingularConditioningError("B + sigma is singular");
  const Mat2 out = cm.a_block() - cm.c_block() * k.inverse() * cm.c_block().transpose();
  return 0.5 * (out + out.transpose());
}

double conditional_entropy(const TwoModeCM& cm, const GaussianMeasurement& m) {
  return entropy_h(std::max(1.0, std::sqrt(std::max(0.0, conditional_cm(cm, m).determinant()))));
}

DiscordResult gaussian_discord(const TwoModeCM& cm) {
  std::vector<Point> grid;
  grid.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    const double l = kLogLambdaMin + (kLogLambdaMax - kLogLambdaMin) * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double phi = std::numbers::pi * j / kGrid;
      grid.push_back({l, phi, objective(cm, l, phi)});
    }
  }
  std::stable_sort(grid.begin(), grid.end(), [](const Point& x, const Point& y) { return x.value < y.value; });

  Point best = refine(cm, grid.front());
  for (int s = 1; s < kStarts; ++s) {
    const Point p = refine(cm, grid[s]);
    if (p.value < best.value) best = p;
  }

  DiscordResult out;
  out.optimum = {std::pow(10.0, best.log_lambda), best.phi};
  out.min_conditional_entropy = entropy_h(std::max(1.0, std::sqrt(std::max(0.0, best.value))));
  const double h_a = entropy_h(std::sqrt(cm.a_block().determinant()));
  const double h_b = entropy_h(std::sqrt(cm.b_block().determinant()));
  const double s = von_neumann_entropy(cm);
  out.budget.entropy_s = s;
  out.budget.classical_c = h_a - out.min_conditional_entropy;
  out.budget.discord_d = h_b - s + out.min_conditional_entropy;
  out.budget.mutual_i = out.budget.classical_c + out.budget.discord_d;
  return out;
}

}  // namespace ebreak::discord
