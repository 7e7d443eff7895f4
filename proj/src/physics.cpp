#include "ddch/physics.hpp"

#include <algorithm>
#include <cmath>

#include "ddch/error.hpp"

namespace ddch::physics {

double profile(double z) noexcept { return 0.5 * (1.0 - std::tanh(0.5 * z)); }

double profile_derivative(double z) noexcept {
  const double c = std::cosh(0.5 * z);
  return -0.25 / (c * c);
}

namespace {

template <class F> double simpson(F &&f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < intervals; ++i) {
    const double v = f(a + i * h);
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

AsymptoticConstants compute_constants() {
  constexpr double a = -40.0, b = 40.0;
  constexpr int n = 1 << 16;
  AsymptoticConstants c{};
  c.c_W = simpson([](double z) { return profile_derivative(z) * profile_derivative(z); }, a,
                  b, n);
  c.c_M = simpson([](double z) { return 2.0 * W(profile(z)); }, a, b, n);
  // q' / N(q) = q' sqrt(2 W(q))
  c.c_N = simpson(
      [](double z) { return profile_derivative(z) * std::sqrt(2.0 * W(profile(z))); }, a, b,
      n);
  return c;
}

inline double clamp_arg(double s) noexcept {
  return std::clamp(s, mobility_clamp_lo, mobility_clamp_hi);
}

} // namespace

AsymptoticConstants asymptotic_constants() {
  static const AsymptoticConstants c = compute_constants();
  return c;
}

double mch_mobility(double s) noexcept { return mch_normalization * 2.0 * W(clamp_arg(s)); }

double mch_mobility_max() noexcept { return mch_normalization * 2.0 * W(0.5); }

double nmnch_mobility(double s, double gamma, double epsilon) noexcept {
  return 2.0 * W(clamp_arg(s)) + gamma * epsilon * epsilon;
}

double nmnch_metric(double s, double gamma, double epsilon) noexcept {
  return 1.0 / std::sqrt(nmnch_mobility(s, gamma, epsilon));
}

double Mobility::M(double s) const noexcept {
  return model_ == Model::mch ? mch_mobility(s) : nmnch_mobility(s, gamma_, epsilon_);
}

double Mobility::N(double s) const noexcept { return 1.0 / g(s); }

double Mobility::g(double s) const noexcept { return std::sqrt(M(s)); }

TripleTensions decompose_tensions(double sigma_lv, double sigma_sv, double sigma_ls) {
  if (!(sigma_lv > 0.0 && sigma_sv > 0.0 && sigma_ls > 0.0))
    throw ValidationError("pairwise surface tensions must be positive");
  TripleTensions t{};
  t.liquid = 0.5 * (sigma_ls + sigma_lv - sigma_sv);
  t.solid = 0.5 * (sigma_ls + sigma_sv - sigma_lv);
  t.vapor = 0.5 * (sigma_lv + sigma_sv - sigma_ls);
  if (t.liquid < 0.0 || t.solid < 0.0 || t.vapor < 0.0)
    throw TriangleInequalityViolated("surface tensions violate the triangle inequality");
  return t;
}

std::vector<double> per_phase_tensions(const std::vector<double> &pairwise) {
  if (pairwise.size() == 1) {
    if (!(pairwise[0] > 0.0)) throw ValidationError("pairwise surface tensions must be positive");
    return {0.5 * pairwise[0], 0.5 * pairwise[0]};
  }
  if (pairwise.size() == 3) {
    // Label 1 = L, 2 = V, 3 = S: lv = 12, sv = 23, ls = 13.
    const double s12 = pairwise[0], s13 = pairwise[1], s23 = pairwise[2];
    const TripleTensions t = decompose_tensions(s12, s23, s13);
    return {t.liquid, t.vapor, t.solid};
  }
  throw ValidationError("pairwise tensions are supported for 2 or 3 phases");
}

std::vector<double> pairwise_tensions(const std::vector<double> &per_phase) {
  std::vector<double> out;
  for (std::size_t i = 0; i < per_phase.size(); ++i)
    for (std::size_t j = i + 1; j < per_phase.size(); ++j)
      out.push_back(per_phase[i] + per_phase[j]);
  return out;
}

double pair_mobility(double nu_i, double nu_j) noexcept {
  if (nu_i <= 0.0 || nu_j <= 0.0) return 0.0;
  return 1.0 / (1.0 / nu_i + 1.0 / nu_j);
}

std::vector<double> decompose_mobilities(const std::vector<double> &per_phase) {
  for (double nu : per_phase)
    if (nu < 0.0) throw ValidationError("mobilities must be non-negative");
  std::vector<double> out;
  for (std::size_t i = 0; i < per_phase.size(); ++i)
    for (std::size_t j = i + 1; j < per_phase.size(); ++j)
      out.push_back(pair_mobility(per_phase[i], per_phase[j]));
  return out;
}

double young_angle(double sigma_sv, double sigma_ls, double sigma_lv) {
  const double c = (sigma_sv - sigma_ls) / sigma_lv;
  if (!(std::abs(c) <= 1.0))
    throw NoWettingEquilibrium("|cos theta| > 1: no partial-wetting equilibrium");
  return std::acos(c);
}

} // namespace ddch::physics
