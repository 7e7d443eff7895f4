#pragma once

#include <cstddef>
#include <vector>

#include "ddch/params.hpp"

namespace ddch::physics {

/// Double well W(s) = s^2 (1 - s)^2 / 2 and its derivatives.
inline double W(double s) noexcept {
  const double t = s * (1.0 - s);
  return 0.5 * t * t;
}
inline double Wp(double s) noexcept { return s * (1.0 - s) * (1.0 - 2.0 * s); }
inline double Wpp(double s) noexcept { return 1.0 - 6.0 * s + 6.0 * s * s; }

/// Optimal 1D profile q(z) = (1 - tanh(z/2)) / 2, solution of q' = -sqrt(2W(q)).
double profile(double z) noexcept;
double profile_derivative(double z) noexcept;

struct AsymptoticConstants {
  double c_W; ///< int (q')^2
  double c_M; ///< int M(q) with M = 2W
  double c_N; ///< int q' / N(q) with N = 1/sqrt(2W); negative
};

/// Composite Simpson on [-40, 40] with 2^16 intervals, unsmoothed mobility.
AsymptoticConstants asymptotic_constants();

/// 1 / c_N^2 for |c_N| = 1/6.
inline constexpr double mch_normalization = 36.0;

/// Mobility arguments are clamped to this range before evaluation.
inline constexpr double mobility_clamp_lo = -0.5;
inline constexpr double mobility_clamp_hi = 1.5;

/// MCH mobility M(s) = 2W(s) / c_N^2.
double mch_mobility(double s) noexcept;
/// max over [0,1] of the MCH mobility: 36 / 16.
double mch_mobility_max() noexcept;
/// NMNCH mobility M(s) = 2W(s) + gamma eps^2 and metric mobility N = 1/sqrt(M).
double nmnch_mobility(double s, double gamma, double epsilon) noexcept;
double nmnch_metric(double s, double gamma, double epsilon) noexcept;

/// Mobility evaluation for one scheme, with the out-of-range flag.
class Mobility {
public:
  Mobility(Model model, double gamma, double epsilon)
      : model_(model), gamma_(gamma), epsilon_(epsilon) {}

  double M(double s) const noexcept;
  double N(double s) const noexcept;
  /// sqrt(M(s)) = 1 / N(s).
  double g(double s) const noexcept;
  /// Whether s lies outside the clamp range.
  static bool out_of_range(double s) noexcept {
    return s < mobility_clamp_lo || s > mobility_clamp_hi;
  }

private:
  Model model_;
  double gamma_;
  double epsilon_;
};

/// Per-phase tensions of the solid/liquid/vapor triple.
struct TripleTensions {
  double liquid;
  double solid;
  double vapor;
};

/// sigma_L, sigma_S, sigma_V with sigma_ij = sigma_i + sigma_j.
/// Throws TriangleInequalityViolated if any coefficient comes out negative,
/// ValidationError if a pairwise tension is not positive.
TripleTensions decompose_tensions(double sigma_lv, double sigma_sv, double sigma_ls);

/// Additive per-phase tensions from pairwise ones. Two phases: sigma_12 / 2
/// each. Three phases: pairwise order (12, 13, 23).
std::vector<double> per_phase_tensions(const std::vector<double> &pairwise);

/// Pairwise tensions sigma_i + sigma_j in (12, 13, .., 23, ..) order.
std::vector<double> pairwise_tensions(const std::vector<double> &per_phase);

/// Harmonic pairwise mobility (1/nu_i + 1/nu_j)^-1, zero if either is zero.
double pair_mobility(double nu_i, double nu_j) noexcept;

/// All pairwise mobilities in (12, 13, .., 23, ..) order.
std::vector<double> decompose_mobilities(const std::vector<double> &per_phase);

/// Young angle arccos((sigma_SV - sigma_LS) / sigma_LV) in radians.
/// Throws NoWettingEquilibrium when |cos| > 1.
double young_angle(double sigma_sv, double sigma_ls, double sigma_lv);

} // namespace ddch::physics
