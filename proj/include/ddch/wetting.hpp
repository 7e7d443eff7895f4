#pragma once

#include <cstdint>
#include <memory>

#include "ddch/diagnostics.hpp"
#include "ddch/phase_system.hpp"
#include "ddch/physics.hpp"
#include "ddch/scheme.hpp"

namespace ddch {

/// Solid geometries. All but `custom` are heightfields over the last axis:
/// the solid is the periodic slab 0 <= x_d <= H(x'), so it has an upper
/// surface (where the liquid sits) and a lower one at x_d = 0.
enum class SupportKind { flat, oscillatory, rough, custom };

std::string_view to_string(SupportKind kind) noexcept;
SupportKind parse_support_kind(std::string_view text);

struct SupportSpec {
  SupportKind kind = SupportKind::flat;
  double height = 0.25;     ///< mean surface height H
  double amplitude = 0.0;   ///< oscillatory / rough deviation from H
  double wavelength = 0.25; ///< oscillatory period along the first axis
  std::uint64_t seed = 0;   ///< rough support noise
  DistanceFunction custom;  ///< signed distance for `custom` (negative inside)
};

/// Frozen solid phase u_S = q(dist/eps) and the distance it was built from.
struct SolidSupport {
  SupportKind kind = SupportKind::flat;
  Field u_s;
  DistanceFunction distance;

  /// FNV-1a over the bytes of u_s; used to assert the support never changes.
  std::uint64_t checksum() const noexcept;
};

/// Throws GeometryTooLarge if the amplitude reaches a quarter of the box
/// height or the support leaves less than 12 eps of fluid above it.
SolidSupport build_support(const Grid &grid, double epsilon, const SupportSpec &spec);

/// R = -[Lap u_S + (W'(u_L) + W'(1 - u_L - u_S)) / eps^2], Lap spectral.
Field penalization_R(Transform &transform, const Field &u_l, const Field &u_s, double epsilon);
/// sqrt(2W(u_L)) / sqrt(2W(u_L) + eps): confines R to the liquid boundary.
double penalization_factor(double u_l, double epsilon) noexcept;
/// R * penalization_factor(u_L).
Field penalization_R_tilde(Transform &transform, const Field &u_l, const Field &u_s,
                           double epsilon);

struct WettingConfig {
  double sigma_lv = 1.0;
  double sigma_sv = 1.0;
  double sigma_ls = 1.0;
  bool stabilized = false; ///< R-tilde instead of R
  double nu = 1.0;        ///< liquid/vapor mobility nu_LV
  /// Weight of sigma_V in front of R. The L^2 gradient of the reduced
  /// energy gives 1/2 (the same factor as sigma_LV / 2 in front of mu).
  double penalty_scale = 0.5;
};

/// Single-phase wetting model: u_L alone, driven by
/// sigma_LV/2 mu_L + penalty_scale sigma_V R, with R explicit in time.
class WettingSolver {
public:
  WettingSolver(Transform &transform, SchemeParams params, WettingConfig config,
                const SolidSupport &support);

  const WettingConfig &config() const noexcept { return config_; }
  const physics::TripleTensions &tensions() const noexcept { return tensions_; }
  Scheme &scheme() noexcept { return *scheme_; }

  /// Penalization actually used (R or R-tilde) at u_L.
  Field penalization(const Field &u_l) const;
  /// One step; u_l and mu_l are updated in place.
  void step(Field &u_l, Field &mu_l);

private:
  Transform *transform_;
  SchemeParams params_;
  WettingConfig config_;
  physics::TripleTensions tensions_;
  const SolidSupport *support_;
  Field lap_support_;
  std::unique_ptr<Scheme> scheme_;
};

/// Liquid body resting on the support: u_L = q(max(d_body, -d_support)/eps),
/// i.e. the body cut by the solid.
Field liquid_on_support(const Grid &grid, double epsilon, const SolidSupport &support,
                        const DistanceFunction &body);

/// Three-phase (solid, liquid, vapor) system with nu = (0, 2 nu, 2 nu) so
/// that nu_LV = nu and the solid is frozen; u_V = 1 - u_L - u_S.
PhaseSystem make_three_phase_wetting(Transform &transform, const Field &u_l,
                                     const SolidSupport &support, const WettingConfig &config,
                                     double epsilon);
std::vector<PhaseCoefficients> three_phase_coefficients(const WettingConfig &config);

/// Multiphase step with the frozen-solid precondition checked.
void three_phase_wetting_step(Scheme &scheme, PhaseSystem &system);

/// Contact angle (radians, inside the liquid) of a 2D droplet: a circle is
/// fitted to the u_L = 1/2 contour points lying at least 3 eps from the
/// support, intersected with the support surface, and the angle between
/// the circle and the surface is averaged over the contact points. Throws
/// NoContactLine when no contour point lies 3-6 eps from the support or the
/// fitted circle misses the surface.
double measure_contact_angle(const Grid &grid, const Field &u_l, const SolidSupport &support,
                             double epsilon);

} // namespace ddch
