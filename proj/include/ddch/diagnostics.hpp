#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddch/grid.hpp"
#include "ddch/params.hpp"
#include "ddch/phase_system.hpp"
#include "ddch/transform.hpp"

namespace ddch {

/// Signed distance (or any level function) of a point in physical space.
using DistanceFunction = std::function<double(const std::array<double, 3> &)>;

/// P = 1/2 sum_k sigma_k int (eps/2 |grad u_k|^2 + W(u_k)/eps) dx, with
/// spectral gradients and grid-sum quadrature.
double cahn_hilliard_energy(Transform &transform, const std::vector<Field> &u, double epsilon,
                            const std::vector<double> &sigma);
double cahn_hilliard_energy(Transform &transform, const PhaseSystem &system, double epsilon);

double mass(const Field &u);
std::vector<double> mass_vector(const PhaseSystem &system);

struct Extrema {
  double min = 0.0;
  double max = 0.0;
};
Extrema overshoot(const Field &u);

/// max over the grid of |u - q(dist/eps)|.
double profile_error(const Grid &grid, const Field &u, const DistanceFunction &dist,
                     double epsilon);

/// Periodic signed distance to a disc (2D) or ball (3D); negative inside.
DistanceFunction disc_distance(const Grid &grid, std::array<double, 3> center, double radius);

/// Disc of area (or ball of volume) equal to the phase mass, centred at the
/// phase's periodic centroid.
struct MatchedDisc {
  std::array<double, 3> center{};
  double radius = 0.0;
};
MatchedDisc matched_disc(const Grid &grid, const Field &u);

/// One piece of a marching-squares contour, in physical coordinates. Points
/// of cells that straddle the periodic seam may lie up to one cell beyond
/// the box.
struct Segment {
  std::array<double, 2> a;
  std::array<double, 2> b;
};
/// Marching squares on a periodic 2D grid with linear edge interpolation;
/// saddles resolved by the cell-centre average.
std::vector<Segment> contour_segments(const Grid &grid, const Field &u, double iso = 0.5);

struct LevelSetGeometry {
  double area = 0.0;
  double perimeter = 0.0;
  double isoperimetric_ratio = 0.0; ///< 4 pi A / P^2
};
/// Geometry of {u > iso} in 2D. Throws EmptyLevelSet if there is no contour.
LevelSetGeometry level_set_geometry(const Grid &grid, const Field &u, double iso = 0.5);

/// Symmetric Hausdorff distance between two contours' vertex sets, using the
/// periodic minimum image.
double hausdorff_distance(const Grid &grid, const std::vector<Segment> &a,
                          const std::vector<Segment> &b);

/// One measurement in an order-of-accuracy sweep.
struct SweepPoint {
  double epsilon = 0.0;
  double cell_size = 0.0;
  double metric = 0.0;
};
/// Least-squares slope of log(metric) against log(eps). Needs at least three
/// points, positive metrics, and eps >= cell size (the 6 eps transition band
/// spans at least 6 cells); throws InsufficientResolution otherwise.
double fitted_slope(const std::vector<SweepPoint> &points);

/// Stationary-disc overshoot sweep: a phase-1 disc in a phase-2 background,
/// with u = q(dist/eps), is stepped to a final time and |min u| over all
/// phases is recorded. Time step and final time follow power laws in eps,
/// dt = dt_coefficient eps^dt_exponent (same for final time), so a sweep
/// can hold either physical or eps-scaled time fixed.
struct OvershootCase {
  double radius = 0.5;
  double box_length = 2.0;
  double cells_per_epsilon = 1.0;
  double dt_coefficient = 1.0;
  double dt_exponent = 4.0;
  double time_coefficient = 48.0;
  double time_exponent = 3.0;
};
struct SweepResult {
  std::vector<SweepPoint> points;
  double slope = 0.0;
};
SweepResult order_sweep(const OvershootCase &test_case, Model model,
                        const std::vector<double> &epsilons);

/// Per-sample summary of a system; optional entries are left empty when not
/// measured.
struct DiagnosticsReport {
  std::int64_t step = 0;
  double time = 0.0;
  double energy = 0.0;
  std::vector<double> mass;
  double partition_residual = 0.0;
  std::vector<double> min_u;
  std::vector<double> max_u;
  std::optional<double> profile_error;
  std::optional<double> contact_angle;
  std::optional<double> isoperimetric_ratio;
};

DiagnosticsReport make_report(Transform &transform, const PhaseSystem &system, double epsilon);

/// Column order: step, time, energy, partition_residual, mass_1..mass_L,
/// min_1..min_L, max_1..max_L, profile_error, contact_angle,
/// isoperimetric_ratio.
std::string csv_header(std::size_t phases);
std::string csv_row(const DiagnosticsReport &report);

} // namespace ddch
